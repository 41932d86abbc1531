//! Which sections make Ga, Gm and the affine group B into D-groups.

use dtau::basefield::BaseField;
use dtau::dgroup::{check_dgroup, AffineAlgGroup, DGroupSection};
use dtau::ideals::DEFAULT_DEGREE_CAP;
use dtau::prolong::AffineVariety;

fn report(g: &AffineAlgGroup, sigma: &[&str]) -> dtau::Result<()> {
    let s = DGroupSection::parse("σ", g, sigma)?;
    let rep = check_dgroup(g, &s, DEFAULT_DEGREE_CAP)?;
    let verdict = if rep.passed() { "D-group".to_string() } else { "not a D-group".to_string() };
    println!("{:>3}  σ = ({})  {verdict}", g.name, sigma.join(", "));
    for c in rep.homomorphism.iter().filter(|c| !c.holds) {
        println!("       homomorphism component {} off by {}", c.component, c.witness_string());
    }
    Ok(())
}

fn main() -> dtau::Result<()> {
    let a1 = AffineVariety::parse("A1", &["x"], &[], BaseField::Qt)?;
    let ga = AffineAlgGroup::parse("Ga", a1, &["x1 + x2"], &["-x"], &["0"])?;
    for sigma in ["0", "x", "t*x", "x^2"] {
        report(&ga, &[sigma])?;
    }

    let gm_v = AffineVariety::parse("Gm", &["x", "w"], &["x*w - 1"], BaseField::Qt)?;
    let gm = AffineAlgGroup::parse("Gm", gm_v, &["x1*x2", "w1*w2"], &["w", "x"], &["1", "1"])?;
    report(&gm, &["0", "0"])?;
    report(&gm, &["3*x", "-3*w"])?;

    let b_v = AffineVariety::parse("B", &["x", "y", "w"], &["x*w - 1"], BaseField::Qt)?;
    let b = AffineAlgGroup::parse("B", b_v, &["x1*x2", "x1*y2 + y1", "w1*w2"], &["w", "-w*y", "x"], &["1", "0", "1"])?;
    report(&b, &["0", "2*y - 3*(1 - x)", "0"])?;
    report(&b, &["0", "y^2", "0"])?;
    Ok(())
}
