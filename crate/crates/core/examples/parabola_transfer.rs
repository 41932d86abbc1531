//! Transporting τ-fibers along the correspondence y = x².

use dtau::basefield::{BaseField, RatFunc};
use dtau::polyalg::parse_poly;
use dtau::prolong::{correspondence_transfer, AffineVariety, Correspondence};

fn main() -> dtau::Result<()> {
    let l = AffineVariety::parse("L", &["x"], &[], BaseField::Qt)?;
    let r = AffineVariety::parse("R", &["y"], &[], BaseField::Qt)?;
    let vars: Vec<String> = ["x", "y"].map(String::from).to_vec();
    let c = Correspondence::new("parabola", l, r, vec![parse_poly("y - x^2", &vars, BaseField::Qt)?])?;

    for a in ["t", "1/t", "0"] {
        let a = RatFunc::parse(a)?;
        let b = a.mul(&a);
        let tr = correspondence_transfer(&c, std::slice::from_ref(&a), std::slice::from_ref(&b))?;
        print!("at ({a}, {b}): v = {}·u", tr.forward.matrix[0][0]);
        match &tr.inverse {
            Some(inv) => println!(", inverse u = {}·v", inv.matrix[0][0]),
            None => println!(", not invertible"),
        }
    }
    Ok(())
}
