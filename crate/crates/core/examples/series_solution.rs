//! Truncated power-series solutions of ∂a = σ(a) on a variety over ℚ.

use dtau::basefield::{int, rat, BaseField};
use dtau::polyalg::{parse_ratfn, RatMap};
use dtau::prolong::AffineVariety;
use dtau::series::solve_dpoint;

fn main() -> dtau::Result<()> {
    // ∂x = x, x(0) = 1: the exponential
    let line = AffineVariety::parse("A1", &["x"], &[], BaseField::Q)?;
    let sigma = RatMap::new(1, vec![parse_ratfn("x", line.vars(), BaseField::Q)?])?;
    let sol = solve_dpoint(&line, &sigma, &[int(1)], 8)?;
    println!("exp:    {}", sol.point.components[0]);

    // ∂(x, y) = (-y, x) on the unit circle, starting at (1, 0)
    let circle = AffineVariety::parse("S1", &["x", "y"], &["x^2 + y^2 - 1"], BaseField::Q)?;
    let sigma = RatMap::new(
        2,
        vec![parse_ratfn("-y", circle.vars(), BaseField::Q)?, parse_ratfn("x", circle.vars(), BaseField::Q)?],
    )?;
    let sol = solve_dpoint(&circle, &sigma, &[int(1), int(0)], 8)?;
    println!("cos:    {}", sol.point.components[0]);
    println!("sin:    {}", sol.point.components[1]);
    println!("on S1 through order 8: {}", sol.residuals.passed);

    // a triangular field on the affine group
    let b = AffineVariety::parse("B", &["x", "y", "w"], &["x*w - 1"], BaseField::Q)?;
    let sigma = RatMap::new(
        3,
        ["0", "1 - x", "0"].iter().map(|e| parse_ratfn(e, b.vars(), BaseField::Q)).collect::<dtau::Result<_>>()?,
    )?;
    let sol = solve_dpoint(&b, &sigma, &[int(2), int(0), rat(1, 2)], 6)?;
    for (v, s) in b.vars().iter().zip(&sol.point.components) {
        println!("{v}(t) = {s}");
    }
    Ok(())
}
