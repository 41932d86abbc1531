//! The prolonged variety τ(V) of a circle of radius depending on `t`, and
//! a ℚ(t)-point whose prolongation lands on it.

use dtau::basefield::{BaseField, RatFunc};
use dtau::prolong::{check_nabla_in_tau, fiber_solve, tangent_variety, tau_variety, AffineVariety};

fn main() -> dtau::Result<()> {
    let v = AffineVariety::parse("V", &["x", "y"], &["x^2 + y^2 - t"], BaseField::Qt)?;
    let tau = tau_variety(&v);
    let tangent = tangent_variety(&v);
    println!("τ(V): {}", tau.total.gen_strings().join(", "));
    println!("T(V): {}", tangent.total.gen_strings().join(", "));

    // x² + y² − t has no ℚ(t)-points, so move to radius² = t² + 1,
    // which carries the point (t, 1).
    let w = AffineVariety::parse("W", &["x", "y"], &["x^2 + y^2 - (t^2 + 1)"], BaseField::Qt)?;
    let a = [RatFunc::t(), RatFunc::one()];
    println!("(a, ∂a) ∈ τ(W) at a = (t, 1): {}", check_nabla_in_tau(&w, &a)?);

    let fiber = fiber_solve(&w, &a)?;
    let show = |v: &[RatFunc]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    println!("τ(W)_a = ({}) + span of {} vector(s)", show(&fiber.particular), fiber.dim());
    for k in &fiber.kernel {
        println!("  ({})", show(k));
    }
    Ok(())
}
