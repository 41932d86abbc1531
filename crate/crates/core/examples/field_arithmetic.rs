//! Arithmetic in ℚ(t) with the derivation `d/dt`.

use dtau::basefield::RatFunc;

fn main() -> dtau::Result<()> {
    let a = RatFunc::parse("(t^2 - 1)/(2*t + 2)")?;
    let b = RatFunc::parse("1/t")?;
    println!("a        = {a}");
    println!("a + b    = {}", a.add(&b));
    println!("a * b    = {}", a.mul(&b));
    println!("a / b    = {}", a.div(&b)?);
    println!("∂(1/t)   = {}", b.derive());

    // Leibniz holds exactly
    let lhs = a.mul(&b).derive();
    let rhs = a.derive().mul(&b).add(&a.mul(&b.derive()));
    println!("∂(ab) = ∂a·b + a·∂b: {}", lhs == rhs);
    Ok(())
}
