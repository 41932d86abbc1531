//! The prolonged map τ(F) commutes with ∇: τ(F)(a, ∂a) = (F(a), ∂F(a)).

use dtau::basefield::{BaseField, RatFunc};
use dtau::polyalg::{parse_poly, PolyMap};
use dtau::prolong::{derive_point, doubled_names, tangent_map, tau_map};

fn main() -> dtau::Result<()> {
    let vars: Vec<String> = ["x", "y"].map(String::from).to_vec();
    let f = PolyMap::new(
        2,
        vec![parse_poly("t*x^2 + y", &vars, BaseField::Qt)?, parse_poly("x*y - t^2", &vars, BaseField::Qt)?],
    )?;
    let doubled = doubled_names(&vars);
    println!("τ(F) = {:?}", tau_map(&f).to_strings(&doubled));
    println!("D(F) = {:?}", tangent_map(&f).to_strings(&doubled));

    let a = [RatFunc::parse("1/(t + 1)")?, RatFunc::parse("t^3")?];
    let mut nabla_a = a.to_vec();
    nabla_a.extend(derive_point(&a, BaseField::Qt));
    let lhs = tau_map(&f).eval(&nabla_a)?;

    let fa = f.eval(&a)?;
    let mut rhs = fa.clone();
    rhs.extend(derive_point(&fa, BaseField::Qt));
    for (l, r) in lhs.iter().zip(&rhs) {
        println!("{l}  =  {r}");
    }
    assert_eq!(lhs, rhs);
    Ok(())
}
