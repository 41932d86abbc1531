//! Ideal membership through a reduced Gröbner basis: the twisted cubic.

use dtau::basefield::BaseField;
use dtau::ideals::{buchberger, normal_form, IdealBasis, TermOrder, DEFAULT_DEGREE_CAP};
use dtau::polyalg::parse_poly;

fn main() -> dtau::Result<()> {
    let vars: Vec<String> = ["x", "y", "z"].map(String::from).to_vec();
    let gens = ["y - x^2", "z - x^3"]
        .iter()
        .map(|g| parse_poly(g, &vars, BaseField::Q))
        .collect::<dtau::Result<Vec<_>>>()?;
    let ideal = IdealBasis::new(3, gens)?;

    for (label, order) in [("grevlex", TermOrder::grevlex(3)), ("lex", TermOrder::lex(3))] {
        let gb = buchberger(&ideal, &order, DEFAULT_DEGREE_CAP)?;
        println!("{label}:");
        for g in gb.gens() {
            println!("  {}", g.to_string_with(&vars));
        }
    }

    let gb = buchberger(&ideal, &TermOrder::grevlex(3), DEFAULT_DEGREE_CAP)?;
    for p in ["z^2 - y^3", "x*z - y^2", "x + y + z"] {
        let nf = normal_form(&parse_poly(p, &vars, BaseField::Q)?, &gb)?;
        println!("NF({p}) = {}", nf.to_string_with(&vars));
    }
    Ok(())
}
