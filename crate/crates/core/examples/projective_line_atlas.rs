//! The projective line glued from two charts by x ↦ 1/x, its prolonged
//! atlases, and the pointwise section σ(a, u) = (a, u) compared across charts.

use std::collections::BTreeMap;

use dtau::atlas::{check_cocycle, sigma_compatible, tangent_atlas, tau_atlas, AtlasManifold};
use dtau::basefield::{BaseField, RatFunc};
use dtau::polyalg::{parse_ratfn, RatMap};
use dtau::prolong::doubled_names;

fn main() -> dtau::Result<()> {
    let vars = vec!["x".to_string()];
    let inv = RatMap::new(1, vec![parse_ratfn("1/x", &vars, BaseField::Qt)?])?;
    let transitions = BTreeMap::from([((1, 2), inv.clone()), ((2, 1), inv)]);
    let p1 = AtlasManifold::new("P1", vars.clone(), vec![1, 2], transitions, BaseField::Qt)?;
    println!("cocycle: {}", check_cocycle(&p1).passed());

    let doubled = doubled_names(&vars);
    for atlas in [tangent_atlas(&p1)?, tau_atlas(&p1)?] {
        let phi = &atlas.transitions[&(1, 2)];
        println!("{:?} transition 1→2: {:?}", atlas.kind, phi.to_strings(&doubled));
    }

    let a = [RatFunc::parse("t + 1")?];
    let u = [RatFunc::parse("t^2")?];
    println!("σ compatible at a = {}, u = {}: {}", a[0], u[0], sigma_compatible(&p1, 1, 2, &a, &u)?);
    Ok(())
}
