//! Loading a JSON model and running checks against its named objects.

use std::path::Path;

use dtau::cli::Model;
use dtau::dgroup::check_group_axioms;
use dtau::ideals::DEFAULT_DEGREE_CAP;
use dtau::prolong::tau_variety;

fn main() -> dtau::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("models");
    let circles = Model::load(&dir.join("circle_t.json"))?;
    for name in ["V", "W", "cusp"] {
        let tau = tau_variety(circles.variety(name)?);
        println!("τ({name}): {}", tau.total.gen_strings().join(", "));
    }

    let groups = Model::load(&dir.join("groups.json"))?;
    for name in ["Ga", "Gm", "B"] {
        let rep = check_group_axioms(groups.group(name)?, DEFAULT_DEGREE_CAP)?;
        println!("{name}: group axioms {}", if rep.passed() { "hold" } else { "fail" });
    }
    Ok(())
}
