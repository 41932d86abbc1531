//! Manifolds given by charts glued along rational transition maps.
//!
//! Chart domains are not represented: every gluing identity is checked as an
//! identity of rational maps, and evaluating at a point where a denominator
//! vanishes is an error.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basefield::{int, rat, BaseField, RatFunc};
use crate::error::{Error, Result};
use crate::prolong::{derive_point, doubled_names, prolong_map, FiberPoint, ProlongKind};
use crate::polyalg::RatMap;

pub type ChartId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtlasManifold {
    pub name: String,
    pub dim: usize,
    pub vars: Vec<String>,
    pub charts: Vec<ChartId>,
    pub field: BaseField,
    transitions: BTreeMap<(ChartId, ChartId), RatMap>,
}

impl AtlasManifold {
    pub fn new(
        name: impl Into<String>,
        vars: Vec<String>,
        charts: Vec<ChartId>,
        transitions: BTreeMap<(ChartId, ChartId), RatMap>,
        field: BaseField,
    ) -> Result<Self> {
        let name = name.into();
        let dim = vars.len();
        for (&(i, j), phi) in &transitions {
            if !charts.contains(&i) || !charts.contains(&j) {
                return Err(Error::Model(format!("atlas `{name}`: transition ({i},{j}) names an undeclared chart")));
            }
            if phi.in_arity() != dim || phi.out_arity() != dim {
                return Err(Error::ArityMismatch { expected: dim, found: phi.out_arity() });
            }
            if !phi.defined_over(field) {
                return Err(Error::TInQField);
            }
        }
        Ok(AtlasManifold { name, dim, vars, charts, field, transitions })
    }

    /// `φ_{i,j}`; the identity when `i == j` and nothing is stored.
    pub fn transition(&self, i: ChartId, j: ChartId) -> Option<RatMap> {
        match self.transitions.get(&(i, j)) {
            Some(m) => Some(m.clone()),
            None if i == j && self.charts.contains(&i) => Some(RatMap::identity(self.dim)),
            None => None,
        }
    }

    pub fn transitions(&self) -> &BTreeMap<(ChartId, ChartId), RatMap> {
        &self.transitions
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleFailure {
    /// `φ_{j,k} ∘ φ_{i,j} ≠ φ_{i,k}`.
    Composition { i: ChartId, j: ChartId, k: ChartId },
    /// `φ_{j,i} ∘ φ_{i,j} ≠ id`.
    Inverse { i: ChartId, j: ChartId },
    /// A stored `φ_{i,i}` that is not the identity.
    Identity { i: ChartId },
    /// Composition hit an identically vanishing denominator.
    Degenerate { i: ChartId, j: ChartId, k: ChartId },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CocycleReport {
    pub triples_checked: usize,
    pub inverses_checked: usize,
    pub failures: Vec<CocycleFailure>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_cocycle(m: &AtlasManifold) -> CocycleReport {
    let mut report = CocycleReport::default();
    let id = RatMap::identity(m.dim);
    for &i in &m.charts {
        if let Some(phi) = m.transitions.get(&(i, i)) {
            if !phi.equivalent(&id) {
                report.failures.push(CocycleFailure::Identity { i });
            }
        }
    }
    for &i in &m.charts {
        for &j in &m.charts {
            if i == j {
                continue;
            }
            let Some(phi_ij) = m.transitions.get(&(i, j)) else { continue };
            if let Some(phi_ji) = m.transitions.get(&(j, i)) {
                if i < j {
                    report.inverses_checked += 1;
                    match phi_ji.compose(phi_ij) {
                        Ok(c) if c.equivalent(&id) => {}
                        Ok(_) => report.failures.push(CocycleFailure::Inverse { i, j }),
                        Err(_) => report.failures.push(CocycleFailure::Degenerate { i, j, k: i }),
                    }
                }
            }
            for &k in &m.charts {
                if k == j || k == i {
                    continue;
                }
                let (Some(phi_jk), Some(phi_ik)) = (m.transitions.get(&(j, k)), m.transitions.get(&(i, k))) else {
                    continue;
                };
                report.triples_checked += 1;
                match phi_jk.compose(phi_ij) {
                    Ok(c) if c.equivalent(phi_ik) => {}
                    Ok(_) => report.failures.push(CocycleFailure::Composition { i, j, k }),
                    Err(_) => report.failures.push(CocycleFailure::Degenerate { i, j, k }),
                }
            }
        }
    }
    report
}

/// Gluing data of `T(M)` or `τ(M)`: the same charts with transitions
/// `D(φ_{i,j})` or `τ(φ_{i,j})` in doubled variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProlongedAtlas {
    pub base: AtlasManifold,
    pub kind: ProlongKind,
    pub transitions: BTreeMap<(ChartId, ChartId), RatMap>,
}

impl ProlongedAtlas {
    /// The prolonged gluing data viewed as an atlas of dimension `2r`.
    pub fn as_manifold(&self) -> AtlasManifold {
        let prefix = match self.kind {
            ProlongKind::Tangent => "T",
            ProlongKind::Tau => "tau",
        };
        AtlasManifold {
            name: format!("{prefix}({})", self.base.name),
            dim: 2 * self.base.dim,
            vars: doubled_names(&self.base.vars),
            charts: self.base.charts.clone(),
            field: self.base.field,
            transitions: self.transitions.clone(),
        }
    }
}

fn prolong_atlas(m: &AtlasManifold, kind: ProlongKind) -> Result<ProlongedAtlas> {
    let input = check_cocycle(m);
    if !input.passed() {
        return Err(Error::CocycleViolation(format!("input atlas `{}`: {:?}", m.name, input.failures)));
    }
    let transitions = m
        .transitions
        .iter()
        .map(|(&k, phi)| Ok((k, prolong_map(phi, kind)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let out = ProlongedAtlas { base: m.clone(), kind, transitions };
    let report = check_cocycle(&out.as_manifold());
    if !report.passed() {
        return Err(Error::CocycleViolation(format!("{:?}", report.failures)));
    }
    Ok(out)
}

pub fn tangent_atlas(m: &AtlasManifold) -> Result<ProlongedAtlas> {
    prolong_atlas(m, ProlongKind::Tangent)
}

pub fn tau_atlas(m: &AtlasManifold) -> Result<ProlongedAtlas> {
    prolong_atlas(m, ProlongKind::Tau)
}

/// `σ_M(a, u) = (a, u + ∂a)` in a single chart.
pub fn sigma_pointwise(m: &AtlasManifold, chart: ChartId, a: &[RatFunc], u: &[RatFunc]) -> Result<FiberPoint> {
    if !m.charts.contains(&chart) {
        return Err(Error::Model(format!("atlas `{}` has no chart {chart}", m.name)));
    }
    if a.len() != m.dim || u.len() != m.dim {
        return Err(Error::ArityMismatch { expected: m.dim, found: a.len().max(u.len()) });
    }
    let da = derive_point(a, m.field);
    Ok(FiberPoint { base: a.to_vec(), fiber: u.iter().zip(&da).map(|(x, y)| x.add(y)).collect() })
}

/// Transports `(a, u)` from chart `i` to chart `j` through `T(M)`, applies
/// `σ` on both sides and checks the images are glued by `τ(M)`.
pub fn sigma_compatible(m: &AtlasManifold, i: ChartId, j: ChartId, a: &[RatFunc], u: &[RatFunc]) -> Result<bool> {
    let phi = m
        .transition(i, j)
        .ok_or_else(|| Error::Model(format!("atlas `{}` has no transition ({i},{j})", m.name)))?;
    let d_phi = prolong_map(&phi, ProlongKind::Tangent)?;
    let tau_phi = prolong_map(&phi, ProlongKind::Tau)?;
    let au: Vec<RatFunc> = a.iter().chain(u).cloned().collect();
    let image = d_phi.eval(&au)?;
    let (aj, v) = image.split_at(m.dim);
    let left = sigma_pointwise(m, i, a, u)?;
    let right = sigma_pointwise(m, j, aj, v)?;
    let transported = tau_phi.eval(&left.concat())?;
    Ok(transported == right.concat())
}

/// Chartwise representatives `f_{i,j}` of a map from chart `i` of the source
/// to chart `j` of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartMap {
    pub reps: BTreeMap<(ChartId, ChartId), RatMap>,
}

fn sample_points(dim: usize, field: BaseField, count: usize, seed: u64) -> Vec<Vec<RatFunc>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    let c = RatFunc::from(rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)));
                    match field {
                        BaseField::Q => c,
                        BaseField::Qt => {
                            let s = RatFunc::from(int(rng.gen_range(-3..=3)));
                            c.add(&s.mul(&RatFunc::t()))
                        }
                    }
                })
                .collect()
        })
        .collect()
}

fn agree_at(lhs: &RatMap, rhs: &RatMap, p: &[RatFunc]) -> Result<Option<bool>> {
    match (lhs.eval(p), rhs.eval(p)) {
        (Ok(a), Ok(b)) => Ok(Some(a == b)),
        (Err(Error::DenominatorVanishes), _) | (_, Err(Error::DenominatorVanishes)) => Ok(None),
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}

/// Prolongs chartwise representatives, `f_{i,j} ↦ τ(f_{i,j})` (or `D`), after
/// spot-checking `ψ_{j,j'} ∘ f_{i,j} = f_{i',j'} ∘ φ_{i,i'}` and its prolonged
/// counterpart at sampled points.
pub fn prolong_map_between_atlases(
    source: &AtlasManifold,
    target: &AtlasManifold,
    f: &ChartMap,
    kind: ProlongKind,
    samples: usize,
    seed: u64,
) -> Result<ChartMap> {
    let prolonged = f
        .reps
        .iter()
        .map(|(&k, m)| Ok((k, prolong_map(m, kind)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let field = source.field.max(target.field);
    let points = sample_points(2 * source.dim, field, samples, seed);
    for (&(i, j), f_ij) in &f.reps {
        for (&(i2, j2), f_i2j2) in &f.reps {
            if (i, j) == (i2, j2) {
                continue;
            }
            let (Some(phi), Some(psi)) = (source.transition(i, i2), target.transition(j, j2)) else {
                continue;
            };
            let lhs = psi.compose(f_ij)?;
            let rhs = f_i2j2.compose(&phi)?;
            let tau_lhs = prolong_map(&psi, kind)?.compose(&prolonged[&(i, j)])?;
            let tau_rhs = prolonged[&(i2, j2)].compose(&prolong_map(&phi, kind)?)?;
            for p in &points {
                let base = &p[..source.dim];
                if agree_at(&lhs, &rhs, base)? == Some(false) || agree_at(&tau_lhs, &tau_rhs, p)? == Some(false) {
                    return Err(Error::ChartIncompatibility(format!(
                        "representatives ({i},{j}) and ({i2},{j2}) disagree at a sampled point"
                    )));
                }
            }
        }
    }
    Ok(ChartMap { reps: prolonged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_ratfn;

    fn rmap(exprs: &[&str], vars: &[&str], field: BaseField) -> RatMap {
        let v: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        RatMap::new(v.len(), exprs.iter().map(|e| parse_ratfn(e, &v, field).unwrap()).collect()).unwrap()
    }

    fn line(phi12: &str, phi21: &str, field: BaseField) -> AtlasManifold {
        let mut tr = BTreeMap::new();
        tr.insert((1, 2), rmap(&[phi12], &["x"], field));
        tr.insert((2, 1), rmap(&[phi21], &["x"], field));
        AtlasManifold::new("P1", vec!["x".into()], vec![1, 2], tr, field).unwrap()
    }

    fn r(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    #[test]
    fn cocycle_examples() {
        let p1 = line("1/x", "1/x", BaseField::Q);
        let rep = check_cocycle(&p1);
        assert!(rep.passed());
        assert_eq!(rep.inverses_checked, 1);
        let single = AtlasManifold::new("A", vec!["x".into()], vec![1], BTreeMap::new(), BaseField::Q).unwrap();
        assert!(check_cocycle(&single).passed());
        let bad = line("x + 1", "x + 2", BaseField::Q);
        assert_eq!(check_cocycle(&bad).failures, vec![CocycleFailure::Inverse { i: 1, j: 2 }]);
    }

    #[test]
    fn three_chart_composition() {
        let mut tr = BTreeMap::new();
        tr.insert((1, 2), rmap(&["x + 1"], &["x"], BaseField::Q));
        tr.insert((2, 3), rmap(&["2*x"], &["x"], BaseField::Q));
        tr.insert((1, 3), rmap(&["2*x + 2"], &["x"], BaseField::Q));
        let m = AtlasManifold::new("M", vec!["x".into()], vec![1, 2, 3], tr.clone(), BaseField::Q).unwrap();
        let rep = check_cocycle(&m);
        assert!(rep.passed());
        assert_eq!(rep.triples_checked, 1);
        tr.insert((1, 3), rmap(&["2*x + 1"], &["x"], BaseField::Q));
        let m = AtlasManifold::new("M", vec!["x".into()], vec![1, 2, 3], tr, BaseField::Q).unwrap();
        assert_eq!(check_cocycle(&m).failures, vec![CocycleFailure::Composition { i: 1, j: 2, k: 3 }]);
    }

    #[test]
    fn prolonged_atlases() {
        let p1 = line("1/x", "1/x", BaseField::Q);
        let t = tangent_atlas(&p1).unwrap();
        let names: Vec<String> = vec!["x".into(), "u_x".into()];
        assert_eq!(t.transitions[&(1, 2)].to_strings(&names), ["1/x", "-u_x/x^2"]);
        assert_eq!(tau_atlas(&p1).unwrap().transitions, t.transitions);
        let id = AtlasManifold::new("A", vec!["x".into()], vec![1], BTreeMap::new(), BaseField::Q).unwrap();
        assert!(tangent_atlas(&id).unwrap().transitions.is_empty());
        assert!(matches!(tangent_atlas(&line("x + 1", "x + 2", BaseField::Q)), Err(Error::CocycleViolation(_))));
    }

    #[test]
    fn twisted_atlas_over_qt() {
        let m = line("t/x", "t/x", BaseField::Qt);
        assert!(check_cocycle(&m).passed());
        let tau = tau_atlas(&m).unwrap();
        let names: Vec<String> = vec!["x".into(), "u_x".into()];
        assert_eq!(tau.transitions[&(1, 2)].to_strings(&names), ["t/x", "(x - t*u_x)/x^2"]);
        assert_ne!(tau.transitions, tangent_atlas(&m).unwrap().transitions);
    }

    #[test]
    fn sigma_examples() {
        let p1 = line("1/x", "1/x", BaseField::Qt);
        let s = sigma_pointwise(&p1, 1, &[r("t^2")], &[r("0")]).unwrap();
        assert_eq!(s.fiber, vec![r("2*t")]);
        let q = line("1/x", "1/x", BaseField::Q);
        let s = sigma_pointwise(&q, 1, &[r("3")], &[r("5")]).unwrap();
        assert_eq!(s.fiber, vec![r("5")]);
        assert!(sigma_compatible(&p1, 1, 2, &[r("t")], &[r("1")]).unwrap());
        assert_eq!(sigma_compatible(&p1, 1, 2, &[r("0")], &[r("1")]), Err(Error::DenominatorVanishes));
    }

    #[test]
    fn maps_between_atlases() {
        let a = AtlasManifold::new("A", vec!["x".into()], vec![1], BTreeMap::new(), BaseField::Qt).unwrap();
        let mut reps = BTreeMap::new();
        reps.insert((1, 1), rmap(&["x^2"], &["x"], BaseField::Qt));
        let out = prolong_map_between_atlases(&a, &a, &ChartMap { reps }, ProlongKind::Tau, 5, 1).unwrap();
        let names: Vec<String> = vec!["x".into(), "u_x".into()];
        assert_eq!(out.reps[&(1, 1)].to_strings(&names), ["x^2", "2*x*u_x"]);

        // x ↦ x on P1, expressed in both charts.
        let p1 = line("1/x", "1/x", BaseField::Qt);
        let mut reps = BTreeMap::new();
        reps.insert((1, 1), rmap(&["x"], &["x"], BaseField::Qt));
        reps.insert((2, 2), rmap(&["x"], &["x"], BaseField::Qt));
        let out = prolong_map_between_atlases(&p1, &p1, &ChartMap { reps: reps.clone() }, ProlongKind::Tau, 8, 7).unwrap();
        assert_eq!(out.reps[&(1, 1)], RatMap::identity(2));
        reps.insert((2, 2), rmap(&["2*x"], &["x"], BaseField::Qt));
        assert!(matches!(
            prolong_map_between_atlases(&p1, &p1, &ChartMap { reps }, ProlongKind::Tau, 8, 7),
            Err(Error::ChartIncompatibility(_))
        ));
    }
}
