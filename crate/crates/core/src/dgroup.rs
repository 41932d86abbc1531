//! Affine algebraic groups, their prolongations, and D-group structures.
//!
//! A group law `m` on `V ⊆ K^n` is a map `K^{2n} → K^n`; its arguments are
//! the two copies `x1…, x2…` of the coordinates (a coordinate `x` becomes `x1`
//! and `x2`). Every axiom is an identity of rational functions verified modulo
//! a Gröbner basis of the relevant product ideal, after cross-multiplying.

use serde::Serialize;

use crate::basefield::{BaseField, RatFunc};
use crate::error::{Error, Result};
use crate::ideals::{GroebnerBasis, TermOrder};
use crate::polyalg::{parse_ratfn, MultiPoly, RatFn, RatMap};
use crate::prolong::{derive_point, prolong_map, prolong_variety_kind, AffineVariety, ProlongKind};

/// Coordinate names of the `k`-th copy: `x` ↦ `x<k>`.
pub fn copy_names(vars: &[String], k: usize) -> Vec<String> {
    vars.iter().map(|v| format!("{v}{k}")).collect()
}

/// Names of `copies` consecutive copies of `vars`, numbered from 1.
pub fn product_names(vars: &[String], copies: usize) -> Vec<String> {
    (1..=copies).flat_map(|k| copy_names(vars, k)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineAlgGroup {
    pub name: String,
    pub variety: AffineVariety,
    pub mult: RatMap,
    pub inv: RatMap,
    pub identity: Vec<RatFunc>,
}

impl AffineAlgGroup {
    pub fn new(
        name: impl Into<String>,
        variety: AffineVariety,
        mult: RatMap,
        inv: RatMap,
        identity: Vec<RatFunc>,
    ) -> Result<Self> {
        let n = variety.ambient();
        if mult.in_arity() != 2 * n {
            return Err(Error::ArityMismatch { expected: 2 * n, found: mult.in_arity() });
        }
        for m in [&mult, &inv] {
            if m.out_arity() != n {
                return Err(Error::ArityMismatch { expected: n, found: m.out_arity() });
            }
            if !m.defined_over(variety.field()) {
                return Err(Error::TInQField);
            }
        }
        if inv.in_arity() != n {
            return Err(Error::ArityMismatch { expected: n, found: inv.in_arity() });
        }
        variety.require_point(&identity)?;
        Ok(AffineAlgGroup { name: name.into(), variety, mult, inv, identity })
    }

    /// Parses `mult` over the doubled names and `inv`, `identity` over the
    /// variety's own coordinates.
    pub fn parse(
        name: impl Into<String>,
        variety: AffineVariety,
        mult: &[&str],
        inv: &[&str],
        identity: &[&str],
    ) -> Result<Self> {
        let field = variety.field();
        let vars = variety.vars().to_vec();
        let doubled = product_names(&vars, 2);
        let mult = parse_map(mult, &doubled, field)?;
        let inv = parse_map(inv, &vars, field)?;
        let identity = identity
            .iter()
            .map(|s| crate::polyalg::parse_base_elem(s, field))
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, variety, mult, inv, identity)
    }

    pub fn dim(&self) -> usize {
        self.variety.ambient()
    }

    pub fn field(&self) -> BaseField {
        self.variety.field()
    }

    pub fn mul_points(&self, a: &[RatFunc], b: &[RatFunc]) -> Result<Vec<RatFunc>> {
        let ab: Vec<RatFunc> = a.iter().chain(b).cloned().collect();
        self.mult.eval(&ab)
    }

    pub fn inv_point(&self, a: &[RatFunc]) -> Result<Vec<RatFunc>> {
        self.inv.eval(a)
    }
}

pub(crate) fn parse_map(exprs: &[impl AsRef<str>], vars: &[String], field: BaseField) -> Result<RatMap> {
    let comps = exprs
        .iter()
        .map(|e| parse_ratfn(e.as_ref(), vars, field))
        .collect::<Result<Vec<_>>>()?;
    RatMap::new(vars.len(), comps)
}

/// One identity `lhs ≡ rhs` checked modulo an ideal. `witness` is the normal
/// form of `rhs·den(lhs) − lhs·den(rhs)`; it is zero iff the identity holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub condition: String,
    pub component: usize,
    pub holds: bool,
    #[serde(skip)]
    pub witness: MultiPoly,
    #[serde(skip)]
    pub vars: Vec<String>,
}

impl IdentityCheck {
    pub fn witness_string(&self) -> String {
        self.witness.to_string_with(&self.vars)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupAxiomReport {
    pub checks: Vec<IdentityCheck>,
}

impl GroupAxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// Groebner basis of `V^copies` in grevlex.
fn power_basis(v: &AffineVariety, copies: usize, cap: u32) -> Result<GroebnerBasis> {
    let mut prod = v.clone();
    for _ in 1..copies {
        prod = prod.product(v, v.name());
    }
    prod.groebner(&TermOrder::grevlex(prod.ambient()), cap)
}

fn compare(lhs: &RatFn, rhs: &RatFn, gb: &GroebnerBasis) -> Result<MultiPoly> {
    for den in [lhs.denom(), rhs.denom()] {
        if den.as_constant().is_none() && gb.contains(den)? {
            return Err(Error::IndeterminateOnVariety);
        }
    }
    let diff = rhs.numer().mul(lhs.denom()).sub(&lhs.numer().mul(rhs.denom()));
    gb.normal_form(&diff)
}

fn check_maps(
    out: &mut Vec<IdentityCheck>,
    condition: &str,
    lhs: &RatMap,
    rhs: &RatMap,
    gb: &GroebnerBasis,
    vars: &[String],
) -> Result<()> {
    for (k, (l, r)) in lhs.components().iter().zip(rhs.components()).enumerate() {
        let witness = compare(l, r, gb)?;
        out.push(IdentityCheck {
            condition: condition.to_string(),
            component: k,
            holds: witness.is_zero(),
            witness,
            vars: vars.to_vec(),
        });
    }
    Ok(())
}

/// Coordinates `offset..offset+n` of `K^total`.
fn projection(total: usize, offset: usize, n: usize) -> RatMap {
    let comps = (0..n).map(|i| RatFn::from_poly(MultiPoly::var(total, offset + i))).collect();
    RatMap::new(total, comps).expect("consistent arity")
}

fn constant_map(total: usize, point: &[RatFunc]) -> RatMap {
    RatMap::new(total, point.iter().map(|c| RatFn::constant(total, c.clone())).collect()).expect("consistent arity")
}

fn shifted(m: &RatMap, total: usize, offset: usize) -> RatMap {
    let mapping: Vec<usize> = (0..m.in_arity()).map(|i| offset + i).collect();
    m.rename(total, &mapping)
}

/// Closure, associativity, two-sided identity and two-sided inverse, each
/// componentwise modulo the ideal of the appropriate power of `V`.
pub fn check_group_axioms(g: &AffineAlgGroup, cap: u32) -> Result<GroupAxiomReport> {
    let n = g.dim();
    let v = &g.variety;
    let vars = v.vars();
    let (gb1, gb2, gb3) = (power_basis(v, 1, cap)?, power_basis(v, 2, cap)?, power_basis(v, 3, cap)?);
    let (names1, names2, names3) = (vars.to_vec(), product_names(vars, 2), product_names(vars, 3));
    let mut checks = Vec::new();

    let zero = |k: usize| RatMap::zero(k, v.gens().len());
    let gens_map = RatMap::new(n, v.gens().iter().cloned().map(RatFn::from_poly).collect())?;
    check_maps(&mut checks, "closure_mult", &gens_map.compose(&g.mult)?, &zero(2 * n), &gb2, &names2)?;
    check_maps(&mut checks, "closure_inv", &gens_map.compose(&g.inv)?, &zero(n), &gb1, &names1)?;

    let left = g.mult.compose(&shifted(&g.mult, 3 * n, 0).stack(&projection(3 * n, 2 * n, n))?)?;
    let right = g.mult.compose(&projection(3 * n, 0, n).stack(&shifted(&g.mult, 3 * n, n))?)?;
    check_maps(&mut checks, "associativity", &left, &right, &gb3, &names3)?;

    let id = RatMap::identity(n);
    let e = constant_map(n, &g.identity);
    check_maps(&mut checks, "left_identity", &g.mult.compose(&e.stack(&id)?)?, &id, &gb1, &names1)?;
    check_maps(&mut checks, "right_identity", &g.mult.compose(&id.stack(&e)?)?, &id, &gb1, &names1)?;
    check_maps(&mut checks, "right_inverse", &g.mult.compose(&id.stack(&g.inv)?)?, &e, &gb1, &names1)?;
    check_maps(&mut checks, "left_inverse", &g.mult.compose(&g.inv.stack(&id)?)?, &e, &gb1, &names1)?;
    Ok(GroupAxiomReport { checks })
}

/// `τ(G)` (or `T(G)`): the prolonged variety with group law `τ(m)`, whose
/// arguments are interleaved as `((x, u), (y, v))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauGroup {
    pub base: AffineAlgGroup,
    pub kind: ProlongKind,
    pub group: AffineAlgGroup,
}

/// `τ(m)` in the interleaved argument order `(x, u_x, y, u_y)`.
fn prolonged_mult(m: &RatMap, n: usize, kind: ProlongKind) -> Result<RatMap> {
    // prolong_map orders its arguments (x, y, u_x, u_y)
    let mapping: Vec<usize> = (0..4 * n)
        .map(|i| match i / n {
            0 => i,
            1 => i + n,
            2 => i - n,
            _ => i,
        })
        .collect();
    Ok(prolong_map(m, kind)?.rename(4 * n, &mapping))
}

pub fn prolong_group(g: &AffineAlgGroup, kind: ProlongKind, cap: u32) -> Result<(TauGroup, GroupAxiomReport)> {
    if !check_group_axioms(g, cap)?.passed() {
        return Err(Error::GroupAxiomsFailed(g.name.clone()));
    }
    let n = g.dim();
    let total = prolong_variety_kind(&g.variety, kind).total;
    let mult = prolonged_mult(&g.mult, n, kind)?;
    let inv = prolong_map(&g.inv, kind)?;
    let mut identity = g.identity.clone();
    identity.extend(match kind {
        ProlongKind::Tau => derive_point(&g.identity, g.field()),
        ProlongKind::Tangent => vec![RatFunc::zero(); n],
    });
    let prefix = match kind {
        ProlongKind::Tangent => "T",
        ProlongKind::Tau => "tau",
    };
    let group = AffineAlgGroup::new(format!("{prefix}({})", g.name), total, mult, inv, identity)?;
    let report = check_group_axioms(&group, cap)?;
    if !report.passed() {
        return Err(Error::GroupAxiomsFailed(group.name.clone()));
    }
    Ok((TauGroup { base: g.clone(), kind, group }, report))
}

pub fn tau_group(g: &AffineAlgGroup, cap: u32) -> Result<(TauGroup, GroupAxiomReport)> {
    prolong_group(g, ProlongKind::Tau, cap)
}

pub fn tangent_group(g: &AffineAlgGroup, cap: u32) -> Result<(TauGroup, GroupAxiomReport)> {
    prolong_group(g, ProlongKind::Tangent, cap)
}

/// `s(g) = (g, σ(g))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGroupSection {
    pub name: String,
    pub sigma: RatMap,
}

impl DGroupSection {
    pub fn new(name: impl Into<String>, g: &AffineAlgGroup, sigma: RatMap) -> Result<Self> {
        let n = g.dim();
        if sigma.in_arity() != n || sigma.out_arity() != n {
            return Err(Error::ArityMismatch { expected: n, found: sigma.out_arity() });
        }
        if !sigma.defined_over(g.field()) {
            return Err(Error::TInQField);
        }
        sigma.eval(&g.identity)?;
        Ok(DGroupSection { name: name.into(), sigma })
    }

    pub fn parse(name: impl Into<String>, g: &AffineAlgGroup, sigma: &[&str]) -> Result<Self> {
        let sigma = parse_map(sigma, g.variety.vars(), g.field())?;
        Self::new(name, g, sigma)
    }

    /// `s(a) = (a, σ(a))`.
    pub fn apply(&self, a: &[RatFunc]) -> Result<Vec<RatFunc>> {
        let mut out = a.to_vec();
        out.extend(self.sigma.eval(a)?);
        Ok(out)
    }
}

/// `a ↦ (a, 0)`: a D-group structure on `T(G)`, and on `τ(G)` over ℚ.
pub fn zero_section(g: &AffineAlgGroup) -> DGroupSection {
    let n = g.dim();
    DGroupSection { name: "zero".into(), sigma: RatMap::zero(n, n) }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGroup {
    pub group: AffineAlgGroup,
    pub section: DGroupSection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGroupReport {
    pub kind: ProlongKind,
    pub section: Vec<IdentityCheck>,
    pub homomorphism: Vec<IdentityCheck>,
}

impl DGroupReport {
    pub fn section_passed(&self) -> bool {
        self.section.iter().all(|c| c.holds)
    }

    pub fn homomorphism_passed(&self) -> bool {
        self.homomorphism.iter().all(|c| c.holds)
    }

    pub fn passed(&self) -> bool {
        self.section_passed() && self.homomorphism_passed()
    }
}

/// Section condition `Q(x, σ(x)) ≡ 0 mod I(V)` for every generator `Q` of
/// `τ(V)`, and homomorphism condition
/// `σ(m(x,y)) ≡ Dm_{(x,y)}·(σ(x), σ(y)) + m^∂(x,y) mod I(V×V)`.
pub fn check_dgroup(g: &AffineAlgGroup, s: &DGroupSection, cap: u32) -> Result<DGroupReport> {
    check_dgroup_kind(g, s, ProlongKind::Tau, cap)
}

pub fn check_dgroup_kind(g: &AffineAlgGroup, s: &DGroupSection, kind: ProlongKind, cap: u32) -> Result<DGroupReport> {
    let n = g.dim();
    let v = &g.variety;
    let gb1 = power_basis(v, 1, cap)?;
    let gb2 = power_basis(v, 2, cap)?;

    let prolonged = prolong_variety_kind(v, kind);
    let graph = RatMap::identity(n).stack(&s.sigma)?;
    let q = RatMap::new(2 * n, prolonged.total.gens().iter().cloned().map(RatFn::from_poly).collect())?;
    let mut section = Vec::new();
    check_maps(
        &mut section,
        "section",
        &RatMap::zero(n, q.out_arity()),
        &q.compose(&graph)?,
        &gb1,
        v.vars(),
    )?;

    let lhs = s.sigma.compose(&g.mult)?;
    let sigma_both = RatMap::identity(2 * n)
        .stack(&shifted(&s.sigma, 2 * n, 0))?
        .stack(&shifted(&s.sigma, 2 * n, n))?;
    let rhs = prolong_map(&g.mult, kind)?.compose(&sigma_both)?.slice(n..2 * n);
    let mut homomorphism = Vec::new();
    check_maps(&mut homomorphism, "homomorphism", &lhs, &rhs, &gb2, &product_names(v.vars(), 2))?;
    Ok(DGroupReport { kind, section, homomorphism })
}

impl DGroup {
    pub fn check(&self, cap: u32) -> Result<DGroupReport> {
        check_dgroup(&self.group, &self.section, cap)
    }
}

/// `∇(m(a,b)) = τ(m)(∇a, ∇b)`.
pub fn nabla_hom_check(g: &AffineAlgGroup, a: &[RatFunc], b: &[RatFunc]) -> Result<bool> {
    g.variety.require_point(a)?;
    g.variety.require_point(b)?;
    let field = g.field();
    let ab = g.mul_points(a, b)?;
    let mut lhs = ab.clone();
    lhs.extend(derive_point(&ab, field));
    let arg: Vec<RatFunc> = a
        .iter()
        .chain(b)
        .cloned()
        .chain(derive_point(a, field))
        .chain(derive_point(b, field))
        .collect();
    Ok(prolong_map(&g.mult, ProlongKind::Tau)?.eval(&arg)? == lhs)
}

/// Membership in `(G,s)^∂ = {g : σ(g) = ∂g}`.
pub fn dpoint_check(d: &DGroup, g: &[RatFunc]) -> Result<bool> {
    d.group.variety.require_point(g)?;
    Ok(d.section.sigma.eval(g)? == derive_point(g, d.group.field()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::DEFAULT_DEGREE_CAP as CAP;
    use crate::polyalg::parse_poly;

    fn r(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    fn pt(s: &[&str]) -> Vec<RatFunc> {
        s.iter().map(|x| r(x)).collect()
    }

    pub(crate) fn ga(field: BaseField) -> AffineAlgGroup {
        let v = AffineVariety::parse("A1", &["x"], &[], field).unwrap();
        AffineAlgGroup::parse("Ga", v, &["x1 + x2"], &["-x"], &["0"]).unwrap()
    }

    pub(crate) fn gm(field: BaseField) -> AffineAlgGroup {
        let v = AffineVariety::parse("Gm", &["x", "w"], &["x*w - 1"], field).unwrap();
        AffineAlgGroup::parse("Gm", v, &["x1*x2", "w1*w2"], &["w", "x"], &["1", "1"]).unwrap()
    }

    pub(crate) fn borel(field: BaseField) -> AffineAlgGroup {
        let v = AffineVariety::parse("B", &["x", "y", "w"], &["x*w - 1"], field).unwrap();
        AffineAlgGroup::parse("B", v, &["x1*x2", "x1*y2 + y1", "w1*w2"], &["w", "-w*y", "x"], &["1", "0", "1"])
            .unwrap()
    }

    #[test]
    fn group_axiom_examples() {
        for g in [ga(BaseField::Q), gm(BaseField::Q), borel(BaseField::Qt)] {
            let rep = check_group_axioms(&g, CAP).unwrap();
            assert!(rep.passed(), "{}: {:?}", g.name, rep.failures().collect::<Vec<_>>());
        }
        let v = AffineVariety::parse("A1", &["x"], &[], BaseField::Q).unwrap();
        let bad = AffineAlgGroup::parse("bad", v, &["x1 + x2 + 1"], &["-x"], &["0"]).unwrap();
        let rep = check_group_axioms(&bad, CAP).unwrap();
        let failed: Vec<&str> = rep.failures().map(|c| c.condition.as_str()).collect();
        assert!(failed.contains(&"left_identity") && failed.contains(&"right_identity"));
        assert!(!failed.contains(&"associativity"));
    }

    #[test]
    fn identity_must_lie_on_variety() {
        let v = AffineVariety::parse("Gm", &["x", "w"], &["x*w - 1"], BaseField::Q).unwrap();
        let err = AffineAlgGroup::parse("Gm", v, &["x1*x2", "w1*w2"], &["w", "x"], &["1", "2"]).unwrap_err();
        assert!(matches!(err, Error::PointNotOnVariety(_)));
    }

    #[test]
    fn tau_group_examples() {
        let (tg, _) = tau_group(&ga(BaseField::Q), CAP).unwrap();
        let names = product_names(&["x".to_string(), "u_x".to_string()], 2);
        assert_eq!(tg.group.mult.to_strings(&names), ["x1 + x2", "u_x1 + u_x2"]);

        let (tg, rep) = tau_group(&gm(BaseField::Q), CAP).unwrap();
        assert!(rep.passed());
        let names = product_names(&["x", "w", "u_x", "u_w"].map(String::from), 2);
        assert_eq!(
            tg.group.mult.to_strings(&names),
            ["x1*x2", "w1*w2", "u_x1*x2 + x1*u_x2", "u_w1*w2 + w1*u_w2"]
        );
        assert_eq!(tg.group.identity, pt(&["1", "1", "0", "0"]));
        // over Q, τ(G) and T(G) coincide
        let (tang, _) = tangent_group(&gm(BaseField::Q), CAP).unwrap();
        assert_eq!(tang.group.mult, tg.group.mult);
        assert_eq!(tang.group.variety.gens(), tg.group.variety.gens());
    }

    #[test]
    fn tau_group_projects_onto_base() {
        let g = borel(BaseField::Qt);
        let (tg, _) = tau_group(&g, CAP).unwrap();
        let n = g.dim();
        let mapping: Vec<usize> = (0..2 * n).map(|i| if i < n { i } else { i + n }).collect();
        let base = g.mult.rename(4 * n, &mapping);
        assert_eq!(tg.group.mult.slice(0..n), base);
    }

    #[test]
    fn nonconstant_identity_uses_its_derivative() {
        // the line with law x1 + x2 - t and identity t
        let v = AffineVariety::parse("A1", &["x"], &[], BaseField::Qt).unwrap();
        let g = AffineAlgGroup::parse("shifted", v, &["x1 + x2 - t"], &["2*t - x"], &["t"]).unwrap();
        let (tg, _) = tau_group(&g, CAP).unwrap();
        assert_eq!(tg.group.identity, pt(&["t", "1"]));
    }

    #[test]
    fn dgroup_ledger() {
        for c in ["0", "1", "-2", "t"] {
            let g = ga(BaseField::Qt);
            let s = DGroupSection::parse("c", &g, &[&format!("{c}*x")]).unwrap();
            assert!(check_dgroup(&g, &s, CAP).unwrap().passed(), "c = {c}");
        }
        let g = gm(BaseField::Q);
        let s = DGroupSection::parse("twist", &g, &["3*x", "-3*w"]).unwrap();
        let rep = check_dgroup(&g, &s, CAP).unwrap();
        assert!(rep.section_passed());
        assert!(!rep.homomorphism_passed());
        let names = product_names(g.variety.vars(), 2);
        assert_eq!(rep.homomorphism[0].witness, parse_poly("3*x1*x2", &names, BaseField::Q).unwrap());
        assert_eq!(rep.homomorphism[0].witness_string(), "3*x1*x2");

        let b = borel(BaseField::Q);
        for (alpha, beta) in [(0, 1), (1, 0), (2, -3)] {
            let sigma = format!("({alpha})*y + ({beta})*(1 - x)");
            let s = DGroupSection::parse("s", &b, &["0", &sigma, "0"]).unwrap();
            assert!(check_dgroup(&b, &s, CAP).unwrap().passed(), "({alpha},{beta})");
        }
    }

    #[test]
    fn zero_section_passes_against_tangent() {
        for g in [ga(BaseField::Qt), gm(BaseField::Qt), borel(BaseField::Qt)] {
            let s = zero_section(&g);
            assert!(check_dgroup_kind(&g, &s, ProlongKind::Tangent, CAP).unwrap().passed());
            assert_eq!(s.apply(&g.identity).unwrap()[..g.dim()], g.identity[..]);
        }
    }

    #[test]
    fn rational_section_on_vanishing_denominator() {
        // 1/(x*w - 1) is undefined everywhere on Gm
        let g = gm(BaseField::Q);
        let vars = g.variety.vars().to_vec();
        let bad = RatMap::new(2, vec![parse_ratfn("1/(x*w - 1)", &vars, BaseField::Q).unwrap(), RatFn::zero(2)]).unwrap();
        assert_eq!(DGroupSection::new("s", &g, bad.clone()).unwrap_err(), Error::DenominatorVanishes);
        let s = DGroupSection { name: "s".into(), sigma: bad };
        assert_eq!(check_dgroup(&g, &s, CAP).unwrap_err(), Error::IndeterminateOnVariety);
    }

    #[test]
    fn nabla_hom_examples() {
        let g = ga(BaseField::Qt);
        assert!(nabla_hom_check(&g, &pt(&["t"]), &pt(&["t^2"])).unwrap());
        let g = gm(BaseField::Qt);
        assert!(nabla_hom_check(&g, &pt(&["t", "1/t"]), &pt(&["t^2", "1/t^2"])).unwrap());
        assert!(nabla_hom_check(&g, &pt(&["2", "1/2"]), &pt(&["3", "1/3"])).unwrap());
        assert!(matches!(
            nabla_hom_check(&g, &pt(&["t", "t"]), &pt(&["1", "1"])),
            Err(Error::PointNotOnVariety(_))
        ));
    }

    #[test]
    fn dpoint_examples() {
        let g = ga(BaseField::Qt);
        let d0 = DGroup { section: zero_section(&g), group: g.clone() };
        assert!(dpoint_check(&d0, &pt(&["5"])).unwrap());
        let d1 = DGroup { section: DGroupSection::parse("id", &g, &["x"]).unwrap(), group: g };
        assert!(!dpoint_check(&d1, &pt(&["t"])).unwrap());

        let b = borel(BaseField::Qt);
        let s = DGroupSection::parse("s01", &b, &["0", "1 - x", "0"]).unwrap();
        let d = DGroup { group: b, section: s };
        let g1 = pt(&["2", "-t", "1/2"]);
        assert!(dpoint_check(&d, &g1).unwrap());
        // sharp points form a subgroup
        let g2 = pt(&["3", "-2*t + 5", "1/3"]);
        assert!(dpoint_check(&d, &g2).unwrap());
        let prod = d.group.mul_points(&g1, &g2).unwrap();
        assert!(dpoint_check(&d, &prod).unwrap());
        assert!(dpoint_check(&d, &d.group.inv_point(&g1).unwrap()).unwrap());
    }
}
