//! The prolongation calculus: `f^∂`, `D(F)`, `τ(F)`, `T(V)`, `τ(V)`, `∇`,
//! fibers of `τ(V)` and the fiber transfer along a correspondence.
//!
//! Prolonged objects live in doubled variables `(x_1..x_n, u_1..u_n)`; the
//! fiber variable of `x` is printed as `u_x`.

use serde::Serialize;

use crate::basefield::{BaseField, RatFunc};
use crate::error::{Error, Result};
use crate::ideals::{buchberger, GroebnerBasis, IdealBasis, TermOrder};
use crate::linalg::{self, Matrix};
use crate::polyalg::{jacobian, MultiPoly, PolyMap, RatFn, RatMap};

/// Zero set of finitely many polynomials. No generators means the full
/// affine space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineVariety {
    name: String,
    vars: Vec<String>,
    gens: Vec<MultiPoly>,
    field: BaseField,
}

impl AffineVariety {
    pub fn new(name: impl Into<String>, vars: Vec<String>, gens: Vec<MultiPoly>, field: BaseField) -> Result<Self> {
        let name = name.into();
        for g in &gens {
            if g.nvars() != vars.len() {
                return Err(Error::ArityMismatch { expected: vars.len(), found: g.nvars() });
            }
            if !g.defined_over(field) {
                return Err(Error::TInQField);
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(AffineVariety { name, vars, gens, field })
    }

    pub fn full_space(name: impl Into<String>, vars: Vec<String>, field: BaseField) -> Self {
        AffineVariety { name: name.into(), vars, gens: Vec::new(), field }
    }

    /// Parses generator strings over the declared variables.
    pub fn parse(name: impl Into<String>, vars: &[&str], gens: &[&str], field: BaseField) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let gens = gens
            .iter()
            .map(|g| crate::polyalg::parse_poly(g, &vars, field))
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, vars, gens, field)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.vars.len()
    }

    pub fn ideal(&self) -> IdealBasis {
        IdealBasis::new(self.ambient(), self.gens.clone()).expect("generators match ambient")
    }

    pub fn groebner(&self, order: &TermOrder, cap: u32) -> Result<GroebnerBasis> {
        buchberger(&self.ideal(), order, cap)
    }

    pub fn contains_point(&self, a: &[RatFunc]) -> Result<bool> {
        if a.len() != self.ambient() {
            return Err(Error::ArityMismatch { expected: self.ambient(), found: a.len() });
        }
        for g in &self.gens {
            if !g.eval(a)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub(crate) fn require_point(&self, a: &[RatFunc]) -> Result<()> {
        if self.contains_point(a)? {
            Ok(())
        } else {
            Err(Error::PointNotOnVariety(self.name.clone()))
        }
    }

    /// `V × W` in the concatenated variables.
    pub fn product(&self, other: &AffineVariety, name: impl Into<String>) -> AffineVariety {
        let (n1, n2) = (self.ambient(), other.ambient());
        let n = n1 + n2;
        let left: Vec<usize> = (0..n1).collect();
        let right: Vec<usize> = (n1..n).collect();
        let mut gens: Vec<MultiPoly> = self.gens.iter().map(|g| g.rename(n, &left)).collect();
        gens.extend(other.gens.iter().map(|g| g.rename(n, &right)));
        let vars = self.vars.iter().chain(&other.vars).cloned().collect();
        AffineVariety { name: name.into(), vars, gens, field: self.field.max(other.field) }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn gen_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string_with(&self.vars)).collect()
    }
}

/// Names of the fiber coordinates: `u_<name>`.
pub fn fiber_names(vars: &[String]) -> Vec<String> {
    vars.iter().map(|v| format!("u_{v}")).collect()
}

pub fn doubled_names(vars: &[String]) -> Vec<String> {
    vars.iter().cloned().chain(fiber_names(vars)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProlongKind {
    Tangent,
    Tau,
}

/// `T(V)` or `τ(V)` together with the variety it prolongs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProlongedVariety {
    pub base: AffineVariety,
    pub kind: ProlongKind,
    pub total: AffineVariety,
}

impl ProlongedVariety {
    /// The generators added on top of the base equations.
    pub fn fiber_gens(&self) -> &[MultiPoly] {
        &self.total.gens()[self.base.gens().len()..]
    }
}

/// A point `(a, u)` of a prolongation: base point and fiber vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPoint {
    pub base: Vec<RatFunc>,
    pub fiber: Vec<RatFunc>,
}

impl FiberPoint {
    /// `∇(a) = (a, ∂a)`.
    pub fn nabla(a: &[RatFunc], field: BaseField) -> Self {
        FiberPoint { base: a.to_vec(), fiber: derive_point(a, field) }
    }

    pub fn concat(&self) -> Vec<RatFunc> {
        self.base.iter().chain(&self.fiber).cloned().collect()
    }
}

/// `F^∂`: the coefficient-derived map.
pub fn f_del(f: &PolyMap) -> PolyMap {
    f.coeff_derive()
}

pub fn f_del_rational(f: &RatMap) -> RatMap {
    f.coeff_derive()
}

fn lift(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// `Σ_i ∂P/∂x_i · u_i` in `2n` variables.
fn linear_part(p: &MultiPoly) -> MultiPoly {
    let n = p.nvars();
    let base = lift(n);
    let mut acc = MultiPoly::zero(2 * n);
    for i in 0..n {
        let d = p.partial(i).expect("index in range");
        if d.is_zero() {
            continue;
        }
        acc = acc.add(&d.rename(2 * n, &base).mul(&MultiPoly::var(2 * n, n + i)));
    }
    acc
}

fn prolong_poly_map(f: &PolyMap, kind: ProlongKind) -> PolyMap {
    let n = f.in_arity();
    let base = lift(n);
    let mut comps: Vec<MultiPoly> = f.components().iter().map(|c| c.rename(2 * n, &base)).collect();
    for c in f.components() {
        let mut fiber = linear_part(c);
        if kind == ProlongKind::Tau {
            fiber = fiber.add(&c.coeff_derive().rename(2 * n, &base));
        }
        comps.push(fiber);
    }
    PolyMap::new(2 * n, comps).expect("consistent arity")
}

/// `D(F)(x, u) = (F(x), DF_x · u)`.
pub fn tangent_map(f: &PolyMap) -> PolyMap {
    prolong_poly_map(f, ProlongKind::Tangent)
}

/// `τ(F)(x, u) = (F(x), DF_x · u + F^∂(x))`.
pub fn tau_map(f: &PolyMap) -> PolyMap {
    prolong_poly_map(f, ProlongKind::Tau)
}

fn prolong_rat_map(f: &RatMap, kind: ProlongKind) -> Result<RatMap> {
    let n = f.in_arity();
    let embed = |r: &RatFn| -> Result<RatFn> {
        RatFn::new(r.numer().rename(2 * n, &lift(n)), r.denom().rename(2 * n, &lift(n)))
    };
    let jac = f.jacobian()?;
    let mut comps = Vec::with_capacity(2 * f.out_arity());
    for c in f.components() {
        comps.push(embed(c)?);
    }
    for (j, c) in f.components().iter().enumerate() {
        let mut fiber = RatFn::zero(2 * n);
        for (i, d) in jac[j].iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            fiber = fiber.add(&embed(d)?.mul(&RatFn::from_poly(MultiPoly::var(2 * n, n + i))));
        }
        if kind == ProlongKind::Tau {
            fiber = fiber.add(&embed(&c.coeff_derive())?);
        }
        comps.push(fiber);
    }
    RatMap::new(2 * n, comps)
}

pub fn tangent_map_rational(f: &RatMap) -> Result<RatMap> {
    prolong_rat_map(f, ProlongKind::Tangent)
}

pub fn tau_map_rational(f: &RatMap) -> Result<RatMap> {
    prolong_rat_map(f, ProlongKind::Tau)
}

pub fn prolong_map(f: &RatMap, kind: ProlongKind) -> Result<RatMap> {
    prolong_rat_map(f, kind)
}

/// `T(V)` or `τ(V)` by kind.
pub fn prolong_variety_kind(v: &AffineVariety, kind: ProlongKind) -> ProlongedVariety {
    let n = v.ambient();
    let mut gens: Vec<MultiPoly> = v.gens.iter().map(|g| g.rename(2 * n, &lift(n))).collect();
    for p in &v.gens {
        let mut q = linear_part(p);
        if kind == ProlongKind::Tau {
            q = q.add(&p.coeff_derive().rename(2 * n, &lift(n)));
        }
        gens.push(q);
    }
    let prefix = match kind {
        ProlongKind::Tangent => "T",
        ProlongKind::Tau => "tau",
    };
    let total = AffineVariety {
        name: format!("{prefix}({})", v.name),
        vars: doubled_names(&v.vars),
        gens,
        field: v.field,
    };
    ProlongedVariety { base: v.clone(), kind, total }
}

/// `T(V) = {P(x) = 0, DP_x · u = 0}`.
pub fn tangent_variety(v: &AffineVariety) -> ProlongedVariety {
    prolong_variety_kind(v, ProlongKind::Tangent)
}

/// `τ(V) = {P(x) = 0, DP_x · u + P^∂(x) = 0}`.
pub fn tau_variety(v: &AffineVariety) -> ProlongedVariety {
    prolong_variety_kind(v, ProlongKind::Tau)
}

/// `(a, ∂a, …, ∂^r a)`.
pub fn nabla(a: &[RatFunc], r: usize, field: BaseField) -> Vec<Vec<RatFunc>> {
    let mut out = vec![a.to_vec()];
    for _ in 0..r {
        let next = out.last().unwrap().iter().map(|x| field.derive(x)).collect();
        out.push(next);
    }
    out
}

pub fn derive_point(a: &[RatFunc], field: BaseField) -> Vec<RatFunc> {
    a.iter().map(|x| field.derive(x)).collect()
}

/// Whether `(a, ∂a)` lies on `τ(V)`; `a` must lie on `V`.
pub fn check_nabla_in_tau(v: &AffineVariety, a: &[RatFunc]) -> Result<bool> {
    v.require_point(a)?;
    let tau = tau_variety(v);
    let mut point = a.to_vec();
    point.extend(derive_point(a, v.field));
    tau.total.contains_point(&point)
}

/// `τ(V)_a = particular + span(kernel)`; the kernel spans `T(V)_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFiberDescription {
    pub particular: Vec<RatFunc>,
    pub kernel: Vec<Vec<RatFunc>>,
    /// Rank of the Jacobian of the generators at the point.
    pub rank: usize,
}

impl AffineFiberDescription {
    pub fn dim(&self) -> usize {
        self.kernel.len()
    }
}

fn jacobian_at(gens: &[MultiPoly], n: usize, a: &[RatFunc]) -> Result<Matrix> {
    let f = PolyMap::new(n, gens.to_vec())?;
    jacobian(&f)
        .iter()
        .map(|row| row.iter().map(|d| d.eval(a)).collect())
        .collect()
}

fn fiber_system(v: &AffineVariety, a: &[RatFunc], kind: ProlongKind) -> Result<(Matrix, Vec<RatFunc>)> {
    let n = v.ambient();
    let jac = jacobian_at(&v.gens, n, a)?;
    let rhs = match kind {
        ProlongKind::Tangent => vec![RatFunc::zero(); v.gens.len()],
        ProlongKind::Tau => v
            .gens
            .iter()
            .map(|p| p.coeff_derive().eval(a).map(|x| x.neg()))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok((jac, rhs))
}

/// Solves `DP_a · u = −P^∂(a)` for the fiber of `τ(V)` over `a`.
pub fn fiber_solve(v: &AffineVariety, a: &[RatFunc]) -> Result<AffineFiberDescription> {
    fiber_solve_kind(v, a, ProlongKind::Tau)
}

pub fn fiber_solve_kind(v: &AffineVariety, a: &[RatFunc], kind: ProlongKind) -> Result<AffineFiberDescription> {
    v.require_point(a)?;
    let (jac, rhs) = fiber_system(v, a, kind)?;
    let sol = linalg::solve(&jac, &rhs, v.ambient()).ok_or(Error::NoSolution)?;
    Ok(AffineFiberDescription { particular: sol.particular, kernel: sol.kernel, rank: sol.rank })
}

/// A correspondence `W ⊆ W₁ × W₂`, given by equations in the concatenated
/// variables of both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub name: String,
    pub left: AffineVariety,
    pub right: AffineVariety,
    pub graph: AffineVariety,
}

impl Correspondence {
    pub fn new(name: impl Into<String>, left: AffineVariety, right: AffineVariety, graph_gens: Vec<MultiPoly>) -> Result<Self> {
        let name = name.into();
        let ambient = left.product(&right, name.clone());
        let mut vars = ambient.vars.clone();
        vars.sort();
        vars.dedup();
        if vars.len() != ambient.ambient() {
            return Err(Error::Model(format!("correspondence `{name}`: left and right variables must be distinct")));
        }
        let graph = AffineVariety::new(name.clone(), ambient.vars.clone(), graph_gens, ambient.field)?;
        Ok(Correspondence { name, left, right, graph })
    }

    /// Graph equations together with those of both factors.
    pub fn full_graph(&self) -> AffineVariety {
        let mut v = self.left.product(&self.right, self.name.clone());
        v.gens.extend(self.graph.gens.iter().cloned());
        v
    }
}

/// `x ↦ matrix · x + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: Matrix,
    pub offset: Vec<RatFunc>,
    pub in_dim: usize,
}

impl AffineMap {
    pub fn apply(&self, x: &[RatFunc]) -> Vec<RatFunc> {
        linalg::mat_vec(&self.matrix, x).iter().zip(&self.offset).map(|(a, b)| a.add(b)).collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        let matrix = linalg::mat_mul(&self.matrix, &inner.matrix, self.in_dim, inner.in_dim);
        let offset = self.apply(&inner.offset);
        AffineMap { matrix, offset, in_dim: inner.in_dim }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == linalg::identity(self.in_dim) && self.offset.iter().all(RatFunc::is_zero)
    }
}

/// The fiber transfer `u ↦ v` induced by `τ(W)_{(a,b)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transfer {
    pub forward: AffineMap,
    /// `v ↦ u`, present exactly when the transfer is a bijection of fibers.
    pub inverse: Option<AffineMap>,
    pub fiber_dim: usize,
}

impl Transfer {
    pub fn invertible(&self) -> bool {
        self.inverse.is_some()
    }
}

/// Builds `target = A · source + c` on the solution set `p + span(K)`, given
/// that the source parts of `K` are linearly independent.
fn solve_affine(ps: &[RatFunc], pt: &[RatFunc], ks: &Matrix, kt: &Matrix) -> AffineMap {
    let (ns, nt, k) = (ps.len(), pt.len(), ks.len());
    // Columns of the source block: ns × k.
    let src_cols = linalg::transpose(ks, k, ns);
    let mut rows_t = ks.clone();
    let pivot_rows = linalg::rref(&mut rows_t, ns);
    let square: Matrix = pivot_rows.iter().map(|&r| src_cols[r].clone()).collect();
    let square_inv = linalg::inverse(&square).expect("independent source parts");
    // left_inv: k × ns, nonzero only in the pivot columns.
    let mut left_inv = vec![vec![RatFunc::zero(); ns]; k];
    for (c, &r) in pivot_rows.iter().enumerate() {
        for row in 0..k {
            left_inv[row][r] = square_inv[row][c].clone();
        }
    }
    let tgt_cols = linalg::transpose(kt, k, nt);
    let matrix = linalg::mat_mul(&tgt_cols, &left_inv, k, ns);
    let image = linalg::mat_vec(&matrix, ps);
    let offset = pt.iter().zip(image).map(|(a, b)| a.sub(&b)).collect();
    AffineMap { matrix, offset, in_dim: ns }
}

/// Solves the prolonged graph equations at `(a, b)` for the affine relation
/// between `τ(W₁)_a` and `τ(W₂)_b`.
pub fn correspondence_transfer(c: &Correspondence, a: &[RatFunc], b: &[RatFunc]) -> Result<Transfer> {
    let (n1, n2) = (c.left.ambient(), c.right.ambient());
    c.left.require_point(a)?;
    c.right.require_point(b)?;
    let full = c.full_graph();
    let ab: Vec<RatFunc> = a.iter().chain(b).cloned().collect();
    if !c.graph.contains_point(&ab)? {
        return Err(Error::PointNotOnVariety(c.graph.name.clone()));
    }
    let left_fiber = fiber_solve(&c.left, a)?;
    let right_fiber = fiber_solve(&c.right, b)?;
    let (jac, rhs) = fiber_system(&full, &ab, ProlongKind::Tau)?;
    let sol = linalg::solve(&jac, &rhs, n1 + n2).ok_or(Error::NoSolution)?;
    let k = sol.kernel.len();
    let ku: Matrix = sol.kernel.iter().map(|v| v[..n1].to_vec()).collect();
    let kv: Matrix = sol.kernel.iter().map(|v| v[n1..].to_vec()).collect();
    if linalg::rank(&ku, n1) < k {
        return Err(Error::TransferNotFunctional);
    }
    let (pu, pv) = sol.particular.split_at(n1);
    let forward = solve_affine(pu, pv, &ku, &kv);
    let bijective = linalg::rank(&kv, n2) == k && left_fiber.dim() == k && right_fiber.dim() == k;
    let inverse = bijective.then(|| solve_affine(pv, pu, &kv, &ku));
    Ok(Transfer { forward, inverse, fiber_dim: k })
}
