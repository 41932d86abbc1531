//! Sparse multivariate polynomials over the base field, polynomial and
//! rational maps, Jacobians, composition and the expression parser.
//!
//! Variables are bound to indices when an expression is parsed; everything
//! below works on indices and only the `display` helpers take names back.

mod gcd;
mod map;
mod parse;

use std::collections::BTreeMap;
use std::cmp::Ordering;
use std::fmt;

use crate::basefield::{BaseField, RatFunc, Rational};
use crate::error::{Error, Result};

pub use gcd::{div_exact, gcd};
pub use map::{compose, jacobian, PolyMap, RatFn, RatMap};
pub use parse::{parse_base_elem, parse_point, parse_poly, parse_ratfn};

/// Exponent vector of fixed length (the ambient variable count).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Graded reverse lexicographic comparison with variable 0 largest.
    pub fn cmp_grevlex(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }

    fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

/// Sparse polynomial in `nvars` variables with coefficients in ℚ(t).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, RatFunc>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, RatFunc::one())
    }

    pub fn constant(nvars: usize, c: RatFunc) -> Self {
        Self::term(nvars, Monomial::one(nvars), c)
    }

    pub fn term(nvars: usize, m: Monomial, c: RatFunc) -> Self {
        debug_assert_eq!(m.0.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(nvars, Monomial::var(nvars, i), RatFunc::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, RatFunc)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &RatFunc)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Whether all coefficients lie in `field`.
    pub fn defined_over(&self, field: BaseField) -> bool {
        self.terms.values().all(|c| field.contains(c))
    }

    /// Leading term under lex with variable 0 largest (the map's key order).
    pub fn lex_lead(&self) -> Option<(&Monomial, &RatFunc)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "ambient mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "ambient mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.mul(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "ambient mismatch");
        let (small, large) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut out = Self::zero(self.nvars);
        for (m, c) in &small.terms {
            for (k, a) in &large.terms {
                out.add_term(m.mul(k), c.mul(a));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Result<Self> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange { index: i, ambient: self.nvars });
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut k = m.clone();
            k.0[i] -= 1;
            out.add_term(k, c.scale(&Rational::from_integer(e.into())));
        }
        Ok(out)
    }

    /// Applies the base-field derivation to every coefficient, leaving the
    /// variables fixed: `Σ a_m x^m ↦ Σ ∂a_m x^m`.
    pub fn coeff_derive(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.derive());
        }
        out
    }

    pub fn eval(&self, point: &[RatFunc]) -> Result<RatFunc> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: point.len() });
        }
        let mut powers: Vec<Vec<RatFunc>> = point
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let d = self.degree_in(i) as usize;
                let mut v = Vec::with_capacity(d + 1);
                v.push(RatFunc::one());
                for k in 1..=d {
                    let next = v[k - 1].mul(a);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = RatFunc::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            acc = acc.add(&term);
        }
        powers.clear();
        Ok(acc)
    }

    /// Substitutes polynomial `subs[i]` for variable `i`.
    pub fn substitute(&self, subs: &[MultiPoly]) -> Result<MultiPoly> {
        if subs.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: subs.len() });
        }
        let target = subs.first().map(|s| s.nvars).unwrap_or(0);
        for s in subs {
            s.check_same(&subs[0])?;
        }
        let powers: Vec<Vec<MultiPoly>> = subs
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let d = self.degree_in(i) as usize;
                let mut v = vec![MultiPoly::one(target)];
                for k in 1..=d {
                    let next = v[k - 1].mul(s);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Re-embeds into `new_nvars` variables, sending variable `i` to
    /// `mapping[i]`.
    pub fn rename(&self, new_nvars: usize, mapping: &[usize]) -> MultiPoly {
        assert_eq!(mapping.len(), self.nvars);
        let mut out = MultiPoly::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; new_nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[mapping[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Coefficients with respect to variable `v`: `p = Σ_k c_k · x_v^k` with
    /// each `c_k` free of `x_v`.
    pub fn coefficients_in(&self, v: usize) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.0[v];
            let mut rest = m.clone();
            rest.0[v] = 0;
            out.entry(k).or_insert_with(|| MultiPoly::zero(self.nvars)).add_term(rest, c.clone());
        }
        out
    }

    /// Terms in descending grevlex order, the order used for printing.
    pub fn grevlex_terms(&self) -> Vec<(&Monomial, &RatFunc)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.cmp_grevlex(a.0));
        v
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        self.display(names).to_string()
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.poly.grevlex_terms().into_iter().enumerate() {
            let negative = c.looks_negative();
            let abs = if negative { c.neg() } else { c.clone() };
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = m.fmt_with(self.names);
            if mono.is_empty() {
                if idx == 0 && !negative {
                    f.write_str(&abs.to_string())?;
                } else {
                    f.write_str(&abs.fmt_factor())?;
                }
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", abs.fmt_factor(), mono)?;
            }
        }
        Ok(())
    }
}

/// Arithmetic selector for [`poly_arith`].
#[derive(Clone, Debug)]
pub enum PolyOperand<'a> {
    Poly(&'a MultiPoly),
    Scalar(&'a RatFunc),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    Scale,
}

pub fn poly_arith(op: PolyOp, p: &MultiPoly, q: PolyOperand<'_>) -> Result<MultiPoly> {
    match (op, q) {
        (PolyOp::Scale, PolyOperand::Scalar(c)) => Ok(p.scale(c)),
        (PolyOp::Scale, PolyOperand::Poly(q)) => match q.as_constant() {
            Some(c) => Ok(p.scale(&c)),
            None => Err(Error::NotAPolynomial("scale expects a constant".into())),
        },
        (op, PolyOperand::Scalar(c)) => {
            let q = MultiPoly::constant(p.nvars, c.clone());
            poly_arith(op, p, PolyOperand::Poly(&q))
        }
        (op, PolyOperand::Poly(q)) => {
            p.check_same(q)?;
            Ok(match op {
                PolyOp::Add => p.add(q),
                PolyOp::Sub => p.sub(q),
                PolyOp::Mul => p.mul(q),
                PolyOp::Scale => unreachable!(),
            })
        }
    }
}

/// `x_0, x_1, …` style default names.
pub fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}
