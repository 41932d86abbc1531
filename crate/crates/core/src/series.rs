//! Truncated power series in `t` over ℚ, and the recursive solver for
//! `∂a = σ(a)` with prescribed initial value.
//!
//! A series of order `N` knows its coefficients of `t^0 … t^N`. Its derivative
//! only knows `N − 1` of them and is stored at that order; binary operations on
//! series of different orders truncate to the smaller one.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::basefield::{int, RatFunc, Rational, UPoly};
use crate::error::{Error, Result};
use crate::polyalg::{MultiPoly, RatFn, RatMap};
use crate::prolong::AffineVariety;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    /// Coefficients of `t^0 … t^N`; an empty vector is read as `[0]`.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Expansion of an element of ℚ(t) at `t = 0`.
    pub fn from_ratfunc(r: &RatFunc, order: usize) -> Result<Self> {
        let num = Self::from_upoly(r.numer(), order);
        let den = Self::from_upoly(r.denom(), order);
        num.div(&den).map_err(|_| Error::PoleAtOrigin(r.to_string()))
    }

    fn from_upoly(p: &UPoly, order: usize) -> Self {
        TruncSeries { coeffs: (0..=order).map(|k| p.coeff(k)).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncSeries { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    fn common(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common(other);
        TruncSeries { coeffs: (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common(other);
        TruncSeries { coeffs: (0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect() }
    }

    pub fn neg(&self) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common(other);
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k)
                    .filter(|&i| !self.coeffs[i].is_zero() && !other.coeffs[k - i].is_zero())
                    .fold(Rational::zero(), |acc, i| acc + &self.coeffs[i] * &other.coeffs[k - i])
            })
            .collect();
        TruncSeries { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonUnitConstantTerm);
        }
        let inv0 = a0.recip();
        let mut b: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        b.push(inv0.clone());
        for k in 1..self.coeffs.len() {
            let s = (1..=k).fold(Rational::zero(), |acc, i| acc + &self.coeffs[i] * &b[k - i]);
            b.push(-(s * &inv0));
        }
        Ok(TruncSeries { coeffs: b })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// `d/dt`, one order lower. At order 0 nothing is known about the
    /// derivative; the result is the zero series of order 0.
    pub fn derive(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..self.coeffs.len()).map(|k| &self.coeffs[k] * int(k as i64)).collect();
        TruncSeries { coeffs }
    }

    /// Coefficients as exact `p/q` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            match (mag.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (true, false) => f.write_str(&mono)?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Binary series arithmetic; `Div` needs a unit constant term.
pub fn series_arith(op: SeriesOp, a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
    Ok(match op {
        SeriesOp::Add => a.add(b),
        SeriesOp::Sub => a.sub(b),
        SeriesOp::Mul => a.mul(b),
        SeriesOp::Div => a.div(b)?,
    })
}

pub fn series_derive(a: &TruncSeries) -> TruncSeries {
    a.derive()
}

/// One series per ambient coordinate, all of the same order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPoint {
    pub components: Vec<TruncSeries>,
}

impl SeriesPoint {
    pub fn new(components: Vec<TruncSeries>) -> Result<Self> {
        if let Some(first) = components.first() {
            for c in &components {
                if c.order() != first.order() {
                    return Err(Error::OrderMismatch(first.order(), c.order()));
                }
            }
        }
        Ok(SeriesPoint { components })
    }

    pub fn constant(point: &[Rational], order: usize) -> Self {
        SeriesPoint { components: point.iter().map(|c| TruncSeries::constant(c.clone(), order)).collect() }
    }

    pub fn order(&self) -> usize {
        self.components.first().map_or(0, TruncSeries::order)
    }

    pub fn truncate(&self, order: usize) -> Self {
        SeriesPoint { components: self.components.iter().map(|c| c.truncate(order)).collect() }
    }

    pub fn initial(&self) -> Vec<Rational> {
        self.components.iter().map(|c| c.coeff(0).clone()).collect()
    }
}

/// `p(a(t))` for a polynomial with ℚ(t) coefficients.
pub fn eval_poly(p: &MultiPoly, a: &SeriesPoint) -> Result<TruncSeries> {
    if p.nvars() != a.components.len() {
        return Err(Error::ArityMismatch { expected: p.nvars(), found: a.components.len() });
    }
    let order = a.order();
    let mut powers: Vec<Vec<TruncSeries>> = a.components.iter().map(|c| vec![TruncSeries::one(order), c.clone()]).collect();
    let mut acc = TruncSeries::zero(order);
    for (m, c) in p.terms() {
        let mut term = TruncSeries::from_ratfunc(c, order)?;
        for (i, &e) in m.0.iter().enumerate() {
            let e = e as usize;
            while powers[i].len() <= e {
                let next = powers[i].last().unwrap().mul(&a.components[i]);
                powers[i].push(next);
            }
            if e > 0 {
                term = term.mul(&powers[i][e]);
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

pub fn eval_ratfn(r: &RatFn, a: &SeriesPoint) -> Result<TruncSeries> {
    let num = eval_poly(r.numer(), a)?;
    if r.as_poly().is_some() {
        return Ok(num);
    }
    num.div(&eval_poly(r.denom(), a)?)
}

pub fn eval_map(f: &RatMap, a: &SeriesPoint) -> Result<SeriesPoint> {
    SeriesPoint::new(f.components().iter().map(|c| eval_ratfn(c, a)).collect::<Result<_>>()?)
}

/// Residual series `P(a(t))`, one per generator of `V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualReport {
    #[serde(skip)]
    pub residuals: Vec<TruncSeries>,
    pub passed: bool,
}

pub fn verify_on_variety(v: &AffineVariety, p: &SeriesPoint) -> Result<ResidualReport> {
    let residuals = v.gens().iter().map(|g| eval_poly(g, p)).collect::<Result<Vec<_>>>()?;
    let passed = residuals.iter().all(TruncSeries::is_zero);
    Ok(ResidualReport { residuals, passed })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSolution {
    pub point: SeriesPoint,
    pub residuals: ResidualReport,
}

/// Solves `∂a = σ(a)`, `a(0) = a0` in `ℚ[[t]]/(t^{N+1})` through
/// `coeff_{k+1}(a) = coeff_k(σ(a)) / (k+1)`.
pub fn solve_dpoint(v: &AffineVariety, sigma: &RatMap, a0: &[Rational], order: usize) -> Result<SeriesSolution> {
    let n = v.ambient();
    if sigma.in_arity() != n || sigma.out_arity() != n {
        return Err(Error::ArityMismatch { expected: n, found: sigma.out_arity() });
    }
    let start: Vec<RatFunc> = a0.iter().cloned().map(RatFunc::from_rational).collect();
    v.require_point(&start)?;
    for c in sigma.components() {
        if c.as_poly().is_none() && eval_poly(c.denom(), &SeriesPoint::constant(a0, 0))?.is_zero() {
            return Err(Error::DenominatorVanishesAtInitialPoint);
        }
    }
    let mut coeffs: Vec<Vec<Rational>> = a0.iter().map(|c| vec![c.clone()]).collect();
    for k in 0..order {
        let current = SeriesPoint { components: coeffs.iter().cloned().map(TruncSeries::new).collect() };
        let rhs = eval_map(sigma, &current)?;
        let step = int(k as i64 + 1).recip();
        for (c, s) in coeffs.iter_mut().zip(&rhs.components) {
            c.push(s.coeff(k) * &step);
        }
    }
    let point = SeriesPoint { components: coeffs.into_iter().map(TruncSeries::new).collect() };
    let residuals = verify_on_variety(v, &point)?;
    Ok(SeriesSolution { point, residuals })
}
