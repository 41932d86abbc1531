//! Differential base fields: ℚ with the zero derivation and ℚ(t) with d/dt.
//!
//! Every element is stored as a reduced fraction of univariate polynomials in
//! `t`. Elements of ℚ are exactly the constant fractions, so a single element
//! type serves both fields and `d/dt` restricts to the zero derivation on ℚ.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Which differential field the coefficients live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseField {
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "Qt")]
    Qt,
}

impl BaseField {
    pub fn contains(self, a: &RatFunc) -> bool {
        match self {
            BaseField::Q => a.is_constant(),
            BaseField::Qt => true,
        }
    }

    /// The derivation of this field. On ℚ every element is constant, so
    /// `d/dt` and the zero map agree there.
    pub fn derive(self, a: &RatFunc) -> RatFunc {
        match self {
            BaseField::Q => RatFunc::zero(),
            BaseField::Qt => a.derive(),
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Q => f.write_str("Q"),
            BaseField::Qt => f.write_str("Qt"),
        }
    }
}

/// Dense univariate polynomial in `t` over ℚ, coefficients in ascending order
/// with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn t() -> Self {
        UPoly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        UPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// Euclidean division; panics on a zero divisor (callers check).
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.lead().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return Self::one();
            }
            // monic remainders keep the coefficients from growing
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * int(k as i64))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * at + c)
    }

    fn fmt_terms(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }

    fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

/// An element of ℚ(t) in canonical form: reduced, with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let lead = den.lead().unwrap().clone();
        if lead.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lead.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        RatFunc { num: UPoly::zero(), den: UPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn t() -> Self {
        RatFunc { num: UPoly::t(), den: UPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        RatFunc { num: UPoly::constant(q), den: UPoly::one() }
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFunc { num: p, den: UPoly::one() }
    }

    pub fn numer(&self) -> &UPoly {
        &self.num
    }

    pub fn denom(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.degree().unwrap_or(0) == 0
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Sign of the leading numerator coefficient; used for pretty-printing.
    pub fn looks_negative(&self) -> bool {
        self.num.lead().is_some_and(|c| c.is_negative())
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc { num: self.num.add(&other.num), den: UPoly::one() };
        }
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        // Henrici: only the common part of the denominators can cancel
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            return Self::with_monic_den(num, self.den.mul(&other.den));
        }
        let (d1, d2) = (self.den.div_rem(&g).0, other.den.div_rem(&g).0);
        let num = self.num.mul(&d2).add(&other.num.mul(&d1));
        if num.is_zero() {
            return Self::zero();
        }
        let h = num.gcd(&g);
        let (num, g) = if h.is_one() { (num, g) } else { (num.div_rem(&h).0, g.div_rem(&h).0) };
        Self::with_monic_den(num, d1.mul(&d2).mul(&g))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc { num: self.num.mul(&other.num), den: UPoly::one() };
        }
        if let Some(c) = self.as_rational() {
            return RatFunc { num: other.num.scale(&c), den: other.den.clone() };
        }
        if let Some(c) = other.as_rational() {
            return RatFunc { num: self.num.scale(&c), den: self.den.clone() };
        }
        // Henrici: cancel across, since each operand is already reduced
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let cancel = |p: &UPoly, g: &UPoly| if g.is_one() { p.clone() } else { p.div_rem(g).0 };
        let num = cancel(&self.num, &g1).mul(&cancel(&other.num, &g2));
        let den = cancel(&self.den, &g2).mul(&cancel(&other.den, &g1));
        Self::with_monic_den(num, den)
    }

    /// `num/den` with `gcd(num, den) = 1` already known.
    fn with_monic_den(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lead = den.lead().unwrap();
        if lead.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lead.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `d/dt`, via the quotient rule.
    pub fn derive(&self) -> Self {
        if self.den.is_one() {
            return RatFunc { num: self.num.derivative(), den: UPoly::one() };
        }
        let num = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        Self::normalized(num, self.den.mul(&self.den))
    }

    pub fn eval(&self, at: &Rational) -> Result<Rational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(self.num.eval(at) / d)
    }

    /// Rendering safe to use as the left factor of a product (`c*x`).
    pub fn fmt_factor(&self) -> String {
        if self.den.is_one() && self.num.term_count() > 1 {
            format!("({})", self.num.fmt_terms())
        } else {
            self.to_string()
        }
    }

    pub fn parse(src: &str) -> Result<Self> {
        crate::polyalg::parse_base_elem(src, BaseField::Qt)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return f.write_str(&self.num.fmt_terms());
        }
        // print with integer coefficients: 1/(2*t), not 1/2/t
        let coeffs = || self.num.coeffs().iter().chain(self.den.coeffs()).filter(|c| !c.is_zero());
        let lcm = coeffs().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let gcd = coeffs().fold(BigInt::zero(), |g, c| g.gcd(&(c * &lcm).to_integer()));
        let scale = Rational::new(lcm, gcd);
        let (num, den) = (self.num.scale(&scale), self.den.scale(&scale));
        let num = if num.term_count() > 1 { format!("({})", num.fmt_terms()) } else { num.fmt_terms() };
        let den = if den.term_count() > 1 || !den.lead().unwrap().is_one() {
            format!("({})", den.fmt_terms())
        } else {
            den.fmt_terms()
        };
        write!(f, "{num}/{den}")
    }
}

impl PartialOrd for RatFunc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RatFunc {
    // Arbitrary but fixed; only used for deterministic containers.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num.coeffs(), self.den.coeffs()).cmp(&(other.num.coeffs(), other.den.coeffs()))
    }
}

impl From<Rational> for RatFunc {
    fn from(q: Rational) -> Self {
        RatFunc::from_rational(q)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

/// The one arithmetic entry point over a field element pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

pub fn field_arith(op: FieldOp, a: &RatFunc, b: Option<&RatFunc>) -> Result<RatFunc> {
    let rhs = || b.ok_or(Error::ArityMismatch { expected: 2, found: 1 });
    match op {
        FieldOp::Add => Ok(a.add(rhs()?)),
        FieldOp::Sub => Ok(a.sub(rhs()?)),
        FieldOp::Mul => Ok(a.mul(rhs()?)),
        FieldOp::Div => a.div(rhs()?),
        FieldOp::Neg => Ok(a.neg()),
        FieldOp::Inv => a.inv(),
    }
}
