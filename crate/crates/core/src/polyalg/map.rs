use std::collections::BTreeMap;

use super::{gcd, MultiPoly};
use crate::basefield::{BaseField, RatFunc};
use crate::error::{Error, Result};

/// Tuple of polynomials `F = (F_1, …, F_m)` in `in_arity` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMap {
    in_arity: usize,
    components: Vec<MultiPoly>,
}

impl PolyMap {
    pub fn new(in_arity: usize, components: Vec<MultiPoly>) -> Result<Self> {
        for c in &components {
            if c.nvars() != in_arity {
                return Err(Error::ArityMismatch { expected: in_arity, found: c.nvars() });
            }
        }
        Ok(PolyMap { in_arity, components })
    }

    pub fn identity(n: usize) -> Self {
        PolyMap { in_arity: n, components: (0..n).map(|i| MultiPoly::var(n, i)).collect() }
    }

    pub fn in_arity(&self) -> usize {
        self.in_arity
    }

    pub fn out_arity(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn defined_over(&self, field: BaseField) -> bool {
        self.components.iter().all(|c| c.defined_over(field))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        if inner.out_arity() != self.in_arity {
            return Err(Error::ArityMismatch { expected: self.in_arity, found: inner.out_arity() });
        }
        let components = self
            .components
            .iter()
            .map(|c| c.substitute(&inner.components))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMap { in_arity: inner.in_arity, components })
    }

    pub fn eval(&self, point: &[RatFunc]) -> Result<Vec<RatFunc>> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    pub fn to_rat_map(&self) -> RatMap {
        RatMap {
            in_arity: self.in_arity,
            components: self.components.iter().cloned().map(RatFn::from_poly).collect(),
        }
    }

    /// Componentwise coefficient derivation.
    pub fn coeff_derive(&self) -> PolyMap {
        PolyMap {
            in_arity: self.in_arity,
            components: self.components.iter().map(MultiPoly::coeff_derive).collect(),
        }
    }

    pub fn to_strings(&self, names: &[String]) -> Vec<String> {
        self.components.iter().map(|c| c.to_string_with(names)).collect()
    }
}

/// Matrix of partial derivatives, entry `(j, i) = ∂F_j/∂x_i`.
pub fn jacobian(f: &PolyMap) -> Vec<Vec<MultiPoly>> {
    f.components
        .iter()
        .map(|c| (0..f.in_arity).map(|i| c.partial(i).expect("index in range")).collect())
        .collect()
}

/// A reduced fraction of polynomials; the denominator has lex-leading
/// coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFn {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::IdenticallyZeroDenominator);
        }
        if num.nvars() != den.nvars() {
            return Err(Error::ArityMismatch { expected: num.nvars(), found: den.nvars() });
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return Self::from_poly(MultiPoly::zero(n));
        }
        if let Some(c) = den.as_constant() {
            let inv = c.inv().expect("nonzero denominator");
            return RatFn { num: num.scale(&inv), den: MultiPoly::one(n) };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.as_constant().is_some() {
            (num, den)
        } else {
            (
                super::div_exact(&num, &g).expect("gcd divides"),
                super::div_exact(&den, &g).expect("gcd divides"),
            )
        };
        if let Some(c) = den.as_constant() {
            let inv = c.inv().expect("nonzero denominator");
            return RatFn { num: num.scale(&inv), den: MultiPoly::one(n) };
        }
        let lead = den.lex_lead().unwrap().1.clone();
        if lead.is_one() {
            RatFn { num, den }
        } else {
            let inv = lead.inv().expect("nonzero lead");
            RatFn { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        RatFn { num: p, den: MultiPoly::one(n) }
    }

    pub fn constant(nvars: usize, c: RatFunc) -> Self {
        Self::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::zero(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.den.as_constant().map(|_| &self.num)
    }

    pub fn defined_over(&self, field: BaseField) -> bool {
        self.num.defined_over(field) && self.den.defined_over(field)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            if self.as_poly().is_some() {
                return Self::from_poly(self.num.add(&other.num));
            }
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.as_poly().is_some() && other.as_poly().is_some() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::IdenticallyZeroDenominator);
        }
        Ok(Self::normalized(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFn { num: self.num.pow(e), den: self.den.pow(e) }.renormalize_unit()
    }

    fn renormalize_unit(self) -> Self {
        match self.den.lex_lead() {
            Some((_, c)) if !c.is_one() => {
                let inv = c.inv().expect("nonzero lead");
                RatFn { num: self.num.scale(&inv), den: self.den.scale(&inv) }
            }
            _ => self,
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn partial(&self, i: usize) -> Result<Self> {
        let dn = self.num.partial(i)?;
        if self.as_poly().is_some() {
            return Ok(Self::from_poly(dn));
        }
        let dd = self.den.partial(i)?;
        Ok(Self::normalized(
            dn.mul(&self.den).sub(&self.num.mul(&dd)),
            self.den.mul(&self.den),
        ))
    }

    /// Coefficient derivation extended to fractions by the quotient rule.
    pub fn coeff_derive(&self) -> Self {
        let dn = self.num.coeff_derive();
        if self.as_poly().is_some() {
            return Self::from_poly(dn);
        }
        let dd = self.den.coeff_derive();
        Self::normalized(dn.mul(&self.den).sub(&self.num.mul(&dd)), self.den.mul(&self.den))
    }

    pub fn eval(&self, point: &[RatFunc]) -> Result<RatFunc> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        self.num.eval(point)?.div(&d)
    }

    /// Substitutes `subs[i]` for variable `i`, clearing all inner
    /// denominators with one common factor per variable before reducing.
    pub fn substitute(&self, subs: &[RatFn]) -> Result<RatFn> {
        let n = self.nvars();
        if subs.len() != n {
            return Err(Error::ArityMismatch { expected: n, found: subs.len() });
        }
        let target = subs.first().map(RatFn::nvars).unwrap_or(0);
        if subs.iter().all(|s| s.as_poly().is_some()) {
            let polys: Vec<MultiPoly> = subs.iter().map(|s| s.num.clone()).collect();
            let num = self.num.substitute(&polys)?;
            let den = self.den.substitute(&polys)?;
            return RatFn::new(num, den);
        }
        let deg_num: Vec<u32> = (0..n).map(|i| self.num.degree_in(i)).collect();
        let deg_den: Vec<u32> = (0..n).map(|i| self.den.degree_in(i)).collect();
        let homogenized = |p: &MultiPoly, degs: &[u32]| -> MultiPoly {
            let mut acc = MultiPoly::zero(target);
            let mut cache: BTreeMap<(usize, u32, bool), MultiPoly> = BTreeMap::new();
            let mut power = |i: usize, e: u32, numer: bool| -> MultiPoly {
                cache
                    .entry((i, e, numer))
                    .or_insert_with(|| if numer { subs[i].num.pow(e) } else { subs[i].den.pow(e) })
                    .clone()
            };
            for (m, c) in p.terms() {
                let mut term = MultiPoly::constant(target, c.clone());
                for i in 0..n {
                    let e = m.0[i];
                    if e > 0 {
                        term = term.mul(&power(i, e, true));
                    }
                    if degs[i] > e && subs[i].as_poly().is_none() {
                        term = term.mul(&power(i, degs[i] - e, false));
                    }
                }
                acc = acc.add(&term);
            }
            acc
        };
        let mut num = homogenized(&self.num, &deg_num);
        let mut den = homogenized(&self.den, &deg_den);
        for i in 0..n {
            if subs[i].as_poly().is_some() {
                continue;
            }
            if deg_den[i] > deg_num[i] {
                num = num.mul(&subs[i].den.pow(deg_den[i] - deg_num[i]));
            } else if deg_num[i] > deg_den[i] {
                den = den.mul(&subs[i].den.pow(deg_num[i] - deg_den[i]));
            }
        }
        RatFn::new(num, den)
    }

    /// Re-embeds into `new_nvars` variables, sending variable `i` to
    /// `mapping[i]`.
    pub fn rename(&self, new_nvars: usize, mapping: &[usize]) -> RatFn {
        RatFn { num: self.num.rename(new_nvars, mapping), den: self.den.rename(new_nvars, mapping) }
            .renormalize_unit()
    }

    /// Equality by cross-multiplication, independent of normal forms.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.as_poly().is_some() {
            return self.num.to_string_with(names);
        }
        let num = self.num.to_string_with(names);
        let num = if self.num.num_terms() > 1 { format!("({num})") } else { num };
        let den = self.den.to_string_with(names);
        let simple_den = self.den.num_terms() == 1
            && self.den.terms().next().is_some_and(|(m, c)| {
                c.is_one() && m.0.iter().filter(|&&e| e > 0).count() == 1
            });
        if simple_den {
            format!("{num}/{den}")
        } else {
            format!("{num}/({den})")
        }
    }
}

/// Tuple of rational functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMap {
    in_arity: usize,
    components: Vec<RatFn>,
}

impl RatMap {
    pub fn new(in_arity: usize, components: Vec<RatFn>) -> Result<Self> {
        for c in &components {
            if c.nvars() != in_arity {
                return Err(Error::ArityMismatch { expected: in_arity, found: c.nvars() });
            }
        }
        Ok(RatMap { in_arity, components })
    }

    pub fn identity(n: usize) -> Self {
        PolyMap::identity(n).to_rat_map()
    }

    pub fn zero(in_arity: usize, out_arity: usize) -> Self {
        RatMap { in_arity, components: vec![RatFn::zero(in_arity); out_arity] }
    }

    pub fn in_arity(&self) -> usize {
        self.in_arity
    }

    pub fn out_arity(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[RatFn] {
        &self.components
    }

    pub fn defined_over(&self, field: BaseField) -> bool {
        self.components.iter().all(|c| c.defined_over(field))
    }

    pub fn as_poly_map(&self) -> Option<PolyMap> {
        let comps = self.components.iter().map(|c| c.as_poly().cloned()).collect::<Option<Vec<_>>>()?;
        Some(PolyMap { in_arity: self.in_arity, components: comps })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RatMap) -> Result<RatMap> {
        if inner.out_arity() != self.in_arity {
            return Err(Error::ArityMismatch { expected: self.in_arity, found: inner.out_arity() });
        }
        let components = self
            .components
            .iter()
            .map(|c| c.substitute(&inner.components))
            .collect::<Result<Vec<_>>>()?;
        Ok(RatMap { in_arity: inner.in_arity, components })
    }

    pub fn rename(&self, new_nvars: usize, mapping: &[usize]) -> RatMap {
        RatMap {
            in_arity: new_nvars,
            components: self.components.iter().map(|c| c.rename(new_nvars, mapping)).collect(),
        }
    }

    /// The map `x ↦ (self(x), other(x))`.
    pub fn stack(&self, other: &RatMap) -> Result<RatMap> {
        if self.in_arity != other.in_arity {
            return Err(Error::ArityMismatch { expected: self.in_arity, found: other.in_arity });
        }
        let components = self.components.iter().chain(&other.components).cloned().collect();
        Ok(RatMap { in_arity: self.in_arity, components })
    }

    /// Keeps components `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> RatMap {
        RatMap { in_arity: self.in_arity, components: self.components[range].to_vec() }
    }

    pub fn jacobian(&self) -> Result<Vec<Vec<RatFn>>> {
        self.components
            .iter()
            .map(|c| (0..self.in_arity).map(|i| c.partial(i)).collect())
            .collect()
    }

    pub fn coeff_derive(&self) -> RatMap {
        RatMap {
            in_arity: self.in_arity,
            components: self.components.iter().map(RatFn::coeff_derive).collect(),
        }
    }

    pub fn eval(&self, point: &[RatFunc]) -> Result<Vec<RatFunc>> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    pub fn equivalent(&self, other: &RatMap) -> bool {
        self.in_arity == other.in_arity
            && self.out_arity() == other.out_arity()
            && self.components.iter().zip(&other.components).all(|(a, b)| a.equivalent(b))
    }

    pub fn to_strings(&self, names: &[String]) -> Vec<String> {
        self.components.iter().map(|c| c.to_string_with(names)).collect()
    }
}

impl From<PolyMap> for RatMap {
    fn from(p: PolyMap) -> Self {
        p.to_rat_map()
    }
}

/// `f ∘ g` for rational (or polynomial, after conversion) maps.
pub fn compose(f: &RatMap, g: &RatMap) -> Result<RatMap> {
    f.compose(g)
}
