//! Multivariate gcd by recursive content / primitive-part computation.
//!
//! Coefficients live in a field, so the recursion bottoms out at constants.
//! Results are normalized to have lex-leading coefficient 1.

use super::{Monomial, MultiPoly};
use crate::basefield::RatFunc;

/// Exact division `a / b`; `None` when `b` does not divide `a`.
pub fn div_exact(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    let n = a.nvars();
    let (lm_b, lc_b) = b.lex_lead()?;
    let (lm_b, lc_b_inv) = (lm_b.clone(), lc_b.inv().ok()?);
    if let Some(c) = b.as_constant() {
        return Some(a.scale(&c.inv().ok()?));
    }
    let mut quot = MultiPoly::zero(n);
    let mut rem = a.clone();
    while let Some((lm_r, lc_r)) = rem.lex_lead() {
        if !lm_b.divides(lm_r) {
            return None;
        }
        let m = lm_b.quotient_of(lm_r);
        let c = lc_r.mul(&lc_b_inv);
        rem = rem.sub(&b.mul_term(&m, &c));
        quot.add_term(m, c);
    }
    Some(quot)
}

fn normalize_unit(p: &MultiPoly) -> MultiPoly {
    match p.lex_lead() {
        None => p.clone(),
        Some((_, c)) if c.is_one() => p.clone(),
        Some((_, c)) => p.scale(&c.inv().expect("nonzero lead")),
    }
}

fn main_variable(a: &MultiPoly, b: &MultiPoly) -> Option<usize> {
    (0..a.nvars()).rev().find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0)
}

/// Content of `p` viewed as a polynomial in `x_v` over the other variables.
fn content(p: &MultiPoly, v: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(p.nvars());
    for c in p.coefficients_in(v).into_values() {
        acc = gcd(&acc, &c);
        if acc.as_constant().is_some() {
            return MultiPoly::one(p.nvars());
        }
    }
    acc
}

fn primitive_part(p: &MultiPoly, v: usize) -> MultiPoly {
    let c = content(p, v);
    if c.as_constant().is_some() {
        return normalize_unit(p);
    }
    normalize_unit(&div_exact(p, &c).expect("content divides"))
}

fn lead_in(p: &MultiPoly, v: usize) -> (u32, MultiPoly) {
    let coeffs = p.coefficients_in(v);
    let (&d, c) = coeffs.iter().next_back().expect("nonzero polynomial");
    (d, c.clone())
}

/// Pseudo-remainder of `a` by `b` in `x_v`.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let n = a.nvars();
    let (db, lc_b) = lead_in(b, v);
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let (dr, lc_r) = lead_in(&r, v);
        if dr < db {
            return r;
        }
        let mut shift = Monomial::one(n);
        shift.0[v] = dr - db;
        let bs = b.mul_term(&shift, &RatFunc::one()).mul(&lc_r);
        r = r.mul(&lc_b).sub(&bs);
    }
}

/// Monic-normalized greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let n = a.nvars();
    if a.is_zero() {
        return normalize_unit(b);
    }
    if b.is_zero() {
        return normalize_unit(a);
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return MultiPoly::one(n);
    }
    let v = match main_variable(a, b) {
        Some(v) => v,
        None => return MultiPoly::one(n),
    };
    if a.degree_in(v) == 0 {
        return gcd(a, &content(b, v));
    }
    if b.degree_in(v) == 0 {
        return gcd(&content(a, v), b);
    }
    let (ca, cb) = (content(a, v), content(b, v));
    let g_content = gcd(&ca, &cb);
    let mut p = div_exact(a, &ca).expect("content divides");
    let mut q = div_exact(b, &cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    let g_prim = loop {
        let r = pseudo_rem(&p, &q, v);
        if r.is_zero() {
            break primitive_part(&q, v);
        }
        if r.degree_in(v) == 0 {
            break MultiPoly::one(n);
        }
        p = q;
        q = primitive_part(&r, v);
    };
    normalize_unit(&g_content.mul(&g_prim))
}
