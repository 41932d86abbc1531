//! Seeded random objects shared by the integration suites.
#![allow(dead_code)]

use dtau::basefield::{rat, BaseField, RatFunc, Rational, UPoly};
use dtau::polyalg::{Monomial, MultiPoly, PolyMap};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = small_rational(rng);
        if q != rat(0, 1) {
            return q;
        }
    }
}

/// Polynomial in `t` of degree at most `deg`.
pub fn upoly(rng: &mut ChaCha8Rng, deg: usize) -> UPoly {
    UPoly::from_coeffs((0..=deg).map(|_| small_rational(rng)).collect())
}

/// A coefficient: over ℚ a rational, over ℚ(t) a polynomial in `t` of degree ≤ 2.
pub fn coeff(rng: &mut ChaCha8Rng, field: BaseField) -> RatFunc {
    match field {
        BaseField::Q => RatFunc::from(small_rational(rng)),
        BaseField::Qt => RatFunc::from_poly(upoly(rng, 2)),
    }
}

/// A genuinely rational element of ℚ(t): numerator degree ≤ 2 over a nonzero
/// denominator of degree ≤ 1.
pub fn ratfunc(rng: &mut ChaCha8Rng) -> RatFunc {
    loop {
        let den = upoly(rng, 1);
        if !den.is_zero() {
            return RatFunc::new(upoly(rng, 2), den).expect("nonzero denominator");
        }
    }
}

pub fn point(rng: &mut ChaCha8Rng, n: usize) -> Vec<RatFunc> {
    (0..n).map(|_| ratfunc(rng)).collect()
}

pub fn monomial(rng: &mut ChaCha8Rng, nvars: usize, max_deg: u32) -> Monomial {
    let mut exps = vec![0u32; nvars];
    let deg = rng.gen_range(0..=max_deg);
    for _ in 0..deg {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial(exps)
}

pub fn poly(rng: &mut ChaCha8Rng, nvars: usize, max_deg: u32, max_terms: usize, field: BaseField) -> MultiPoly {
    let terms = rng.gen_range(1..=max_terms);
    MultiPoly::from_terms(nvars, (0..terms).map(|_| (monomial(rng, nvars, max_deg), coeff(rng, field))))
}

pub fn poly_map(rng: &mut ChaCha8Rng, in_arity: usize, out_arity: usize, max_deg: u32, field: BaseField) -> PolyMap {
    let comps = (0..out_arity).map(|_| poly(rng, in_arity, max_deg, 4, field)).collect();
    PolyMap::new(in_arity, comps).expect("consistent arity")
}

pub fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}
