mod common;

use common::*;
use dtau::basefield::{rat, BaseField, RatFunc, Rational, UPoly};
use dtau::ideals::{buchberger, normal_form, IdealBasis, TermOrder, DEFAULT_DEGREE_CAP};
use dtau::polyalg::{default_names, parse_poly, MultiPoly};
use dtau::series::TruncSeries;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn upoly(max_deg: usize) -> impl Strategy<Value = UPoly> {
    prop::collection::vec(rational(), 0..=max_deg + 1).prop_map(UPoly::from_coeffs)
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (upoly(3), upoly(2)).prop_filter_map("zero denominator", |(n, d)| RatFunc::new(n, d).ok())
}

fn series(order: usize) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(rational(), order + 1).prop_map(TruncSeries::new)
}

fn seeded_poly(nvars: usize, field: BaseField) -> impl Strategy<Value = MultiPoly> {
    any::<u64>().prop_map(move |s| poly(&mut rng(s), nvars, 3, 4, field))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_is_reduced_with_monic_denominator(a in ratfunc(), b in ratfunc()) {
        for r in [a.add(&b), a.mul(&b), a.sub(&b)] {
            prop_assert!(r.denom().lead().unwrap() == &rat(1, 1));
            prop_assert!(r.numer().is_zero() || r.numer().gcd(r.denom()).is_one());
        }
    }

    #[test]
    fn ratfunc_arithmetic_matches_cross_multiplication(a in ratfunc(), b in ratfunc()) {
        let (n1, d1, n2, d2) = (a.numer(), a.denom(), b.numer(), b.denom());
        let sum = RatFunc::new(n1.mul(d2).add(&n2.mul(d1)), d1.mul(d2)).unwrap();
        let prod = RatFunc::new(n1.mul(n2), d1.mul(d2)).unwrap();
        prop_assert_eq!(a.add(&b), sum);
        prop_assert_eq!(a.mul(&b), prod);
    }

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn derivation_is_leibniz(a in ratfunc(), b in ratfunc()) {
        prop_assert_eq!(a.mul(&b).derive(), a.derive().mul(&b).add(&a.mul(&b.derive())));
        prop_assert_eq!(a.add(&b).derive(), a.derive().add(&b.derive()));
        if !b.is_zero() {
            // quotient rule
            let lhs = a.div(&b).unwrap().derive();
            let rhs = a.derive().mul(&b).sub(&a.mul(&b.derive())).div(&b.mul(&b)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn ratfunc_display_round_trips(a in ratfunc()) {
        prop_assert_eq!(RatFunc::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn poly_display_round_trips(p in seeded_poly(3, BaseField::Qt)) {
        let names = default_names("x", 3);
        let s = p.to_string_with(&names);
        prop_assert_eq!(parse_poly(&s, &names, BaseField::Qt).unwrap(), p);
    }

    #[test]
    fn poly_ring_axioms(p in seeded_poly(2, BaseField::Qt), q in seeded_poly(2, BaseField::Qt), r in seeded_poly(2, BaseField::Qt)) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn partials_commute_and_obey_leibniz(p in seeded_poly(3, BaseField::Qt), q in seeded_poly(3, BaseField::Qt)) {
        let d = |f: &MultiPoly, i| f.partial(i).unwrap();
        prop_assert_eq!(d(&d(&p, 0), 2), d(&d(&p, 2), 0));
        prop_assert_eq!(d(&p.mul(&q), 1), d(&p, 1).mul(&q).add(&p.mul(&d(&q, 1))));
        prop_assert_eq!(p.mul(&q).coeff_derive(), p.coeff_derive().mul(&q).add(&p.mul(&q.coeff_derive())));
    }

    #[test]
    fn evaluation_is_a_ring_map(p in seeded_poly(2, BaseField::Qt), q in seeded_poly(2, BaseField::Qt), a in ratfunc(), b in ratfunc()) {
        let pt = [a, b];
        let (pa, qa) = (p.eval(&pt).unwrap(), q.eval(&pt).unwrap());
        prop_assert_eq!(p.mul(&q).eval(&pt).unwrap(), pa.mul(&qa));
        prop_assert_eq!(p.add(&q).eval(&pt).unwrap(), pa.add(&qa));
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let mut g = rng(seed);
        let f = poly_map(&mut g, 2, 2, 2, BaseField::Qt);
        let h = poly_map(&mut g, 2, 2, 2, BaseField::Qt);
        let k = poly_map(&mut g, 2, 1, 2, BaseField::Qt);
        let left = k.compose(&h).unwrap().compose(&f).unwrap();
        let right = k.compose(&h.compose(&f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(seed in any::<u64>(), c in rational()) {
        let mut g = rng(seed);
        let gens = (0..2).map(|_| poly(&mut g, 2, 2, 3, BaseField::Q)).collect();
        let gb = buchberger(&IdealBasis::new(2, gens).unwrap(), &TermOrder::grevlex(2), DEFAULT_DEGREE_CAP).unwrap();
        let p = poly(&mut g, 2, 4, 5, BaseField::Q);
        let q = poly(&mut g, 2, 4, 5, BaseField::Q);
        let np = normal_form(&p, &gb).unwrap();
        prop_assert_eq!(normal_form(&np, &gb).unwrap(), np.clone());
        let c = RatFunc::from_rational(c);
        let combo = normal_form(&p.add(&q.scale(&c)), &gb).unwrap();
        prop_assert_eq!(combo, np.add(&normal_form(&q, &gb).unwrap().scale(&c)));
        // ideal members reduce to zero
        let member = gb.gens()[0].mul(&p);
        prop_assert!(normal_form(&member, &gb).unwrap().is_zero());
    }

    #[test]
    fn series_derive_is_leibniz(a in series(8), b in series(8)) {
        let lhs = a.mul(&b).derive();
        let rhs = a.derive().mul(&b).add(&a.mul(&b.derive()));
        prop_assert_eq!(lhs.order(), 7);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_truncation_is_coherent(a in series(8), b in series(8), k in 0usize..=8) {
        prop_assert_eq!(a.mul(&b).truncate(k), a.truncate(k).mul(&b.truncate(k)));
        prop_assert_eq!(a.add(&b).truncate(k), a.truncate(k).add(&b.truncate(k)));
    }

    #[test]
    fn series_inverse(a in series(6)) {
        match a.inv() {
            Ok(inv) => prop_assert_eq!(a.mul(&inv), TruncSeries::one(6)),
            Err(_) => prop_assert!(a.coeff(0) == &rat(0, 1)),
        }
    }

    #[test]
    fn series_expansion_is_a_differential_ring_map(a in ratfunc(), b in ratfunc()) {
        let n = 6;
        let (Ok(sa), Ok(sb)) = (TruncSeries::from_ratfunc(&a, n), TruncSeries::from_ratfunc(&b, n)) else {
            return Ok(());
        };
        prop_assert_eq!(TruncSeries::from_ratfunc(&a.mul(&b), n).unwrap(), sa.mul(&sb));
        prop_assert_eq!(TruncSeries::from_ratfunc(&a.add(&b), n).unwrap(), sa.add(&sb));
        prop_assert_eq!(TruncSeries::from_ratfunc(&a.derive(), n - 1).unwrap(), sa.derive());
    }
}

#[test]
fn multi_term_constants_round_trip() {
    let names = default_names("x", 2);
    for src in ["x0^2 + x1^2 - (t^2 + 1)", "(t + 1)*x0 - (t - 1)/(t^2 + 3)", "-(t + 1)*x0*x1 + 1/t"] {
        let p = parse_poly(src, &names, BaseField::Qt).unwrap();
        let printed = p.to_string_with(&names);
        assert_eq!(parse_poly(&printed, &names, BaseField::Qt).unwrap(), p, "{src} printed as {printed}");
    }
}
