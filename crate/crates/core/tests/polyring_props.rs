use num_bigint::BigInt;
use proptest::prelude::*;
use rdp_core::polyring::{parse, Evaluated, Mono, Polynomial, Rational, VarSet};
use std::collections::HashMap;

fn vars() -> VarSet {
    VarSet::new(&["x", "y", "z"]).unwrap()
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn poly_strategy() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..4, 0u32..4, 0u32..3), -20i64..20, 1i64..6), 0..8).prop_map(|terms| {
        let vs = vars();
        let terms = terms
            .into_iter()
            .map(|((a, b, c), n, d)| (Mono::from_exponents(&[a, b, c]).unwrap(), rat(n, d)))
            .collect();
        Polynomial::from_terms(&vs, terms)
    })
}

fn point_strategy() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-9i64..10, 1i64..7), 3).prop_map(|v| v.into_iter().map(|(n, d)| rat(n, d)).collect())
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 128,
        rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha,
        rng_seed: prop::test_runner::RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(&vars()), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly_strategy(), b in poly_strategy(), pt in point_strategy()) {
        let (ea, eb) = (a.eval_rational(&pt), b.eval_rational(&pt));
        prop_assert_eq!((&a * &b).eval_rational(&pt), &ea * &eb);
        prop_assert_eq!((&a - &b).eval_rational(&pt), &ea - &eb);
        let assign: HashMap<String, Rational> =
            ["x", "y", "z"].iter().zip(&pt).map(|(k, v)| (k.to_string(), v.clone())).collect();
        match a.evaluate(&assign).unwrap() {
            Evaluated::Value(v) => prop_assert_eq!(v, ea),
            Evaluated::Poly(_) => prop_assert!(false, "full assignment must give a value"),
        }
    }

    #[test]
    fn product_divides_exactly(a in poly_strategy(), b in poly_strategy()) {
        prop_assume!(!b.is_zero());
        let q = (&a * &b).exact_divide(&b).unwrap().unwrap();
        prop_assert_eq!(q, a);
    }

    #[test]
    fn normalize_is_idempotent(a in poly_strategy()) {
        let (p, c) = a.normalize();
        prop_assert_eq!(p.scale(&c), a.clone());
        let (p2, c2) = p.normalize();
        prop_assert_eq!(p2, p.clone());
        if !a.is_zero() {
            prop_assert_eq!(c2, Rational::from_integer(1.into()));
            prop_assert!(p.is_primitive());
        }
    }

    #[test]
    fn reordering_variables_is_invisible(a in poly_strategy(), pt in point_strategy()) {
        let other = VarSet::new(&["z", "w", "x", "y"]).unwrap();
        let moved = a.with_varset(&other).unwrap();
        let moved_pt = vec![pt[2].clone(), rat(7, 3), pt[0].clone(), pt[1].clone()];
        prop_assert_eq!(moved.eval_rational(&moved_pt), a.eval_rational(&pt));
        prop_assert_eq!(moved.with_varset(&vars()).unwrap(), a);
    }

    #[test]
    fn text_round_trip(a in poly_strategy()) {
        prop_assert_eq!(parse(&a.to_string(), &vars()).unwrap(), a);
    }

    #[test]
    fn derivative_rules(a in poly_strategy(), b in poly_strategy()) {
        let d = |p: &Polynomial| p.differentiate("y").unwrap();
        prop_assert_eq!(d(&(&a * &b)), &(&d(&a) * &b) + &(&a * &d(&b)));
        prop_assert_eq!(d(&(&a + &b)), &d(&a) + &d(&b));
    }

    #[test]
    fn gcd_recovers_common_factor(a in poly_strategy(), b in poly_strategy(), g in poly_strategy()) {
        prop_assume!(!g.is_zero() && !a.is_zero() && !b.is_zero());
        let h = (&a * &g).gcd(&(&b * &g)).unwrap();
        prop_assert!(h.exact_divide(&g.normalize().0).unwrap().is_some() || g.total_degree() == 0);
        prop_assert!((&a * &g).exact_divide(&h).unwrap().is_some());
        prop_assert!((&b * &g).exact_divide(&h).unwrap().is_some());
    }
}

#[test]
fn chi_substitution_numerator() {
    let vs = VarSet::new(&["d", "s", "chi"]).unwrap();
    let p = parse("2*chi + 1", &vs).unwrap();
    let num = parse("d + d*s - 2", &vs).unwrap();
    let den = parse("2 + d*s - d", &vs).unwrap();
    let (r, k) = p.substitute_rational("chi", &num, &den).unwrap();
    assert_eq!(k, 1);
    assert_eq!(r, parse("3*d*s + d - 2", &vs).unwrap());
    let sq = parse("chi^2", &vs).unwrap();
    let (r, k) = sq.substitute_rational("chi", &parse("d", &vs).unwrap(), &parse("s", &vs).unwrap()).unwrap();
    assert_eq!((r, k), (parse("d^2", &vs).unwrap(), 2));
}

#[test]
fn small_identities() {
    let vs = VarSet::new(&["t", "u", "qq", "s"]).unwrap();
    let p = |x: &str| parse(x, &vs).unwrap();
    assert_eq!(&p("1 + t^2") * &p("1 - t^2"), p("1 - t^4"));
    assert_eq!(p("t + 1").try_pow(2).unwrap(), p("t^2 + 2*t + 1"));
    assert!(p("t").try_pow(-1).is_err());
    assert_eq!(p("t^2 - 1").exact_divide(&p("t + 1")).unwrap(), Some(p("t - 1")));
    assert_eq!(p("t^2 + 1").exact_divide(&p("t + 1")).unwrap(), None);
    assert!(p("t").exact_divide(&p("0")).is_err());
    assert_eq!(p("qq*s*t - t^3").differentiate("t").unwrap(), p("qq*s - 3*t^2"));
    assert!(p("t^2 + qq").differentiate("u").unwrap().is_zero());
    assert_eq!(p("6*t^2 - 4*t").normalize(), (p("3*t^2 - 2*t"), rat(2, 1)));
    assert_eq!(p("-t - 1").normalize(), (p("t + 1"), rat(-1, 1)));
    assert_eq!(p("2/3*t").normalize(), (p("t"), rat(2, 3)));
    assert_eq!(p("t^2 - 1").gcd(&p("t^2 + 2*t + 1")).unwrap(), p("t + 1"));
    assert_eq!(p("2*t + 3*u - 1").gcd(&p("t - u + 5")).unwrap(), p("1"));
    assert!(p("0").gcd(&p("0")).is_err());
    let partial: HashMap<String, Rational> = [("u".to_string(), rat(2, 1))].into();
    assert_eq!(p("qq*u*s").evaluate(&partial).unwrap(), Evaluated::Poly(p("2*qq*s")));
}

#[test]
fn substitution_needs_nonzero_denominator() {
    let vs = vars();
    let p = parse("x^2 + y", &vs).unwrap();
    assert!(p.substitute_rational("x", &Polynomial::one(&vs), &Polynomial::zero(&vs)).is_err());
    let (r, k) = p.substitute_rational("z", &Polynomial::one(&vs), &Polynomial::one(&vs)).unwrap();
    assert_eq!((r, k), (p, 0));
}

#[test]
fn high_degree_products() {
    let vs = vars();
    let p = parse("x^90*y + z^70 - 3", &vs).unwrap();
    let q = &p * &p;
    assert_eq!(q.total_degree(), 182);
    assert_eq!(q.exact_divide(&p).unwrap().unwrap(), p);
}
