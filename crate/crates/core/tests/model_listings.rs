use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdp_core::model::*;
use rdp_core::polyring::{parse, Polynomial, Rational, VarSet};

fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}.txt", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap().trim().to_string()
}

fn listed(name: &str, vars: &VarSet) -> Polynomial {
    parse(&fixture(name), vars).unwrap()
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn same_up_to_constant(a: &Polynomial, b: &Polynomial) -> bool {
    a.normalize().0 == b.normalize().0
}

#[test]
fn general_system_matches_listing() {
    let sys = build_system(SystemKind::Bifurcation).unwrap();
    let vs = general_varset();
    assert_eq!(sys.poly("dtheta").unwrap(), &listed("general_dtheta", &vs));
    assert_eq!(sys.poly("dphi").unwrap(), &listed("general_dphi", &vs));
    let hess = listed("general_hessdet", &vs);
    assert_eq!(hess.term_count(), 48);
    assert_eq!(sys.poly("hessdet").unwrap(), &hess);
    assert_eq!(sys.poly("pyth1").unwrap(), &parse("c1^2 + s1^2 - 1", &vs).unwrap());
    assert_eq!(sys.poly("pyth2").unwrap(), &parse("c2^2 + s2^2 - 1", &vs).unwrap());
}

#[test]
fn pmmr_system_matches_listing() {
    let sys = build_system(SystemKind::PmmrBifurcation).unwrap();
    let vs = pmmr_varset();
    let dt = listed("pmmr_dtheta", &vs);
    let dp = listed("pmmr_dphi", &vs);
    assert_eq!((dt.term_count(), dp.term_count()), (9, 12));
    assert!(same_up_to_constant(sys.poly("dtheta").unwrap(), &dt));
    assert!(same_up_to_constant(sys.poly("dphi").unwrap(), &dp));
}

#[test]
fn trivial_polynomials_match_listing() {
    let vs = param_varset();
    for w in Trivial::ALL {
        let p = listed(&format!("trivial_{}", w.code()), &vs);
        assert_eq!(p.term_count(), 10);
        assert_eq!(trivial_bifurcation_poly(w), p, "{}", w.code());
    }
    let dd = trivial_bifurcation_poly(Trivial::DownDown);
    assert_eq!(dd.eval_rational(&[r(1, 1), r(6, 5), r(4, 3), r(1, 3)]), r(-16, 225));
}

#[test]
fn trivial_polynomials_are_hessian_specializations() {
    let sys = build_system(SystemKind::Bifurcation).unwrap();
    let hess = sys.poly("hessdet").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for w in Trivial::ALL {
        let (c1, c2) = w.cosines();
        for _ in 0..10 {
            let pv: Vec<Rational> = (0..4).map(|_| r(rng.gen_range(-30..30), rng.gen_range(1..9))).collect();
            let mut full = vec![r(c1, 1), r(0, 1), r(c2, 1), r(0, 1)];
            full.extend(pv.iter().cloned());
            assert_eq!(hess.eval_rational(&full), trivial_bifurcation_poly(w).eval_rational(&pv));
        }
    }
}

#[test]
fn halftangent_system_matches_listing() {
    let sys = build_system(SystemKind::Halftangent).unwrap();
    let vs = halftangent_varset();
    assert!(same_up_to_constant(sys.poly("poly1").unwrap(), &listed("halftangent_poly1", &vs)));
    assert!(same_up_to_constant(sys.poly("poly2").unwrap(), &listed("halftangent_poly2", &vs)));
}

#[test]
fn halftangent_polys_are_cleared_gradients() {
    let sys = build_system(SystemKind::Halftangent).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..25 {
        let t: f64 = rng.gen_range(-3.0..3.0);
        let u: f64 = rng.gen_range(-3.0..3.0);
        let (delta, sigma, chi, qq) = (rng.gen_range(-0.9..0.9), rng.gen_range(-0.9..0.9), rng.gen_range(-0.9..0.9), rng.gen_range(0.1..3.0));
        let m = NumericModel::new(&ModelParams::new(
            Rational::from_float(delta).unwrap(),
            Rational::from_float(sigma).unwrap(),
            Rational::from_float(chi).unwrap(),
            Rational::from_float(qq / (1.0 + qq)).unwrap(),
        ))
        .unwrap();
        let g = m.grad(Configuration::new(2.0 * t.atan(), 2.0 * u.atan()));
        let (pt, pu) = (1.0 + t * t, 1.0 + u * u);
        let vals = [t, u, qq, delta, sigma, chi];
        let p1 = sys.poly("poly1").unwrap().eval_f64(&vals);
        let p2 = sys.poly("poly2").unwrap().eval_f64(&vals);
        let scale = pt * pt * pu / 2.0;
        assert!((p1 - g[0] * scale).abs() < 1e-9 * scale.max(1.0), "{p1} vs {}", g[0] * scale);
        let scale = pu * pu * pt / 2.0;
        assert!((p2 - g[1] * scale).abs() < 1e-9 * scale.max(1.0), "{p2} vs {}", g[1] * scale);
    }
}

const TABLE: [((i64, i64), (i64, i64), [(i64, i64); 3]); 9] = [
    ((2, 3), (3, 4), [(25, 73), (31, 49), (7, 13)]),
    ((2, 3), (1, 1), [(3, 11), (3, 7), (3, 7)]),
    ((2, 3), (4, 3), [(29, 125), (13, 77), (7, 23)]),
    ((1, 1), (3, 4), [(17, 65), (23, 41), (5, 11)]),
    ((1, 1), (1, 1), [(1, 5), (1, 3), (1, 3)]),
    ((1, 1), (4, 3), [(5, 29), (1, 17), (1, 5)]),
    ((3, 2), (3, 4), [(35, 179), (53, 107), (11, 29)]),
    ((3, 2), (1, 1), [(1, 7), (1, 4), (1, 4)]),
    ((3, 2), (4, 3), [(7, 55), (-1, 31), (1, 9)]),
];

#[test]
fn point_mass_table() {
    for ((mn, md), (ln, ld), want) in TABLE {
        let p = PhysicalParams::point_masses(r(1, 1), r(mn, md), r(1, 1), r(ln, ld), r(3, 1), r(10, 1));
        let (m, _) = derive_dimensionless(&p).unwrap();
        assert_eq!((m.delta.clone(), m.sigma.clone(), m.chi.clone()), (r(want[0].0, want[0].1), r(want[1].0, want[1].1), r(want[2].0, want[2].1)));
        assert_eq!(chi_pmmr(&m.delta, &m.sigma).unwrap(), m.chi);
        assert_eq!((m.alpha.clone(), m.eta.clone()), (r(0, 1), r(0, 1)));
    }
}

#[test]
fn hessian_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..50 {
        let mp = ModelParams::new(
            r(rng.gen_range(-80..80), 100),
            r(rng.gen_range(-80..80), 100),
            r(rng.gen_range(-80..80), 100),
            r(rng.gen_range(1..99), 100),
        );
        let m = NumericModel::new(&mp).unwrap();
        let c = Configuration::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let h = m.potential_hess(c);
        let eps = 1e-5;
        let gp = |dt: f64, dp: f64| m.potential_grad(Configuration::new(c.theta + dt, c.phi + dp));
        let (a, b) = (gp(eps, 0.0), gp(-eps, 0.0));
        let (e, f) = (gp(0.0, eps), gp(0.0, -eps));
        let fd = [[(a[0] - b[0]) / (2.0 * eps), (e[0] - f[0]) / (2.0 * eps)], [(a[1] - b[1]) / (2.0 * eps), (e[1] - f[1]) / (2.0 * eps)]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((h[i][j] - fd[i][j]).abs() < 1e-6, "{h:?} vs {fd:?}");
            }
        }
        let v = |dt: f64, dp: f64| m.potential(Configuration::new(c.theta + dt, c.phi + dp));
        let g = m.potential_grad(c);
        assert!((g[0] - (v(eps, 0.0) - v(-eps, 0.0)) / (2.0 * eps)).abs() < 1e-6);
        assert!((g[1] - (v(0.0, eps) - v(0.0, -eps)) / (2.0 * eps)).abs() < 1e-6);
    }
}
