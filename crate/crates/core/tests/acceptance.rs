use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdp_core::analysis::*;
use rdp_core::elim::*;
use rdp_core::model::*;
use rdp_core::polyring::{parse, Evaluated, Polynomial, Rational, VarSet};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

type Check = Result<String, String>;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
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

fn table_params(row: usize) -> PhysicalParams {
    let ((mn, md), (ln, ld), _) = TABLE[row];
    PhysicalParams::point_masses(r(1, 1), r(mn, md), r(1, 1), r(ln, ld), r(3, 1), r(10, 1))
}

fn table_row(row: usize) -> (Rational, Rational, Rational) {
    let w = TABLE[row].2;
    (r(w[0].0, w[0].1), r(w[1].0, w[1].1), r(w[2].0, w[2].1))
}

fn parameter_mapping() -> Check {
    let t = Instant::now();
    for row in 0..TABLE.len() {
        let (m, _) = derive_dimensionless(&table_params(row)).map_err(err)?;
        let got = (m.delta.clone(), m.sigma.clone(), m.chi.clone());
        ensure(got == table_row(row), || format!("row {row}: got {got:?}"))?;
        ensure(m.alpha == r(0, 1) && m.eta == r(0, 1), || format!("row {row}: nonzero kinetic parameters"))?;
    }
    let el = t.elapsed();
    ensure(el < Duration::from_secs(1), || format!("took {el:?}"))?;
    Ok(format!("9 rows exact in {el:?}"))
}

fn chi_consistency() -> Check {
    for row in 0..TABLE.len() {
        let (d, s, chi) = table_row(row);
        let got = chi_pmmr(&d, &s).map_err(err)?;
        ensure(got == chi, || format!("row {row}: chi_pmmr = {got}"))?;
    }
    Ok("9 rows exact".into())
}

fn halftangent_resultants() -> Check {
    let sys = build_system(SystemKind::Halftangent).map_err(err)?;
    let (p1, p2) = (sys.poly("poly1").unwrap(), sys.poly("poly2").unwrap());
    let v = p1.varset().clone();
    let known: Vec<Polynomial> = ["t", "u", "1 + t^2", "1 + u^2"].iter().map(|s| parse(s, &v).unwrap()).collect();
    let mut out = Vec::new();
    for (var, want) in [("t", 1290), ("u", 1290), ("qq", 32)] {
        let t = Instant::now();
        let res = sylvester_resultant(p1, p2, var).map_err(err)?;
        let (core, _) = strip_known_factors(&res, &known).map_err(err)?;
        let core = core.normalize().0;
        let el = t.elapsed();
        ensure(core.term_count() == want, || format!("eliminating {var}: {} terms, want {want}", core.term_count()))?;
        ensure(el < Duration::from_secs(300), || format!("eliminating {var} took {el:?}"))?;
        out.push(format!("{var}:{}", core.term_count()));
    }
    Ok(out.join(" "))
}

struct DixonRun {
    sub: PolyMatrix,
    factors: FactorList,
    elapsed: Duration,
}

fn dixon_run(kind: SystemKind, seeds: &[Polynomial], verify_points: usize) -> Result<DixonRun, String> {
    let t = Instant::now();
    let sys = build_system(kind).map_err(err)?;
    let (d, aux) = dixon_polynomial(&sys).map_err(err)?;
    let aux: Vec<&str> = aux.iter().map(String::as_str).collect();
    let m = dixon_matrix(&d, &TRIG_VARS, &aux).map_err(err)?;
    let opts = EdfOptions { verify_points, ..Default::default() };
    let out = edf_determinant_with(&m, seeds, &opts).map_err(err)?;
    let sub = m.submatrix(&out.rows, &out.cols);
    Ok(DixonRun { sub, factors: out.factors, elapsed: t.elapsed() })
}

fn trivial_polys() -> Vec<Polynomial> {
    Trivial::ALL.iter().map(|&w| trivial_bifurcation_poly(w)).collect()
}

fn dixon_divisibility(run: &DixonRun) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let n = run.sub.varset().len();
    for k in 0..20 {
        let pt = random_rational_point(&mut rng, n);
        let want = rational_determinant(run.sub.eval_rational(&pt));
        let got = run.factors.eval_rational(&pt);
        ensure(want == got, || format!("product identity fails at point {k}"))?;
    }
    let known: Vec<Polynomial> =
        trivial_polys().iter().map(|p| p.with_varset(run.sub.varset())).collect::<Result<_, _>>().map_err(err)?;
    let mult = run.factors.known_multiplicities(&known).map_err(err)?;
    ensure(mult.iter().all(|&m| m >= 1), || format!("multiplicities of dd, du, ud, uu: {mult:?}"))?;
    Ok(format!(
        "{}x{} minor, {} factors, identity at 20 points, dd/du/ud/uu multiplicities {mult:?}, {:.1?}",
        run.sub.nrows(),
        run.sub.ncols(),
        run.factors.factors.len(),
        run.elapsed
    ))
}

/// The dominant factor of a coprime refinement with every other factor and
/// the trivial polynomials divided out, normalized.
fn main_factor(fl: &FactorList, extra_known: &[Polynomial]) -> Result<Polynomial, String> {
    let refined = fl.refine().map_err(err)?;
    let dom = refined.dominant().ok_or("empty factor list")?.poly.clone();
    let mut known: Vec<Polynomial> = extra_known.iter().map(|p| p.with_varset(dom.varset())).collect::<Result<_, _>>().map_err(err)?;
    known.extend(refined.factors.iter().filter(|f| f.poly != dom).map(|f| f.poly.clone()));
    let (q, _) = strip_known_factors(&dom, &known).map_err(err)?;
    Ok(q.normalize().0)
}

fn dominant_size(run: &DixonRun) -> Result<(String, Polynomial), String> {
    let main = main_factor(&run.factors, &trivial_polys())?;
    ensure(main.term_count() == 6744, || format!("dominant quotient has {} terms", main.term_count()))?;
    let support = main.support().join(",");
    Ok((format!("{} terms in ({support})", main.term_count()), main))
}

fn pmmr_consistency(main: &Polynomial) -> Check {
    let seeds: Vec<Polynomial> = trivial_polys()
        .iter()
        .map(|p| substitute_chi_pmmr(p).map(|s| s.normalize().0))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let run = dixon_run(SystemKind::PmmrBifurcation, &seeds, 3)?;
    let pm = main_factor(&run.factors, &seeds)?;
    ensure(pm.term_count() == 1924, || format!("pmmr dominant factor has {} terms", pm.term_count()))?;
    let subst = substitute_chi_pmmr(main).map_err(err)?;
    let subst = subst.with_varset(pm.varset()).map_err(err)?.normalize().0;
    let cof = subst
        .exact_divide(&pm)
        .map_err(err)?
        .ok_or_else(|| format!("pmmr factor does not divide the substituted factor ({} terms)", subst.term_count()))?;
    let iq = pm.varset().index("qq").ok_or("pmmr factor lacks qq")?;
    let qq_degs: Vec<u32> = cof.terms().iter().map(|(e, _)| e[iq]).collect();
    ensure(qq_degs.windows(2).all(|w| w[0] == w[1]), || format!("cofactor {cof} depends on qq beyond a power"))?;

    let vs = VarSet::new(&["qq", "d", "s", "Q"]).unwrap();
    let wide = pm.with_varset(&vs).map_err(err)?;
    let (num, den) = (parse("Q", &vs).unwrap(), parse("1 - Q", &vs).unwrap());
    let (sq, _) = wide.substitute_rational("qq", &num, &den).map_err(err)?;
    let (core, _) = strip_known_factors(&sq, &[num, den]).map_err(err)?;
    ensure(core.term_count() == 3356, || format!("Q-form has {} terms", core.term_count()))?;
    Ok(format!(
        "substituted 6744 = 1924 x qq^{} x ({}-term factor in d, s); Q-form {} terms; pmmr run {:.1?}",
        qq_degs[0],
        cof.term_count(),
        core.term_count(),
        run.elapsed
    ))
}

fn trivial_roots() -> Check {
    let qs = trivial_bifurcation_q(&r(1, 5), &r(1, 3), &r(1, 3), Trivial::DownDown).map_err(err)?;
    let s = 5.0 * 2f64.sqrt();
    let want: Vec<f64> = [(10.0 - s) / 3.0, (10.0 + s) / 3.0].iter().map(|q| q / (1.0 + q)).collect();
    ensure(qs.len() == 2, || format!("{} roots", qs.len()))?;
    for (g, w) in qs.iter().zip(&want) {
        ensure((g - w).abs() < 1e-6, || format!("root {g} vs {w}"))?;
        ensure((0.0..=1.0).contains(g), || format!("root {g} outside [0, 1]"))?;
    }
    for (g, w) in qs.iter().zip([0.494007, 0.850531]) {
        ensure((g - w).abs() < 1e-6, || format!("root {g} vs listed {w}"))?;
    }
    Ok(format!("{:.6} {:.6}", qs[0], qs[1]))
}

/// Second-order dual numbers: value, first and second derivative.
#[derive(Clone, Copy)]
struct Jet(f64, f64, f64);

impl Jet {
    fn var(x: f64) -> Jet {
        Jet(x, 1.0, 0.0)
    }
    fn sin(self) -> Jet {
        Jet(self.0.sin(), self.0.cos() * self.1, self.0.cos() * self.2 - self.0.sin() * self.1 * self.1)
    }
    fn cos(self) -> Jet {
        Jet(self.0.cos(), -self.0.sin() * self.1, -self.0.sin() * self.2 - self.0.cos() * self.1 * self.1)
    }
    fn mul(self, o: Jet) -> Jet {
        Jet(self.0 * o.0, self.0 * o.1 + self.1 * o.0, self.0 * o.2 + 2.0 * self.1 * o.1 + self.2 * o.0)
    }
    fn scale(self, k: f64) -> Jet {
        Jet(k * self.0, k * self.1, k * self.2)
    }
    fn add(self, o: Jet) -> Jet {
        Jet(self.0 + o.0, self.1 + o.1, self.2 + o.2)
    }
}

fn single_v2(q: f64, x: f64) -> f64 {
    let t = Jet::var(x);
    let s = t.sin();
    s.mul(s).scale(-q / 2.0).add(t.cos().scale(-(1.0 - q))).2
}

fn single_pendulum() -> Check {
    let half = single_pendulum_equilibria(0.5).map_err(err)?;
    ensure(half[0].class == Stability::Degenerate, || "down state not degenerate at Q = 1/2".into())?;
    let below = single_pendulum_equilibria(0.5 - 1e-12).map_err(err)?;
    ensure(below.iter().all(|e| e.branch != SingleBranch::Nontrivial), || "nontrivial state below 1/2".into())?;
    ensure(below[0].class == Stability::Stable, || "down state not stable below 1/2".into())?;
    let above = single_pendulum_equilibria(0.5 + 1e-12).map_err(err)?;
    ensure(above[0].class == Stability::Saddle, || "down state not a saddle above 1/2".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let q: f64 = rng.gen_range(0.0..1.0);
        let eqs = single_pendulum_equilibria(q).map_err(err)?;
        let has = eqs.iter().any(|e| e.branch == SingleBranch::Nontrivial);
        ensure(has == (q >= 0.5), || format!("nontrivial presence wrong at Q = {q}"))?;
        for e in &eqs {
            let (kind, rate) = single_pendulum_nmr(q, e.branch).map_err(err)?;
            let v2 = single_v2(q, e.theta);
            let want_kind = if v2 > 0.0 { ModeKind::Oscillatory } else { ModeKind::Exponential };
            ensure(kind == want_kind, || format!("mode kind at Q = {q}, theta = {}", e.theta))?;
            worst = worst.max((rate * rate - v2.abs()).abs());
        }
    }
    ensure(worst < 1e-10, || format!("rate^2 differs from |V''| by {worst:e}"))?;
    Ok(format!("100 samples, max |rate^2 - |V''|| = {worst:.1e}"))
}

fn sweep_oracle(m: &NumericModel, n: usize) -> Vec<Configuration> {
    let h = 2.0 * PI / n as f64;
    let mut found: Vec<Configuration> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (mut x, mut y) = (-PI + (i as f64 + 0.5) * h, -PI + (j as f64 + 0.5) * h);
            let mut ok = false;
            for _ in 0..60 {
                let c = Configuration::new(x, y);
                let g = m.grad(c);
                if g[0].abs().max(g[1].abs()) < 1e-13 {
                    ok = true;
                    break;
                }
                let hs = m.hess(c);
                let det = hs[0][0] * hs[1][1] - hs[0][1] * hs[1][0];
                if det == 0.0 {
                    break;
                }
                let dx = (hs[1][1] * g[0] - hs[0][1] * g[1]) / det;
                let dy = (hs[0][0] * g[1] - hs[1][0] * g[0]) / det;
                if !(dx.is_finite() && dy.is_finite()) || dx.abs().max(dy.abs()) > 2.0 {
                    break;
                }
                x -= dx;
                y -= dy;
                if dx.abs().max(dy.abs()) < 1e-15 {
                    let g = m.grad(Configuration::new(x, y));
                    ok = g[0].abs().max(g[1].abs()) < 1e-10;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let c = Configuration::new(x, y).canonical();
            if found.iter().all(|f| f.distance(c) >= 1e-8) {
                found.push(c);
            }
        }
    }
    found
}

fn excess_pairs(delta: &Rational, sigma: &Rational, chi: &Rational, big_q: f64, nontrivial: usize) -> Result<i64, String> {
    let mut crossings = 0;
    for w in Trivial::ALL {
        let qs = trivial_bifurcation_q(delta, sigma, chi, w).map_err(err)?;
        crossings += qs.iter().filter(|&&x| x > 0.0 && x < big_q).count();
    }
    Ok(nontrivial as i64 - 2 * crossings as i64)
}

fn solver_vs_oracle() -> Check {
    let mut compared = 0;
    let mut extra_models = Vec::new();
    for row in 0..TABLE.len() {
        let (d, s, chi) = table_row(row);
        for k in 1..=9 {
            let mp = ModelParams::new(d.clone(), s.clone(), chi.clone(), r(k, 10));
            let eqs = find_equilibria(&mp).map_err(err)?;
            let m = NumericModel::new(&mp).map_err(err)?;
            for e in &eqs {
                ensure(e.residual < 1e-10, || format!("row {row}, Q = {k}/10: residual {}", e.residual))?;
            }
            let oracle = sweep_oracle(&m, 400);
            for o in &oracle {
                ensure(eqs.iter().any(|e| e.config.distance(*o) < 1e-8), || {
                    format!("row {row}, Q = {k}/10: oracle point ({:.9}, {:.9}) missing", o.theta, o.phi)
                })?;
            }
            for e in &eqs {
                ensure(oracle.iter().any(|o| e.config.distance(*o) < 1e-8), || {
                    format!("row {row}, Q = {k}/10: reported ({:.9}, {:.9}) not in oracle", e.config.theta, e.config.phi)
                })?;
            }
            let ex = excess_pairs(&d, &s, &chi, k as f64 / 10.0, nontrivial_count(&eqs))?;
            ensure(ex == 0, || format!("row {row}, Q = {k}/10: {ex} nontrivial equilibria off the trivial branches"))?;
            compared += 1;
        }
        let mp = ModelParams::new(d.clone(), s.clone(), chi.clone(), r(49, 50));
        let eqs = find_equilibria(&mp).map_err(err)?;
        let ex = excess_pairs(&d, &s, &chi, 0.98, nontrivial_count(&eqs))?;
        if ex != 0 {
            extra_models.push(row);
        }
    }
    ensure(extra_models.iter().all(|&row| TABLE[row].1 == (4, 3)), || format!("extra branches for rows {extra_models:?}"))?;
    Ok(format!("{compared} cases match the 400x400 sweep; extra branches at Q = 0.98 only in rows {extra_models:?}"))
}

fn dynamics() -> Check {
    let mp = ModelParams::new(r(1, 5), r(1, 3), r(1, 3), r(1, 4));
    let tr = simulate(&mp, [0.3, -0.2, 0.1, 0.4], 1e-3, 10_000).map_err(err)?;
    let drift = tr.drift();
    ensure(drift < 1e-6, || format!("energy drift {drift:e}"))?;

    let m = NumericModel::new(&mp).map_err(err)?;
    let c = Configuration::new(0.0, 0.0);
    let (class, _) = classify(&m, c);
    ensure(class == Stability::Stable, || format!("down state is {class:?}"))?;
    let mut worst: f64 = 0.0;
    for (w, v) in normal_modes(&m, c) {
        let amp = 1e-4;
        let period = 2.0 * PI / w.sqrt();
        let dt = period / 2000.0;
        let tr = simulate(&mp, [amp * v[0], amp * v[1], 0.0, 0.0], dt, 20_000).map_err(err)?;
        let comp = if v[0].abs() > v[1].abs() { 0 } else { 1 };
        let mut ups = Vec::new();
        for k in 1..tr.states.len() {
            let (a, b) = (tr.states[k - 1][comp], tr.states[k][comp]);
            if a < 0.0 && b >= 0.0 {
                ups.push(tr.times[k - 1] + dt * a / (a - b));
            }
        }
        ensure(ups.len() >= 3, || "too few oscillations".into())?;
        let measured = (ups[ups.len() - 1] - ups[0]) / (ups.len() - 1) as f64;
        let rel = (measured / period - 1.0).abs();
        worst = worst.max(rel);
    }
    ensure(worst < 0.01, || format!("frequency off by {:.3}%", worst * 100.0))?;
    Ok(format!("drift {drift:.1e}, frequency error {:.2e}", worst))
}

fn random_poly(rng: &mut impl Rng, vars: &[&str], terms: usize, deg: u32) -> String {
    let mut s = String::from("0");
    for _ in 0..terms {
        let c: i64 = rng.gen_range(-9..=9);
        let dnm: i64 = rng.gen_range(1..=4);
        let sign = if c < 0 { '-' } else { '+' };
        s.push_str(&format!(" {sign} {}/{dnm}", c.abs()));
        for v in vars {
            let e = rng.gen_range(0..=deg);
            if e > 0 {
                s.push_str(&format!("*{v}^{e}"));
            }
        }
    }
    s
}

fn specialize(p: &Polynomial, at: &HashMap<String, Rational>) -> Result<Polynomial, String> {
    Ok(match p.evaluate(at).map_err(err)? {
        Evaluated::Poly(x) => x,
        Evaluated::Value(v) => Polynomial::constant(p.varset(), &v),
    })
}

fn properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let vs = VarSet::new(&["x", "y", "z"]).unwrap();
    let names = ["x", "y", "z"];
    for k in 0..200 {
        let [a, b, c]: [Polynomial; 3] =
            std::array::from_fn(|_| parse(&random_poly(&mut rng, &names, 4, 3), &vs).unwrap());
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let rhs = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        ensure(lhs == rhs, || format!("distributivity, case {k}"))?;
        ensure(a.try_mul(&b).unwrap() == b.try_mul(&a).unwrap(), || format!("commutativity, case {k}"))?;
        let l = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let r2 = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        ensure(l == r2, || format!("associativity, case {k}"))?;
        ensure(a.try_sub(&a).unwrap().is_zero(), || format!("additive inverse, case {k}"))?;
    }

    let mut checked = 0;
    while checked < 50 {
        let p = parse(&random_poly(&mut rng, &names, 4, 2), &vs).unwrap();
        let q = parse(&random_poly(&mut rng, &names, 4, 2), &vs).unwrap();
        let (dp, dq) = (p.degree("x").unwrap(), q.degree("x").unwrap());
        if dp == 0 || dq == 0 {
            continue;
        }
        let at: HashMap<String, Rational> = [("y".to_string(), r(rng.gen_range(-5..5), rng.gen_range(1..4)))].into();
        let (ps, qs) = (specialize(&p, &at)?, specialize(&q, &at)?);
        if ps.degree("x").unwrap() != dp || qs.degree("x").unwrap() != dq {
            continue;
        }
        let full = specialize(&sylvester_resultant(&p, &q, "x").map_err(err)?, &at)?;
        let spec = sylvester_resultant(&ps, &qs, "x").map_err(err)?;
        ensure(full == spec, || format!("resultant specialization, case {checked}"))?;
        checked += 1;
    }

    let mvs = VarSet::new(&["a", "b"]).unwrap();
    for k in 0..20 {
        let shared = parse(&random_poly(&mut rng, &["a", "b"], 2, 1), &mvs).unwrap();
        let rows: Vec<Vec<Polynomial>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|_| {
                        let e = parse(&random_poly(&mut rng, &["a", "b"], 3, 2), &mvs).unwrap();
                        if i == 0 {
                            e.try_mul(&shared).unwrap()
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect();
        let m = PolyMatrix::from_rows(&mvs, rows).map_err(err)?;
        let det = m.determinant().map_err(err)?;
        if det.is_zero() {
            continue;
        }
        let fl = edf_determinant(&m, &[]).map_err(err)?;
        ensure(fl.expand(&mvs).map_err(err)? == det, || format!("EDF product identity, case {k}"))?;
    }

    for k in 0..25 {
        let mp = ModelParams::new(
            r(rng.gen_range(-80..=80), 100),
            r(rng.gen_range(-80..=80), 100),
            r(rng.gen_range(-80..=80), 100),
            r(rng.gen_range(5..=95), 100),
        );
        let eqs = find_equilibria(&mp).map_err(err)?;
        ensure(symmetric(&eqs), || format!("equilibrium symmetry, case {k}"))?;
    }
    Ok("ring axioms x200, resultant specialization x50, EDF identity x20, symmetry x25".into())
}

fn report(id: usize, name: &str, t: Instant, res: Check) -> bool {
    let secs = t.elapsed().as_secs_f64();
    match res {
        Ok(detail) => {
            println!("PASS [{id:>2}] {name}: {detail} ({secs:.1} s)");
            true
        }
        Err(why) => {
            println!("FAIL [{id:>2}] {name}: {why} ({secs:.1} s)");
            false
        }
    }
}

fn main() {
    let mut ok = true;
    let t = Instant::now();
    ok &= report(1, "parameter mapping", t, parameter_mapping());
    let t = Instant::now();
    ok &= report(2, "chi_pmmr consistency", t, chi_consistency());
    let t = Instant::now();
    ok &= report(3, "half-tangent resultants", t, halftangent_resultants());

    let t = Instant::now();
    let run = dixon_run(SystemKind::Bifurcation, &[], 3);
    let main_poly = match run {
        Ok(run) => {
            ok &= report(4, "Dixon divisibility", t, dixon_divisibility(&run));
            let t = Instant::now();
            match dominant_size(&run) {
                Ok((detail, p)) => {
                    ok &= report(5, "dominant factor size", t, Ok(detail));
                    Some(p)
                }
                Err(e) => {
                    ok &= report(5, "dominant factor size", t, Err(e));
                    None
                }
            }
        }
        Err(e) => {
            ok &= report(4, "Dixon divisibility", t, Err(e.clone()));
            ok &= report(5, "dominant factor size", t, Err(e));
            None
        }
    };
    let t = Instant::now();
    let c6 = match &main_poly {
        Some(p) => pmmr_consistency(p),
        None => Err("no dominant factor from the general run".into()),
    };
    ok &= report(6, "PMMR substitution consistency", t, c6);

    let t = Instant::now();
    ok &= report(7, "trivial bifurcation roots", t, trivial_roots());
    let t = Instant::now();
    ok &= report(8, "single pendulum", t, single_pendulum());
    let t = Instant::now();
    ok &= report(9, "equilibrium solver vs sweep", t, solver_vs_oracle());
    let t = Instant::now();
    ok &= report(10, "dynamics", t, dynamics());
    let t = Instant::now();
    ok &= report(11, "property suites", t, properties());
    if !ok {
        std::process::exit(1);
    }
}
