//! Enumeration and classification of equilibria at fixed parameters.

use super::roots::real_roots;
use crate::elim::{strip_known_factors, sylvester_resultant};
use crate::error::{Error, Result};
use crate::model::{build_system, Configuration, ModelParams, NumericModel, Stability, SystemKind, Trivial};
use crate::polyring::{parse, Evaluated, Polynomial, Rational};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;

/// Gradient residual required of every reported equilibrium.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Below this `|det(hess)|` an equilibrium is degenerate.
pub const DEGENERATE_TOL: f64 = 1e-10;
/// Configurations closer than this on the torus are the same equilibrium.
pub const SAME_POINT: f64 = 1e-8;

const NEWTON_ITERS: usize = 50;
const NEWTON_STEP: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Trivial,
    Nontrivial,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Equilibrium {
    pub config: Configuration,
    /// Largest component of the scaled gradient.
    pub residual: f64,
    /// Roots of the normal-mode quadratic, ascending.
    pub omega_sq: [f64; 2],
    pub class: Stability,
    pub origin: Origin,
}

fn residual(m: &NumericModel, c: Configuration) -> f64 {
    let g = m.grad(c);
    g[0].abs().max(g[1].abs())
}

/// Damped Newton iteration on the scaled gradient. Returns the end point
/// when the residual is below [`RESIDUAL_TOL`].
pub fn newton_polish(m: &NumericModel, start: Configuration) -> Option<Configuration> {
    let mut x = start;
    let mut r = residual(m, x);
    for _ in 0..NEWTON_ITERS {
        let g = m.grad(x);
        let h = m.hess(x);
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let dt = (h[1][1] * g[0] - h[0][1] * g[1]) / det;
        let dp = (h[0][0] * g[1] - h[1][0] * g[0]) / det;
        let mut lambda = 1.0;
        let mut next = Configuration::new(x.theta - dt, x.phi - dp);
        let mut rn = residual(m, next);
        while rn > r && lambda > 1e-6 {
            lambda *= 0.5;
            next = Configuration::new(x.theta - lambda * dt, x.phi - lambda * dp);
            rn = residual(m, next);
        }
        let step = lambda * dt.abs().max(dp.abs());
        if rn <= r {
            x = next;
            r = rn;
        }
        if step < NEWTON_STEP || r == 0.0 {
            break;
        }
    }
    let x = x.canonical();
    (residual(m, x) < RESIDUAL_TOL).then_some(x)
}

/// Stability from the Hessian determinant and the normal-mode roots.
pub fn classify(m: &NumericModel, c: Configuration) -> (Stability, [f64; 2]) {
    let h = m.hess(c);
    let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    let w = m.omega_sq(c);
    if det.abs() < DEGENERATE_TOL {
        return (Stability::Degenerate, w);
    }
    let class = match (w[0] > 0.0, w[1] > 0.0) {
        (true, true) => Stability::Stable,
        (false, false) => Stability::Unstable,
        _ => Stability::Saddle,
    };
    (class, w)
}

fn make(m: &NumericModel, c: Configuration, origin: Origin) -> Equilibrium {
    let (class, omega_sq) = classify(m, c);
    Equilibrium { config: c, residual: residual(m, c), omega_sq, class, origin }
}

fn trivial_configs() -> Vec<Configuration> {
    Trivial::ALL
        .iter()
        .map(|w| {
            let (t, p) = w.angles();
            Configuration::new(t, p).canonical()
        })
        .collect()
}

/// Real roots of the half-tangent resultant in one chart variable, with the
/// spurious factors removed. `None` when the resultant vanishes identically.
fn chart_roots(p1: &Polynomial, p2: &Polynomial, keep: &str, drop: &str) -> Result<Option<Vec<f64>>> {
    let res = sylvester_resultant(p1, p2, drop)?;
    if res.is_zero() {
        return Ok(None);
    }
    let v = res.varset();
    let known = [parse(keep, v)?, parse(&format!("1 + {keep}^2"), v)?];
    let (core, _) = strip_known_factors(&res, &known)?;
    if core.total_degree() == 0 {
        return Ok(Some(Vec::new()));
    }
    Ok(Some(real_roots(&core)?.into_iter().map(|r| r.refined).collect()))
}

fn specialized_chart(mp: &ModelParams, q: &Rational) -> Result<(Polynomial, Polynomial)> {
    let sys = build_system(SystemKind::Halftangent)?;
    let mut at: HashMap<String, Rational> = HashMap::new();
    at.insert("qq".into(), q.clone());
    at.insert("delta".into(), mp.delta.clone());
    at.insert("sigma".into(), mp.sigma.clone());
    at.insert("chi".into(), mp.chi.clone());
    let spec = |name: &str| -> Result<Polynomial> {
        let p = sys.poly(name).ok_or_else(|| Error::NotPresent(name.into()))?;
        Ok(match p.evaluate(&at)? {
            Evaluated::Poly(x) => x,
            Evaluated::Value(v) => Polynomial::constant(p.varset(), &v),
        })
    };
    Ok((spec("poly1")?, spec("poly2")?))
}

/// Starting points from the exact chart: every pair of real roots of the two
/// resultants, mapped back to angles.
fn chart_candidates(mp: &ModelParams, q: &Rational) -> Result<Option<Vec<Configuration>>> {
    let (p1, p2) = specialized_chart(mp, q)?;
    if p1.is_zero() || p2.is_zero() {
        return Ok(None);
    }
    let (Some(ts), Some(us)) = (chart_roots(&p1, &p2, "t", "u")?, chart_roots(&p1, &p2, "u", "t")?) else {
        return Ok(None);
    };
    let mut out = Vec::with_capacity(ts.len() * us.len());
    for &t in &ts {
        for &u in &us {
            out.push(Configuration::new(2.0 * t.atan(), 2.0 * u.atan()));
        }
    }
    Ok(Some(out))
}

/// Closed form for uncoupled pendula (`b = 0`): each angle solves
/// `sin x (k cos x - g) = 0` on its own.
fn decoupled_candidates(m: &NumericModel) -> Vec<Configuration> {
    let branch = |k: f64, g: f64| -> Vec<f64> {
        let mut v = vec![0.0, PI];
        if k != 0.0 && (g / k).abs() <= 1.0 {
            let x = (g / k).acos();
            v.push(x);
            v.push(-x);
        }
        v
    };
    let th = branch(m.q * m.a, 2.0 * (1.0 + m.chi));
    let ph = branch(m.q * m.c, 2.0 * (1.0 - m.chi));
    th.iter().flat_map(|&t| ph.iter().map(move |&p| Configuration::new(t, p))).collect()
}

/// Newton starts on an `n` by `n` grid over the torus.
pub fn grid_candidates(n: usize) -> Vec<Configuration> {
    let h = 2.0 * PI / n as f64;
    (0..n)
        .flat_map(|i| (0..n).map(move |j| Configuration::new(-PI + (i as f64 + 0.5) * h, -PI + (j as f64 + 0.5) * h)))
        .collect()
}

fn insert(list: &mut Vec<Equilibrium>, m: &NumericModel, c: Configuration, origin: Origin) {
    if list.iter().all(|e| e.config.distance(c) >= SAME_POINT) {
        list.push(make(m, c, origin));
    }
}

/// All equilibria at the parameters and `Q` of `mp`. The vertical
/// configurations are always included; the others come from the exact
/// half-tangent elimination, polished by Newton's method. The list is
/// closed under `(theta, phi) -> (-theta, -phi)`.
pub fn find_equilibria(mp: &ModelParams) -> Result<Vec<Equilibrium>> {
    mp.validate()?;
    if mp.big_q >= Rational::one() {
        return Err(Error::OutOfRange("Q = 1 is only available as a limit".into()));
    }
    let q = mp.q()?;
    let m = NumericModel::new(mp)?;
    let mut out = Vec::new();
    for c in trivial_configs() {
        out.push(make(&m, c, Origin::Trivial));
    }
    let candidates = if mp.delta == Rational::one() {
        decoupled_candidates(&m)
    } else if q.is_zero() {
        Vec::new()
    } else {
        match chart_candidates(mp, &q)? {
            Some(c) => c,
            None => {
                log::warn!("half-tangent resultant vanishes identically; falling back to a grid search");
                grid_candidates(64)
            }
        }
    };
    for c in candidates {
        match newton_polish(&m, c) {
            Some(x) => {
                insert(&mut out, &m, x, Origin::Nontrivial);
                insert(&mut out, &m, x.reflected(), Origin::Nontrivial);
            }
            None => log::debug!("candidate ({:.6}, {:.6}) did not converge", c.theta, c.phi),
        }
    }
    Ok(out)
}

/// Same as [`find_equilibria`] for `Q` given as a float.
pub fn find_equilibria_at(mp: &ModelParams, big_q: f64) -> Result<Vec<Equilibrium>> {
    let q = Rational::from_float(big_q).ok_or_else(|| Error::OutOfRange(format!("Q = {big_q}")))?;
    let mut p = mp.clone();
    p.big_q = q;
    find_equilibria(&p)
}

/// True when `list` contains the reflection of each of its members.
pub fn symmetric(list: &[Equilibrium]) -> bool {
    list.iter().all(|e| list.iter().any(|f| f.config.distance(e.config.reflected()) < SAME_POINT))
}

/// Number of nontrivial equilibria.
pub fn nontrivial_count(list: &[Equilibrium]) -> usize {
    list.iter().filter(|e| e.origin == Origin::Nontrivial).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn non_rotating_has_only_vertical_states() {
        let mp = ModelParams::new(r(1, 5), r(1, 3), r(1, 3), r(0, 1));
        let eq = find_equilibria(&mp).unwrap();
        assert_eq!(eq.len(), 4);
        assert_eq!(eq[0].class, Stability::Stable);
        assert_eq!(eq[3].class, Stability::Unstable);
    }

    #[test]
    fn pair_after_first_bifurcation() {
        let mp = ModelParams::new(r(1, 5), r(1, 3), r(1, 3), r(3, 5));
        let eq = find_equilibria(&mp).unwrap();
        assert_eq!(nontrivial_count(&eq), 2);
        assert!(symmetric(&eq));
        for e in &eq {
            assert!(e.residual < RESIDUAL_TOL);
        }
    }

    #[test]
    fn uncoupled_closed_form() {
        let mp = ModelParams::new(r(1, 1), r(0, 1), r(0, 1), r(9, 10));
        let eq = find_equilibria(&mp).unwrap();
        assert!(symmetric(&eq));
        assert!(nontrivial_count(&eq) > 0);
    }

    #[test]
    fn rejects_q_one() {
        let mp = ModelParams::new(r(1, 5), r(1, 3), r(1, 3), r(1, 1));
        assert!(find_equilibria(&mp).is_err());
    }
}
