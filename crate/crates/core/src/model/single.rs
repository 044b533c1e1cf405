//! The single rotating pendulum with `V = -Q sin^2(x)/2 - (1 - Q) cos(x)`.

use crate::error::{Error, Result};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Stable,
    Saddle,
    Unstable,
    Degenerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SingleBranch {
    Down,
    Up,
    Nontrivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeKind {
    Oscillatory,
    Exponential,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SingleEquilibrium {
    pub theta: f64,
    pub branch: SingleBranch,
    pub class: Stability,
}

const DEGENERATE: f64 = 1e-12;

fn check_q(q: f64) -> Result<()> {
    if (0.0..1.0).contains(&q) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("Q = {q} outside [0, 1)")))
    }
}

pub fn single_pendulum_v2(q: f64, theta: f64) -> f64 {
    let c = theta.cos();
    -2.0 * q * c * c + (1.0 - q) * c + q
}

fn classify(v2: f64) -> Stability {
    if v2.abs() < DEGENERATE {
        Stability::Degenerate
    } else if v2 > 0.0 {
        Stability::Stable
    } else {
        Stability::Saddle
    }
}

/// Equilibria at rotation strength `q`: down, up, and the symmetric pair
/// `+-arccos((1 - Q)/Q)` once `Q >= 1/2`.
pub fn single_pendulum_equilibria(q: f64) -> Result<Vec<SingleEquilibrium>> {
    check_q(q)?;
    let mut out = vec![
        SingleEquilibrium { theta: 0.0, branch: SingleBranch::Down, class: classify(1.0 - 2.0 * q) },
        SingleEquilibrium { theta: PI, branch: SingleBranch::Up, class: Stability::Saddle },
    ];
    if q >= 0.5 {
        let x = ((1.0 - q) / q).clamp(-1.0, 1.0).acos();
        let class = classify(2.0 - 1.0 / q);
        out.push(SingleEquilibrium { theta: x, branch: SingleBranch::Nontrivial, class });
        if x != 0.0 {
            out.push(SingleEquilibrium { theta: -x, branch: SingleBranch::Nontrivial, class });
        }
    }
    Ok(out)
}

/// Normal-mode rate `sqrt(|V''|)` with its kind.
pub fn single_pendulum_nmr(q: f64, branch: SingleBranch) -> Result<(ModeKind, f64)> {
    check_q(q)?;
    match branch {
        SingleBranch::Down if q < 0.5 => Ok((ModeKind::Oscillatory, (1.0 - 2.0 * q).sqrt())),
        SingleBranch::Down => Ok((ModeKind::Exponential, (2.0 * q - 1.0).sqrt())),
        SingleBranch::Up => Ok((ModeKind::Exponential, 1.0)),
        SingleBranch::Nontrivial if q >= 0.5 => Ok((ModeKind::Oscillatory, (2.0 - 1.0 / q).sqrt())),
        SingleBranch::Nontrivial => Err(Error::NotPresent(format!("no nontrivial equilibrium at Q = {q}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_and_three_quarters() {
        let e = single_pendulum_equilibria(0.25).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].class, Stability::Stable);
        assert_eq!(e[1].class, Stability::Saddle);
        let e = single_pendulum_equilibria(0.75).unwrap();
        assert_eq!(e.len(), 4);
        assert!((e[2].theta - 1.230959).abs() < 1e-6);
        let (k, r) = single_pendulum_nmr(0.25, SingleBranch::Down).unwrap();
        assert_eq!(k, ModeKind::Oscillatory);
        assert!((r - 0.707107).abs() < 1e-6);
        let (k, r) = single_pendulum_nmr(0.75, SingleBranch::Nontrivial).unwrap();
        assert_eq!(k, ModeKind::Oscillatory);
        assert!((r - 0.816497).abs() < 1e-6);
        assert!(single_pendulum_nmr(0.25, SingleBranch::Nontrivial).is_err());
        assert!(single_pendulum_equilibria(1.0).is_err());
    }

    #[test]
    fn bifurcation_at_half() {
        let e = single_pendulum_equilibria(0.5).unwrap();
        assert_eq!(e[0].class, Stability::Degenerate);
        assert!(e.iter().any(|x| x.branch == SingleBranch::Nontrivial && x.theta == 0.0));
    }
}
