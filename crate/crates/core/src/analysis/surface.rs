//! Trivial bifurcation values and parameter-space sampling.

use super::roots::real_roots;
use crate::error::{Error, Result};
use crate::model::{substitute_chi_pmmr, to_f64, trivial_bifurcation_poly, Trivial};
use crate::polyring::{parse, Evaluated, Polynomial, Rational, VarSet};
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt::Write as _;

fn assign(pairs: &[(&str, Rational)]) -> HashMap<String, Rational> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Values of `Q` in `[0, 1]` where the Hessian at the given vertical
/// equilibrium is singular, ascending. A root at `q = infinity` is not
/// reported.
pub fn trivial_bifurcation_q(delta: &Rational, sigma: &Rational, chi: &Rational, which: Trivial) -> Result<Vec<f64>> {
    let one = Rational::one();
    let p = trivial_bifurcation_poly(which);
    let at = assign(&[("d", &one + delta), ("s", &one + sigma), ("chi", chi.clone())]);
    let uni = match p.evaluate(&at)? {
        Evaluated::Poly(u) => u,
        Evaluated::Value(v) => Polynomial::constant(p.varset(), &v),
    };
    if uni.is_zero() {
        return Err(Error::Degenerate(format!("{} condition vanishes for every Q", which.code())));
    }
    let mut out: Vec<f64> = real_roots(&uni)?
        .into_iter()
        .filter(|r| !r.hi.is_negative())
        .map(|r| {
            let q = r.refined.max(0.0);
            q / (1.0 + q)
        })
        .collect();
    out.sort_by(|a, b| a.total_cmp(b));
    Ok(out)
}

/// One grid axis: `steps` evenly spaced samples from `lo` to `hi`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Axis {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Axis {
    pub fn value(&self, k: usize) -> f64 {
        if self.steps <= 1 {
            self.lo
        } else {
            self.lo + (self.hi - self.lo) * k as f64 / (self.steps - 1) as f64
        }
    }
}

/// Samples of a polynomial on a rectangular grid. The last axis varies
/// fastest in `values`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanGrid {
    pub axes: Vec<Axis>,
    pub values: Vec<f64>,
}

impl ScanGrid {
    pub fn node(&self, mut flat: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.axes.len()];
        for (i, ax) in self.axes.iter().enumerate().rev() {
            out[i] = ax.value(flat % ax.steps);
            flat /= ax.steps;
        }
        out
    }

    /// CSV with one row per node and 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for ax in &self.axes {
            s.push_str(&ax.name);
            s.push(',');
        }
        s.push_str("value\n");
        for (k, v) in self.values.iter().enumerate() {
            for x in self.node(k) {
                let _ = write!(s, "{},", fmt17(x));
            }
            let _ = writeln!(s, "{}", fmt17(*v));
        }
        s
    }
}

pub fn fmt17(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.16e}")
    }
}

/// Parses `name=lo:hi:steps` or `name=value` items separated by commas.
pub fn parse_grid(spec: &str) -> Result<Vec<Axis>> {
    let bad = |m: String| Error::InvalidParams(m);
    let mut axes = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, range) = item.split_once('=').ok_or_else(|| bad(format!("grid item '{item}' lacks '='")))?;
        let num = |x: &str| -> Result<f64> { Ok(to_f64(&crate::model::parse_rational(x.trim())?)) };
        let parts: Vec<&str> = range.split(':').collect();
        let axis = match parts.as_slice() {
            [v] => Axis { name: name.trim().into(), lo: num(v)?, hi: num(v)?, steps: 1 },
            [lo, hi, n] => {
                let steps: usize = n.trim().parse().map_err(|_| bad(format!("bad step count '{n}'")))?;
                if steps == 0 {
                    return Err(bad(format!("axis {name} has no samples")));
                }
                Axis { name: name.trim().into(), lo: num(lo)?, hi: num(hi)?, steps }
            }
            _ => return Err(bad(format!("grid item '{item}' is not name=lo:hi:n or name=value"))),
        };
        if axes.iter().any(|a: &Axis| a.name == axis.name) {
            return Err(bad(format!("axis {} given twice", axis.name)));
        }
        axes.push(axis);
    }
    Ok(axes)
}

/// The trivial polynomial of the given code, or an error for unknown names.
pub fn named_surface(name: &str) -> Result<Polynomial> {
    let which: Trivial = name.parse()?;
    Ok(trivial_bifurcation_poly(which))
}

/// Rewrites `p` over `(qq, d, s, chi)` or a subset into the sampling
/// variables: `Q` with `q = Q/(1-Q)` cleared of denominators, and either
/// `(d, s, chi)` or, under point-mass coupling, `(delta, sigma)`.
fn sampling_form(p: &Polynomial, pmmr: bool) -> Result<(Polynomial, Vec<&'static str>)> {
    let base = VarSet::new(&["qq", "d", "s", "chi", "Q"])?;
    let mut cur = p.with_varset(&base)?;
    if pmmr {
        cur = substitute_chi_pmmr(&cur)?.with_varset(&base)?;
    }
    let (num, den) = (parse("Q", &base)?, parse("1 - Q", &base)?);
    cur = cur.substitute_rational("qq", &num, &den)?.0;
    if pmmr {
        let target = VarSet::new(&["qq", "d", "s", "chi", "Q", "delta", "sigma"])?;
        let wide = cur.with_varset(&target)?;
        let (one_d, one_s) = (parse("1 + delta", &target)?, parse("1 + sigma", &target)?);
        let unit = Polynomial::one(&target);
        let r = wide.substitute_rational("d", &one_d, &unit)?.0;
        let r = r.substitute_rational("s", &one_s, &unit)?.0;
        Ok((r.with_varset(&VarSet::new(&["delta", "sigma", "Q"])?)?, vec!["delta", "sigma", "Q"]))
    } else {
        Ok((cur.with_varset(&VarSet::new(&["d", "s", "chi", "Q"])?)?, vec!["d", "s", "chi", "Q"]))
    }
}

/// Samples `p` (over `(qq, d, s, chi)` or a subset) on the grid. Axes must
/// be exactly `{delta, sigma, Q}` when `pmmr`, else `{d, s, chi, Q}`, in any
/// order. The sampled value is `(1-Q)^k p` with `k` the degree in `qq`.
pub fn scan_surface(p: &Polynomial, axes: &[Axis], pmmr: bool) -> Result<ScanGrid> {
    let (form, names) = sampling_form(p, pmmr)?;
    let mut slot = Vec::with_capacity(names.len());
    for n in &names {
        let i = axes
            .iter()
            .position(|a| a.name == *n)
            .ok_or_else(|| Error::InvalidParams(format!("grid lacks axis {n}; expected {names:?}")))?;
        slot.push(i);
    }
    if axes.len() != names.len() {
        let extra: Vec<&str> = axes.iter().map(|a| a.name.as_str()).filter(|a| !names.contains(a)).collect();
        return Err(Error::InvalidParams(format!("unexpected axes {extra:?}; expected {names:?}")));
    }
    let total = axes.iter().try_fold(1usize, |acc, a| acc.checked_mul(a.steps));
    let total = total.ok_or_else(|| Error::InvalidParams("grid too large".into()))?;
    let grid = ScanGrid { axes: axes.to_vec(), values: Vec::new() };
    let values = (0..total)
        .into_par_iter()
        .map(|k| {
            let node = grid.node(k);
            let pt: Vec<f64> = slot.iter().map(|&i| node[i]).collect();
            form.eval_f64(&pt)
        })
        .collect();
    Ok(ScanGrid { values, ..grid })
}
