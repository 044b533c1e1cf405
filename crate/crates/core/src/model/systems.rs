//! Polynomial systems for equilibria and bifurcations.

use crate::elim::PolySystem;
use crate::error::{Error, Result};
use crate::polyring::{parse, Evaluated, Polynomial, Rational, VarSet};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

pub const GENERAL_VARS: [&str; 8] = ["c1", "s1", "c2", "s2", "qq", "d", "s", "chi"];
pub const PMMR_VARS: [&str; 7] = ["c1", "s1", "c2", "s2", "qq", "d", "s"];
pub const HALFTANGENT_VARS: [&str; 6] = ["t", "u", "qq", "delta", "sigma", "chi"];
pub const PARAM_VARS: [&str; 4] = ["qq", "d", "s", "chi"];
pub const TRIG_VARS: [&str; 4] = ["c1", "s1", "c2", "s2"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SystemKind {
    Equilibrium,
    Bifurcation,
    Halftangent,
    PmmrBifurcation,
}

impl FromStr for SystemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<SystemKind> {
        match s {
            "equilibrium" => Ok(SystemKind::Equilibrium),
            "bifurcation" => Ok(SystemKind::Bifurcation),
            "halftangent" => Ok(SystemKind::Halftangent),
            "pmmr" | "pmmr_bifurcation" | "pmmr-bifurcation" => Ok(SystemKind::PmmrBifurcation),
            _ => Err(Error::InvalidParams(format!("unknown system kind {s:?}"))),
        }
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemKind::Equilibrium => "equilibrium",
            SystemKind::Bifurcation => "bifurcation",
            SystemKind::Halftangent => "halftangent",
            SystemKind::PmmrBifurcation => "pmmr_bifurcation",
        })
    }
}

/// The four vertical equilibria.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Trivial {
    DownDown,
    DownUp,
    UpDown,
    UpUp,
}

impl Trivial {
    pub const ALL: [Trivial; 4] = [Trivial::DownDown, Trivial::DownUp, Trivial::UpDown, Trivial::UpUp];

    /// Cosines `(c1, c2)` of the two angles.
    pub fn cosines(self) -> (i64, i64) {
        match self {
            Trivial::DownDown => (1, 1),
            Trivial::DownUp => (1, -1),
            Trivial::UpDown => (-1, 1),
            Trivial::UpUp => (-1, -1),
        }
    }

    pub fn angles(self) -> (f64, f64) {
        let (c1, c2) = self.cosines();
        let ang = |c: i64| if c == 1 { 0.0 } else { std::f64::consts::PI };
        (ang(c1), ang(c2))
    }

    pub fn code(self) -> &'static str {
        match self {
            Trivial::DownDown => "dd",
            Trivial::DownUp => "du",
            Trivial::UpDown => "ud",
            Trivial::UpUp => "uu",
        }
    }
}

impl FromStr for Trivial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Trivial> {
        Trivial::ALL
            .into_iter()
            .find(|t| t.code() == s)
            .ok_or_else(|| Error::InvalidParams(format!("expected dd, du, ud or uu, got {s:?}")))
    }
}

fn vs(names: &[&str]) -> VarSet {
    VarSet::new(names).expect("fixed variable names")
}

pub fn general_varset() -> VarSet {
    vs(&GENERAL_VARS)
}

pub fn pmmr_varset() -> VarSet {
    vs(&PMMR_VARS)
}

pub fn halftangent_varset() -> VarSet {
    vs(&HALFTANGENT_VARS)
}

pub fn param_varset() -> VarSet {
    vs(&PARAM_VARS)
}

struct General {
    dtheta: Polynomial,
    dphi: Polynomial,
    hess: Polynomial,
    pyth1: Polynomial,
    pyth2: Polynomial,
}

fn general() -> General {
    let v = general_varset();
    let p = |s: &str| parse(s, &v).expect("fixed expression");
    let (a, b, c) = (p("d*s"), p("2 - d"), p("2*d - d*s"));
    let (c1, s1, c2, s2, qq) = (p("c1"), p("s1"), p("c2"), p("s2"), p("qq"));
    let (up, dn) = (p("2 + 2*chi"), p("2 - 2*chi"));
    let dtheta = &(&qq * &c1) * &(&(&a * &s1) + &(&b * &s2)) - &(&up * &s1);
    let dphi = &(&qq * &c2) * &(&(&b * &s1) + &(&c * &s2)) - &(&dn * &s2);
    let cross = &s1 * &s2;
    let h11 = &(&qq * &(&(&a * &(&(&c1 * &c1) - &(&s1 * &s1))) - &(&b * &cross))) - &(&up * &c1);
    let h12 = &(&(&qq * &b) * &c1) * &c2;
    let h22 = &(&qq * &(&(&c * &(&(&c2 * &c2) - &(&s2 * &s2))) - &(&b * &cross))) - &(&dn * &c2);
    let hess = &(&h11 * &h22) - &(&h12 * &h12);
    General { dtheta, dphi, hess, pyth1: p("c1^2 + s1^2 - 1"), pyth2: p("c2^2 + s2^2 - 1") }
}

/// Numerator after replacing `chi` by its point-mass value in terms of `d`
/// and `s`. The result drops `chi` from the variable set.
pub fn substitute_chi_pmmr(p: &Polynomial) -> Result<Polynomial> {
    let v = p.varset();
    let num = parse("d + d*s - 2", v)?;
    let den = parse("2 + d*s - d", v)?;
    let (r, _) = p.substitute_rational("chi", &num, &den)?;
    let keep: Vec<&str> = v.names().iter().map(|s| s.as_str()).filter(|&n| n != "chi").collect();
    r.with_varset(&VarSet::new(&keep)?)
}

fn halftangent() -> (Polynomial, Polynomial) {
    let v = halftangent_varset();
    let p = |s: &str| parse(s, &v).expect("fixed expression");
    let a = p("1 + delta + sigma + delta*sigma");
    let b = p("1 - delta");
    let c = p("1 + delta - sigma - delta*sigma");
    let (st, ct, tt) = (p("2*t"), p("1 - t^2"), p("1 + t^2"));
    let (su, cu, uu) = (p("2*u"), p("1 - u^2"), p("1 + u^2"));
    let (qq, up, dn) = (p("qq"), p("2 + 2*chi"), p("2 - 2*chi"));
    let half = Rational::new(1.into(), 2.into());
    let poly1 = &(&(&qq * &(&(&(&a * &st) * &uu) + &(&(&b * &su) * &tt))) * &ct) - &(&(&(&up * &st) * &tt) * &uu);
    let poly2 = &(&(&qq * &(&(&(&b * &st) * &uu) + &(&(&c * &su) * &tt))) * &cu) - &(&(&(&dn * &su) * &tt) * &uu);
    (poly1.scale(&half), poly2.scale(&half))
}

/// One of the polynomial systems in its canonical variables. Equilibrium and
/// bifurcation systems eliminate `c1, s1, c2, s2`; the half-tangent pair
/// lists `t` and `u` as eliminable.
pub fn build_system(kind: SystemKind) -> Result<PolySystem> {
    match kind {
        SystemKind::Equilibrium | SystemKind::Bifurcation => {
            let g = general();
            let mut polys = vec![("dtheta".to_string(), g.dtheta), ("dphi".to_string(), g.dphi)];
            if kind == SystemKind::Bifurcation {
                polys.push(("hessdet".to_string(), g.hess));
            }
            polys.push(("pyth1".to_string(), g.pyth1));
            polys.push(("pyth2".to_string(), g.pyth2));
            PolySystem::new(&general_varset(), polys, &TRIG_VARS)
        }
        SystemKind::Halftangent => {
            let (p1, p2) = halftangent();
            PolySystem::new(&halftangent_varset(), vec![("poly1".into(), p1), ("poly2".into(), p2)], &["t", "u"])
        }
        SystemKind::PmmrBifurcation => {
            let g = general();
            let target = pmmr_varset();
            let polys = vec![
                ("dtheta".to_string(), substitute_chi_pmmr(&g.dtheta)?),
                ("dphi".to_string(), substitute_chi_pmmr(&g.dphi)?),
                ("hessdet".to_string(), substitute_chi_pmmr(&g.hess)?),
                ("pyth1".to_string(), g.pyth1.with_varset(&target)?),
                ("pyth2".to_string(), g.pyth2.with_varset(&target)?),
            ];
            PolySystem::new(&target, polys, &TRIG_VARS)
        }
    }
}

/// Hessian-determinant polynomial at a vertical equilibrium, over
/// `(qq, d, s, chi)`.
pub fn trivial_bifurcation_poly(which: Trivial) -> Polynomial {
    let (c1, c2) = which.cosines();
    let mut at: HashMap<String, Rational> = HashMap::new();
    at.insert("c1".into(), Rational::from_integer(c1.into()));
    at.insert("c2".into(), Rational::from_integer(c2.into()));
    at.insert("s1".into(), Rational::from_integer(0.into()));
    at.insert("s2".into(), Rational::from_integer(0.into()));
    match general().hess.evaluate(&at).expect("known variables") {
        Evaluated::Poly(p) => p.with_varset(&param_varset()).expect("parameters only"),
        Evaluated::Value(v) => Polynomial::constant(&param_varset(), &v),
    }
}
