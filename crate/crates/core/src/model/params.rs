//! Physical and dimensionless parameters.

use crate::error::{Error, Result};
use crate::polyring::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact rational text: `p/q`, an integer, or a decimal such as `-0.125`
/// or `1.5e-3`. Decimals are converted exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::InvalidParams(format!("not a rational number: {text:?}"));
    if t.contains('/') {
        return t.parse::<Rational>().map_err(|_| bad());
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = Rational::from_integer(digits);
    if scale >= 0 {
        r *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -r } else { r })
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter: rationals as `"p/q"` strings; accepts strings or JSON numbers.
pub mod rational_serde {
    use super::*;
    use serde::de::{self, Deserializer, Visitor};
    use serde::Serializer;
    use std::fmt;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    struct V;

    impl<'de> Visitor<'de> for V {
        type Value = Rational;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a rational as \"p/q\", a decimal string or a number")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
            parse_rational(v).map_err(E::custom)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
            Ok(Rational::from_integer(v.into()))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
            Ok(Rational::from_integer(v.into()))
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Rational, E> {
            if !v.is_finite() {
                return Err(E::custom("non-finite number"));
            }
            parse_rational(&format!("{v:e}")).map_err(E::custom)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        d.deserialize_any(V)
    }
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn zero() -> Rational {
    Rational::zero()
}

/// Dimensional description of the two pendula and the rotation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalParams {
    #[serde(with = "rational_serde")]
    pub m1: Rational,
    #[serde(with = "rational_serde")]
    pub m2: Rational,
    #[serde(with = "rational_serde")]
    pub l1: Rational,
    #[serde(with = "rational_serde")]
    pub l: Rational,
    #[serde(with = "rational_serde")]
    pub l2: Rational,
    #[serde(with = "rational_serde", default = "zero")]
    pub i1p: Rational,
    #[serde(with = "rational_serde", default = "zero")]
    pub i1perp: Rational,
    #[serde(with = "rational_serde", default = "zero")]
    pub i1n: Rational,
    #[serde(with = "rational_serde", default = "zero")]
    pub i2p: Rational,
    #[serde(with = "rational_serde", default = "zero")]
    pub i2perp: Rational,
    #[serde(with = "rational_serde", default = "zero")]
    pub i2n: Rational,
    #[serde(with = "rational_serde")]
    pub omega_a: Rational,
    #[serde(with = "rational_serde")]
    pub g: Rational,
}

impl PhysicalParams {
    /// Point masses on massless rods with `L = L1`.
    pub fn point_masses(m1: Rational, m2: Rational, l1: Rational, l2: Rational, omega_a: Rational, g: Rational) -> Self {
        PhysicalParams {
            m1,
            m2,
            l: l1.clone(),
            l1,
            l2,
            i1p: zero(),
            i1perp: zero(),
            i1n: zero(),
            i2p: zero(),
            i2perp: zero(),
            i2n: zero(),
            omega_a,
            g,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let nonneg = [
            ("m1", &self.m1),
            ("m2", &self.m2),
            ("l", &self.l),
            ("l2", &self.l2),
            ("g", &self.g),
            ("i1p", &self.i1p),
            ("i1perp", &self.i1perp),
            ("i1n", &self.i1n),
            ("i2p", &self.i2p),
            ("i2perp", &self.i2perp),
            ("i2n", &self.i2n),
        ];
        for (name, v) in nonneg {
            if v.is_negative() {
                return Err(Error::InvalidParams(format!("{name} must be non-negative")));
            }
        }
        let (abar, _, cbar) = self.centrifugal_shape();
        if abar.is_negative() {
            return Err(Error::InvalidParams("i1p exceeds m1*l1^2 + m2*l^2 + i1perp".into()));
        }
        if cbar.is_negative() {
            return Err(Error::InvalidParams("i2p exceeds m2*l2^2 + i2perp".into()));
        }
        if self.gravitational().0.is_negative() {
            return Err(Error::InvalidParams("l1 below -m2*l/m1 makes K1 negative".into()));
        }
        Ok(())
    }

    /// Centrifugal coefficients divided by `omega_a^2`.
    fn centrifugal_shape(&self) -> (Rational, Rational, Rational) {
        let a = &self.m1 * &self.l1 * &self.l1 + &self.m2 * &self.l * &self.l + &self.i1perp - &self.i1p;
        let b = &self.m2 * &self.l2 * &self.l;
        let c = &self.m2 * &self.l2 * &self.l2 + &self.i2perp - &self.i2p;
        (a, b, c)
    }

    /// Kinetic coefficients divided by `omega^2`.
    fn kinetic_shape(&self) -> (Rational, Rational, Rational) {
        let a = &self.m1 * &self.l1 * &self.l1 + &self.m2 * &self.l * &self.l + &self.i1n;
        let b = &self.m2 * &self.l2 * &self.l;
        let c = &self.m2 * &self.l2 * &self.l2 + &self.i2n;
        (a, b, c)
    }

    fn gravitational(&self) -> (Rational, Rational) {
        ((&self.m1 * &self.l1 + &self.m2 * &self.l) * &self.g, &self.m2 * &self.l2 * &self.g)
    }
}

/// Dimensionless model parameters; `Q` in `[0, 1]`, the rest in `[-1, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    #[serde(with = "rational_serde")]
    pub delta: Rational,
    #[serde(with = "rational_serde")]
    pub sigma: Rational,
    #[serde(with = "rational_serde", default = "zero")]
    pub alpha: Rational,
    #[serde(with = "rational_serde", default = "zero")]
    pub eta: Rational,
    #[serde(with = "rational_serde")]
    pub chi: Rational,
    #[serde(rename = "Q", with = "rational_serde")]
    pub big_q: Rational,
}

impl ModelParams {
    /// Model with vanishing kinetic parameters.
    pub fn new(delta: Rational, sigma: Rational, chi: Rational, big_q: Rational) -> ModelParams {
        ModelParams { delta, sigma, alpha: zero(), eta: zero(), chi, big_q }
    }

    pub fn validate(&self) -> Result<()> {
        let unit = Rational::one();
        for (name, v) in [("delta", &self.delta), ("sigma", &self.sigma), ("alpha", &self.alpha), ("eta", &self.eta), ("chi", &self.chi)] {
            if v.abs() > unit {
                return Err(Error::OutOfRange(format!("{name} = {} outside [-1, 1]", format_rational(v))));
            }
        }
        if self.big_q.is_negative() || self.big_q > unit {
            return Err(Error::OutOfRange(format!("Q = {} outside [0, 1]", format_rational(&self.big_q))));
        }
        Ok(())
    }

    /// `q = Q / (1 - Q)`; undefined at `Q = 1`.
    pub fn q(&self) -> Result<Rational> {
        q_from_big_q(&self.big_q)
    }
}

pub fn q_from_big_q(big_q: &Rational) -> Result<Rational> {
    let rest = Rational::one() - big_q;
    if rest.is_zero() {
        return Err(Error::OutOfRange("Q = 1 has no finite q".into()));
    }
    Ok(big_q / rest)
}

/// Energy scales fixed alongside the dimensionless parameters. `omega_sq`
/// is the square of the characteristic frequency.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Scales {
    #[serde(with = "rational_serde")]
    pub omega_sq: Rational,
    #[serde(rename = "E", with = "rational_serde")]
    pub e: Rational,
    #[serde(rename = "Ebar", with = "rational_serde")]
    pub ebar: Rational,
    #[serde(rename = "K", with = "rational_serde")]
    pub k: Rational,
}

fn ratio(num: Rational, den: &Rational, what: &str) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::Degenerate(format!("{what} has a vanishing denominator")));
    }
    Ok(num / den)
}

/// Reduces physical parameters to the dimensionless model.
pub fn derive_dimensionless(p: &PhysicalParams) -> Result<(ModelParams, Scales)> {
    p.validate()?;
    let (ab, bb, cb) = p.centrifugal_shape();
    let (ak, bk, ck) = p.kinetic_shape();
    let (k1, k2) = p.gravitational();
    let w2 = &p.omega_a * &p.omega_a;
    let ebar = (&ab + &bb * int(2) + &cb) * &w2;
    let k = &k1 + &k2;
    let ekin = &ak + &bk * int(2) + &ck;
    let omega_sq = ratio(&ebar + &k, &ekin, "omega^2")?;
    let e = &ekin * &omega_sq;
    if e.is_zero() {
        return Err(Error::Degenerate("E = 0".into()));
    }
    let eshape = &ab + &bb * int(2) + &cb;
    let delta = ratio(&ab + &cb - &bb * int(2), &eshape, "delta")?;
    let sigma = ratio(&ab - &cb, &(&ab + &cb), "sigma")?;
    let den = &ekin * &bb + &eshape * &bk;
    let alpha = ratio((&ak + &ck) * &bb - (&ab + &cb) * &bk, &den, "alpha")?;
    let eta = ratio((&ak - &ck) * &bb - (&ab - &cb) * &bk, &den, "eta")?;
    let chi = ratio(&k1 - &k2, &k, "chi")?;
    let big_q = ratio(ebar.clone(), &(&ebar + &k), "Q")?;
    let m = ModelParams { delta, sigma, alpha, eta, chi, big_q };
    m.validate()?;
    Ok((m, Scales { omega_sq, e, ebar, k }))
}

/// Coefficients of the reduced Lagrangian.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReducedCoeffs {
    #[serde(with = "rational_serde")]
    pub a: Rational,
    #[serde(with = "rational_serde")]
    pub b: Rational,
    #[serde(with = "rational_serde")]
    pub c: Rational,
    #[serde(with = "rational_serde")]
    pub at: Rational,
    #[serde(with = "rational_serde")]
    pub bt: Rational,
    #[serde(with = "rational_serde")]
    pub ct: Rational,
    #[serde(with = "rational_serde")]
    pub dt: Rational,
    #[serde(with = "rational_serde")]
    pub st: Rational,
}

pub fn reduced_coefficients(m: &ModelParams) -> Result<ReducedCoeffs> {
    let one = Rational::one();
    let ap1 = &one + &m.alpha;
    if ap1.is_zero() {
        return Err(Error::InvalidParams("alpha = -1 leaves the kinetic coefficients undefined".into()));
    }
    let d1 = &one + &m.delta;
    let a = &d1 * (&one + &m.sigma);
    let b = &one - &m.delta;
    let c = &d1 * (&one - &m.sigma);
    let x = (&m.alpha + &m.eta) / &ap1;
    let y = (&m.alpha - &m.eta) / &ap1;
    let w = &one - &x - &y;
    let at = &w * &a + &x * int(4);
    let bt = &w * &b;
    let ct = &w * &c + &y * int(4);
    let dt = &one - &bt;
    let st = ratio(&at - &ct, &(&at + &ct), "sigma tilde")?;
    Ok(ReducedCoeffs { a, b, c, at, bt, ct, dt, st })
}

/// `4 dt - st^2 (1 + dt)^2`; non-negative exactly when the kinetic form is
/// positive semidefinite.
pub fn kinetic_positive_definite(dt: &Rational, st: &Rational) -> Rational {
    let one = Rational::one();
    dt * int(4) - st * st * (&one + dt) * (&one + dt)
}

/// Gravitational parameter forced by point masses on massless rods.
pub fn chi_pmmr(delta: &Rational, sigma: &Rational) -> Result<Rational> {
    let ds = delta * sigma;
    let den = Rational::from_integer(2.into()) + sigma + &ds;
    ratio(delta * int(2) + sigma + &ds, &den, "chi_pmmr")
}
