//! Potential, gradient, Hessian and mass matrix at a configuration.

use super::params::{reduced_coefficients, to_f64, ModelParams};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Pendulum angles from the downward vertical, in radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub theta: f64,
    pub phi: f64,
}

/// Maps an angle to `(-pi, pi]`.
pub fn canonical_angle(x: f64) -> f64 {
    let mut y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    }
    if y <= -PI {
        y += 2.0 * PI;
    }
    y
}

impl Configuration {
    pub fn new(theta: f64, phi: f64) -> Configuration {
        Configuration { theta, phi }
    }

    pub fn canonical(self) -> Configuration {
        Configuration { theta: canonical_angle(self.theta), phi: canonical_angle(self.phi) }
    }

    pub fn reflected(self) -> Configuration {
        Configuration { theta: -self.theta, phi: -self.phi }.canonical()
    }

    /// Distance on the torus, per angle.
    pub fn distance(self, o: Configuration) -> f64 {
        let d = |x: f64, y: f64| canonical_angle(x - y).abs();
        d(self.theta, o.theta).max(d(self.phi, o.phi))
    }
}

/// Values at one configuration. `v`, `grad` and `hess` use the scaled
/// potential whose gradient is the equilibrium system; `mass` is the kinetic
/// matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocalFields {
    pub v: f64,
    pub grad: [f64; 2],
    pub hess: [[f64; 2]; 2],
    pub mass: [[f64; 2]; 2],
}

/// Floating-point form of a model for repeated evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericModel {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub at: f64,
    pub bt: f64,
    pub ct: f64,
    pub chi: f64,
    pub q: f64,
    pub big_q: f64,
}

impl NumericModel {
    pub fn new(m: &ModelParams) -> Result<NumericModel> {
        let rc = reduced_coefficients(m)?;
        let q = m.q()?;
        Ok(NumericModel {
            a: to_f64(&rc.a),
            b: to_f64(&rc.b),
            c: to_f64(&rc.c),
            at: to_f64(&rc.at),
            bt: to_f64(&rc.bt),
            ct: to_f64(&rc.ct),
            chi: to_f64(&m.chi),
            q: to_f64(&q),
            big_q: to_f64(&m.big_q),
        })
    }

    /// Same model at another rotation strength.
    pub fn with_big_q(&self, big_q: f64) -> Result<NumericModel> {
        if !(0.0..1.0).contains(&big_q) {
            return Err(Error::OutOfRange(format!("Q = {big_q} outside [0, 1)")));
        }
        Ok(NumericModel { q: big_q / (1.0 - big_q), big_q, ..*self })
    }

    pub fn scaled_potential(&self, c: Configuration) -> f64 {
        let (st, ct) = c.theta.sin_cos();
        let (sp, cp) = c.phi.sin_cos();
        0.5 * self.q * (self.a * st * st + 2.0 * self.b * st * sp + self.c * sp * sp)
            + 2.0 * ((1.0 + self.chi) * ct + (1.0 - self.chi) * cp)
    }

    pub fn grad(&self, c: Configuration) -> [f64; 2] {
        let (st, ct) = c.theta.sin_cos();
        let (sp, cp) = c.phi.sin_cos();
        [
            self.q * (self.a * st + self.b * sp) * ct - 2.0 * (1.0 + self.chi) * st,
            self.q * (self.b * st + self.c * sp) * cp - 2.0 * (1.0 - self.chi) * sp,
        ]
    }

    pub fn hess(&self, c: Configuration) -> [[f64; 2]; 2] {
        let (st, ct) = c.theta.sin_cos();
        let (sp, cp) = c.phi.sin_cos();
        let h11 = self.q * (self.a * (ct * ct - st * st) - self.b * st * sp) - 2.0 * (1.0 + self.chi) * ct;
        let h12 = self.q * self.b * ct * cp;
        let h22 = self.q * (self.c * (cp * cp - sp * sp) - self.b * st * sp) - 2.0 * (1.0 - self.chi) * cp;
        [[h11, h12], [h12, h22]]
    }

    pub fn mass(&self, c: Configuration) -> [[f64; 2]; 2] {
        let off = self.bt * (c.phi - c.theta).cos();
        [[self.at, off], [off, self.ct]]
    }

    pub fn fields(&self, c: Configuration) -> LocalFields {
        LocalFields { v: self.scaled_potential(c), grad: self.grad(c), hess: self.hess(c), mass: self.mass(c) }
    }

    /// Physical potential `V`.
    pub fn potential(&self, c: Configuration) -> f64 {
        -(1.0 - self.big_q) * self.scaled_potential(c)
    }

    /// Physical gradient of `V`.
    pub fn potential_grad(&self, c: Configuration) -> [f64; 2] {
        let g = self.grad(c);
        let k = -(1.0 - self.big_q);
        [k * g[0], k * g[1]]
    }

    /// Physical Hessian of `V`.
    pub fn potential_hess(&self, c: Configuration) -> [[f64; 2]; 2] {
        let h = self.hess(c);
        let k = -(1.0 - self.big_q);
        [[k * h[0][0], k * h[0][1]], [k * h[1][0], k * h[1][1]]]
    }

    /// Coefficients `(A2, A1, A0)` of `det(-W M + H) = A2 W^2 + A1 W + A0`
    /// with the physical Hessian `H` of `V`.
    pub fn normal_mode_quadratic(&self, c: Configuration) -> (f64, f64, f64) {
        let m = self.mass(c);
        let h = self.potential_hess(c);
        let a2 = m[0][0] * m[1][1] - m[0][1] * m[0][1];
        let a1 = -(h[0][0] * m[1][1] + h[1][1] * m[0][0] - 2.0 * h[0][1] * m[0][1]);
        let a0 = h[0][0] * h[1][1] - h[0][1] * h[0][1];
        (a2, a1, a0)
    }

    /// Real roots of the normal-mode quadratic in ascending order. A
    /// slightly negative discriminant from rounding is clamped to zero.
    pub fn omega_sq(&self, c: Configuration) -> [f64; 2] {
        let (a2, a1, a0) = self.normal_mode_quadratic(c);
        let disc = (a1 * a1 - 4.0 * a2 * a0).max(0.0);
        let sq = disc.sqrt();
        // numerically stable pair
        let t = -0.5 * (a1 + a1.signum() * sq);
        let (r1, r2) = if t != 0.0 { (t / a2, a0 / t) } else { (0.0, 0.0) };
        if r1 <= r2 {
            [r1, r2]
        } else {
            [r2, r1]
        }
    }
}

pub fn local_fields(m: &ModelParams, c: Configuration) -> Result<LocalFields> {
    Ok(NumericModel::new(m)?.fields(c))
}

pub fn normal_mode_quadratic(m: &ModelParams, c: Configuration) -> Result<(f64, f64, f64)> {
    Ok(NumericModel::new(m)?.normal_mode_quadratic(c))
}
