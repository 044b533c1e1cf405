//! Fixed-step integration of the equations of motion.

use crate::error::{Error, Result};
use crate::model::{Configuration, ModelParams, NumericModel};
use serde::Serialize;

/// `(theta, phi, theta_dot, phi_dot)`.
pub type State = [f64; 4];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<State>,
    /// Kinetic energy plus potential at each sample.
    pub jacobi: Vec<f64>,
}

impl Trajectory {
    /// Largest deviation of the conserved quantity from its initial value.
    pub fn drift(&self) -> f64 {
        let j0 = self.jacobi.first().copied().unwrap_or(0.0);
        self.jacobi.iter().map(|j| (j - j0).abs()).fold(0.0, f64::max)
    }
}

/// Energy integral `x'^T M x' / 2 + V`.
pub fn jacobi_integral(m: &NumericModel, s: &State) -> f64 {
    let c = Configuration::new(s[0], s[1]);
    let mm = m.mass(c);
    let kin = 0.5 * (mm[0][0] * s[2] * s[2] + 2.0 * mm[0][1] * s[2] * s[3] + mm[1][1] * s[3] * s[3]);
    kin + m.potential(c)
}

fn rhs(m: &NumericModel, s: &State) -> Result<State> {
    let c = Configuration::new(s[0], s[1]);
    let mm = m.mass(c);
    let det = mm[0][0] * mm[1][1] - mm[0][1] * mm[1][0];
    if det.abs() < 1e-14 {
        return Err(Error::Degenerate(format!("singular mass matrix at ({}, {})", s[0], s[1])));
    }
    let g = m.potential_grad(c);
    let sn = m.bt * (s[1] - s[0]).sin();
    let f0 = -g[0] + sn * s[3] * s[3];
    let f1 = -g[1] - sn * s[2] * s[2];
    let a0 = (mm[1][1] * f0 - mm[0][1] * f1) / det;
    let a1 = (mm[0][0] * f1 - mm[1][0] * f0) / det;
    Ok([s[2], s[3], a0, a1])
}

fn axpy(s: &State, k: &State, h: f64) -> State {
    [s[0] + h * k[0], s[1] + h * k[1], s[2] + h * k[2], s[3] + h * k[3]]
}

/// Classical fourth-order Runge-Kutta with `n` steps of size `dt`. Every
/// step is recorded.
pub fn simulate(mp: &ModelParams, state0: State, dt: f64, n: usize) -> Result<Trajectory> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParams(format!("step {dt} must be positive")));
    }
    let m = NumericModel::new(mp)?;
    let mut s = state0;
    let mut tr = Trajectory {
        times: Vec::with_capacity(n + 1),
        states: Vec::with_capacity(n + 1),
        jacobi: Vec::with_capacity(n + 1),
    };
    tr.times.push(0.0);
    tr.states.push(s);
    tr.jacobi.push(jacobi_integral(&m, &s));
    for k in 1..=n {
        let k1 = rhs(&m, &s)?;
        let k2 = rhs(&m, &axpy(&s, &k1, dt / 2.0))?;
        let k3 = rhs(&m, &axpy(&s, &k2, dt / 2.0))?;
        let k4 = rhs(&m, &axpy(&s, &k3, dt))?;
        for i in 0..4 {
            s[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        tr.times.push(k as f64 * dt);
        tr.states.push(s);
        tr.jacobi.push(jacobi_integral(&m, &s));
    }
    Ok(tr)
}

/// Normal modes at `c`: pairs of `Omega` and a unit generalized eigenvector
/// `v` with `(H - Omega M) v = 0`, ascending in `Omega`.
pub fn normal_modes(m: &NumericModel, c: Configuration) -> [(f64, [f64; 2]); 2] {
    let h = m.potential_hess(c);
    let mm = m.mass(c);
    m.omega_sq(c).map(|w| {
        let r0 = [h[0][0] - w * mm[0][0], h[0][1] - w * mm[0][1]];
        let r1 = [h[1][0] - w * mm[1][0], h[1][1] - w * mm[1][1]];
        let r = if r0[0].hypot(r0[1]) >= r1[0].hypot(r1[1]) { r0 } else { r1 };
        let v = if r[0] == 0.0 && r[1] == 0.0 { [1.0, 0.0] } else { [-r[1], r[0]] };
        let n = v[0].hypot(v[1]);
        (w, [v[0] / n, v[1] / n])
    })
}
