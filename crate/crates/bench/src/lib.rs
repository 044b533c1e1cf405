//! Benchmark inputs shared by the criterion targets.

use rdp_core::model::{build_system, SystemKind};
use rdp_core::polyring::{parse, Polynomial, VarSet};

/// `(1 + x + y + z)^n` and a shifted variant, over `x, y, z`.
pub fn dense_pair(n: i64) -> (Polynomial, Polynomial) {
    let vs = VarSet::new(&["x", "y", "z"]).expect("names");
    let a = parse("1 + x + y + z", &vs).expect("literal").try_pow(n).expect("small power");
    let b = parse("1 - x + 2*y - z", &vs).expect("literal").try_pow(n).expect("small power");
    (a, b)
}

/// Two polynomials sharing a nontrivial factor of moderate size.
pub fn gcd_pair() -> (Polynomial, Polynomial) {
    let (a, b) = dense_pair(4);
    let vs = a.varset().clone();
    let g = parse("3*x^2*y - 2*z^3 + x*y*z + 7", &vs).expect("literal");
    let p = a.try_mul(&g).and_then(|p| p.try_mul(&g)).expect("same varset");
    let q = b.try_mul(&g).expect("same varset");
    (p, q)
}

/// The two half-tangent equilibrium polynomials.
pub fn halftangent_pair() -> (Polynomial, Polynomial) {
    let sys = build_system(SystemKind::Halftangent).expect("fixed system");
    (sys.polys()[0].1.clone(), sys.polys()[1].1.clone())
}
