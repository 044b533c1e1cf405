//! Sylvester resultants.

use super::matrix::bareiss;
use crate::error::{Error, Result};
use crate::polyring::{Int, IntPoly, Polynomial, Rational};
use num_bigint::BigInt;

/// `Res_var(p, q)` as the determinant of the Sylvester matrix, with the rows
/// of `p` first.
pub fn sylvester_resultant(p: &Polynomial, q: &Polynomial, var: &str) -> Result<Polynomial> {
    if p.varset() != q.varset() {
        return Err(Error::VarSetMismatch);
    }
    let vars = p.varset();
    let x = vars.require(var)?;
    let (n, m) = (p.numerator().degree_in(x) as usize, q.numerator().degree_in(x) as usize);
    if p.is_zero() || q.is_zero() || n == 0 || m == 0 {
        return Err(Error::Degenerate(format!("resultant needs positive degree in {var}")));
    }
    let r = int_resultant(p.numerator(), q.numerator(), x)?;
    let scale = Rational::from_integer(p.denominator().pow(m as u32) * q.denominator().pow(n as u32));
    Ok(Polynomial::from_int(vars, r).scale(&scale.recip()))
}

/// Resultant of integer polynomials in variable `x`.
pub(crate) fn int_resultant(p: &IntPoly, q: &IntPoly, x: usize) -> Result<IntPoly> {
    let (pc, qc) = (p.coeffs_in(x), q.coeffs_in(x));
    let (n, m) = (pc.len() - 1, qc.len() - 1);
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for (coeffs, shifts) in [(&pc, m), (&qc, n)] {
        let deg = coeffs.len() - 1;
        for s in 0..shifts {
            let mut row = vec![IntPoly::zero(); size];
            for k in 0..=deg {
                row[s + k] = coeffs[deg - k].clone();
            }
            rows.push(row);
        }
    }
    bareiss(rows)
}

/// Integer resultant of dense univariate polynomials given by ascending
/// coefficients.
pub fn univariate_resultant(p: &[BigInt], q: &[BigInt]) -> Result<BigInt> {
    let to_poly = |c: &[BigInt]| {
        IntPoly::from_terms(
            c.iter()
                .enumerate()
                .map(|(k, v)| (crate::polyring::Mono::var_pow(0, k as u32).expect("degree"), Int::from(v)))
                .collect(),
        )
    };
    let (a, b) = (to_poly(p), to_poly(q));
    if a.degree_in(0) == 0 || b.degree_in(0) == 0 {
        return Err(Error::Degenerate("resultant needs positive degree".into()));
    }
    let r = int_resultant(&a, &b, 0)?;
    Ok(r.as_constant().map(|c| c.to_big()).unwrap_or_default())
}
