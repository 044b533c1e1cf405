//! Packed exponent vectors.
//!
//! A monomial lives in four 64-bit words holding sixteen 16-bit fields: field
//! 0 is the total degree and field `1 + i` the exponent of variable `i`, most
//! significant first. Lexicographic comparison of the words is then exactly
//! graded-lex order with variable 0 most significant.

use crate::error::{Error, Result};
use std::ops::{Add, Sub};

/// Maximum number of variables in a [`crate::VarSet`].
pub const MAX_VARS: usize = 15;
/// Maximum total degree of any monomial.
pub const MAX_DEGREE: u32 = 0x7fff;

const GUARD: u64 = 0x8000_8000_8000_8000;

/// Raw packed word; addition and subtraction act fieldwise as long as no
/// field leaves `0..=MAX_DEGREE`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Packed([u64; 4]);

impl Add for Packed {
    type Output = Packed;
    #[inline]
    fn add(self, o: Packed) -> Packed {
        let (a, b) = (self.0, o.0);
        Packed([a[0].wrapping_add(b[0]), a[1].wrapping_add(b[1]), a[2].wrapping_add(b[2]), a[3].wrapping_add(b[3])])
    }
}

impl Sub for Packed {
    type Output = Packed;
    #[inline]
    fn sub(self, o: Packed) -> Packed {
        let (a, b) = (self.0, o.0);
        Packed([a[0].wrapping_sub(b[0]), a[1].wrapping_sub(b[1]), a[2].wrapping_sub(b[2]), a[3].wrapping_sub(b[3])])
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(pub(crate) Packed);

#[inline]
fn slot(field: usize) -> (usize, u32) {
    (field / 4, ((3 - field % 4) * 16) as u32)
}

#[inline]
fn field(w: &Packed, f: usize) -> u32 {
    let (k, s) = slot(f);
    ((w.0[k] >> s) & 0xffff) as u32
}

#[inline]
fn set_field(w: &mut Packed, f: usize, v: u32) {
    let (k, s) = slot(f);
    w.0[k] = (w.0[k] & !(0xffffu64 << s)) | ((v as u64) << s);
}

impl Mono {
    pub const ONE: Mono = Mono(Packed([0; 4]));

    pub fn from_exponents(exps: &[u32]) -> Result<Mono> {
        if exps.len() > MAX_VARS {
            return Err(Error::InvalidVarSet(format!("more than {MAX_VARS} variables")));
        }
        let total: u64 = exps.iter().map(|&e| e as u64).sum();
        if total > MAX_DEGREE as u64 {
            return Err(Error::DegreeOverflow(format!("total degree {total} > {MAX_DEGREE}")));
        }
        let mut w = Packed::default();
        set_field(&mut w, 0, total as u32);
        for (i, &e) in exps.iter().enumerate() {
            set_field(&mut w, i + 1, e);
        }
        Ok(Mono(w))
    }

    /// The monomial `x_var^e`.
    pub fn var_pow(var: usize, e: u32) -> Result<Mono> {
        if e > MAX_DEGREE {
            return Err(Error::DegreeOverflow(format!("exponent {e} > {MAX_DEGREE}")));
        }
        let mut w = Packed::default();
        set_field(&mut w, 0, e);
        set_field(&mut w, var + 1, e);
        Ok(Mono(w))
    }

    #[inline]
    pub fn degree(self) -> u32 {
        field(&self.0, 0)
    }

    #[inline]
    pub fn exp(self, var: usize) -> u32 {
        field(&self.0, var + 1)
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self == Mono::ONE
    }

    /// Product; `None` if the total degree would exceed [`MAX_DEGREE`].
    #[inline]
    pub fn checked_mul(self, other: Mono) -> Option<Mono> {
        if self.degree() + other.degree() > MAX_DEGREE {
            None
        } else {
            Some(Mono(self.0 + other.0))
        }
    }

    /// Product without the degree check; callers bound degrees beforehand.
    #[inline]
    pub fn mul_unchecked(self, other: Mono) -> Mono {
        Mono(self.0 + other.0)
    }

    #[inline]
    pub fn divides(self, other: Mono) -> bool {
        (0..4).all(|k| ((other.0 .0[k] | GUARD).wrapping_sub(self.0 .0[k])) & GUARD == GUARD)
    }

    #[inline]
    pub fn div_unchecked(self, other: Mono) -> Mono {
        Mono(self.0 - other.0)
    }

    pub fn checked_div(self, other: Mono) -> Option<Mono> {
        other.divides(self).then(|| Mono(self.0 - other.0))
    }

    /// Copy with the exponent of `var` replaced.
    pub fn with_exp(self, var: usize, e: u32) -> Mono {
        let deg = self.degree() - self.exp(var) + e;
        let mut w = self.0;
        set_field(&mut w, var + 1, e);
        set_field(&mut w, 0, deg);
        Mono(w)
    }

    /// Componentwise maximum.
    pub fn lcm(self, other: Mono, nvars: usize) -> Mono {
        let e: Vec<u32> = (0..nvars).map(|i| self.exp(i).max(other.exp(i))).collect();
        Mono::from_exponents(&e).expect("lcm within bounds")
    }

    /// Reorders exponents: variable `i` of `self` becomes variable `map[i]`.
    pub fn remap(self, map: &[usize]) -> Mono {
        let mut w = Packed::default();
        set_field(&mut w, 0, self.degree());
        for (i, &j) in map.iter().enumerate() {
            set_field(&mut w, j + 1, self.exp(i));
        }
        Mono(w)
    }
}

impl std::fmt::Debug for Mono {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Mono{:?}", self.exponents(MAX_VARS))
    }
}
