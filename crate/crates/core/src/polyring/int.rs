//! Integer coefficients with an inline machine-word representation.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// An arbitrary-precision integer that stays inline while it fits in `i64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    S(i64),
    B(Box<BigInt>),
}

impl Int {
    pub const ZERO: Int = Int::S(0);
    pub const ONE: Int = Int::S(1);

    #[inline]
    pub fn from_i128(v: i128) -> Int {
        match i64::try_from(v) {
            Ok(s) => Int::S(s),
            Err(_) => Int::B(Box::new(BigInt::from(v))),
        }
    }

    pub fn from_big(v: BigInt) -> Int {
        match v.to_i64() {
            Some(s) => Int::S(s),
            None => Int::B(Box::new(v)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::S(s) => BigInt::from(*s),
            Int::B(b) => (**b).clone(),
        }
    }

    #[inline]
    pub fn small(&self) -> Option<i64> {
        match self {
            Int::S(s) => Some(*s),
            Int::B(_) => None,
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Int::S(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Int::S(1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::S(s) => s.signum() as i32,
            Int::B(b) => match b.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    #[inline]
    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Number of bits in the magnitude.
    pub fn bits(&self) -> u64 {
        match self {
            Int::S(s) => 64 - s.unsigned_abs().leading_zeros() as u64,
            Int::B(b) => b.bits(),
        }
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::S(s) => match s.checked_abs() {
                Some(a) => Int::S(a),
                None => Int::from_i128(-(*s as i128)),
            },
            Int::B(b) => Int::from_big(b.abs()),
        }
    }

    pub fn neg(&self) -> Int {
        match self {
            Int::S(s) => match s.checked_neg() {
                Some(n) => Int::S(n),
                None => Int::from_i128(-(*s as i128)),
            },
            Int::B(b) => Int::from_big(-(**b).clone()),
        }
    }

    pub fn add(&self, o: &Int) -> Int {
        match (self, o) {
            (Int::S(a), Int::S(b)) => Int::from_i128(*a as i128 + *b as i128),
            _ => Int::from_big(self.to_big() + o.to_big()),
        }
    }

    pub fn sub(&self, o: &Int) -> Int {
        match (self, o) {
            (Int::S(a), Int::S(b)) => Int::from_i128(*a as i128 - *b as i128),
            _ => Int::from_big(self.to_big() - o.to_big()),
        }
    }

    pub fn mul(&self, o: &Int) -> Int {
        match (self, o) {
            (Int::S(a), Int::S(b)) => Int::from_i128(*a as i128 * *b as i128),
            _ => Int::from_big(self.to_big() * o.to_big()),
        }
    }

    /// Quotient when `o` divides `self` exactly.
    pub fn div_exact(&self, o: &Int) -> Option<Int> {
        match (self, o) {
            (_, Int::S(0)) => None,
            (Int::S(a), Int::S(b)) => {
                let (a, b) = (*a as i128, *b as i128);
                (a % b == 0).then(|| Int::from_i128(a / b))
            }
            _ => {
                let (q, r) = self.to_big().div_rem(&o.to_big());
                r.is_zero().then(|| Int::from_big(q))
            }
        }
    }

    /// Non-negative gcd.
    pub fn gcd(&self, o: &Int) -> Int {
        match (self, o) {
            (Int::S(a), Int::S(b)) => {
                let g = (a.unsigned_abs()).gcd(&b.unsigned_abs());
                match i64::try_from(g) {
                    Ok(s) => Int::S(s),
                    Err(_) => Int::from_big(BigInt::from(g)),
                }
            }
            _ => Int::from_big(self.to_big().gcd(&o.to_big())),
        }
    }

    /// Residue in `[0, p)`.
    #[inline]
    pub fn rem_u64(&self, p: u64) -> u64 {
        match self {
            Int::S(s) => (*s as i128).rem_euclid(p as i128) as u64,
            Int::B(b) => {
                let r = (**b).mod_floor(&BigInt::from(p));
                r.to_u64().unwrap_or(0)
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Int::S(s) => *s as f64,
            Int::B(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Int {
        Int::S(v)
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Int {
        Int::from_big(v)
    }
}

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Int {
        Int::from_big(v.clone())
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::S(a), Int::S(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::S(s) => write!(f, "{s}"),
            Int::B(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sum-of-products accumulator; stays in `i128` until it would overflow.
#[derive(Clone, Debug)]
pub enum Acc {
    S(i128),
    B(BigInt),
}

impl Default for Acc {
    fn default() -> Self {
        Acc::S(0)
    }
}

impl Acc {
    #[inline]
    pub fn add_mul(&mut self, a: &Int, b: &Int) {
        if let (Acc::S(acc), Int::S(x), Int::S(y)) = (&mut *self, a, b) {
            if let Some(v) = acc.checked_add(*x as i128 * *y as i128) {
                *acc = v;
                return;
            }
        }
        self.promote();
        if let Acc::B(acc) = self {
            *acc += a.to_big() * b.to_big();
        }
    }

    #[inline]
    pub fn sub_mul(&mut self, a: &Int, b: &Int) {
        if let (Acc::S(acc), Int::S(x), Int::S(y)) = (&mut *self, a, b) {
            if let Some(v) = acc.checked_sub(*x as i128 * *y as i128) {
                *acc = v;
                return;
            }
        }
        self.promote();
        if let Acc::B(acc) = self {
            *acc -= a.to_big() * b.to_big();
        }
    }

    #[inline]
    pub fn add(&mut self, a: &Int) {
        if let (Acc::S(acc), Int::S(x)) = (&mut *self, a) {
            if let Some(v) = acc.checked_add(*x as i128) {
                *acc = v;
                return;
            }
        }
        self.promote();
        if let Acc::B(acc) = self {
            *acc += a.to_big();
        }
    }

    fn promote(&mut self) {
        if let Acc::S(v) = self {
            *self = Acc::B(BigInt::from(*v));
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Acc::S(v) => *v == 0,
            Acc::B(b) => b.is_zero(),
        }
    }

    pub fn into_int(self) -> Int {
        match self {
            Acc::S(v) => Int::from_i128(v),
            Acc::B(b) => Int::from_big(b),
        }
    }
}
