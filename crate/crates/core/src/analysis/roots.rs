//! Real-root isolation for univariate polynomials by Sturm sequences.

use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// An interval holding exactly one real root, refined to width below
/// [`REFINE_WIDTH`]. Exact roots give `lo == hi`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootInterval {
    #[serde(with = "crate::model::rational_serde")]
    pub lo: Rational,
    #[serde(with = "crate::model::rational_serde")]
    pub hi: Rational,
    pub refined: f64,
}

pub const REFINE_WIDTH: f64 = 1e-12;

/// Dense integer polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Dense(pub Vec<BigInt>);

impl Dense {
    fn trim(mut v: Vec<BigInt>) -> Dense {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        Dense(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lc(&self) -> &BigInt {
        self.0.last().expect("nonzero")
    }

    fn primitive(self) -> Dense {
        let g = self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() || g.is_one() {
            return self;
        }
        Dense(self.0.into_iter().map(|c| c / &g).collect())
    }

    fn derivative(&self) -> Dense {
        Dense::trim(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) a mod d`.
    fn prem(&self, d: &Dense) -> Dense {
        let mut r = self.0.clone();
        let dn = d.degree();
        let lc = d.lc();
        let mut left = (self.degree() + 1).saturating_sub(dn);
        while r.len() > dn && !r.is_empty() {
            left -= 1;
            let k = r.len() - 1 - dn;
            let top = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c *= lc;
            }
            for (i, dc) in d.0.iter().enumerate() {
                r[k + i] -= &top * dc;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        if left > 0 {
            let f = num_traits::pow(lc.clone(), left);
            for c in r.iter_mut() {
                *c *= &f;
            }
        }
        Dense::trim(r)
    }

    /// Exact quotient over the rationals, scaled to a primitive integer
    /// polynomial.
    fn div_primitive(&self, d: &Dense) -> Dense {
        let dn = d.degree();
        if self.degree() < dn {
            return Dense(vec![BigInt::one()]);
        }
        let lc = Rational::from_integer(d.lc().clone());
        let mut r: Vec<Rational> = self.0.iter().map(|c| Rational::from_integer(c.clone())).collect();
        let mut q = vec![Rational::zero(); self.degree() - dn + 1];
        for k in (0..q.len()).rev() {
            let f = &r[k + dn] / &lc;
            for (i, dc) in d.0.iter().enumerate() {
                r[k + i] -= &f * Rational::from_integer(dc.clone());
            }
            q[k] = f;
        }
        let l = q.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        Dense::trim(q.into_iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect()).primitive()
    }

    /// Sign of the value at `x`.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dp = BigInt::one();
        for c in self.0.iter().rev() {
            acc = acc * n + c * &dp;
            dp *= d;
        }
        if acc.is_zero() {
            0
        } else if acc.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Power of two bounding the absolute value of every real root
    /// (Fujiwara's bound, taken on bit lengths).
    fn root_bound(&self) -> BigInt {
        let n = self.degree();
        let lb = self.lc().bits() as i64;
        let e = self.0[..n]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let k = (n - i) as i64;
                // |c / lc| < 2^(bits(c) - bits(lc) + 1)
                (c.bits() as i64 - lb + 1 + k - 1).div_euclid(k)
            })
            .max()
            .unwrap_or(0)
            .max(0);
        BigInt::one() << (e as usize + 1)
    }
}

struct Sturm {
    chain: Vec<Dense>,
}

impl Sturm {
    fn new(p: &Dense) -> Sturm {
        let mut chain = vec![p.clone(), p.derivative().primitive()];
        while !chain.last().unwrap().is_zero() {
            let k = chain.len();
            let (a, b) = (&chain[k - 2], &chain[k - 1]);
            let r = a.prem(b);
            if r.is_zero() {
                break;
            }
            let e = a.degree() - b.degree() + 1;
            let flip = b.lc().is_negative() && e % 2 == 1;
            let r = if flip { r } else { Dense(r.0.into_iter().map(|c| -c).collect()) };
            chain.push(r.primitive());
        }
        Sturm { chain }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut last = 0;
        let mut v = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// Distinct roots in `(a, b]`.
    fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// The square-free part of the numerator of a univariate polynomial.
pub(crate) fn squarefree_dense(p: &Polynomial) -> Result<Dense> {
    let d = univariate_dense(p)?;
    if d.degree() == 0 {
        return Ok(d);
    }
    let s = Sturm::new(&d);
    let g = s.chain.last().unwrap();
    Ok(if g.degree() == 0 { d.primitive() } else { d.div_primitive(g) })
}

fn univariate_dense(p: &Polynomial) -> Result<Dense> {
    if p.is_zero() {
        return Err(Error::Degenerate("zero polynomial has no isolated roots".into()));
    }
    let support = p.support();
    if support.len() > 1 {
        return Err(Error::InvalidVarSet(format!("expected a univariate polynomial, found variables {support:?}")));
    }
    let var = support.first().map(|v| p.varset().index(v).unwrap());
    let num = p.numerator();
    let deg = var.map_or(0, |i| num.degree_in(i) as usize);
    let mut c = vec![BigInt::zero(); deg + 1];
    for (m, k) in num.terms() {
        let e = var.map_or(0, |i| m.exp(i) as usize);
        c[e] = k.to_big();
    }
    Ok(Dense::trim(c))
}

fn mid(a: &Rational, b: &Rational) -> Rational {
    (a + b) / Rational::from_integer(BigInt::from(2))
}

fn width(a: &Rational, b: &Rational) -> f64 {
    crate::model::to_f64(&(b - a))
}

fn refine(p: &Dense, sturm: &Sturm, mut lo: Rational, mut hi: Rational) -> RootInterval {
    // exactly one root in (lo, hi]
    if p.sign_at(&hi) == 0 {
        let f = crate::model::to_f64(&hi);
        return RootInterval { lo: hi.clone(), hi, refined: f };
    }
    if p.sign_at(&lo) == 0 {
        while sturm.count(&lo, &hi) == 1 {
            let m = mid(&lo, &hi);
            if sturm.count(&m, &hi) == 1 {
                lo = m;
                break;
            }
            hi = m;
        }
    }
    let slo = p.sign_at(&lo);
    while width(&lo, &hi) >= REFINE_WIDTH {
        let m = mid(&lo, &hi);
        match p.sign_at(&m) {
            0 => {
                let f = crate::model::to_f64(&m);
                return RootInterval { lo: m.clone(), hi: m, refined: f };
            }
            s if s == slo => lo = m,
            _ => hi = m,
        }
    }
    let f = crate::model::to_f64(&mid(&lo, &hi));
    RootInterval { lo, hi, refined: f }
}

fn isolate_dense(p: &Dense, lo: &Rational, hi: &Rational) -> Vec<RootInterval> {
    if p.degree() == 0 || lo > hi {
        return Vec::new();
    }
    let sturm = Sturm::new(p);
    let mut out = Vec::new();
    if p.sign_at(lo) == 0 {
        out.push(RootInterval { lo: lo.clone(), hi: lo.clone(), refined: crate::model::to_f64(lo) });
    }
    let mut stack = vec![(lo.clone(), hi.clone())];
    let mut found = Vec::new();
    while let Some((a, b)) = stack.pop() {
        match sturm.count(&a, &b) {
            0 => {}
            1 => found.push(refine(p, &sturm, a, b)),
            _ => {
                let m = mid(&a, &b);
                stack.push((m.clone(), b));
                stack.push((a, m));
            }
        }
    }
    found.sort_by(|x, y| x.lo.cmp(&y.lo));
    out.extend(found);
    out
}

/// Isolating intervals for the distinct real roots of `p` in `[lo, hi]`,
/// in ascending order.
pub fn isolate_real_roots(p: &Polynomial, lo: &Rational, hi: &Rational) -> Result<Vec<RootInterval>> {
    let d = squarefree_dense(p)?;
    Ok(isolate_dense(&d, lo, hi))
}

/// All distinct real roots of `p`.
pub fn real_roots(p: &Polynomial) -> Result<Vec<RootInterval>> {
    let d = squarefree_dense(p)?;
    if d.degree() == 0 {
        return Ok(Vec::new());
    }
    let b = Rational::from_integer(d.root_bound());
    Ok(isolate_dense(&d, &-b.clone(), &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse, VarSet};

    fn p(s: &str) -> Polynomial {
        parse(s, &VarSet::new(&["t", "x"]).unwrap()).unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn sqrt_two() {
        let roots = isolate_real_roots(&p("t^2 - 2"), &r(0), &r(2)).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].refined - 2f64.sqrt()).abs() < 1e-12);
        assert!(width(&roots[0].lo, &roots[0].hi) < REFINE_WIDTH);
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&p("t^2 + 1"), &r(-10), &r(10)).unwrap().is_empty());
        assert!(real_roots(&p("t^4 + 3*t^2 + 1")).unwrap().is_empty());
    }

    #[test]
    fn quadratic_oracle() {
        let roots = isolate_real_roots(&p("9*t^2 - 60*t + 50"), &r(0), &r(10)).unwrap();
        let s = 5.0 * 2f64.sqrt();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].refined - (10.0 - s) / 3.0).abs() < 1e-11);
        assert!((roots[1].refined - (10.0 + s) / 3.0).abs() < 1e-11);
    }

    #[test]
    fn exact_and_repeated_roots() {
        let roots = real_roots(&p("t^5 - 2*t^4 + t^3")).unwrap();
        let v: Vec<f64> = roots.iter().map(|x| x.refined).collect();
        assert_eq!(v.len(), 2);
        assert!(v[0].abs() < 1e-12 && (v[1] - 1.0).abs() < 1e-12);
        let roots = isolate_real_roots(&p("t^2 - 1"), &r(-1), &r(1)).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].lo, r(-1));
        assert_eq!(roots[1].hi, r(1));
    }

    #[test]
    fn even_polynomial() {
        let q = p("76279*t^12 + 4821138*t^10 + 4034457*t^8 + 1173212*t^6 + 178857*t^4 - 34542*t^2 - 9401");
        let roots = real_roots(&q).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].refined + roots[1].refined).abs() < 1e-12);
    }

    #[test]
    fn rejects_bivariate() {
        assert!(real_roots(&p("t*x - 1")).is_err());
        assert!(real_roots(&p("0")).is_err());
        assert!(real_roots(&p("3")).unwrap().is_empty());
    }
}
