//! Sparse polynomials with integer coefficients.
//!
//! Terms are kept sorted by descending packed monomial, which is descending
//! graded-lex order. Variable indices refer to an enclosing [`super::VarSet`]
//! held by the caller.

use super::int::{Acc, Int};
use super::mono::{Mono, Packed, MAX_DEGREE, MAX_VARS};
use crate::error::{Error, Result};
use rustc_hash::FxHashMap;
use std::collections::BinaryHeap;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    pub(crate) terms: Vec<(Mono, Int)>,
}

const DENSE_LIMIT: usize = 1 << 22;

impl IntPoly {
    pub fn zero() -> IntPoly {
        IntPoly { terms: Vec::new() }
    }

    pub fn constant(c: Int) -> IntPoly {
        if c.is_zero() {
            IntPoly::zero()
        } else {
            IntPoly { terms: vec![(Mono::ONE, c)] }
        }
    }

    pub fn one() -> IntPoly {
        IntPoly::constant(Int::ONE)
    }

    pub fn var(i: usize) -> IntPoly {
        IntPoly { terms: vec![(Mono::var_pow(i, 1).expect("degree 1"), Int::ONE)] }
    }

    pub fn monomial(m: Mono, c: Int) -> IntPoly {
        if c.is_zero() {
            IntPoly::zero()
        } else {
            IntPoly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Mono, Int)>) -> IntPoly {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, Int)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        IntPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, Int)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Int> {
        match self.terms.as_slice() {
            [] => Some(Int::ZERO),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn lm(&self) -> Option<Mono> {
        self.terms.first().map(|t| t.0)
    }

    pub fn lc(&self) -> Option<&Int> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.0.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).min().unwrap_or(0)
    }

    /// Per-variable maximum exponents.
    pub fn degrees(&self) -> [u32; MAX_VARS] {
        let mut d = [0u32; MAX_VARS];
        for (m, _) in &self.terms {
            for (i, di) in d.iter_mut().enumerate() {
                *di = (*di).max(m.exp(i));
            }
        }
        d
    }

    /// Bit mask of the variables that occur.
    pub fn var_mask(&self) -> u32 {
        let d = self.degrees();
        d.iter().enumerate().fold(0, |acc, (i, &e)| if e > 0 { acc | (1 << i) } else { acc })
    }

    pub fn max_coef_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }

    fn all_small(&self) -> bool {
        self.terms.iter().all(|(_, c)| matches!(c, Int::S(_)))
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, k: &Int) -> IntPoly {
        if k.is_zero() {
            return IntPoly::zero();
        }
        IntPoly { terms: self.terms.iter().map(|(m, c)| (*m, c.mul(k))).collect() }
    }

    /// Exact division of every coefficient by `k`.
    pub fn div_int(&self, k: &Int) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            out.push((*m, c.div_exact(k)?));
        }
        Some(IntPoly { terms: out })
    }

    pub fn mul_mono(&self, m: Mono, c: &Int) -> Result<IntPoly> {
        if c.is_zero() || self.is_zero() {
            return Ok(IntPoly::zero());
        }
        if self.total_degree() + m.degree() > MAX_DEGREE {
            return Err(degree_err());
        }
        Ok(IntPoly {
            terms: self.terms.iter().map(|(a, x)| (a.mul_unchecked(m), x.mul(c))).collect(),
        })
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        self.merge(o, true)
    }

    fn merge(&self, o: &IntPoly, negate: bool) -> IntPoly {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i].0 > b[j].0 {
                out.push(a[i].clone());
                i += 1;
            } else if a[i].0 < b[j].0 {
                out.push((b[j].0, if negate { b[j].1.neg() } else { b[j].1.clone() }));
                j += 1;
            } else {
                let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, if negate { c.neg() } else { c.clone() })));
        IntPoly { terms: out }
    }

    /// `self * a - o * b`, the fraction-free elimination update.
    pub fn mul_sub_mul(&self, a: &IntPoly, o: &IntPoly, b: &IntPoly) -> Result<IntPoly> {
        Ok(self.try_mul(a)?.sub(&o.try_mul(b)?))
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        self.try_mul(o).expect("monomial degree bound exceeded")
    }

    pub fn try_mul(&self, o: &IntPoly) -> Result<IntPoly> {
        if self.is_zero() || o.is_zero() {
            return Ok(IntPoly::zero());
        }
        if self.total_degree() + o.total_degree() > MAX_DEGREE {
            return Err(degree_err());
        }
        let (a, b) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        if b.len() == 1 {
            return a.mul_mono(b.terms[0].0, &b.terms[0].1);
        }
        let log_n = 64 - (b.len() as u64).leading_zeros() as u64;
        let fits = a.all_small() && b.all_small() && a.max_coef_bits() + b.max_coef_bits() + log_n + 1 <= 126;
        if fits {
            if let Some(p) = mul_dense(a, b) {
                return Ok(p);
            }
            return Ok(mul_hash_small(a, b));
        }
        Ok(mul_hash_big(a, b))
    }

    pub fn pow(&self, e: u32) -> Result<IntPoly> {
        if e == 0 {
            return Ok(IntPoly::one());
        }
        if self.total_degree() as u64 * e as u64 > MAX_DEGREE as u64 {
            return Err(degree_err());
        }
        let mut result = IntPoly::one();
        let mut base = self.clone();
        let mut k = e;
        loop {
            if k & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.try_mul(&base)?;
        }
        Ok(result)
    }

    /// Exact quotient `self / d` over the integers, or `None` if `d` does
    /// not divide `self`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dl = d.terms.first()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if d.len() == 1 {
            let mut out = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                out.push((m.checked_div(dl.0)?, c.div_exact(&dl.1)?));
            }
            return Some(IntPoly { terms: out });
        }
        if !dl.0.divides(self.terms[0].0) || !d.terms.last()?.0.divides(self.terms.last()?.0) {
            return None;
        }
        let (ds, ps) = (d.degrees(), self.degrees());
        if ds.iter().zip(ps.iter()).any(|(x, y)| x > y) {
            return None;
        }
        heap_divide(self, d)
    }

    /// Non-negative gcd of the coefficients.
    pub fn int_content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Splits off the signed integer content so the remainder is primitive
    /// with positive leading coefficient.
    pub fn primitive(&self) -> (Int, IntPoly) {
        if self.is_zero() {
            return (Int::ZERO, IntPoly::zero());
        }
        let mut g = self.int_content();
        if self.terms[0].1.is_negative() {
            g = g.neg();
        }
        if g.is_one() {
            return (g, self.clone());
        }
        let p = self.div_int(&g).expect("content divides");
        (g, p)
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && !self.terms[0].1.is_negative() && self.int_content().is_one()
    }

    pub fn derivative(&self, var: usize) -> IntPoly {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                out.push((m.with_exp(var, e - 1), c.mul(&Int::S(e as i64))));
            }
        }
        IntPoly::from_terms(out)
    }

    /// Coefficients with respect to `var`: entry `k` multiplies `var^k`.
    pub fn coeffs_in(&self, var: usize) -> Vec<IntPoly> {
        let deg = self.degree_in(var) as usize;
        let mut parts: Vec<Vec<(Mono, Int)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            parts[e].push((m.with_exp(var, 0), c.clone()));
        }
        parts.into_iter().map(IntPoly::from_terms).collect()
    }

    /// Inverse of [`IntPoly::coeffs_in`].
    pub fn from_coeffs_in(var: usize, coeffs: &[IntPoly]) -> Result<IntPoly> {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let vk = Mono::var_pow(var, k as u32)?;
            for (m, x) in &c.terms {
                let mm = m.checked_mul(vk).ok_or_else(degree_err)?;
                terms.push((mm, x.clone()));
            }
        }
        Ok(IntPoly::from_terms(terms))
    }

    /// Replaces `var` by the polynomial `r`.
    pub fn compose(&self, var: usize, r: &IntPoly) -> Result<IntPoly> {
        let cs = self.coeffs_in(var);
        let mut acc = IntPoly::zero();
        for c in cs.iter().rev() {
            acc = acc.try_mul(r)?.add(c);
        }
        Ok(acc)
    }

    /// Renames variables: variable `i` becomes `map[i]`.
    pub fn remap(&self, map: &[usize]) -> IntPoly {
        IntPoly::from_terms(self.terms.iter().map(|(m, c)| (m.remap(map), c.clone())).collect())
    }

    /// Value modulo the prime `p` at `point` (residues indexed by variable).
    pub fn eval_mod(&self, point: &[u64], p: u64) -> u64 {
        let degs = self.degrees();
        let nv = point.len().min(MAX_VARS);
        let powers: Vec<Vec<u64>> = (0..nv)
            .map(|i| {
                let mut v = Vec::with_capacity(degs[i] as usize + 1);
                let mut x = 1u64;
                for _ in 0..=degs[i] {
                    v.push(x);
                    x = mulmod(x, point[i], p);
                }
                v
            })
            .collect();
        let mut sum = 0u64;
        for (m, c) in &self.terms {
            let mut t = c.rem_u64(p);
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = mulmod(t, pw[e], p);
                }
            }
            sum = addmod(sum, t, p);
        }
        sum
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut s = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64();
            for (i, &x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t *= x.powi(e as i32);
                }
            }
            s += t;
        }
        s
    }
}

fn degree_err() -> Error {
    Error::DegreeOverflow(format!("total degree above {MAX_DEGREE}"))
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn mul_dense(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let (da, db) = (a.degrees(), b.degrees());
    let mut radix = [1usize; MAX_VARS];
    let mut size: usize = 1;
    for i in 0..MAX_VARS {
        radix[i] = (da[i] + db[i] + 1) as usize;
        size = size.checked_mul(radix[i])?;
        if size > DENSE_LIMIT {
            return None;
        }
    }
    if size > 8 * a.len() * b.len() + 1024 {
        return None;
    }
    let mut stride = [0usize; MAX_VARS];
    let mut s = 1usize;
    for i in (0..MAX_VARS).rev() {
        stride[i] = s;
        s *= radix[i];
    }
    let index = |m: Mono| -> usize { (0..MAX_VARS).map(|i| m.exp(i) as usize * stride[i]).sum() };
    let ia: Vec<(usize, i128)> = a.terms.iter().map(|(m, c)| (index(*m), c.small().unwrap() as i128)).collect();
    let ib: Vec<(usize, i128)> = b.terms.iter().map(|(m, c)| (index(*m), c.small().unwrap() as i128)).collect();
    let mut buf = vec![0i128; size];
    for &(xa, ca) in &ia {
        for &(xb, cb) in &ib {
            buf[xa + xb] += ca * cb;
        }
    }
    let mut terms = Vec::new();
    for (idx, &v) in buf.iter().enumerate() {
        if v != 0 {
            let mut rest = idx;
            let mut exps = [0u32; MAX_VARS];
            for i in 0..MAX_VARS {
                exps[i] = (rest / stride[i]) as u32;
                rest %= stride[i];
            }
            terms.push((Mono::from_exponents(&exps).expect("bounded"), Int::from_i128(v)));
        }
    }
    terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
    Some(IntPoly { terms })
}

fn mul_hash_small(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let cap = (a.len() * b.len()).min(1 << 20);
    let mut map: FxHashMap<Packed, i128> = FxHashMap::with_capacity_and_hasher(cap, Default::default());
    let bs: Vec<(Packed, i128)> = b.terms.iter().map(|(m, c)| (m.0, c.small().unwrap() as i128)).collect();
    for (ma, ca) in &a.terms {
        let ca = ca.small().unwrap() as i128;
        for &(mb, cb) in &bs {
            *map.entry(ma.0 + mb).or_insert(0) += ca * cb;
        }
    }
    let mut terms: Vec<(Mono, Int)> =
        map.into_iter().filter(|(_, v)| *v != 0).map(|(m, v)| (Mono(m), Int::from_i128(v))).collect();
    terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
    IntPoly { terms }
}

fn mul_hash_big(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut map: FxHashMap<Packed, Acc> = FxHashMap::default();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            map.entry(ma.0 + mb.0).or_default().add_mul(ca, cb);
        }
    }
    let mut terms: Vec<(Mono, Int)> =
        map.into_iter().filter(|(_, v)| !v.is_zero()).map(|(m, v)| (Mono(m), v.into_int())).collect();
    terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
    IntPoly { terms }
}

/// Heap division with one stream per non-leading divisor term.
fn heap_divide(p: &IntPoly, d: &IntPoly) -> Option<IntPoly> {
    let (dlm, dlc) = (d.terms[0].0, &d.terms[0].1);
    let nd = d.terms.len();
    let mut q: Vec<(Mono, Int)> = Vec::new();
    let mut heap: BinaryHeap<(Packed, u32, u32)> = BinaryHeap::with_capacity(nd);
    let mut waiting: Vec<u32> = (1..nd as u32).collect();
    let mut k = 0usize;
    loop {
        let top = heap.peek().map(|t| t.0);
        let m = match (p.terms.get(k).map(|t| t.0 .0), top) {
            (None, None) => break,
            (Some(x), None) => x,
            (None, Some(y)) => y,
            (Some(x), Some(y)) => x.max(y),
        };
        let mut acc = Acc::default();
        if k < p.terms.len() && p.terms[k].0 .0 == m {
            acc.add(&p.terms[k].1);
            k += 1;
        }
        while let Some(&(hm, i, j)) = heap.peek() {
            if hm != m {
                break;
            }
            heap.pop();
            acc.sub_mul(&d.terms[i as usize].1, &q[j as usize].1);
            let nj = j + 1;
            if (nj as usize) < q.len() {
                heap.push((d.terms[i as usize].0 .0 + q[nj as usize].0 .0, i, nj));
            } else {
                waiting.push(i);
            }
        }
        if acc.is_zero() {
            continue;
        }
        let mm = Mono(m);
        if !dlm.divides(mm) {
            return None;
        }
        let c = acc.into_int().div_exact(dlc)?;
        let qm = mm.div_unchecked(dlm);
        let j = q.len() as u32;
        q.push((qm, c));
        for i in waiting.drain(..) {
            heap.push((d.terms[i as usize].0 .0 + qm.0, i, j));
        }
    }
    Some(IntPoly { terms: q })
}

impl std::fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IntPoly[{} terms]", self.terms.len())
    }
}
