//! Arithmetic over prime fields: dense univariate and sparse multivariate
//! polynomials with word-sized residues.

use super::intpoly::IntPoly;
use super::mono::{Mono, Packed};
use std::collections::{BTreeMap, BinaryHeap};
use std::sync::OnceLock;

/// Primes just below 2^31, descending. Products of two residues fit in u64.
pub fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut v = Vec::new();
        let mut n: u64 = (1 << 31) - 1;
        while v.len() < 256 {
            if is_prime(n) {
                v.push(n);
            }
            n -= 2;
        }
        v
    })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow(a, p - 2, p)
}

/// Dense univariate polynomial, coefficient `k` multiplies `x^k`; trimmed.
pub type UPoly = Vec<u64>;

pub fn utrim(a: &mut UPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn udeg(a: &UPoly) -> isize {
    a.len() as isize - 1
}

pub fn ueval(a: &UPoly, x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| add(mul(acc, x, p), c, p))
}

pub fn umul(a: &UPoly, b: &UPoly, p: u64) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = add(r[i + j], mul(x, y, p), p);
        }
    }
    utrim(&mut r);
    r
}

pub fn uscale(a: &UPoly, k: u64, p: u64) -> UPoly {
    let mut r: UPoly = a.iter().map(|&c| mul(c, k, p)).collect();
    utrim(&mut r);
    r
}

pub fn usub(a: &UPoly, b: &UPoly, p: u64) -> UPoly {
    let n = a.len().max(b.len());
    let mut r: UPoly = (0..n)
        .map(|i| sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    utrim(&mut r);
    r
}

pub fn uadd(a: &UPoly, b: &UPoly, p: u64) -> UPoly {
    let n = a.len().max(b.len());
    let mut r: UPoly = (0..n)
        .map(|i| add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    utrim(&mut r);
    r
}

/// Quotient and remainder; `b` must be nonzero.
pub fn udivrem(a: &UPoly, b: &UPoly, p: u64) -> (UPoly, UPoly) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let binv = inv(b[db], p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = mul(r[k + db], binv, p);
        q[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = sub(r[k + j], mul(c, bj, p), p);
            }
        }
    }
    r.truncate(db);
    utrim(&mut r);
    utrim(&mut q);
    (q, r)
}

pub fn umonic(a: &UPoly, p: u64) -> UPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => uscale(a, inv(l, p), p),
    }
}

/// Monic gcd.
pub fn ugcd(a: &UPoly, b: &UPoly, p: u64) -> UPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let (_, r) = udivrem(&x, &y, p);
        x = y;
        y = r;
        if x.len() == 1 {
            return vec![1];
        }
    }
    umonic(&x, p)
}

/// Sparse multivariate polynomial over `Z/p`, sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PPoly {
    pub terms: Vec<(Mono, u64)>,
}

impl PPoly {
    pub fn from_int(a: &IntPoly, p: u64) -> PPoly {
        PPoly {
            terms: a
                .terms()
                .iter()
                .filter_map(|(m, c)| {
                    let r = c.rem_u64(p);
                    (r != 0).then_some((*m, r))
                })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> Option<Mono> {
        self.terms.first().map(|t| t.0)
    }

    pub fn monic(&self, p: u64) -> PPoly {
        match self.terms.first() {
            None => PPoly::default(),
            Some(&(_, l)) => {
                let li = inv(l, p);
                PPoly { terms: self.terms.iter().map(|&(m, c)| (m, mul(c, li, p))).collect() }
            }
        }
    }

    fn from_unsorted(mut terms: Vec<(Mono, u64)>) -> PPoly {
        terms.retain(|t| t.1 != 0);
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        PPoly { terms }
    }

    /// Groups by the monomial with `var` removed; each group is a dense
    /// polynomial in `var`. Groups come out in descending monomial order.
    fn split(&self, var: usize) -> Vec<(Mono, UPoly)> {
        let mut map: BTreeMap<Mono, UPoly> = BTreeMap::new();
        for &(m, c) in &self.terms {
            let e = m.exp(var) as usize;
            let u = map.entry(m.with_exp(var, 0)).or_default();
            if u.len() <= e {
                u.resize(e + 1, 0);
            }
            u[e] = c;
        }
        map.into_iter().rev().collect()
    }

    fn join(var: usize, parts: &[(Mono, UPoly)]) -> PPoly {
        let mut terms = Vec::new();
        for (m, u) in parts {
            for (k, &c) in u.iter().enumerate() {
                if c != 0 {
                    terms.push((m.with_exp(var, k as u32), c));
                }
            }
        }
        PPoly::from_unsorted(terms)
    }

    /// Substitutes `var = x`.
    fn eval_var(parts: &[(Mono, UPoly)], x: u64, p: u64) -> PPoly {
        let mut terms = Vec::with_capacity(parts.len());
        for (m, u) in parts {
            let v = ueval(u, x, p);
            if v != 0 {
                terms.push((*m, v));
            }
        }
        PPoly { terms }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    pub fn to_upoly(&self, var: usize) -> UPoly {
        let mut u = vec![0u64; self.degree_in(var) as usize + 1];
        for &(m, c) in &self.terms {
            u[m.exp(var) as usize] = c;
        }
        utrim(&mut u);
        u
    }

    pub fn from_upoly(var: usize, u: &UPoly) -> PPoly {
        PPoly::from_unsorted(
            u.iter()
                .enumerate()
                .map(|(k, &c)| (Mono::var_pow(var, k as u32).expect("degree"), c))
                .collect(),
        )
    }

    /// Exact quotient modulo `p`, or `None`.
    pub fn div_exact(&self, d: &PPoly, p: u64) -> Option<PPoly> {
        let &(dlm, dlc) = d.terms.first()?;
        let dinv = inv(dlc, p);
        let nd = d.terms.len();
        let mut q: Vec<(Mono, u64)> = Vec::new();
        let mut heap: BinaryHeap<(Packed, u32, u32)> = BinaryHeap::new();
        let mut waiting: Vec<u32> = (1..nd as u32).collect();
        let mut k = 0usize;
        loop {
            let top = heap.peek().map(|t| t.0);
            let m = match (self.terms.get(k).map(|t| t.0 .0), top) {
                (None, None) => break,
                (Some(x), None) => x,
                (None, Some(y)) => y,
                (Some(x), Some(y)) => x.max(y),
            };
            let mut acc = 0u64;
            if k < self.terms.len() && self.terms[k].0 .0 == m {
                acc = self.terms[k].1;
                k += 1;
            }
            while let Some(&(hm, i, j)) = heap.peek() {
                if hm != m {
                    break;
                }
                heap.pop();
                acc = sub(acc, mul(d.terms[i as usize].1, q[j as usize].1, p), p);
                let nj = j + 1;
                if (nj as usize) < q.len() {
                    heap.push((d.terms[i as usize].0 .0 + q[nj as usize].0 .0, i, nj));
                } else {
                    waiting.push(i);
                }
            }
            if acc == 0 {
                continue;
            }
            let mm = Mono(m);
            if !dlm.divides(mm) {
                return None;
            }
            let qm = mm.div_unchecked(dlm);
            let j = q.len() as u32;
            q.push((qm, mul(acc, dinv, p)));
            for i in waiting.drain(..) {
                heap.push((d.terms[i as usize].0 .0 + qm.0, i, j));
            }
        }
        Some(PPoly { terms: q })
    }
}

/// Monic gcd over `Z/p` of polynomials in the variables `vars` (all other
/// variables must be absent). Dense recursive interpolation on the last
/// variable in `vars`.
pub fn pgcd(a: &PPoly, b: &PPoly, vars: &[usize], p: u64) -> PPoly {
    if a.is_zero() {
        return b.monic(p);
    }
    if b.is_zero() {
        return a.monic(p);
    }
    if vars.is_empty() || a.terms.len() == 1 && a.terms[0].0.is_one() || b.terms.len() == 1 && b.terms[0].0.is_one() {
        return one();
    }
    if vars.len() == 1 {
        let v = vars[0];
        let g = ugcd(&a.to_upoly(v), &b.to_upoly(v), p);
        return PPoly::from_upoly(v, &g);
    }
    let x = vars[vars.len() - 1];
    let rest = &vars[..vars.len() - 1];
    let mut sa = a.split(x);
    let mut sb = b.split(x);
    let ca = ucontent(&sa, p);
    let cb = ucontent(&sb, p);
    let cont = ugcd(&ca, &cb, p);
    if ca.len() > 1 {
        for (_, u) in sa.iter_mut() {
            *u = udivrem(u, &ca, p).0;
        }
    }
    if cb.len() > 1 {
        for (_, u) in sb.iter_mut() {
            *u = udivrem(u, &cb, p).0;
        }
    }
    let (lca, lcb) = (&sa[0].1, &sb[0].1);
    let g = ugcd(lca, lcb, p);
    let dxa = sa.iter().map(|(_, u)| u.len()).max().unwrap_or(1) - 1;
    let dxb = sb.iter().map(|(_, u)| u.len()).max().unwrap_or(1) - 1;
    let bound = (g.len() - 1) + dxa.min(dxb);

    let mut interp: BTreeMap<Mono, UPoly> = BTreeMap::new();
    let mut prod: UPoly = vec![1];
    let mut npts = 0usize;
    let mut cur_lm: Option<Mono> = None;
    let mut alpha = 0u64;
    let limit = p.min(1 << 20);
    while alpha < limit {
        alpha += 1;
        let galpha = ueval(&g, alpha, p);
        if galpha == 0 || ueval(lca, alpha, p) == 0 || ueval(lcb, alpha, p) == 0 {
            continue;
        }
        let ia = PPoly::eval_var(&sa, alpha, p);
        let ib = PPoly::eval_var(&sb, alpha, p);
        let img = pgcd(&ia, &ib, rest, p);
        let m = img.lm().expect("nonzero gcd image");
        match cur_lm {
            Some(c) if m > c => continue,
            Some(c) if m == c => {}
            _ => {
                interp.clear();
                prod = vec![1];
                npts = 0;
                cur_lm = Some(m);
            }
        }
        if m.is_one() {
            return PPoly::from_upoly(x, &cont);
        }
        let img: Vec<(Mono, u64)> = img.terms.iter().map(|&(mm, c)| (mm, mul(c, galpha, p))).collect();
        let unchanged = newton_add(&mut interp, &mut prod, &img, alpha, p);
        npts += 1;
        if (unchanged && npts > 1) || npts > bound {
            let parts: Vec<(Mono, UPoly)> = interp.iter().rev().map(|(m, u)| (*m, u.clone())).collect();
            let hc = ucontent(&parts, p);
            let parts: Vec<(Mono, UPoly)> = parts.into_iter().map(|(m, u)| (m, udivrem(&u, &hc, p).0)).collect();
            let h = PPoly::join(x, &parts);
            let ra = PPoly::join(x, &sa);
            let rb = PPoly::join(x, &sb);
            if ra.div_exact(&h, p).is_some() && rb.div_exact(&h, p).is_some() {
                let mut out = Vec::new();
                for (m, c) in &h.terms {
                    let e = m.exp(x) as usize;
                    let mut u = vec![0u64; e + 1];
                    u[e] = *c;
                    for (k, &cc) in umul(&u, &cont, p).iter().enumerate() {
                        if cc != 0 {
                            out.push((m.with_exp(x, k as u32), cc));
                        }
                    }
                }
                let mut map: BTreeMap<Mono, u64> = BTreeMap::new();
                for (m, c) in out {
                    let e = map.entry(m).or_insert(0);
                    *e = add(*e, c, p);
                }
                return PPoly::from_unsorted(map.into_iter().collect()).monic(p);
            }
            if npts > bound + 2 {
                interp.clear();
                prod = vec![1];
                npts = 0;
                cur_lm = None;
            }
        }
    }
    panic!("modular gcd ran out of evaluation points");
}

fn one() -> PPoly {
    PPoly { terms: vec![(Mono::ONE, 1)] }
}

fn ucontent(parts: &[(Mono, UPoly)], p: u64) -> UPoly {
    let mut g: UPoly = Vec::new();
    for (_, u) in parts {
        g = if g.is_empty() { umonic(u, p) } else { ugcd(&g, u, p) };
        if g.len() == 1 {
            break;
        }
    }
    if g.is_empty() {
        vec![1]
    } else {
        g
    }
}

/// Incremental Newton interpolation. Returns true when the new value was
/// already predicted by the current interpolant.
fn newton_add(
    interp: &mut BTreeMap<Mono, UPoly>,
    prod: &mut UPoly,
    img: &[(Mono, u64)],
    alpha: u64,
    p: u64,
) -> bool {
    let pa = ueval(prod, alpha, p);
    let pinv = inv(pa, p);
    let mut unchanged = true;
    let mut vals: BTreeMap<Mono, u64> = img.iter().cloned().collect();
    for (m, u) in interp.iter_mut() {
        let v = vals.remove(m).unwrap_or(0);
        let cur = ueval(u, alpha, p);
        if cur != v {
            unchanged = false;
            let k = mul(sub(v, cur, p), pinv, p);
            *u = uadd(u, &uscale(prod, k, p), p);
        }
    }
    for (m, v) in vals {
        if v != 0 {
            unchanged = false;
            interp.insert(m, uscale(prod, mul(v, pinv, p), p));
        }
    }
    interp.retain(|_, u| !u.is_empty());
    *prod = umul(prod, &vec![sub(0, alpha, p), 1], p);
    unchanged
}
