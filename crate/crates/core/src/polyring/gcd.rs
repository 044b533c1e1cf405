//! Multivariate gcd over the integers: modular images, Chinese remaindering
//! and trial division.

use super::int::Int;
use super::intpoly::IntPoly;
use super::modp::{self, PPoly, UPoly};
use super::mono::{Mono, MAX_VARS};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn var_list(mask: u32) -> Vec<usize> {
    (0..MAX_VARS).filter(|i| mask & (1 << i) != 0).collect()
}

/// Primitive gcd with positive leading coefficient. `gcd(0, 0)` is zero.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive().1;
    }
    if b.is_zero() {
        return a.primitive().1;
    }
    if a.is_constant() || b.is_constant() {
        return IntPoly::one();
    }
    let (_, a) = a.primitive();
    let (_, b) = b.primitive();
    if a == b {
        return a;
    }
    if a.len() == 1 || b.len() == 1 {
        return monomial_gcd(&a, &b);
    }
    let (ma, mb) = (a.var_mask(), b.var_mask());
    if ma & mb == 0 {
        return IntPoly::one();
    }
    if a.len() <= b.len() {
        if b.div_exact(&a).is_some() {
            return a;
        }
    } else if a.div_exact(&b).is_some() {
        return b;
    }
    if provably_coprime(&[&a, &b], 0x5eed) {
        return IntPoly::one();
    }
    modular_gcd(&a, &b, ma | mb)
}

/// Gcd of a monomial with anything: the largest monomial dividing every term.
fn monomial_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut e = [u32::MAX; MAX_VARS];
    for p in [a, b] {
        for (m, _) in p.terms() {
            for (i, ei) in e.iter_mut().enumerate() {
                *ei = (*ei).min(m.exp(i));
            }
        }
    }
    IntPoly::monomial(Mono::from_exponents(&e).expect("bounded"), Int::ONE)
}

/// Gcd of a list, primitive. Returns one for an empty or all-zero list.
pub fn gcd_many(polys: &[&IntPoly]) -> IntPoly {
    let mut nz: Vec<&IntPoly> = polys.iter().copied().filter(|p| !p.is_zero()).collect();
    if nz.is_empty() {
        return IntPoly::one();
    }
    nz.sort_by_key(|p| p.len());
    if nz.len() > 1 && provably_coprime(&nz, 0xc0de) {
        return IntPoly::one();
    }
    let mut g = nz[0].primitive().1;
    for p in &nz[1..] {
        if g.is_constant() {
            return IntPoly::one();
        }
        if p.div_exact(&g).is_none() {
            g = gcd(&g, p);
        }
    }
    if g.is_constant() {
        IntPoly::one()
    } else {
        g
    }
}

/// Fast sufficient test that the polynomials have no common non-constant
/// factor. For each variable, specializes the others at a random point and
/// checks that the univariate images are coprime modulo a prime, using a
/// point where at least one image keeps its full degree.
pub fn provably_coprime(polys: &[&IntPoly], seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let common = polys.iter().fold(u32::MAX, |m, p| m & p.var_mask());
    if common == 0 {
        return true;
    }
    let p = modp::primes()[3];
    'vars: for x in var_list(common) {
        for _attempt in 0..3 {
            let point: Vec<u64> = (0..MAX_VARS).map(|_| rng.gen_range(1..p)).collect();
            let mut g: Option<UPoly> = None;
            let mut full = false;
            for q in polys {
                let (img, lead_ok) = univariate_image(q, x, &point, p);
                full |= lead_ok;
                g = Some(match g {
                    None => modp::umonic(&img, p),
                    Some(h) => modp::ugcd(&h, &img, p),
                });
                if g.as_ref().is_some_and(|h| h.len() == 1) && full {
                    continue 'vars;
                }
            }
        }
        return false;
    }
    true
}

/// Image in `Z/p[x]` after substituting `point` for every other variable.
/// Also reports whether the leading coefficient in `x` survived.
fn univariate_image(q: &IntPoly, x: usize, point: &[u64], p: u64) -> (UPoly, bool) {
    let deg = q.degree_in(x) as usize;
    let mut img = vec![0u64; deg + 1];
    for (m, c) in q.terms() {
        let mut t = c.rem_u64(p);
        for (i, &pt) in point.iter().enumerate() {
            if i == x {
                continue;
            }
            let e = m.exp(i);
            if e > 0 {
                t = modp::mul(t, modp::pow(pt, e as u64, p), p);
            }
        }
        let e = m.exp(x) as usize;
        img[e] = modp::add(img[e], t, p);
    }
    let lead_ok = img[deg] != 0;
    modp::utrim(&mut img);
    (img, lead_ok)
}

fn modular_gcd(a: &IntPoly, b: &IntPoly, mask: u32) -> IntPoly {
    let vars = var_list(mask);
    let gamma = a.lc().unwrap().gcd(b.lc().unwrap());
    let gamma_big = gamma.to_big();
    let mut modulus = BigInt::one();
    let mut acc: Vec<(Mono, BigInt)> = Vec::new();
    let mut cur_lm: Option<Mono> = None;
    let mut prev: Option<IntPoly> = None;
    for &p in modp::primes() {
        if a.lc().unwrap().rem_u64(p) == 0 || b.lc().unwrap().rem_u64(p) == 0 {
            continue;
        }
        let img = modp::pgcd(&PPoly::from_int(a, p), &PPoly::from_int(b, p), &vars, p);
        let m = img.lm().expect("nonzero");
        if m.is_one() {
            return IntPoly::one();
        }
        match cur_lm {
            Some(c) if m > c => continue,
            Some(c) if m == c => {}
            _ => {
                cur_lm = Some(m);
                modulus = BigInt::one();
                acc.clear();
                prev = None;
            }
        }
        let gp = gamma.rem_u64(p);
        let img: Vec<(Mono, u64)> = img.terms.iter().map(|&(mm, c)| (mm, modp::mul(c, gp, p))).collect();
        acc = crt_merge(&acc, &modulus, &img, p);
        modulus *= p;
        let half = &modulus >> 1u32;
        let cand_terms: Vec<(Mono, Int)> = acc
            .iter()
            .map(|(mm, c)| {
                let v = if c > &half { c - &modulus } else { c.clone() };
                (*mm, Int::from_big(v))
            })
            .collect();
        let cand = IntPoly::from_terms(cand_terms).primitive().1;
        if prev.as_ref() == Some(&cand) || modulus.bits() > gamma_big.bits() + 40 || prev.is_none() {
            if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                return cand;
            }
        }
        prev = Some(cand);
    }
    panic!("modular gcd exhausted primes");
}

fn crt_merge(acc: &[(Mono, BigInt)], modulus: &BigInt, img: &[(Mono, u64)], p: u64) -> Vec<(Mono, BigInt)> {
    use std::collections::BTreeMap;
    let mut map: BTreeMap<Mono, (BigInt, u64)> = BTreeMap::new();
    for (m, c) in acc {
        map.insert(*m, (c.clone(), 0));
    }
    for &(m, c) in img {
        map.entry(m).or_insert((BigInt::zero(), 0)).1 = c;
    }
    let pb = BigInt::from(p);
    let minv = {
        let mr = (modulus % &pb).to_u64_digits().1.first().copied().unwrap_or(0);
        modp::inv(mr, p)
    };
    let mut out = Vec::with_capacity(map.len());
    for (m, (c, r)) in map.into_iter().rev() {
        let cr = (&c % &pb).to_u64_digits().1.first().copied().unwrap_or(0);
        let k = modp::mul(modp::sub(r, cr, p), minv, p);
        let v = c + modulus * BigInt::from(k);
        if !v.is_zero() {
            out.push((m, v));
        }
    }
    out
}
