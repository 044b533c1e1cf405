//! Fraction-free determinants with early detection of factors.

use super::factors::{FactorList, Provenance};
use super::matrix::{rational_determinant, PolyMatrix};
use crate::error::{Error, Result};
use crate::polyring::gcd::{gcd, gcd_many};
use crate::polyring::{Int, IntPoly, Polynomial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::time::Instant;

const RANK_PRIME: u64 = (1 << 61) - 1;

#[derive(Clone, Debug)]
pub struct EdfOptions {
    /// Random rational points at which the product identity is checked.
    pub verify_points: usize,
    pub seed: u64,
    pub deadline: Option<Instant>,
    /// Abort when the working matrix holds more terms than this.
    pub max_terms: Option<usize>,
}

impl Default for EdfOptions {
    fn default() -> Self {
        EdfOptions { verify_points: 3, seed: 0x5eed, deadline: None, max_terms: None }
    }
}

/// Factored maximal minor together with the rows and columns it uses.
#[derive(Clone, Debug)]
pub struct EdfOutcome {
    pub factors: FactorList,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

pub fn edf_determinant(m: &PolyMatrix, seeds: &[Polynomial]) -> Result<FactorList> {
    Ok(edf_determinant_with(m, seeds, &EdfOptions::default())?.factors)
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * a as u128) % p as u128) as u64;
        }
        a = ((a as u128 * a as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// Rows and columns (ascending) of a nonsingular maximal square submatrix.
/// Pivots are chosen on a modular image by (term count, row, column).
pub fn select_maximal_minor(m: &PolyMatrix, seed: u64) -> (Vec<usize>, Vec<usize>) {
    let p = RANK_PRIME;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point: Vec<u64> = (0..m.varset().len()).map(|_| rng.gen_range(1..p)).collect();
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut a: Vec<Vec<u64>> = (0..nr)
        .map(|i| {
            (0..nc)
                .map(|j| {
                    let e = m.get(i, j);
                    if e.is_zero() {
                        return 0;
                    }
                    let v = e.numerator().eval_mod(&point, p);
                    let d = Int::from_big(e.denominator().clone()).rem_u64(p);
                    ((v as u128 * powmod(d, p - 2, p) as u128) % p as u128) as u64
                })
                .collect()
        })
        .collect();
    let len: Vec<Vec<usize>> = (0..nr).map(|i| (0..nc).map(|j| m.get(i, j).term_count()).collect()).collect();
    let (mut rows_left, mut cols_left) = (vec![true; nr], vec![true; nc]);
    let (mut rows, mut cols) = (Vec::new(), Vec::new());
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in (0..nr).filter(|&i| rows_left[i]) {
            for j in (0..nc).filter(|&j| cols_left[j]) {
                if a[i][j] != 0 {
                    let key = (len[i][j], i, j);
                    if best.map_or(true, |b| key < b) {
                        best = Some(key);
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        let inv = powmod(a[pi][pj], p - 2, p);
        let prow = a[pi].clone();
        for i in (0..nr).filter(|&i| rows_left[i] && i != pi) {
            if a[i][pj] == 0 {
                continue;
            }
            let f = ((a[i][pj] as u128 * inv as u128) % p as u128) as u64;
            for (x, &y) in a[i].iter_mut().zip(&prow) {
                let t = ((f as u128 * y as u128) % p as u128) as u64;
                *x = if *x >= t { *x - t } else { *x + p - t };
            }
        }
        rows_left[pi] = false;
        cols_left[pj] = false;
        rows.push(pi);
        cols.push(pj);
    }
    rows.sort_unstable();
    cols.sort_unstable();
    (rows, cols)
}

/// A row or column after removing seeds, integer content and polynomial
/// content. Computed independently of the shared state.
struct Prepared {
    entries: Vec<IntPoly>,
    seeds_hit: Vec<usize>,
    divisors_hit: Vec<IntPoly>,
    int_content: Int,
    content: IntPoly,
}

struct Elimination {
    seeds: Vec<IntPoly>,
    found: Vec<(IntPoly, Provenance)>,
    pending: Vec<IntPoly>,
    /// Distinct pending denominators, newest first, tried before any gcd.
    divisors: Vec<IntPoly>,
    unit: Rational,
}

impl Elimination {
    fn prepare(&self, mut v: Vec<IntPoly>) -> Prepared {
        let mut seeds_hit = Vec::new();
        if v.iter().all(|x| x.is_zero()) {
            return Prepared {
                entries: v,
                seeds_hit,
                divisors_hit: Vec::new(),
                int_content: Int::ONE,
                content: IntPoly::one(),
            };
        }
        for (s, sd) in self.seeds.iter().enumerate() {
            loop {
                let q: Option<Vec<IntPoly>> = v.iter().map(|x| x.div_exact(sd)).collect();
                match q {
                    Some(q) => {
                        v = q;
                        seeds_hit.push(s);
                    }
                    None => break,
                }
            }
        }
        let mut divisors_hit = Vec::new();
        for d in &self.divisors {
            while let Some(q) = divide_all(&v, d) {
                v = q;
                divisors_hit.push(d.clone());
            }
        }
        let mut ic = Int::ZERO;
        for x in v.iter().filter(|x| !x.is_zero()) {
            ic = ic.gcd(&x.int_content());
            if ic.is_one() {
                break;
            }
        }
        if !ic.is_one() {
            v = v.iter().map(|x| x.div_int(&ic).expect("content divides")).collect();
        }
        let nz: Vec<&IntPoly> = v.iter().filter(|x| !x.is_zero()).collect();
        let g = gcd_many(&nz);
        if !g.is_constant() {
            v = v.iter().map(|x| x.div_exact(&g).expect("gcd divides")).collect();
        }
        Prepared { entries: v, seeds_hit, divisors_hit, int_content: ic, content: g }
    }

    fn commit(&mut self, prep: Prepared) -> Vec<IntPoly> {
        for s in prep.seeds_hit {
            self.found.push((self.seeds[s].clone(), Provenance::SeededDenominator));
        }
        for h in prep.divisors_hit {
            match self.pending.iter_mut().rev().find(|d| **d == h) {
                Some(d) => *d = IntPoly::one(),
                None => self.found.push((h, Provenance::Content)),
            }
        }
        self.unit *= Rational::from_integer(prep.int_content.to_big());
        let mut g = prep.content;
        if !g.is_constant() {
            for d in self.pending.iter_mut().rev() {
                if d.is_constant() {
                    continue;
                }
                let h = gcd(&g, d);
                if !h.is_constant() {
                    g = g.div_exact(&h).expect("gcd divides");
                    *d = d.div_exact(&h).expect("gcd divides");
                    if g.is_constant() {
                        break;
                    }
                }
            }
            if !g.is_constant() {
                self.found.push((g, Provenance::Content));
            }
        }
        prep.entries
    }

    fn refresh_divisors(&mut self) {
        self.divisors.clear();
        for d in self.pending.iter().rev() {
            if !d.is_constant() && !self.divisors.contains(d) {
                self.divisors.push(d.clone());
            }
        }
    }

    /// Cancels denominators left over at the end against found factors.
    fn reconcile(&mut self) -> Result<()> {
        for d in std::mem::take(&mut self.pending) {
            let mut d = d;
            for (f, _) in self.found.iter_mut().rev() {
                if d.is_constant() {
                    break;
                }
                let h = gcd(f, &d);
                if !h.is_constant() {
                    *f = f.div_exact(&h).expect("gcd divides");
                    d = d.div_exact(&h).expect("gcd divides");
                }
            }
            if !d.is_constant() {
                return Err(Error::Verification(format!("{}-term denominator did not cancel", d.len())));
            }
            let c = d.as_constant().expect("constant");
            self.unit /= Rational::from_integer(c.to_big());
        }
        Ok(())
    }
}

fn check_budget(opts: &EdfOptions, m: &[Vec<IntPoly>]) -> Result<()> {
    if let Some(dl) = opts.deadline {
        if Instant::now() > dl {
            return Err(Error::Budget("time limit reached during elimination".into()));
        }
    }
    if let Some(limit) = opts.max_terms {
        let total: usize = m.iter().flatten().map(|x| x.len()).sum();
        if total > limit {
            return Err(Error::Budget(format!("working matrix holds {total} terms")));
        }
    }
    Ok(())
}

/// Determinant of a maximal nonsingular minor as a list of factors, found by
/// extracting row and column contents during fraction-free elimination.
pub fn edf_determinant_with(m: &PolyMatrix, seeds: &[Polynomial], opts: &EdfOptions) -> Result<EdfOutcome> {
    let vars = m.varset().clone();
    let (rows, cols) = select_maximal_minor(m, opts.seed);
    if rows.is_empty() {
        return Err(Error::Degenerate("zero matrix: the resultant vanishes identically".into()));
    }
    let sub = m.submatrix(&rows, &cols);
    let n = rows.len();
    let (mut a, scale) = sub.integral_rows();

    let mut seed_polys = Vec::new();
    for s in seeds {
        let sp = s.with_varset(&vars)?.numerator().primitive().1;
        if sp.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !sp.is_constant() {
            seed_polys.push(sp);
        }
    }
    let mut st = Elimination {
        seeds: seed_polys,
        found: Vec::new(),
        pending: Vec::new(),
        divisors: Vec::new(),
        unit: scale.recip(),
    };
    let mut sign = 1i32;

    let preps: Vec<Prepared> = a.par_iter().map(|r| st.prepare(r.clone())).collect();
    for (i, p) in preps.into_iter().enumerate() {
        a[i] = st.commit(p);
    }
    extract_columns(&mut st, &mut a, 0);

    for k in 0..n {
        check_budget(opts, &a)?;
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                if !x.is_zero() {
                    let key = (x.len(), i, j);
                    if best.map_or(true, |b| key < b) {
                        best = Some(key);
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else {
            return Err(Error::Verification("selected minor is singular".into()));
        };
        if pi != k {
            a.swap(pi, k);
            sign = -sign;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            sign = -sign;
        }
        let (pc, pp) = a[k][k].primitive();
        st.unit *= Rational::from_integer(pc.to_big());
        if !pp.is_constant() {
            st.found.push((pp.clone(), Provenance::Numerator));
        }
        st.refresh_divisors();
        let targets: Vec<usize> = (k + 1..n).filter(|&i| !a[i][k].is_zero()).collect();
        let (top, _) = a.split_at(k + 1);
        let prow = &top[k];
        let updated: Vec<Result<Prepared>> = targets
            .par_iter()
            .map(|&i| {
                let row = &a[i];
                let new: Result<Vec<IntPoly>> =
                    (k + 1..n).map(|j| prow[k].mul_sub_mul(&row[j], &row[k], &prow[j])).collect();
                Ok(st.prepare(new?))
            })
            .collect();
        for (&i, prep) in targets.iter().zip(updated) {
            let prep = prep?;
            if !pp.is_constant() {
                st.pending.push(pp.clone());
            }
            st.unit /= Rational::from_integer(pc.to_big());
            let tail = st.commit(prep);
            a[i][k] = IntPoly::zero();
            for (j, x) in tail.into_iter().enumerate() {
                a[i][k + 1 + j] = x;
            }
        }
        extract_columns(&mut st, &mut a, k + 1);
        log::debug!(
            "edf step {k}: pivot {} terms, largest entry {} terms, {} factors",
            pp.len(),
            a.iter().skip(k + 1).flat_map(|r| r.iter().skip(k + 1)).map(|x| x.len()).max().unwrap_or(0),
            st.found.len()
        );
    }
    st.reconcile()?;

    let unit = st.unit.clone();
    if unit.is_negative() {
        sign = -sign;
    }
    let mut items: Vec<(Polynomial, Provenance)> = Vec::new();
    if !unit.abs().is_one() {
        items.push((Polynomial::constant(&vars, &unit.abs()), Provenance::Content));
    }
    items.extend(st.found.into_iter().map(|(f, p)| (Polynomial::from_int(&vars, f), p)));
    let factors = FactorList::collect(&vars, sign, items);
    verify(&sub, &factors, opts.verify_points, opts.seed)?;
    Ok(EdfOutcome { factors, rows, cols })
}

fn extract_columns(st: &mut Elimination, a: &mut [Vec<IntPoly>], from: usize) {
    let n = a.len();
    st.refresh_divisors();
    let preps: Vec<Prepared> = (from..n)
        .into_par_iter()
        .map(|j| st.prepare((from..n).map(|i| a[i][j].clone()).collect()))
        .collect();
    for (j, prep) in (from..n).zip(preps) {
        let col = st.commit(prep);
        for (i, x) in (from..n).zip(col) {
            a[i][j] = x;
        }
    }
}

/// Exact quotients of every entry by `d`, trying the shortest entry first.
fn divide_all(v: &[IntPoly], d: &IntPoly) -> Option<Vec<IntPoly>> {
    let mut order: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    if order.is_empty() {
        return None;
    }
    order.sort_by_key(|&i| v[i].len());
    let mut out = v.to_vec();
    for i in order {
        out[i] = v[i].div_exact(d)?;
    }
    Some(out)
}

/// Random rational point with small numerators and denominators.
pub fn random_rational_point(rng: &mut impl Rng, nvars: usize) -> Vec<Rational> {
    (0..nvars)
        .map(|_| {
            let num: i64 = rng.gen_range(-40..=40);
            let den: i64 = rng.gen_range(1..=17);
            Rational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect()
}

/// Checks the product identity against the exact determinant of the
/// specialized matrix.
pub fn verify(sub: &PolyMatrix, factors: &FactorList, points: usize, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    for _ in 0..points {
        let pt = random_rational_point(&mut rng, sub.varset().len());
        let want = rational_determinant(sub.eval_rational(&pt));
        let got = factors.eval_rational(&pt);
        if want != got {
            return Err(Error::Verification(format!("factor product {got} differs from determinant {want}")));
        }
    }
    Ok(())
}
