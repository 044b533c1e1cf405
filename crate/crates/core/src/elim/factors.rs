//! Factored representation of elimination results.

use crate::error::{Error, Result};
use crate::polyring::gcd::gcd;
use crate::polyring::{IntPoly, Polynomial, Rational, VarSet};
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;
use serde_json::json;
use std::fmt::Write as _;

/// Where a factor was found during elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Numerator,
    SeededDenominator,
    Content,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Numerator => "numerator",
            Provenance::SeededDenominator => "seeded-denominator",
            Provenance::Content => "content",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub poly: Polynomial,
    pub multiplicity: u32,
    pub provenance: Provenance,
}

/// A polynomial given as `sign * prod(factor^multiplicity)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorList {
    pub sign: i32,
    pub factors: Vec<Factor>,
}

impl FactorList {
    /// Groups equal factors of equal provenance, keeping first-seen order.
    pub fn collect(vars: &VarSet, sign: i32, items: Vec<(Polynomial, Provenance)>) -> FactorList {
        let mut factors: Vec<Factor> = Vec::new();
        for (poly, provenance) in items {
            debug_assert_eq!(poly.varset(), vars);
            if poly.is_zero() || (poly.total_degree() == 0 && poly == Polynomial::one(vars)) {
                continue;
            }
            match factors.iter_mut().find(|f| f.provenance == provenance && f.poly == poly) {
                Some(f) => f.multiplicity += 1,
                None => factors.push(Factor { poly, multiplicity: 1, provenance }),
            }
        }
        FactorList { sign, factors }
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Rational {
        let mut v = Rational::from_integer(self.sign.into());
        for f in &self.factors {
            v *= Pow::pow(f.poly.eval_rational(point), f.multiplicity);
            if v.is_zero() {
                break;
            }
        }
        v
    }

    /// Multiplies everything out. Potentially very large.
    pub fn expand(&self, vars: &VarSet) -> Result<Polynomial> {
        let mut acc = Polynomial::constant(vars, &Rational::from_integer(self.sign.into()));
        for f in &self.factors {
            acc = acc.try_mul(&f.poly.try_pow(f.multiplicity as i64)?)?;
        }
        Ok(acc)
    }

    /// The factor with the most terms.
    pub fn dominant(&self) -> Option<&Factor> {
        self.factors.iter().fold(None, |best: Option<&Factor>, f| match best {
            Some(b) if b.poly.term_count() >= f.poly.term_count() => Some(b),
            _ => Some(f),
        })
    }

    /// Term counts, repeated by multiplicity, in list order.
    pub fn term_counts(&self) -> Vec<usize> {
        self.factors
            .iter()
            .flat_map(|f| std::iter::repeat(f.poly.term_count()).take(f.multiplicity as usize))
            .collect()
    }

    /// Total multiplicity of each known polynomial across all factors.
    pub fn known_multiplicities(&self, known: &[Polynomial]) -> Result<Vec<u32>> {
        let mut total = vec![0u32; known.len()];
        for f in &self.factors {
            let (_, mults) = strip_known_factors(&f.poly, known)?;
            for (t, m) in total.iter_mut().zip(mults) {
                *t += m * f.multiplicity;
            }
        }
        Ok(total)
    }

    /// Splits factors until they are pairwise coprime (a gcd-free basis).
    /// The product is unchanged; equal factors are merged.
    pub fn refine(&self) -> Result<FactorList> {
        let vars = match self.factors.first() {
            Some(f) => f.poly.varset().clone(),
            None => return Ok(self.clone()),
        };
        let mut sign = self.sign;
        let mut consts: Vec<Factor> = Vec::new();
        let mut items: Vec<(IntPoly, u32, Provenance)> = Vec::new();
        for f in &self.factors {
            if f.poly.total_degree() == 0 {
                consts.push(f.clone());
                continue;
            }
            let (p, c) = f.poly.normalize();
            if c.is_negative() && f.multiplicity % 2 == 1 {
                sign = -sign;
            }
            let c = c.abs();
            if !c.is_one() {
                consts.push(Factor {
                    poly: Polynomial::constant(&vars, &Pow::pow(c, f.multiplicity)),
                    multiplicity: 1,
                    provenance: Provenance::Content,
                });
            }
            items.push((p.numerator().clone(), f.multiplicity, f.provenance));
        }
        let mut i = 0;
        while i < items.len() {
            let mut j = i + 1;
            while j < items.len() {
                if items[i].0 == items[j].0 {
                    items[i].1 += items[j].1;
                    items.remove(j);
                    continue;
                }
                let g = gcd(&items[i].0, &items[j].0);
                if !g.is_constant() {
                    let (mi, mj) = (items[i].1, items[j].1);
                    let prov = items[i].2;
                    for k in [i, j] {
                        let q = items[k].0.div_exact(&g).ok_or_else(|| Error::Verification("gcd does not divide".into()))?;
                        let (c, q) = q.primitive();
                        if c.is_negative() && items[k].1 % 2 == 1 {
                            sign = -sign;
                        }
                        items[k].0 = q;
                    }
                    items.push((g, mi + mj, prov));
                }
                j += 1;
            }
            if items[i].0.is_constant() {
                items.remove(i);
            } else {
                i += 1;
            }
        }
        items.retain(|(p, _, _)| !p.is_constant());
        let mut factors = consts;
        factors.extend(
            items.into_iter().map(|(p, m, provenance)| Factor { poly: Polynomial::from_int(&vars, p), multiplicity: m, provenance }),
        );
        Ok(FactorList { sign, factors })
    }

    /// Line-oriented report: `sign=` then one `mult= terms= poly=` line per factor.
    pub fn report(&self) -> String {
        let mut s = format!("sign={:+}\n", self.sign);
        for f in &self.factors {
            let _ = writeln!(s, "mult={} terms={} poly={}", f.multiplicity, f.poly.term_count(), f.poly);
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "sign": self.sign,
            "factors": self.factors.iter().map(|f| json!({
                "multiplicity": f.multiplicity,
                "terms": f.poly.term_count(),
                "provenance": f.provenance,
                "poly": f.poly.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Divides `p` by each known factor as often as possible. Returns the
/// normalized quotient and the multiplicities. Constant known factors are
/// reported with multiplicity zero.
pub fn strip_known_factors(p: &Polynomial, known: &[Polynomial]) -> Result<(Polynomial, Vec<u32>)> {
    let vars = p.varset();
    let mut q: IntPoly = p.numerator().clone();
    let mut mults = Vec::with_capacity(known.len());
    for k in known {
        if k.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = k.with_varset(vars)?;
        let kp = k.numerator().primitive().1;
        let mut m = 0;
        if !kp.is_constant() && !q.is_zero() {
            while let Some(r) = q.div_exact(&kp) {
                q = r;
                m += 1;
            }
        }
        mults.push(m);
    }
    let quotient = Polynomial::from_int(vars, q).normalize().0;
    Ok((quotient, mults))
}

/// Normalized product of polynomials; `one` for an empty list.
pub fn product(vars: &VarSet, polys: &[Polynomial]) -> Result<Polynomial> {
    polys.iter().try_fold(Polynomial::one(vars), |acc, p| acc.try_mul(&p.with_varset(vars)?))
}
