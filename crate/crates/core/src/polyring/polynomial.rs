use super::gcd;
use super::int::Int;
use super::intpoly::IntPoly;
use super::mono::{Mono, MAX_VARS};
use super::varset::VarSet;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

pub type Rational = BigRational;

/// Sparse multivariate polynomial with rational coefficients, stored as an
/// integer polynomial over a positive common denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: VarSet,
    num: IntPoly,
    den: BigInt,
}

/// Result of [`Polynomial::evaluate`].
#[derive(Clone, Debug, PartialEq)]
pub enum Evaluated {
    Value(Rational),
    Poly(Polynomial),
}

/// Ring operation selector for [`Polynomial::combine`].
#[derive(Clone, Debug)]
pub enum Combine<'a> {
    Add(&'a Polynomial),
    Sub(&'a Polynomial),
    Mul(&'a Polynomial),
    Pow(i64),
}

impl Polynomial {
    pub fn zero(vars: &VarSet) -> Polynomial {
        Polynomial { vars: vars.clone(), num: IntPoly::zero(), den: BigInt::one() }
    }

    pub fn one(vars: &VarSet) -> Polynomial {
        Polynomial::from_int(vars, IntPoly::one())
    }

    pub fn constant(vars: &VarSet, c: &Rational) -> Polynomial {
        Polynomial::from_parts(
            vars,
            IntPoly::constant(Int::from_big(c.numer().clone())),
            c.denom().clone(),
        )
    }

    pub fn var(vars: &VarSet, name: &str) -> Result<Polynomial> {
        Ok(Polynomial::from_int(vars, IntPoly::var(vars.require(name)?)))
    }

    pub fn from_int(vars: &VarSet, num: IntPoly) -> Polynomial {
        Polynomial { vars: vars.clone(), num, den: BigInt::one() }
    }

    /// `num / den`, reduced to the canonical representation.
    pub fn from_parts(vars: &VarSet, num: IntPoly, den: BigInt) -> Polynomial {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Polynomial::zero(vars);
        }
        let (num, den) = if den.is_negative() { (num.neg(), -den) } else { (num, den) };
        let g = num.int_content().to_big().gcd(&den);
        if g.is_one() {
            return Polynomial { vars: vars.clone(), num, den };
        }
        let gi = Int::from_big(g.clone());
        Polynomial { vars: vars.clone(), num: num.div_int(&gi).expect("content"), den: den / g }
    }

    /// Builds from `(exponents, coefficient)` pairs.
    pub fn from_terms(vars: &VarSet, terms: Vec<(Mono, Rational)>) -> Polynomial {
        let den = terms.iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
        let ts: Vec<(Mono, Int)> = terms
            .into_iter()
            .map(|(m, c)| (m, Int::from_big(c.numer() * (&den / c.denom()))))
            .collect();
        Polynomial::from_parts(vars, IntPoly::from_terms(ts), den)
    }

    pub fn varset(&self) -> &VarSet {
        &self.vars
    }

    /// Integer numerator; the polynomial equals `numerator / denominator`.
    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn term_count(&self) -> usize {
        self.num.len()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn total_degree(&self) -> u32 {
        self.num.total_degree()
    }

    pub fn degree(&self, var: &str) -> Result<u32> {
        Ok(self.num.degree_in(self.vars.require(var)?))
    }

    /// Names of the variables that actually occur.
    pub fn support(&self) -> Vec<&str> {
        let mask = self.num.var_mask();
        (0..self.vars.len()).filter(|i| mask & (1 << i) != 0).map(|i| self.vars.name(i)).collect()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> Vec<(Vec<u32>, Rational)> {
        let n = self.vars.len();
        self.num
            .terms()
            .iter()
            .map(|(m, c)| (m.exponents(n), Rational::new(c.to_big(), self.den.clone())))
            .collect()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Result<Rational> {
        let m = Mono::from_exponents(exps)?;
        Ok(self
            .num
            .terms()
            .iter()
            .find(|(mm, _)| *mm == m)
            .map(|(_, c)| Rational::new(c.to_big(), self.den.clone()))
            .unwrap_or_else(Rational::zero))
    }

    fn same_vars(&self, o: &Polynomial) -> Result<()> {
        if self.vars == o.vars {
            Ok(())
        } else {
            Err(Error::VarSetMismatch)
        }
    }

    pub fn try_add(&self, o: &Polynomial) -> Result<Polynomial> {
        self.same_vars(o)?;
        let l = self.den.lcm(&o.den);
        let a = self.num.scale(&Int::from_big(&l / &self.den));
        let b = o.num.scale(&Int::from_big(&l / &o.den));
        Ok(Polynomial::from_parts(&self.vars, a.add(&b), l))
    }

    pub fn try_sub(&self, o: &Polynomial) -> Result<Polynomial> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &Polynomial) -> Result<Polynomial> {
        self.same_vars(o)?;
        Ok(Polynomial::from_parts(&self.vars, self.num.try_mul(&o.num)?, &self.den * &o.den))
    }

    pub fn try_pow(&self, e: i64) -> Result<Polynomial> {
        if e < 0 {
            return Err(Error::NegativeExponent(e));
        }
        let e = u32::try_from(e).map_err(|_| Error::DegreeOverflow(format!("exponent {e}")))?;
        Ok(Polynomial::from_parts(&self.vars, self.num.pow(e)?, num_traits::pow(self.den.clone(), e as usize)))
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { vars: self.vars.clone(), num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, k: &Rational) -> Polynomial {
        Polynomial::from_parts(
            &self.vars,
            self.num.scale(&Int::from_big(k.numer().clone())),
            &self.den * k.denom(),
        )
    }

    pub fn combine(&self, op: Combine<'_>) -> Result<Polynomial> {
        match op {
            Combine::Add(q) => self.try_add(q),
            Combine::Sub(q) => self.try_sub(q),
            Combine::Mul(q) => self.try_mul(q),
            Combine::Pow(e) => self.try_pow(e),
        }
    }

    /// Exact quotient `self / d`; `Ok(None)` when `d` does not divide.
    pub fn exact_divide(&self, d: &Polynomial) -> Result<Option<Polynomial>> {
        self.same_vars(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (dc, dp) = d.num.primitive();
        let (sc, sp) = self.num.primitive();
        if self.is_zero() {
            return Ok(Some(Polynomial::zero(&self.vars)));
        }
        Ok(sp.div_exact(&dp).map(|q| {
            let num = q.scale(&Int::from_big(sc.to_big() * &d.den));
            Polynomial::from_parts(&self.vars, num, &self.den * dc.to_big())
        }))
    }

    pub fn differentiate(&self, var: &str) -> Result<Polynomial> {
        let i = self.vars.require(var)?;
        Ok(Polynomial::from_parts(&self.vars, self.num.derivative(i), self.den.clone()))
    }

    /// Substitutes rational values for some or all variables.
    pub fn evaluate(&self, assignment: &HashMap<String, Rational>) -> Result<Evaluated> {
        let n = self.vars.len();
        let mut vals: Vec<Option<&Rational>> = vec![None; n];
        for (k, v) in assignment {
            vals[self.vars.require(k)?] = Some(v);
        }
        let degs = self.num.degrees();
        let powers: Vec<Vec<Rational>> = (0..n)
            .map(|i| match vals[i] {
                Some(v) => {
                    let mut pw = vec![Rational::one()];
                    for k in 0..degs[i] as usize {
                        let next = &pw[k] * v;
                        pw.push(next);
                    }
                    pw
                }
                None => Vec::new(),
            })
            .collect();
        let mut terms: Vec<(Mono, Rational)> = Vec::with_capacity(self.num.len());
        for (m, c) in self.num.terms() {
            let mut coef = Rational::from_integer(c.to_big());
            let mut mm = *m;
            for i in 0..n {
                if vals[i].is_some() {
                    let e = m.exp(i) as usize;
                    if e > 0 {
                        coef *= &powers[i][e];
                        mm = mm.with_exp(i, 0);
                    }
                }
            }
            terms.push((mm, coef));
        }
        let p = Polynomial::from_terms(&self.vars, terms);
        let p = Polynomial::from_parts(&self.vars, p.num, p.den * &self.den);
        if vals.iter().all(|v| v.is_some()) {
            let c = p.num.as_constant().expect("fully evaluated");
            return Ok(Evaluated::Value(Rational::new(c.to_big(), p.den)));
        }
        Ok(Evaluated::Poly(p))
    }

    /// Full evaluation to a rational.
    pub fn eval_rational(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.vars.len());
        let degs = self.num.degrees();
        let powers: Vec<Vec<Rational>> = (0..values.len())
            .map(|i| {
                let mut pw = vec![Rational::one()];
                for k in 0..degs[i] as usize {
                    let next = &pw[k] * &values[i];
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut s = Rational::zero();
        for (m, c) in self.num.terms() {
            let mut t = Rational::from_integer(c.to_big());
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t *= &pw[e];
                }
            }
            s += t;
        }
        s / Rational::from_integer(self.den.clone())
    }

    pub fn eval_f64(&self, values: &[f64]) -> f64 {
        let d = num_traits::ToPrimitive::to_f64(&self.den).unwrap_or(f64::NAN);
        self.num.eval_f64(values) / d
    }

    /// Replaces `var` by `num / den`. Returns the numerator of the result
    /// over `den^k`, where `k` is the degree of `self` in `var`.
    pub fn substitute_rational(&self, var: &str, num: &Polynomial, den: &Polynomial) -> Result<(Polynomial, u32)> {
        self.same_vars(num)?;
        self.same_vars(den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let i = self.vars.require(var)?;
        let k = self.num.degree_in(i);
        if k == 0 {
            return Ok((self.clone(), 0));
        }
        let coeffs = self.num.coeffs_in(i);
        let mut npow = vec![IntPoly::one()];
        let mut dpow = vec![IntPoly::one()];
        for j in 0..k as usize {
            npow.push(npow[j].try_mul(&num.num)?);
            dpow.push(dpow[j].try_mul(&den.num)?);
        }
        let mut acc = IntPoly::zero();
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scale = num_traits::pow(num.den.clone(), k as usize - j) * num_traits::pow(den.den.clone(), j);
            let t = c.try_mul(&npow[j])?.try_mul(&dpow[k as usize - j])?;
            acc = acc.add(&if scale.is_one() { t } else { t.scale(&Int::from_big(scale)) });
        }
        let total = num_traits::pow(&num.den * &den.den, k as usize) * &self.den;
        Ok((Polynomial::from_parts(&self.vars, acc, total), k))
    }

    /// Splits into a primitive integer polynomial with positive leading
    /// coefficient and a rational content. Zero maps to `(0, 0)`.
    pub fn normalize(&self) -> (Polynomial, Rational) {
        if self.is_zero() {
            return (self.clone(), Rational::zero());
        }
        let (c, p) = self.num.primitive();
        (Polynomial::from_int(&self.vars, p), Rational::new(c.to_big(), self.den.clone()))
    }

    pub fn is_primitive(&self) -> bool {
        self.den.is_one() && self.num.is_primitive()
    }

    /// Primitive gcd. `gcd(p, 0)` is the primitive part of `p`.
    pub fn gcd(&self, o: &Polynomial) -> Result<Polynomial> {
        self.same_vars(o)?;
        if self.is_zero() && o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Polynomial::from_int(&self.vars, gcd::gcd(&self.num, &o.num)))
    }

    /// Re-expresses over `target`, which must contain every occurring variable.
    pub fn with_varset(&self, target: &VarSet) -> Result<Polynomial> {
        let mask = self.num.var_mask();
        let mut map = vec![0usize; self.vars.len()];
        for (i, slot) in map.iter_mut().enumerate() {
            match target.index(self.vars.name(i)) {
                Some(j) => *slot = j,
                None if mask & (1 << i) == 0 => *slot = MAX_VARS - 1,
                None => return Err(Error::UnknownVariable(self.vars.name(i).to_string())),
            }
        }
        let num = IntPoly::from_terms(
            self.num
                .terms()
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0u32; target.len()];
                    for (i, &j) in map.iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            e[j] = m.exp(i);
                        }
                    }
                    (Mono::from_exponents(&e).expect("bounded"), c.clone())
                })
                .collect(),
        );
        Ok(Polynomial::from_parts(target, num, self.den.clone()))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, o: &Polynomial) -> Polynomial {
                self.$f(o).expect("polynomial operands over the same variables")
            }
        }
        impl std::ops::$tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: &Polynomial) -> Polynomial {
                self.$f(o).expect("polynomial operands over the same variables")
            }
        }
        impl std::ops::$tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                self.$f(&o).expect("polynomial operands over the same variables")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}
