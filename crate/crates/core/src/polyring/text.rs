//! Polynomial text format.
//!
//! ```text
//! expression = term (('+'|'-') term)*
//! term       = [coef '*'] factor ('*' factor)*
//! factor     = var ['^' uint] | coef
//! coef       = ['-'] uint ['/' uint]
//! ```
//! Whitespace is ignored. The printer writes terms in descending graded-lex
//! order with explicit `*` and `^`.

use super::mono::Mono;
use super::polynomial::{Polynomial, Rational};
use super::varset::VarSet;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.pos, message: msg.into() })
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(s.parse().expect("digits"))
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }
}

/// Parses `text` over `vars`.
pub fn parse(text: &str, vars: &VarSet) -> Result<Polynomial> {
    let mut lx = Lexer { src: text.as_bytes(), pos: 0 };
    let n = vars.len();
    let mut terms: Vec<(Mono, Rational)> = Vec::new();
    let mut first = true;
    loop {
        let mut sign = BigInt::one();
        match lx.peek() {
            None if first => return lx.err("empty expression"),
            None => break,
            Some(b'+') if !first => lx.pos += 1,
            Some(b'-') => {
                lx.pos += 1;
                sign = -sign;
            }
            Some(_) if first => {}
            Some(c) => return lx.err(format!("expected '+' or '-', found '{}'", c as char)),
        }
        first = false;
        let mut coef = Rational::from_integer(sign);
        let mut exps = vec![0u32; n];
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = lx.uint()?;
                    let mut val = Rational::from_integer(num);
                    if lx.peek() == Some(b'/') {
                        lx.pos += 1;
                        let at = lx.pos;
                        let den = lx.uint()?;
                        if den.is_zero() {
                            return Err(Error::Syntax { offset: at, message: "zero denominator".into() });
                        }
                        val /= Rational::from_integer(den);
                    }
                    coef *= val;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let at = lx.pos;
                    let name = lx.ident();
                    let i = vars.index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                    let mut e: u32 = 1;
                    if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        let v = lx.uint()?;
                        e = u32::try_from(v).map_err(|_| Error::Syntax { offset: at, message: "exponent too large".into() })?;
                    }
                    exps[i] = exps[i].checked_add(e).ok_or_else(|| Error::Syntax { offset: at, message: "exponent overflow".into() })?;
                }
                Some(b'-') => {
                    // a signed coefficient inside a product, e.g. `x*-2`
                    lx.pos += 1;
                    coef = -coef;
                    continue;
                }
                Some(c) => return lx.err(format!("unexpected '{}'", c as char)),
                None => return lx.err("unexpected end of input"),
            }
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        let m = Mono::from_exponents(&exps)?;
        terms.push((m, coef));
    }
    Ok(Polynomial::from_terms(vars, terms))
}

fn write_coef(f: &mut fmt::Formatter<'_>, c: &Rational, has_mono: bool) -> fmt::Result {
    if has_mono && c.is_one() {
        return Ok(());
    }
    if c.denom().is_one() {
        write!(f, "{}", c.numer())?;
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())?;
    }
    if has_mono {
        write!(f, "*")?;
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let vars = self.varset();
        for (k, (exps, c)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            let has_mono = exps.iter().any(|&e| e > 0);
            write_coef(f, &a, has_mono)?;
            let mut sep = false;
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if sep {
                    write!(f, "*")?;
                }
                sep = true;
                write!(f, "{}", vars.name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs() -> VarSet {
        VarSet::new(&["c1", "s1", "t", "qq"]).unwrap()
    }

    #[test]
    fn pythagorean_identity() {
        let p = parse("c1^2 + s1^2 - 1", &vs()).unwrap();
        assert_eq!(p.term_count(), 3);
        assert_eq!(p.total_degree(), 2);
        assert_eq!(p.to_string(), "c1^2 + s1^2 - 1");
    }

    #[test]
    fn zero_and_cancellation() {
        assert!(parse("0", &vs()).unwrap().is_zero());
        assert!(parse("2*t - 2*t", &vs()).unwrap().is_zero());
    }

    #[test]
    fn listing_style_leading_minus() {
        let p = parse("- 2*s1 - 2*qq*s1 + c1*qq*s1", &vs()).unwrap();
        assert_eq!(p.to_string(), "c1*s1*qq - 2*s1*qq - 2*s1");
        assert_eq!(parse(&p.to_string(), &vs()).unwrap(), p);
    }

    #[test]
    fn rational_coefficients() {
        let p = parse("-3/6*t^2 + 2/3", &vs()).unwrap();
        assert_eq!(p.to_string(), "-1/2*t^2 + 2/3");
    }

    #[test]
    fn errors_carry_offsets() {
        match parse("t + * 2", &vs()) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse("t + z", &vs()), Err(Error::UnknownVariable("z".into())));
        assert!(parse("", &vs()).is_err());
        assert!(parse("t^", &vs()).is_err());
    }
}
