//! Dixon polynomial and Dixon matrix.

use super::matrix::{expansion_det, PolyMatrix};
use crate::error::{Error, Result};
use crate::polyring::{Int, IntPoly, Mono, Polynomial, Rational, VarSet};
use std::collections::{BTreeMap, BTreeSet};

/// Polynomials to be solved simultaneously, and the variables to eliminate.
#[derive(Clone, Debug)]
pub struct PolySystem {
    varset: VarSet,
    polys: Vec<(String, Polynomial)>,
    elim_vars: Vec<String>,
}

impl PolySystem {
    pub fn new(varset: &VarSet, polys: Vec<(String, Polynomial)>, elim_vars: &[&str]) -> Result<PolySystem> {
        for (name, p) in &polys {
            if p.varset() != varset {
                return Err(Error::VarSetMismatch);
            }
            if p.is_zero() {
                return Err(Error::Degenerate(format!("polynomial {name} is zero")));
            }
        }
        for v in elim_vars {
            varset.require(v)?;
        }
        Ok(PolySystem { varset: varset.clone(), polys, elim_vars: elim_vars.iter().map(|s| s.to_string()).collect() })
    }

    pub fn varset(&self) -> &VarSet {
        &self.varset
    }

    pub fn polys(&self) -> &[(String, Polynomial)] {
        &self.polys
    }

    pub fn poly(&self, name: &str) -> Option<&Polynomial> {
        self.polys.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn elim_vars(&self) -> &[String] {
        &self.elim_vars
    }

    /// Variables that are not eliminated, in variable-set order.
    pub fn parameters(&self) -> Vec<&str> {
        self.varset.names().iter().map(|s| s.as_str()).filter(|n| !self.elim_vars.iter().any(|e| e == n)).collect()
    }
}

/// Name for the auxiliary copy of `x` that does not clash with `taken`.
fn aux_name(x: &str, taken: &VarSet) -> String {
    let mut name = format!("{x}b");
    while taken.index(&name).is_some() {
        name.push('b');
    }
    name
}

/// Dixon polynomial of the system, over the system variables followed by one
/// auxiliary variable per eliminated variable. Returns the polynomial and the
/// auxiliary names.
pub fn dixon_polynomial(system: &PolySystem) -> Result<(Polynomial, Vec<String>)> {
    let n = system.elim_vars.len();
    if system.polys.len() != n + 1 {
        return Err(Error::Dimension(format!("{} polynomials for {} eliminated variables", system.polys.len(), n)));
    }
    let vars = &system.varset;
    let mut aux = Vec::with_capacity(n);
    for x in &system.elim_vars {
        let taken = vars.extended(&aux)?;
        aux.push(aux_name(x, &taken));
    }
    let ext = vars.extended(&aux)?;
    let base = vars.len();
    let elim_idx: Vec<usize> = system.elim_vars.iter().map(|x| vars.require(x)).collect::<Result<_>>()?;

    let mut den = Rational::from_integer(1.into());
    let mut rows = Vec::with_capacity(n + 1);
    for (_, p) in &system.polys {
        den *= Rational::from_integer(p.denominator().clone());
        let num = p.numerator();
        let row: Vec<IntPoly> = (0..=n)
            .map(|k| {
                let mut map: Vec<usize> = (0..base).collect();
                for (j, &xi) in elim_idx.iter().enumerate().take(k) {
                    map[xi] = base + j;
                }
                num.remap(&map)
            })
            .collect();
        rows.push(row);
    }
    let mut d = expansion_det(&rows)?;
    for (j, &xi) in elim_idx.iter().enumerate() {
        let diff = IntPoly::var(xi).sub(&IntPoly::var(base + j));
        d = d.div_exact(&diff).ok_or_else(|| Error::Verification("cancellation determinant not divisible".into()))?;
    }
    Ok((Polynomial::from_int(&ext, d).scale(&den.recip()), aux))
}

/// Coefficient matrix of a Dixon polynomial: rows indexed by monomials in
/// `elim_vars`, columns by monomials in `aux_vars`, both sorted
/// lexicographically by exponent vector. Entries live over the remaining
/// variables.
pub fn dixon_matrix(dixon_poly: &Polynomial, elim_vars: &[&str], aux_vars: &[&str]) -> Result<PolyMatrix> {
    let vars = dixon_poly.varset();
    let xi: Vec<usize> = elim_vars.iter().map(|v| vars.require(v)).collect::<Result<_>>()?;
    let ai: Vec<usize> = aux_vars.iter().map(|v| vars.require(v)).collect::<Result<_>>()?;
    let pi: Vec<usize> = (0..vars.len()).filter(|i| !xi.contains(i) && !ai.contains(i)).collect();
    let params = VarSet::new(&pi.iter().map(|&i| vars.name(i)).collect::<Vec<_>>())?;

    let mut cells: BTreeMap<(Vec<u32>, Vec<u32>), Vec<(Mono, Int)>> = BTreeMap::new();
    for (m, c) in dixon_poly.numerator().terms() {
        let r: Vec<u32> = xi.iter().map(|&i| m.exp(i)).collect();
        let col: Vec<u32> = ai.iter().map(|&i| m.exp(i)).collect();
        let pm: Vec<u32> = pi.iter().map(|&i| m.exp(i)).collect();
        cells.entry((r, col)).or_default().push((Mono::from_exponents(&pm)?, c.clone()));
    }
    let rows: Vec<Vec<u32>> = cells.keys().map(|k| k.0.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    let cols: Vec<Vec<u32>> = cells.keys().map(|k| k.1.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    let den = dixon_poly.denominator().clone();
    let mut grid = vec![vec![Polynomial::zero(&params); cols.len()]; rows.len()];
    for ((r, c), terms) in cells {
        let i = rows.binary_search(&r).expect("row key");
        let j = cols.binary_search(&c).expect("column key");
        grid[i][j] = Polynomial::from_parts(&params, IntPoly::from_terms(terms), den.clone());
    }
    Ok(PolyMatrix::from_rows(&params, grid)?.with_labels(rows, cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse;

    #[test]
    fn linear_pair() {
        let vs = VarSet::new(&["x", "a", "b"]).unwrap();
        let p = |s: &str| parse(s, &vs).unwrap();
        let sys = PolySystem::new(&vs, vec![("f".into(), p("x - a")), ("g".into(), p("x - b"))], &["x"]).unwrap();
        let (d, aux) = dixon_polynomial(&sys).unwrap();
        assert_eq!(aux, vec!["xb".to_string()]);
        assert_eq!(d.to_string(), "a - b");
        let m = dixon_matrix(&d, &["x"], &["xb"]).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (1, 1));
        assert_eq!(m.get(0, 0).to_string(), "a - b");
    }

    #[test]
    fn coefficient_extraction() {
        let vs = VarSet::new(&["x", "xb", "a", "b"]).unwrap();
        let d = parse("a*x*xb + b*x", &vs).unwrap();
        let m = dixon_matrix(&d, &["x"], &["xb"]).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (1, 2));
        assert_eq!(m.get(0, 0).to_string(), "b");
        assert_eq!(m.get(0, 1).to_string(), "a");
        assert_eq!(m.varset().names(), &["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn three_linear_forms() {
        // column differences factor out (x - xb)(y - yb) leaving b + 2c - a
        let vs = VarSet::new(&["x", "y", "a", "b", "c"]).unwrap();
        let p = |s: &str| parse(s, &vs).unwrap();
        let sys = PolySystem::new(
            &vs,
            vec![("f".into(), p("x + y - a")), ("g".into(), p("x - y - b")), ("h".into(), p("y - c"))],
            &["x", "y"],
        )
        .unwrap();
        let (d, _) = dixon_polynomial(&sys).unwrap();
        assert_eq!(d.to_string(), "-a + b + 2*c");
    }

    #[test]
    fn dimension_check() {
        let vs = VarSet::new(&["x", "y"]).unwrap();
        let sys = PolySystem::new(&vs, vec![("f".into(), parse("x", &vs).unwrap())], &["x"]).unwrap();
        assert!(matches!(dixon_polynomial(&sys), Err(Error::Dimension(_))));
    }
}
