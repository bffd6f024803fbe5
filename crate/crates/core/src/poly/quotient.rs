use std::collections::HashMap;
use std::sync::Arc;

use super::{buchberger, parse_ideal, parse_ideal_with_vars, GroebnerBasis, Monomial, MultiPoly};
use crate::algebra::LocalAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Fp;

/// A quotient `k[x_1..x_n]/I` together with the data needed to map
/// polynomials to algebra elements.
#[derive(Clone, Debug)]
pub struct PolynomialQuotient {
    pub algebra: Arc<LocalAlgebra>,
    pub basis: GroebnerBasis,
    pub monomials: Vec<Monomial>,
    pub variables: Vec<String>,
    index: HashMap<Monomial, usize>,
}

impl PolynomialQuotient {
    pub fn new(gens: &[MultiPoly], variables: &[String]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::NotZeroDimensional(variables.first().cloned().unwrap_or_default()));
        }
        if let Some(g) = gens.iter().find(|g| g.constant_term() != 0) {
            return Err(Error::NotLocal(format!("generator {} has a unit term", g.format(variables))));
        }
        let basis = buchberger(gens)?;
        if basis.is_unit_ideal() {
            return Err(Error::NotLocal("the ideal is the whole ring".into()));
        }
        let monomials = basis.standard_monomials().map_err(|e| match e {
            Error::NotZeroDimensional(v) => {
                let i: usize = v.trim_start_matches('x').parse().unwrap_or(0);
                Error::NotZeroDimensional(variables.get(i).cloned().unwrap_or(v))
            }
            other => other,
        })?;
        let field = basis.field();
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let n = monomials.len();
        let mut mult = vec![vec![vec![0u32; n]; n]; n];
        for i in 0..n {
            for j in i..n {
                let prod = MultiPoly::monomial(field, monomials[i].mul(&monomials[j]), 1);
                let v = coordinates(&basis.normal_form(&prod), &index, n);
                mult[i][j] = v.clone();
                mult[j][i] = v;
            }
        }
        let labels = monomials.iter().map(|m| m.format(variables)).collect();
        let unit = index[&Monomial::one(basis.nvars())];
        let maxideal = (0..n).filter(|&i| i != unit).collect();
        let algebra = LocalAlgebra::new(field, labels, mult, unit, maxideal)?;
        Ok(PolynomialQuotient { algebra, basis, monomials, variables: variables.to_vec(), index })
    }

    /// Coordinates of the class of `f`.
    pub fn element(&self, f: &MultiPoly) -> Vec<u32> {
        coordinates(&self.basis.normal_form(f), &self.index, self.monomials.len())
    }

    pub fn variable(&self, name: &str) -> Option<MultiPoly> {
        let i = self.variables.iter().position(|v| v == name)?;
        Some(MultiPoly::var(self.basis.field(), self.variables.len(), i))
    }
}

fn coordinates(f: &MultiPoly, index: &HashMap<Monomial, usize>, n: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    for (m, c) in f.terms() {
        v[index[m]] = *c;
    }
    v
}

/// The local algebra `k[x_1..x_n]/(gens)` on its standard monomial basis.
pub fn quotient_algebra(gens: &[MultiPoly], variables: &[String]) -> Result<Arc<LocalAlgebra>> {
    Ok(PolynomialQuotient::new(gens, variables)?.algebra)
}

/// Parses an ideal and builds its quotient algebra.
pub fn quotient_algebra_from_text(field: Fp, text: &str, vars: Option<&[String]>) -> Result<Arc<LocalAlgebra>> {
    Ok(presentation_from_text(field, text, vars)?.algebra)
}

pub fn presentation_from_text(field: Fp, text: &str, vars: Option<&[String]>) -> Result<PolynomialQuotient> {
    let parsed = match vars {
        Some(v) => parse_ideal_with_vars(field, text, v)?,
        None => parse_ideal(field, text)?,
    };
    PolynomialQuotient::new(&parsed.generators, &parsed.variables)
}
