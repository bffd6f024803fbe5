use std::collections::BTreeSet;

use super::{Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::linalg::Fp;

/// Reduced Gröbner basis in degrevlex order; generators are monic and sorted
/// by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    field: Fp,
    nvars: usize,
    gens: Vec<MultiPoly>,
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let lf = f.leading_monomial().unwrap();
    let lg = g.leading_monomial().unwrap();
    let l = lf.lcm(lg);
    let fld = f.field();
    let zero = MultiPoly::zero(fld, f.nvars());
    let a = zero.add_scaled_shifted(f, fld.inv(f.leading_coefficient()), &lf.quotient_of(&l));
    a.add_scaled_shifted(g, fld.neg(fld.inv(g.leading_coefficient())), &lg.quotient_of(&l))
}

/// Full division remainder of `f` by the polynomials `divisors`.
fn reduce(f: &MultiPoly, divisors: &[MultiPoly]) -> MultiPoly {
    let fld = f.field();
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, u32)> = Vec::new();
    while let Some(lm) = p.leading_monomial().cloned() {
        let lc = p.leading_coefficient();
        match divisors.iter().find(|g| g.leading_monomial().unwrap().divides(&lm)) {
            Some(g) => {
                let t = g.leading_monomial().unwrap().quotient_of(&lm);
                let s = fld.neg(fld.mul(lc, fld.inv(g.leading_coefficient())));
                p = p.add_scaled_shifted(g, s, &t);
            }
            None => {
                rem.push((lm.clone(), lc));
                p = MultiPoly::from_terms(fld, p.nvars(), p.terms()[1..].to_vec());
            }
        }
    }
    MultiPoly::from_terms(fld, f.nvars(), rem)
}

/// Buchberger's algorithm with the product and chain criteria.
pub fn buchberger(gens: &[MultiPoly]) -> Result<GroebnerBasis> {
    let first = gens.first().ok_or_else(|| Error::InvalidAlgebra("empty generator list".into()))?;
    let (field, nvars) = (first.field(), first.nvars());
    if gens.iter().any(|g| g.field() != field || g.nvars() != nvars) {
        return Err(Error::DimensionMismatch("generators over different rings".into()));
    }
    let mut basis: Vec<MultiPoly> = Vec::new();
    for g in gens {
        let r = reduce(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while let Some(&(i, j)) = pairs.iter().next() {
        pairs.remove(&(i, j));
        let (li, lj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && !pairs.contains(&key(i, k))
                && !pairs.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let n = basis.len();
            basis.push(r.monic());
            for k in 0..n {
                pairs.insert((k, n));
            }
        }
    }
    Ok(GroebnerBasis::reduced_from(field, nvars, basis))
}

impl GroebnerBasis {
    fn reduced_from(field: Fp, nvars: usize, basis: Vec<MultiPoly>) -> Self {
        // drop generators whose leading monomial is divisible by another one
        let mut minimal: Vec<MultiPoly> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let lg = g.leading_monomial().unwrap();
            let redundant = basis.iter().enumerate().any(|(k, h)| {
                let lh = h.leading_monomial().unwrap();
                k != i && lh.divides(lg) && (lh != lg || k < i)
            });
            if !redundant {
                minimal.push(g.clone());
            }
        }
        let mut reduced: Vec<MultiPoly> = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<MultiPoly> =
                minimal.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, h)| h.clone()).collect();
            let g = &minimal[i];
            let lead = MultiPoly::from_terms(field, nvars, vec![g.terms()[0].clone()]);
            let tail = MultiPoly::from_terms(field, nvars, g.terms()[1..].to_vec());
            reduced.push(lead.add(&reduce(&tail, &others)).monic());
        }
        reduced.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
        GroebnerBasis { field, nvars, gens: reduced }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gens.iter().any(|g| g.leading_monomial().is_some_and(|m| m.degree() == 0))
    }

    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        reduce(f, &self.gens)
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.gens.iter().any(|g| g.leading_monomial().unwrap().divides(m))
    }

    /// The monomials outside the leading-term ideal, in increasing order.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        for v in 0..self.nvars {
            let has_pure = self.gens.iter().any(|g| g.leading_monomial().unwrap().pure_power_of() == Some(v));
            if !has_pure {
                return Err(Error::NotZeroDimensional(format!("x{v}")));
            }
        }
        let mut found: BTreeSet<Monomial> = BTreeSet::new();
        let mut frontier = vec![Monomial::one(self.nvars)];
        while let Some(m) = frontier.pop() {
            if !self.is_standard(&m) || found.contains(&m) {
                continue;
            }
            for v in 0..self.nvars {
                frontier.push(m.mul(&Monomial::var(self.nvars, v)));
            }
            found.insert(m);
        }
        Ok(found.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_ideal_with_vars;

    fn ideal(p: u32, text: &str, vars: &[&str]) -> Vec<MultiPoly> {
        let f = Fp::new(p).unwrap();
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        parse_ideal_with_vars(f, text, &names).unwrap().generators
    }

    #[test]
    fn single_and_monomial_generators() {
        let g = buchberger(&ideal(2, "x^2", &["x"])).unwrap();
        assert_eq!(g.generators().len(), 1);
        let g = buchberger(&ideal(5, "x^2, x*y, y^2", &["x", "y"])).unwrap();
        assert_eq!(g.generators().len(), 3);
        assert_eq!(g.standard_monomials().unwrap().len(), 3);
    }

    #[test]
    fn hand_computed_basis() {
        let gens = ideal(2, "x^2 - y, y^2", &["x", "y"]);
        let g = buchberger(&gens).unwrap();
        let names = vec!["x".to_string(), "y".to_string()];
        let std: Vec<String> = g.standard_monomials().unwrap().iter().map(|m| m.format(&names)).collect();
        assert_eq!(std, vec!["1", "y", "x", "x*y"]);
        let x3 = MultiPoly::var(g.field(), 2, 0).pow(3);
        assert_eq!(g.normal_form(&x3).format(&names), "x*y");
        let x2 = MultiPoly::var(g.field(), 2, 0).pow(2);
        assert_eq!(g.normal_form(&x2).format(&names), "y");
    }

    #[test]
    fn not_zero_dimensional() {
        let g = buchberger(&ideal(3, "x*y", &["x", "y"])).unwrap();
        assert!(matches!(g.standard_monomials(), Err(Error::NotZeroDimensional(_))));
    }
}
