//! Multivariate polynomials over `F_p` in degree-reverse-lexicographic order.

mod groebner;
mod parse;
mod quotient;

use std::cmp::Ordering;
use std::fmt;

use crate::linalg::Fp;

pub use groebner::{buchberger, GroebnerBasis};
pub use parse::{parse_ideal, parse_ideal_with_vars, ParsedIdeal};
pub use quotient::{presentation_from_text, quotient_algebra, quotient_algebra_from_text, PolynomialQuotient};

/// Exponent vector, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The variable index if this is a pure power `x_i^k` with `k ≥ 1`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    /// Degree-reverse-lexicographic: higher degree wins; on ties the monomial
    /// with the smaller exponent in the last differing variable is larger.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with terms sorted by decreasing monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Fp,
    nvars: usize,
    terms: Vec<(Monomial, u32)>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.format(&names))
    }
}

impl MultiPoly {
    pub fn zero(field: Fp, nvars: usize) -> Self {
        MultiPoly { field, nvars, terms: Vec::new() }
    }

    pub fn constant(field: Fp, nvars: usize, c: u32) -> Self {
        MultiPoly::monomial(field, Monomial::one(nvars), c)
    }

    pub fn var(field: Fp, nvars: usize, i: usize) -> Self {
        MultiPoly::monomial(field, Monomial::var(nvars, i), 1)
    }

    pub fn monomial(field: Fp, m: Monomial, c: u32) -> Self {
        let nvars = m.nvars();
        let c = c % field.characteristic();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        MultiPoly { field, nvars, terms }
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms(field: Fp, nvars: usize, mut terms: Vec<(Monomial, u32)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(last.1, c),
                _ => out.push((m, c % field.characteristic())),
            }
        }
        out.retain(|t| t.1 != 0);
        MultiPoly { field, nvars, terms: out }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn constant_term(&self) -> u32 {
        self.terms.last().filter(|t| t.0.degree() == 0).map_or(0, |t| t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn monic(&self) -> MultiPoly {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, c)) => self.scale(self.field.inv(c)),
        }
    }

    pub fn scale(&self, s: u32) -> MultiPoly {
        let f = self.field;
        let s = s % f.characteristic();
        if s == 0 {
            return MultiPoly::zero(f, self.nvars);
        }
        MultiPoly {
            field: f,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.mul(*c, s))).collect(),
        }
    }

    /// `self + s · t · other` for a monomial `t`.
    pub fn add_scaled_shifted(&self, other: &MultiPoly, s: u32, t: &Monomial) -> MultiPoly {
        let f = self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(m, c)| (m.mul(t), f.mul(*c, s))).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => x.0.cmp(&y.0),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let y = b.next().unwrap();
                    if y.1 != 0 {
                        out.push(y);
                    }
                }
                Ordering::Equal => {
                    let x = a.next().unwrap();
                    let y = b.next().unwrap();
                    let c = f.add(x.1, y.1);
                    if c != 0 {
                        out.push((x.0.clone(), c));
                    }
                }
            }
        }
        MultiPoly { field: f, nvars: self.nvars, terms: out }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.add_scaled_shifted(other, 1, &Monomial::one(self.nvars))
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add_scaled_shifted(other, self.field.neg(1), &Monomial::one(self.nvars))
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(self.field.neg(1))
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut acc = MultiPoly::zero(self.field, self.nvars);
        for (m, c) in &other.terms {
            acc = acc.add_scaled_shifted(self, *c, m);
        }
        acc
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.field, self.nvars, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let signed = self.field.to_signed(*c);
            let (neg, mag) = (signed < 0, signed.unsigned_abs());
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.format(names);
            match (mag, mono.as_str()) {
                (_, "1") => s.push_str(&mag.to_string()),
                (1, _) => s.push_str(&mono),
                _ => s.push_str(&format!("{mag}*{mono}")),
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_order() {
        let m = |e: &[u32]| Monomial(e.to_vec());
        assert!(m(&[2, 0]) > m(&[0, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        assert!(m(&[2, 0]) > m(&[1, 1]));
        // classic tie-break: x*z^2 < y^3 in three variables? both degree 3, last var exponents 2 vs 0
        assert!(m(&[0, 3, 0]) > m(&[1, 0, 2]));
    }

    #[test]
    fn arithmetic() {
        let f = Fp::new(3).unwrap();
        let x = MultiPoly::var(f, 2, 0);
        let y = MultiPoly::var(f, 2, 1);
        let s = x.add(&y);
        let sq = s.mul(&s);
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(sq.format(&names), "x^2 - x*y + y^2");
        assert!(s.sub(&s).is_zero());
    }
}
