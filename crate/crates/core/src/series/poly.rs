use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Dense integer polynomial in `t`, lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<i128>", into = "Vec<i128>")]
pub struct IntegerPolynomial {
    coeffs: Vec<i128>,
}

impl From<Vec<i128>> for IntegerPolynomial {
    fn from(coeffs: Vec<i128>) -> Self {
        IntegerPolynomial::new(coeffs)
    }
}

impl From<IntegerPolynomial> for Vec<i128> {
    fn from(p: IntegerPolynomial) -> Self {
        p.coeffs
    }
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntegerPolynomial { coeffs: vec![1] }
    }

    pub fn monomial(c: i128, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        IntegerPolynomial::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn eval(&self, t: i128) -> i128 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        IntegerPolynomial::new(self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as i128).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(IntegerPolynomial::one(), |acc, _| &acc * self)
    }

    /// Quotient `q` with `self = divisor * q`, if it exists over the integers.
    /// The divisor must have constant term ±1.
    pub fn exact_div(&self, divisor: &IntegerPolynomial) -> Option<IntegerPolynomial> {
        let c0 = divisor.coeff(0);
        assert!(c0 == 1 || c0 == -1, "divisor constant term must be a unit");
        let dd = divisor.degree()?;
        let Some(n) = self.degree() else {
            return Some(IntegerPolynomial::zero());
        };
        if n < dd {
            return None;
        }
        let mut rest = self.coeffs.clone();
        let mut q = vec![0i128; n - dd + 1];
        for i in 0..q.len() {
            let c = rest[i] * c0;
            q[i] = c;
            if c != 0 {
                for (j, &dj) in divisor.coeffs.iter().enumerate() {
                    rest[i + j] -= c * dj;
                }
            }
        }
        rest.iter().all(|&c| c == 0).then(|| IntegerPolynomial::new(q))
    }
}

impl Add for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn add(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntegerPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn sub(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntegerPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn neg(self) -> IntegerPolynomial {
        IntegerPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn mul(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntegerPolynomial::zero();
        }
        let mut out = vec![0i128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntegerPolynomial::new(out)
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{a}t^{i}")?,
            }
        }
        Ok(())
    }
}
