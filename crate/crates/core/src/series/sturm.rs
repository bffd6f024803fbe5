use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntegerPolynomial;

type QPoly = Vec<BigRational>;

fn to_q(p: &IntegerPolynomial) -> QPoly {
    p.coeffs().iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect()
}

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn eval(p: &QPoly, t: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
}

fn derivative(p: &QPoly) -> QPoly {
    let mut d: QPoly =
        p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect();
    trim(&mut d);
    d
}

/// Remainder and quotient of `a` by nonzero `b`.
fn div_rem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db)];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b);
        a = std::mem::replace(&mut b, r);
    }
    if let Some(lead) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &lead;
        }
    }
    a
}

fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let mut chain = vec![p.clone(), derivative(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let (_, r) = div_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

fn variations(chain: &[QPoly], t: &BigRational) -> usize {
    let signs: Vec<bool> = chain.iter().map(|p| eval(p, t)).filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct real roots of a squarefree chain in `(a, b]`.
fn count(chain: &[QPoly], a: &BigRational, b: &BigRational) -> usize {
    variations(chain, a) - variations(chain, b)
}

/// Outcome of the exact root analysis on the open unit interval.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SimpleRootVerdict {
    pub pass: bool,
    /// Disjoint isolating intervals `(lo, hi]`, one per distinct root in `(0, 1)`.
    pub roots: Vec<(String, String)>,
    /// Distinct roots in `(0, 1)` of multiplicity at least two.
    pub multiple_roots: usize,
    /// Degree of `gcd(d, d')`.
    pub gcd_degree: usize,
}

/// Exact check that every root of `d` in `(0, 1)` is simple.
pub fn simple_root_check(d: &IntegerPolynomial) -> SimpleRootVerdict {
    let p = to_q(d);
    if p.is_empty() {
        return SimpleRootVerdict { pass: false, roots: Vec::new(), multiple_roots: 0, gcd_degree: 0 };
    }
    let g = gcd(&p, &derivative(&p));
    let squarefree = div_rem(&p, &g).0;
    let zero = BigRational::zero();
    let one = BigRational::one();
    let roots = isolate(&squarefree, &zero, &one);
    let multiple_roots = if g.len() > 1 {
        let g_sf = div_rem(&g, &gcd(&g, &derivative(&g))).0;
        let chain = sturm_chain(&g_sf);
        let at_one = usize::from(eval(&g_sf, &one).is_zero());
        count(&chain, &zero, &one) - at_one
    } else {
        0
    };
    SimpleRootVerdict {
        pass: multiple_roots == 0,
        roots: roots.into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        multiple_roots,
        gcd_degree: g.len() - 1,
    }
}

/// Isolating intervals for the roots of a squarefree `p` in the open interval `(lo, hi)`.
fn isolate(p: &QPoly, lo: &BigRational, hi: &BigRational) -> Vec<(BigRational, BigRational)> {
    if p.len() <= 1 {
        return Vec::new();
    }
    let chain = sturm_chain(p);
    let width = BigRational::new(BigInt::one(), BigInt::from(1u64 << 16));
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let mut n = count(&chain, &a, &b);
        if &b == hi && eval(p, &b).is_zero() {
            n -= 1;
        }
        if n == 0 {
            continue;
        }
        if n == 1 && &b - &a <= width {
            out.push((a, b));
            continue;
        }
        let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
        stack.push((mid.clone(), b));
        stack.push((a, mid));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_root_is_simple() {
        let v = simple_root_check(&IntegerPolynomial::new(vec![1, -1, -1]));
        assert!(v.pass);
        assert_eq!(v.roots.len(), 1);
        assert_eq!(v.gcd_degree, 0);
        let (lo, hi) = &v.roots[0];
        let lo: BigRational = lo.parse().unwrap();
        let hi: BigRational = hi.parse().unwrap();
        let r = BigRational::new(BigInt::from(618034), BigInt::from(1000000));
        assert!(lo < r && r <= hi + BigRational::new(BigInt::one(), BigInt::from(10000)));
    }

    #[test]
    fn double_root_fails() {
        let d = IntegerPolynomial::new(vec![1, -2]).pow(2);
        let v = simple_root_check(&d);
        assert!(!v.pass);
        assert_eq!(v.multiple_roots, 1);
        assert_eq!(v.roots.len(), 1);
    }

    #[test]
    fn roots_outside_interval_are_ignored() {
        // (1 - t)^2 (1 + t)^2: multiple roots at 1 and -1 only.
        let d = IntegerPolynomial::new(vec![1, 0, -1]).pow(2);
        let v = simple_root_check(&d);
        assert!(v.pass);
        assert!(v.roots.is_empty());
        // (1 - 3t)(1 - 2t): two simple roots inside.
        let d = IntegerPolynomial::new(vec![1, -5, 6]);
        assert_eq!(simple_root_check(&d).roots.len(), 2);
    }
}
