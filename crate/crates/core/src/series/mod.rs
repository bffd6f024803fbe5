//! Integer polynomials, rational power series, and the checks on the
//! denominators `d(t)` of codepth at most 3.

mod poly;
mod sturm;
mod table;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use poly::IntegerPolynomial;
pub use sturm::{simple_root_check, SimpleRootVerdict};
pub use table::{table_d, CodepthClassRow, CodepthType};

/// A quotient of integer polynomials whose denominator is a unit in `Z[[t]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeries {
    pub numerator: IntegerPolynomial,
    pub denominator: IntegerPolynomial,
}

impl RationalSeries {
    pub fn new(numerator: IntegerPolynomial, denominator: IntegerPolynomial) -> Result<Self> {
        let c = denominator.coeff(0);
        if c != 1 && c != -1 {
            return Err(Error::NotInvertible);
        }
        Ok(RationalSeries { numerator, denominator })
    }
}

fn overflow() -> Error {
    Error::Internal("series coefficient overflow".into())
}

/// Coefficients of `t^0, ..., t^bound` of the expansion of `s`.
pub fn series_coefficients(s: &RationalSeries, bound: usize) -> Result<Vec<i128>> {
    let c0 = s.denominator.coeff(0);
    if c0 != 1 && c0 != -1 {
        return Err(Error::NotInvertible);
    }
    let mut out: Vec<i128> = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let mut acc = s.numerator.coeff(n);
        for j in 1..=n.min(s.denominator.degree().unwrap_or(0)) {
            let term = s.denominator.coeff(j).checked_mul(out[n - j]).ok_or_else(overflow)?;
            acc = acc.checked_sub(term).ok_or_else(overflow)?;
        }
        out.push(acc * c0);
    }
    Ok(out)
}

/// `(1+t)^e / (1 - sum_j h_j t^{j+1})`, where `koszul_ranks[j-1] = h_j`.
pub fn serre_denominator(koszul_ranks: &[usize], e: usize) -> RationalSeries {
    let numerator = IntegerPolynomial::new(vec![1, 1]).pow(e as u32);
    let mut den = vec![1i128, 0];
    den.extend(koszul_ranks.iter().map(|&h| -(h as i128)));
    RationalSeries { numerator, denominator: IntegerPolynomial::new(den) }
}

/// Result of the search for a square factor `p(t)^2 | d(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareFactorVerdict {
    pub pass: bool,
    /// A factor `p` with constant term 1 and a negative coefficient such that `p^2 | d`.
    pub certificate: Option<IntegerPolynomial>,
    pub coefficient_bound: i128,
}

/// Searches every `p` of degree 1 or 2 with constant term 1, at least one
/// negative coefficient and coefficients bounded by `1 + sum |d_i|`.
pub fn square_factor_exclusion(d: &IntegerPolynomial) -> Result<SquareFactorVerdict> {
    let deg = d.degree().unwrap_or(0);
    if deg > 5 {
        return Err(Error::DegreeTooLarge(deg));
    }
    let bound = 1 + d.coeffs().iter().map(|c| c.abs()).sum::<i128>();
    let divides = |p: &IntegerPolynomial| d.exact_div(&p.pow(2)).is_some();
    for a in -bound..0 {
        let p = IntegerPolynomial::new(vec![1, a]);
        if divides(&p) {
            return Ok(SquareFactorVerdict { pass: false, certificate: Some(p), coefficient_bound: bound });
        }
    }
    for b in -bound..=bound {
        if b == 0 {
            continue;
        }
        for a in -bound..=bound {
            if a >= 0 && b > 0 {
                continue;
            }
            let p = IntegerPolynomial::new(vec![1, a, b]);
            if divides(&p) {
                return Ok(SquareFactorVerdict { pass: false, certificate: Some(p), coefficient_bound: bound });
            }
        }
    }
    Ok(SquareFactorVerdict { pass: true, certificate: None, coefficient_bound: bound })
}

/// Expansion of `(1+t)(1-t)(1-t-(l-1)t^2)` matched against the `H(p,q)` row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleFactorization {
    pub l: i64,
    pub expansion: IntegerPolynomial,
    pub value_at_one: i128,
    /// The expansion has the form `1 - t - a t^2 - b t^3 + c t^4`.
    pub shape_matches: bool,
    /// Matched `(l, m - l - p, q)` read off the coefficients.
    pub shape_parameters: Option<(i64, i64, i64)>,
    /// Rows `H(p,q)` satisfying the restrictions whose `d(t)` is the expansion.
    pub admissible: Vec<CodepthClassRow>,
}

pub fn pole_factorization_check(l: i64) -> PoleFactorization {
    let l128 = l as i128;
    let expansion = &(&IntegerPolynomial::new(vec![1, 1]) * &IntegerPolynomial::new(vec![1, -1]))
        * &IntegerPolynomial::new(vec![1, -1, -(l128 - 1)]);
    let value_at_one = expansion.eval(1);
    let shape_matches =
        expansion.coeff(0) == 1 && expansion.coeff(1) == -1 && expansion.degree().is_some_and(|d| d <= 4);
    let mut shape_parameters = None;
    let mut admissible = Vec::new();
    if shape_matches {
        let tl = -expansion.coeff(2) as i64;
        let mlp = -expansion.coeff(3) as i64;
        let q = expansion.coeff(4) as i64;
        shape_parameters = Some((tl, mlp, q));
        for p in 0..=tl.max(0) {
            let row = CodepthClassRow { kind: CodepthType::H { p, q }, l: tl, m: mlp + tl + p };
            if row.check_restrictions().is_ok() && table_d(&row).ok().as_ref() == Some(&expansion) {
                admissible.push(row);
            }
        }
    }
    PoleFactorization { l, expansion, value_at_one, shape_matches, shape_parameters, admissible }
}

/// One line of the `series` table: row, `d(t)` and the three verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableVerdict {
    pub row: CodepthClassRow,
    pub d: IntegerPolynomial,
    pub square_factor: SquareFactorVerdict,
    pub simple_roots: SimpleRootVerdict,
}

pub fn table_verdicts(max: i64) -> Result<Vec<TableVerdict>> {
    CodepthClassRow::enumerate(max)
        .into_iter()
        .map(|row| {
            let d = table_d(&row)?;
            Ok(TableVerdict {
                square_factor: square_factor_exclusion(&d)?,
                simple_roots: simple_root_check(&d),
                row,
                d,
            })
        })
        .collect()
}

/// CSV with header `type,l,m,p,q,r,d,square_factor,simple_root`; coefficients of `d` are `;`-separated.
pub fn verdicts_csv(rows: &[TableVerdict]) -> String {
    let mut s = String::from("type,l,m,p,q,r,d,square_factor,simple_root\n");
    for v in rows {
        let (p, q, r) = match v.row.kind {
            CodepthType::H { p, q } => (p.to_string(), q.to_string(), String::new()),
            CodepthType::G { r } => (String::new(), String::new(), r.to_string()),
            _ => Default::default(),
        };
        let name = match v.row.kind {
            CodepthType::G { .. } => "G".to_string(),
            CodepthType::H { .. } => "H".to_string(),
            k => k.to_string(),
        };
        let m = if v.row.kind == CodepthType::GO { String::new() } else { v.row.m.to_string() };
        let coeffs: Vec<String> = v.d.coeffs().iter().map(|c| c.to_string()).collect();
        let verdict = |b: bool| if b { "PASS" } else { "FAIL" };
        s.push_str(&format!(
            "{name},{},{m},{p},{q},{r},{},{},{}\n",
            v.row.l,
            coeffs.join(";"),
            verdict(v.square_factor.pass),
            verdict(v.simple_roots.pass)
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i128]) -> IntegerPolynomial {
        IntegerPolynomial::new(c.to_vec())
    }

    #[test]
    fn coefficient_extraction() {
        let geo = RationalSeries::new(p(&[1]), p(&[1, -1])).unwrap();
        assert_eq!(series_coefficients(&geo, 5).unwrap(), vec![1; 6]);
        let s = RationalSeries::new(p(&[1, 2, 1]), p(&[1, 0, -3, -2])).unwrap();
        assert_eq!(series_coefficients(&s, 6).unwrap(), vec![1, 2, 4, 8, 16, 32, 64]);
        let one = RationalSeries::new(p(&[1, 1]), p(&[1, 1])).unwrap();
        assert_eq!(series_coefficients(&one, 4).unwrap(), vec![1, 0, 0, 0, 0]);
        assert!(matches!(RationalSeries::new(p(&[1]), p(&[2, 1])), Err(Error::NotInvertible)));
        let neg = RationalSeries::new(p(&[1]), p(&[-1, 1])).unwrap();
        assert_eq!(series_coefficients(&neg, 3).unwrap(), vec![-1; 4]);
    }

    #[test]
    fn division_recombines() {
        let s = RationalSeries::new(p(&[2, -1, 3]), p(&[1, -1, -2, 1, 0, -1])).unwrap();
        let c = series_coefficients(&s, 12).unwrap();
        let prod = &IntegerPolynomial::new(c) * &s.denominator;
        for i in 0..=12 {
            assert_eq!(prod.coeff(i), s.numerator.coeff(i));
        }
    }

    #[test]
    fn serre_bounds() {
        let s = serre_denominator(&[1], 1);
        assert_eq!(s.denominator.coeffs(), &[1, 0, -1]);
        assert_eq!(series_coefficients(&s, 5).unwrap(), vec![1; 6]);
        let s = serre_denominator(&[3, 2], 2);
        assert_eq!(s.numerator.coeffs(), &[1, 2, 1]);
        assert_eq!(s.denominator.coeffs(), &[1, 0, -3, -2]);
        let s = serre_denominator(&[0, 0, 0], 3);
        assert_eq!(series_coefficients(&s, 5).unwrap(), vec![1, 3, 3, 1, 0, 0]);
    }

    #[test]
    fn square_factors() {
        let d = p(&[1, -1, -1]);
        assert!(square_factor_exclusion(&d).unwrap().pass);
        let v = square_factor_exclusion(&(&d * &d)).unwrap();
        assert!(!v.pass);
        assert_eq!(v.certificate, Some(d));
        let v = square_factor_exclusion(&(&p(&[1, -3]).pow(2) * &p(&[1, 1]))).unwrap();
        assert_eq!(v.certificate, Some(p(&[1, -3])));
        // Squares of factors with nonnegative coefficients are outside the search.
        assert!(square_factor_exclusion(&p(&[1, 1]).pow(2)).unwrap().pass);
        assert!(matches!(square_factor_exclusion(&p(&[1, 0, 0, 0, 0, 0, 1])), Err(Error::DegreeTooLarge(6))));
    }

    #[test]
    fn pole_expansions() {
        let v = pole_factorization_check(2);
        assert_eq!(v.expansion.coeffs(), &[1, -1, -2, 1, 1]);
        assert_eq!(v.value_at_one, 0);
        assert!(v.shape_matches);
        assert!(v.admissible.is_empty());
        let v = pole_factorization_check(3);
        assert_eq!(v.expansion.coeffs(), &[1, -1, -3, 1, 2]);
        assert_eq!(v.admissible.len(), 1);
        assert_eq!(v.admissible[0].kind, CodepthType::H { p: 3, q: 2 });
        assert_eq!(v.admissible[0].m, 5);
        for l in 2..=20 {
            let v = pole_factorization_check(l);
            assert_eq!(v.value_at_one, 0);
            assert!(v.shape_matches);
        }
    }

    #[test]
    fn table_rows_pass_both_checks() {
        let rows = table_verdicts(10).unwrap();
        assert!(!rows.is_empty());
        for v in &rows {
            assert!(v.square_factor.pass, "{} l={} m={}: {}", v.row.kind, v.row.l, v.row.m, v.d);
            assert!(v.simple_roots.pass, "{} l={} m={}: {}", v.row.kind, v.row.l, v.row.m, v.d);
        }
        let csv = verdicts_csv(&rows[..2]);
        assert!(csv.starts_with("type,l,m,p,q,r,d,square_factor,simple_root\nGO,1,,,,,1;-1;-1,PASS,PASS\n"));
    }
}
