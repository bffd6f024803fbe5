use std::fmt;

use serde::{Deserialize, Serialize};

use super::IntegerPolynomial;
use crate::error::{Error, Result};

/// Type tag of a non-complete-intersection ring of codepth at most 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CodepthType {
    GO,
    TE,
    B,
    G { r: i64 },
    H { p: i64, q: i64 },
}

impl CodepthType {
    pub fn codepth(&self) -> usize {
        match self {
            CodepthType::GO => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for CodepthType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodepthType::GO => write!(f, "GO"),
            CodepthType::TE => write!(f, "TE"),
            CodepthType::B => write!(f, "B"),
            CodepthType::G { r } => write!(f, "G({r})"),
            CodepthType::H { p, q } => write!(f, "H({p},{q})"),
        }
    }
}

/// One row of the codepth classification with its integer parameters.
/// `m` is ignored for `GO`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodepthClassRow {
    pub kind: CodepthType,
    pub l: i64,
    pub m: i64,
}

impl CodepthClassRow {
    pub fn new(kind: CodepthType, l: i64, m: i64) -> Result<Self> {
        let row = CodepthClassRow { kind, l, m };
        row.check_restrictions()?;
        Ok(row)
    }

    pub fn check_restrictions(&self) -> Result<()> {
        let (l, m) = (self.l, self.m);
        let fail = |s: &str| Err(Error::RestrictionViolated(format!("{}: {s}", self.kind)));
        if let CodepthType::GO = self.kind {
            return if l >= 1 { Ok(()) } else { fail("l >= 1") };
        }
        if l + 1 < 3 {
            return fail("l + 1 >= 3");
        }
        if m <= l + 1 {
            return fail("m > l + 1");
        }
        match self.kind {
            CodepthType::G { r } => {
                if r < 2 {
                    return fail("r >= 2");
                }
                if r > l + 1 {
                    return fail("l + 1 >= r");
                }
            }
            CodepthType::H { p, q } => {
                if p < 0 {
                    return fail("p >= 0");
                }
                if p > l {
                    return fail("l >= p");
                }
                if q < 0 {
                    return fail("q >= 0");
                }
                if q > m - l {
                    return fail("m - l >= q");
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Every row whose parameters lie in `[0, max]` and satisfy the restrictions.
    pub fn enumerate(max: i64) -> Vec<CodepthClassRow> {
        let mut rows = Vec::new();
        for l in 0..=max {
            rows.push(CodepthClassRow { kind: CodepthType::GO, l, m: 0 });
            for m in 0..=max {
                rows.push(CodepthClassRow { kind: CodepthType::TE, l, m });
                rows.push(CodepthClassRow { kind: CodepthType::B, l, m });
                for r in 0..=max {
                    rows.push(CodepthClassRow { kind: CodepthType::G { r }, l, m });
                }
                for p in 0..=max {
                    for q in 0..=max {
                        rows.push(CodepthClassRow { kind: CodepthType::H { p, q }, l, m });
                    }
                }
            }
        }
        rows.retain(|r| r.check_restrictions().is_ok());
        rows
    }
}

/// The polynomial `d(t)` attached to a row.
pub fn table_d(row: &CodepthClassRow) -> Result<IntegerPolynomial> {
    row.check_restrictions()?;
    let (l, m) = (row.l as i128, row.m as i128);
    let c = match row.kind {
        CodepthType::GO => vec![1, -1, -l],
        CodepthType::TE => vec![1, -1, -l, -(m - l - 3), 0, -1],
        CodepthType::B => vec![1, -1, -l, -(m - l - 1), 1],
        CodepthType::G { .. } => vec![1, -1, -l, -(m - l), 1],
        CodepthType::H { p, q } => vec![1, -1, -l, -(m - l - p as i128), q as i128],
    };
    Ok(IntegerPolynomial::new(c))
}
