//! Verdicts on algebras: Gorenstein, Golod, hypersurface and the two
//! Tachikawa-type vanishing checks.

mod loewy;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::LocalAlgebra;
use crate::complex::koszul_homology_ranks;
use crate::derived::{ext_dims, poincare_truncation, FreeResolution};
use crate::error::{Error, Result};
use crate::modules::{is_free_rank_one, AModule};
use crate::series::{series_coefficients, serre_denominator, IntegerPolynomial, RationalSeries};

pub use loewy::{colon_length_identity, loewy3_diagnostic, ChainLink, Loewy3Branch, Loewy3Report, StepCheck};

/// Exact verdicts and verdicts verified only up to a bound carry distinct tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Exact { value: bool },
    Bounded { value: bool, bound: usize },
}

impl Outcome {
    pub fn value(&self) -> bool {
        match *self {
            Outcome::Exact { value } | Outcome::Bounded { value, .. } => value,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Outcome::Exact { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TcStatus {
    Consistent,
    CounterexampleCandidate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    Socle {
        socle_dim: usize,
        dual_free_rank_one: bool,
    },
    Series {
        observed: Vec<usize>,
        target: Vec<i128>,
        /// First degree where the observed coefficient differs from the target.
        first_difference: Option<usize>,
        /// Observed never exceeds the target.
        dominated: bool,
    },
    Hypersurface {
        /// Path that decided the verdict.
        path: String,
        betti2: usize,
        /// `C(edim, 2)`; the difference `betti2 - koszul_part` counts minimal relations.
        koszul_part: usize,
        series_match: bool,
        observed: Vec<usize>,
        target: Vec<i128>,
    },
    Ext {
        status: TcStatus,
        /// `dim Ext^i` for `i = 1..=bound`.
        values: Vec<usize>,
        /// `dim Ext^0`, the dimension of the Hom module.
        hom_dim: usize,
        first_nonzero: Option<usize>,
        /// Gorenstein for the first check, projective for the second.
        conclusion: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub property: String,
    pub outcome: Outcome,
    pub certificate: Certificate,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.outcome.value()
    }

    pub fn tc_status(&self) -> Option<TcStatus> {
        match self.certificate {
            Certificate::Ext { status, .. } => Some(status),
            _ => None,
        }
    }
}

fn require_bound(bound: usize, min: usize) -> Result<()> {
    if bound < min {
        return Err(Error::InvalidBound(format!("bound {bound} is below the minimum {min}")));
    }
    Ok(())
}

/// Exact: `dim (0:m) = 1`, cross-checked against `D ≅ A`.
pub fn gorenstein(a: &Arc<LocalAlgebra>) -> Result<Verdict> {
    let socle_dim = a.socle().dim();
    let dual_free_rank_one = is_free_rank_one(&AModule::dualizing(a)).is_some();
    if (socle_dim == 1) != dual_free_rank_one {
        return Err(Error::Internal(format!(
            "socle dimension {socle_dim} disagrees with freeness of D ({dual_free_rank_one})"
        )));
    }
    Ok(Verdict {
        property: "gorenstein".into(),
        outcome: Outcome::Exact { value: socle_dim == 1 },
        certificate: Certificate::Socle { socle_dim, dual_free_rank_one },
    })
}

/// Coefficients of `(1+t)^e / (1 - sum H_j t^{j+1})` through `bound`.
pub fn serre_bound(a: &Arc<LocalAlgebra>, bound: usize) -> Result<Vec<i128>> {
    let ranks = koszul_homology_ranks(a);
    series_coefficients(&serre_denominator(&ranks[1..], a.edim()), bound)
}

fn compare(observed: &[usize], target: &[i128]) -> (Option<usize>, bool) {
    let first = observed.iter().zip(target).position(|(&o, &t)| o as i128 != t);
    let dominated = observed.iter().zip(target).all(|(&o, &t)| (o as i128) <= t);
    (first, dominated)
}

/// Bounded: the Betti numbers of `k` agree with Serre's bound through `bound`.
pub fn golod(a: &Arc<LocalAlgebra>, bound: usize) -> Result<Verdict> {
    require_bound(bound, 2)?;
    let betti = poincare_truncation(&AModule::residue_field(a), bound)?;
    golod_from_betti(a, &betti)
}

/// [`golod`] with precomputed Betti numbers `b_0..b_B` of `k`.
pub fn golod_from_betti(a: &Arc<LocalAlgebra>, betti: &[usize]) -> Result<Verdict> {
    let bound = betti.len().saturating_sub(1);
    let target = serre_bound(a, bound)?;
    let (first_difference, dominated) = compare(betti, &target);
    Ok(Verdict {
        property: "golod".into(),
        outcome: Outcome::Bounded { value: first_difference.is_none(), bound },
        certificate: Certificate::Series { observed: betti.to_vec(), target, first_difference, dominated },
    })
}

/// Exact via the second Betti number of `k`; the series comparison with
/// `(1+t)^e/(1-t^2)` through `bound` is attached and must agree when `bound ≥ 2`.
pub fn hypersurface(a: &Arc<LocalAlgebra>, bound: usize) -> Result<Verdict> {
    let betti = poincare_truncation(&AModule::residue_field(a), bound.max(2))?;
    hypersurface_from_betti(a, &betti)
}

/// [`hypersurface`] with precomputed Betti numbers `b_0..b_B` of `k`, `B ≥ 2`.
pub fn hypersurface_from_betti(a: &Arc<LocalAlgebra>, betti: &[usize]) -> Result<Verdict> {
    if betti.len() < 3 {
        return Err(Error::InvalidBound("hypersurface test needs Betti numbers through degree 2".into()));
    }
    let bound = betti.len() - 1;
    let e = a.edim();
    // A field counts as a hypersurface; its Poincaré series is 1.
    let den = if e == 0 { vec![1] } else { vec![1, 0, -1] };
    let s = RationalSeries::new(IntegerPolynomial::new(vec![1, 1]).pow(e as u32), IntegerPolynomial::new(den))?;
    let target = series_coefficients(&s, bound)?;
    let series_match = compare(betti, &target).0.is_none();
    let koszul_part = e * e.saturating_sub(1) / 2;
    let value = betti[2] <= koszul_part + 1;
    if value != series_match {
        return Err(Error::Internal(format!(
            "hypersurface paths disagree: b2 = {}, series match {series_match}",
            betti[2]
        )));
    }
    Ok(Verdict {
        property: "hypersurface".into(),
        outcome: Outcome::Exact { value },
        certificate: Certificate::Hypersurface {
            path: "betti2".into(),
            betti2: betti[2],
            koszul_part,
            series_match,
            observed: betti.to_vec(),
            target,
        },
    })
}

/// `dim Ext^i(D, A)` for `i = 0..=bound`.
pub fn dual_ext_window(a: &Arc<LocalAlgebra>, bound: usize) -> Result<Vec<usize>> {
    let res = FreeResolution::of_module(&AModule::dualizing(a), bound + 1)?;
    ext_dims(&res, &AModule::regular(a), 0, bound as i32)
}

fn tc_verdict(property: &str, window: Vec<usize>, conclusion: bool) -> Verdict {
    let bound = window.len() - 1;
    let values = window[1..].to_vec();
    let first_nonzero = values.iter().position(|&v| v != 0).map(|i| i + 1);
    let status =
        if first_nonzero.is_none() && !conclusion { TcStatus::CounterexampleCandidate } else { TcStatus::Consistent };
    Verdict {
        property: property.into(),
        outcome: Outcome::Bounded { value: status == TcStatus::Consistent, bound },
        certificate: Certificate::Ext { status, values, hom_dim: window[0], first_nonzero, conclusion },
    }
}

/// Bounded: flags `A` when `Ext^{1..B}(D, A) = 0` while `A` is not Gorenstein.
pub fn tc1_check(a: &Arc<LocalAlgebra>, bound: usize) -> Result<Verdict> {
    require_bound(bound, 1)?;
    let window = dual_ext_window(a, bound)?;
    tc1_from_window(a, window)
}

/// [`tc1_check`] with a precomputed window `dim Ext^i(D, A)`, `i = 0..=B`.
pub fn tc1_from_window(a: &Arc<LocalAlgebra>, window: Vec<usize>) -> Result<Verdict> {
    if window.len() < 2 {
        return Err(Error::InvalidBound("window must reach degree 1".into()));
    }
    Ok(tc_verdict("tc1", window, gorenstein(a)?.holds()))
}

/// Bounded: over a Gorenstein `A`, flags `M` when `Ext^{1..B}(M, M) = 0` while `M` is not free.
pub fn tc2_check(a: &Arc<LocalAlgebra>, m: &AModule, bound: usize) -> Result<Verdict> {
    require_bound(bound, 1)?;
    if m.algebra().fingerprint() != a.fingerprint() {
        return Err(Error::AlgebraMismatch);
    }
    if !gorenstein(a)?.holds() {
        return Err(Error::NotSelfinjective);
    }
    let res = FreeResolution::of_module(m, bound + 1)?;
    let window = ext_dims(&res, m, 0, bound as i32)?;
    let projective = res.rank(1) == 0;
    Ok(tc_verdict("tc2", window, projective))
}
