//! Instance generation, sweeps over generated algebras, and JSONL records.

mod generate;

use std::io::{BufRead, Write};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraJson, LocalAlgebra};
use crate::derived::poincare_truncation;
use crate::detect::{
    dual_ext_window, golod_from_betti, gorenstein, hypersurface_from_betti, tc1_from_window, Certificate, TcStatus,
    Verdict,
};
use crate::error::{Error, Result};
use crate::modules::AModule;

pub use generate::{
    enumerate_monomial_algebras, generate, monic_base_change, random_base_change, random_homogeneous, random_loewy3,
    sample_rng, staircases, tensor_base_change, Family, GeneratorSpec, Instance, Provenance, MAX_ALGEBRA_DIM,
};

pub const RECORD_SCHEMA: u32 = 1;

/// Start of the tail window used for the "for all large i" surrogate.
pub const DEFAULT_TAIL_START: usize = 5;
pub const DEFAULT_BOUND: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub dim: usize,
    pub edim: usize,
    pub hilbert: Vec<usize>,
    pub socle_dim: usize,
    pub loewy_length: usize,
}

impl Invariants {
    pub fn of(a: &LocalAlgebra) -> Self {
        Invariants {
            dim: a.dim(),
            edim: a.edim(),
            hilbert: a.hilbert_series(),
            socle_dim: a.socle().dim(),
            loewy_length: a.loewy_length(),
        }
    }
}

/// A quantified statement checked on one instance. `applicable` is false when
/// the hypothesis fails, in which case `holds` is true.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub applicable: bool,
    pub holds: bool,
    /// The statement is checked on a finite window standing in for "all large i".
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub window_surrogate: bool,
}

fn implication(name: &str, hypothesis: bool, conclusion: bool) -> Assertion {
    Assertion { name: name.into(), applicable: hypothesis, holds: !hypothesis || conclusion, window_surrogate: false }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub gorenstein: Verdict,
    pub golod: Option<Verdict>,
    pub hypersurface: Option<Verdict>,
    pub tc1: Verdict,
}

/// One line of a sweep log; the algebra can be rebuilt from `algebra` alone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub schema: u32,
    pub index: usize,
    pub fingerprint: String,
    pub provenance: Provenance,
    pub algebra: AlgebraJson,
    pub invariants: Invariants,
    pub bound: usize,
    /// `dim Ext^i(D, A)` for `i = 1..=bound`.
    pub ext_window: Vec<usize>,
    /// `dim Hom(D, A)`.
    pub hom_dual_dim: usize,
    pub verdicts: Verdicts,
    pub assertions: Vec<Assertion>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl ExperimentRecord {
    pub fn is_candidate(&self) -> bool {
        self.verdicts.tc1.tc_status() == Some(TcStatus::CounterexampleCandidate)
    }
}

/// Which optional verdicts a sweep computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub golod: bool,
    pub hypersurface: bool,
    pub timing: bool,
    pub tail_start: usize,
}

impl Default for Checks {
    fn default() -> Self {
        Checks { golod: true, hypersurface: true, timing: false, tail_start: DEFAULT_TAIL_START }
    }
}

/// Computes every field of a record for one instance.
pub fn evaluate(instance: &Instance, index: usize, bound: usize, checks: &Checks) -> Result<ExperimentRecord> {
    let start = Instant::now();
    let bound = bound.max(1);
    let a = &instance.algebra;
    let window = dual_ext_window(a, bound)?;
    let hom_dual_dim = window[0];
    let ext_window = window[1..].to_vec();
    let gor = gorenstein(a)?;
    let tc1 = tc1_from_window(a, window)?;

    let (golod, hypersurface) = if checks.golod || checks.hypersurface {
        let betti = poincare_truncation(&AModule::residue_field(a), bound.max(2))?;
        let golod = checks.golod.then(|| golod_from_betti(a, &betti[..=bound.max(2)])).transpose()?;
        let hyper = checks.hypersurface.then(|| hypersurface_from_betti(a, &betti)).transpose()?;
        (golod, hyper)
    } else {
        (None, None)
    };

    let is_gor = gor.holds();
    let ext1_zero = ext_window[0] == 0;
    let all_zero = ext_window.iter().all(|&v| v == 0);
    let mut assertions = vec![
        Assertion {
            name: "hom-dual-nonzero".into(),
            applicable: true,
            holds: hom_dual_dim >= 1,
            window_surrogate: false,
        },
        implication("edim-two-ext1-gorenstein", a.edim() <= 2 && ext1_zero, is_gor),
        implication("cube-zero-ext1-gorenstein", a.loewy_length() <= 3 && ext1_zero, is_gor),
    ];
    if let Some(g) = &golod {
        let Certificate::Series { dominated, .. } = g.certificate else { unreachable!("golod carries a series") };
        assertions.push(Assertion {
            name: "serre-inequality".into(),
            applicable: true,
            holds: dominated,
            window_surrogate: false,
        });
        if let Some(h) = &hypersurface {
            assertions.push(implication("golod-ext-hypersurface", g.holds() && all_zero, h.holds()));
        }
    }
    if bound >= checks.tail_start && checks.tail_start >= 1 {
        let tail_zero = ext_window[checks.tail_start - 1..].iter().all(|&v| v == 0);
        let mut a3 = implication("edim-three-tail-gorenstein", a.edim() <= 3 && tail_zero, is_gor);
        a3.window_surrogate = true;
        assertions.push(a3);
    }

    let timing_ms = checks.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    Ok(ExperimentRecord {
        schema: RECORD_SCHEMA,
        index,
        fingerprint: a.fingerprint().to_string(),
        provenance: instance.provenance.clone(),
        algebra: a.to_json(),
        invariants: Invariants::of(a),
        bound,
        ext_window,
        hom_dual_dim,
        verdicts: Verdicts { gorenstein: gor, golod, hypersurface, tc1 },
        assertions,
        timing_ms,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub gorenstein: usize,
    pub ext1_zero: usize,
    pub candidates: usize,
    pub golod: usize,
    pub hypersurface: usize,
    /// Names of violated assertions with the record index.
    pub assertion_failures: Vec<(usize, String)>,
}

impl SweepSummary {
    fn add(&mut self, r: &ExperimentRecord) {
        self.instances += 1;
        self.gorenstein += usize::from(r.verdicts.gorenstein.holds());
        self.ext1_zero += usize::from(r.ext_window.first() == Some(&0));
        self.candidates += usize::from(r.is_candidate());
        self.golod += usize::from(r.verdicts.golod.as_ref().is_some_and(|v| v.holds()));
        self.hypersurface += usize::from(r.verdicts.hypersurface.as_ref().is_some_and(|v| v.holds()));
        for a in r.assertions.iter().filter(|a| !a.holds) {
            self.assertion_failures.push((r.index, a.name.clone()));
        }
    }

    pub fn merge(&mut self, other: &SweepSummary) {
        self.instances += other.instances;
        self.gorenstein += other.gorenstein;
        self.ext1_zero += other.ext1_zero;
        self.candidates += other.candidates;
        self.golod += other.golod;
        self.hypersurface += other.hypersurface;
        self.assertion_failures.extend(other.assertion_failures.iter().cloned());
    }

    /// 0 when clean, 2 when a counterexample candidate was recorded.
    pub fn exit_code(&self) -> i32 {
        if self.candidates > 0 {
            2
        } else {
            0
        }
    }
}

/// Evaluates every instance in parallel and writes one JSON line per record in index order.
pub fn run_sweep<W: Write>(spec: &GeneratorSpec, checks: &Checks, bound: usize, out: &mut W) -> Result<SweepSummary> {
    let instances = generate(spec)?;
    let records: Vec<ExperimentRecord> =
        instances.par_iter().enumerate().map(|(i, inst)| evaluate(inst, i, bound, checks)).collect::<Result<_>>()?;
    let mut summary = SweepSummary::default();
    for r in &records {
        summary.add(r);
        serde_json::to_writer(&mut *out, r)?;
        out.write_all(b"\n").map_err(|e| Error::io("writing sweep log", e))?;
    }
    out.flush().map_err(|e| Error::io("flushing sweep log", e))?;
    Ok(summary)
}

/// Outcome of recomputing stored Ext windows.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub records: usize,
    /// Indices whose algebra or Ext window did not reproduce.
    pub mismatches: Vec<usize>,
}

/// Rebuilds every algebra from its stored JSON and recomputes its Ext window.
pub fn audit<R: BufRead>(input: R) -> Result<AuditReport> {
    let mut records = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::io(format!("reading log line {}", n + 1), e))?;
        if line.trim().is_empty() {
            continue;
        }
        let r: ExperimentRecord = serde_json::from_str(&line)?;
        if r.schema != RECORD_SCHEMA {
            return Err(Error::InvalidAlgebra(format!("record schema {} is not supported", r.schema)));
        }
        records.push(r);
    }
    let checked: Vec<(usize, bool)> = records
        .par_iter()
        .map(|r| {
            let a: Arc<LocalAlgebra> = LocalAlgebra::from_json(&r.algebra)?;
            let window = dual_ext_window(&a, r.bound)?;
            Ok((
                r.index,
                a.fingerprint() == r.fingerprint && window[1..] == r.ext_window[..] && window[0] == r.hom_dual_dim,
            ))
        })
        .collect::<Result<_>>()?;
    Ok(AuditReport {
        records: checked.len(),
        mismatches: checked.into_iter().filter(|(_, ok)| !ok).map(|(i, _)| i).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_monomial_sweep() {
        let spec = GeneratorSpec::monomial(2, 2, 5);
        let mut log = Vec::new();
        let s = run_sweep(&spec, &Checks::default(), 3, &mut log).unwrap();
        assert_eq!(s.instances, enumerate_monomial_algebras(&spec).unwrap().len());
        assert_eq!(s.candidates, 0);
        assert!(s.assertion_failures.is_empty());
        assert_eq!(s.exit_code(), 0);
        let text = String::from_utf8(log.clone()).unwrap();
        assert_eq!(text.lines().count(), s.instances);
        let report = audit(log.as_slice()).unwrap();
        assert_eq!(report.records, s.instances);
        assert!(report.mismatches.is_empty());
    }

    #[test]
    fn sweeps_are_deterministic() {
        let spec = GeneratorSpec::loewy3(2, 3, 6, 11);
        let (mut a, mut b) = (Vec::new(), Vec::new());
        run_sweep(&spec, &Checks::default(), 2, &mut a).unwrap();
        run_sweep(&spec, &Checks::default(), 2, &mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gorenstein_family_has_vanishing_ext() {
        // Quotients of k[x] are all Gorenstein.
        let spec = GeneratorSpec::monomial(1, 3, 6);
        let mut log = Vec::new();
        let s = run_sweep(&spec, &Checks::default(), 2, &mut log).unwrap();
        assert_eq!(s.gorenstein, s.instances);
        assert_eq!(s.ext1_zero, s.instances);
    }

    #[test]
    fn empty_sweep() {
        let spec = GeneratorSpec::loewy3(2, 2, 0, 0);
        let mut log = Vec::new();
        let s = run_sweep(&spec, &Checks::default(), 2, &mut log).unwrap();
        assert!(log.is_empty());
        assert_eq!(s, SweepSummary::default());
    }

    #[test]
    fn audit_detects_tampering() {
        let spec = GeneratorSpec::monomial(2, 2, 4);
        let mut log = Vec::new();
        run_sweep(&spec, &Checks::default(), 2, &mut log).unwrap();
        let text = String::from_utf8(log).unwrap();
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let mut r: ExperimentRecord = serde_json::from_str(&lines[0]).unwrap();
        r.ext_window[0] += 1;
        lines[0] = serde_json::to_string(&r).unwrap();
        let report = audit(lines.join("\n").as_bytes()).unwrap();
        assert_eq!(report.mismatches, vec![r.index]);
    }
}
