//! Case evaluation, verdict tables and golden-file comparison.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dines::{decide, DinesTrace, PivotPolicy, SignPolicy, Verdict};
use crate::gappoly::{sign_by_difference_factors, GapPolynomial, OrderedScene};
use crate::neumann::{build_system_symbolic, enumerate_cases, NeumannCase};

/// One symbolic decision with everything needed for reporting.
#[derive(Debug, Clone)]
pub struct SymbolicRun {
    pub case: NeumannCase,
    pub scene: OrderedScene,
    pub verdict: Verdict,
    pub trace: DinesTrace<GapPolynomial>,
}

pub fn run_symbolic(case: &NeumannCase, sign_policy: &SignPolicy, pivot: PivotPolicy) -> SymbolicRun {
    let (scene, rows) = build_system_symbolic(case);
    let (verdict, trace) = decide(rows, pivot, sign_policy);
    SymbolicRun {
        case: case.clone(),
        scene,
        verdict,
        trace,
    }
}

/// Refutation step in the table convention: level + 1. Empty for feasible.
pub fn fail_step(verdict: &Verdict) -> Option<usize> {
    match verdict {
        Verdict::Infeasible(info) => Some(info.level + 1),
        _ => None,
    }
}

/// The pf annotation: the refuting row contains an entry whose class-wide
/// sign required the gap expansion, i.e. it is not readable off a
/// factorization into ordered-value differences.
pub fn pf_flag(run: &SymbolicRun) -> bool {
    let Verdict::Infeasible(info) = &run.verdict else {
        return false;
    };
    let level = &run.trace.levels[info.level];
    level.matrix[info.row]
        .iter()
        .any(|entry| sign_by_difference_factors(entry, &run.scene).is_none())
}

/// One verdict-table row.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableRow {
    pub case: String,
    /// 1 feasible, 0 infeasible, "?" rendered for indeterminate.
    pub verdict: String,
    /// Step (level + 1) at which the refutation happened; empty otherwise.
    pub step: String,
    pub pf: bool,
    pub duration_ms: u128,
}

impl TableRow {
    /// Step digits with a pf suffix, the combined table annotation.
    pub fn step_with_pf(&self) -> String {
        if self.pf {
            format!("{}pf", self.step)
        } else {
            self.step.clone()
        }
    }
}

pub struct TableOutput {
    pub rows: Vec<TableRow>,
    pub runs: Vec<SymbolicRun>,
}

/// Decides every case for the given n symbolically. Cases are independent,
/// so they run in parallel; output order is the canonical table order.
pub fn build_table(n: usize, sign_policy: &SignPolicy, pivot: PivotPolicy) -> TableOutput {
    let cases = enumerate_cases(n);
    let runs: Vec<(SymbolicRun, u128)> = cases
        .par_iter()
        .map(|case| {
            let start = Instant::now();
            let run = run_symbolic(case, sign_policy, pivot);
            (run, start.elapsed().as_millis())
        })
        .collect();
    let mut rows = Vec::with_capacity(runs.len());
    let mut bare_runs = Vec::with_capacity(runs.len());
    for (run, duration_ms) in runs {
        rows.push(TableRow {
            case: run.case.name(),
            verdict: match &run.verdict {
                Verdict::Feasible => "1".into(),
                Verdict::Infeasible(_) => "0".into(),
                Verdict::Indeterminate(_) => "?".into(),
            },
            step: fail_step(&run.verdict).map(|s| s.to_string()).unwrap_or_default(),
            pf: pf_flag(&run),
            duration_ms,
        });
        bare_runs.push(run);
    }
    TableOutput { rows, runs: bare_runs }
}

/// A golden table entry: verdict is binding, step/pf informational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenRow {
    pub case: String,
    pub verdict: String,
    pub step: String,
    pub pf: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum GoldenError {
    #[error("golden file line {0}: expected `case,verdict,step`")]
    Malformed(usize),
    #[error("golden file is empty")]
    Empty,
}

/// Parses `case,verdict,step` lines; the step cell may carry a pf suffix
/// ("3pf"). A header line is recognized and skipped.
pub fn parse_golden(text: &str) -> Result<Vec<GoldenRow>, GoldenError> {
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (k == 0 && line.starts_with("case")) {
            continue;
        }
        let mut parts = line.split(',');
        let (Some(case), Some(verdict)) = (parts.next(), parts.next()) else {
            return Err(GoldenError::Malformed(k + 1));
        };
        let step_raw = parts.next().unwrap_or("").trim();
        if parts.next().is_some() {
            return Err(GoldenError::Malformed(k + 1));
        }
        let (step, pf) = match step_raw.strip_suffix("pf") {
            Some(digits) => (digits.to_string(), true),
            None => (step_raw.to_string(), false),
        };
        rows.push(GoldenRow {
            case: case.trim().to_string(),
            verdict: verdict.trim().to_string(),
            step,
            pf,
        });
    }
    if rows.is_empty() {
        return Err(GoldenError::Empty);
    }
    Ok(rows)
}

/// Comparison outcome. Verdict differences fail the comparison; step and pf
/// differences are reported but do not.
#[derive(Debug, Clone, Default)]
pub struct GoldenDiff {
    pub verdict_mismatches: Vec<String>,
    pub step_notes: Vec<String>,
    pub missing_cases: Vec<String>,
    pub extra_cases: Vec<String>,
}

impl GoldenDiff {
    pub fn verdicts_match(&self) -> bool {
        self.verdict_mismatches.is_empty() && self.missing_cases.is_empty()
    }
}

pub fn compare_with_golden(rows: &[TableRow], golden: &[GoldenRow]) -> GoldenDiff {
    let mut diff = GoldenDiff::default();
    for g in golden {
        match rows.iter().find(|r| r.case == g.case) {
            None => diff.missing_cases.push(g.case.clone()),
            Some(r) => {
                if r.verdict != g.verdict {
                    diff.verdict_mismatches.push(format!(
                        "{}: computed verdict {} but golden says {}",
                        g.case, r.verdict, g.verdict
                    ));
                } else if r.step != g.step || r.pf != g.pf {
                    diff.step_notes.push(format!(
                        "{}: computed step {:?} vs golden {:?} (informational)",
                        g.case,
                        r.step_with_pf(),
                        if g.pf { format!("{}pf", g.step) } else { g.step.clone() }
                    ));
                }
            }
        }
    }
    for r in rows {
        if !golden.iter().any(|g| g.case == r.case) {
            diff.extra_cases.push(r.case.clone());
        }
    }
    diff
}
