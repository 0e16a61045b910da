//! Sign classification, pivot partitioning, one-step reduction and the
//! full decision loop.

use std::fmt;

use thiserror::Error;

use crate::exact::{rational_sign, Rational};
use crate::gappoly::{
    sample_signs, try_decide_sign, GapPolynomial, IndeterminateReport, SamplingSummary,
};

/// Sign-decision options for symbolic entries; instance entries ignore it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignPolicy {
    pub polya_max: usize,
}

impl Default for SignPolicy {
    fn default() -> Self {
        Self {
            polya_max: crate::gappoly::DEFAULT_POLYA_MAX,
        }
    }
}

/// Sign of one entry as far as the active domain can tell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntrySign {
    Negative,
    Zero,
    Positive,
    Undecided,
}

impl EntrySign {
    pub fn as_i8(self) -> Option<i8> {
        match self {
            EntrySign::Negative => Some(-1),
            EntrySign::Zero => Some(0),
            EntrySign::Positive => Some(1),
            EntrySign::Undecided => None,
        }
    }
}

/// Ring of system entries together with a (possibly partial) sign oracle.
pub trait EntryDomain: Clone + fmt::Display {
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn entry_sign(&self, policy: &SignPolicy) -> EntrySign;
    /// Detailed report for an entry whose sign stayed undecided; only called
    /// on such entries.
    fn indeterminate_report(&self, policy: &SignPolicy) -> IndeterminateReport;
}

impl EntryDomain for Rational {
    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn entry_sign(&self, _policy: &SignPolicy) -> EntrySign {
        match rational_sign(self) {
            -1 => EntrySign::Negative,
            0 => EntrySign::Zero,
            _ => EntrySign::Positive,
        }
    }

    fn indeterminate_report(&self, _policy: &SignPolicy) -> IndeterminateReport {
        unreachable!("rational signs are always decided")
    }
}

impl EntryDomain for GapPolynomial {
    fn mul(&self, other: &Self) -> Self {
        GapPolynomial::mul(self, other)
    }

    fn sub(&self, other: &Self) -> Self {
        GapPolynomial::sub(self, other)
    }

    fn entry_sign(&self, policy: &SignPolicy) -> EntrySign {
        match try_decide_sign(self, policy.polya_max) {
            Some(-1) => EntrySign::Negative,
            Some(0) => EntrySign::Zero,
            Some(1) => EntrySign::Positive,
            Some(_) => unreachable!(),
            None => EntrySign::Undecided,
        }
    }

    fn indeterminate_report(&self, _policy: &SignPolicy) -> IndeterminateReport {
        IndeterminateReport {
            expression: self.to_string(),
            samples: sample_signs(self),
        }
    }
}

/// Classification of one row over its nonzero entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowProfile {
    Mixed,
    AllNonneg,
    AllNonpos,
    AllZero,
}

/// Raised when undecided entries make the classification ambiguous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("entry sign undecided at column {col}")]
pub struct UndecidedEntry {
    /// 0-based column of the first blocking entry.
    pub col: usize,
}

/// Classifies a row of entry signs. A decided positive together with a
/// decided negative settles Mixed no matter what the undecided entries turn
/// out to be; otherwise any undecided entry leaves the profile open.
pub fn row_sign_profile(signs: &[EntrySign]) -> Result<RowProfile, UndecidedEntry> {
    let has_pos = signs.contains(&EntrySign::Positive);
    let has_neg = signs.contains(&EntrySign::Negative);
    if has_pos && has_neg {
        return Ok(RowProfile::Mixed);
    }
    if let Some(col) = signs.iter().position(|&s| s == EntrySign::Undecided) {
        return Err(UndecidedEntry { col });
    }
    Ok(if has_pos {
        RowProfile::AllNonneg
    } else if has_neg {
        RowProfile::AllNonpos
    } else {
        RowProfile::AllZero
    })
}

/// Pivot split of one row: strictly positive columns I, strictly negative
/// columns J. Zero columns belong to neither set; the ones that still carry
/// nonzero entries in other rows are attached to the I side when pairing,
/// which keeps the positive-solution equivalence exact (their pivot
/// coefficient is zero, so they contribute nothing to the pivot equation and
/// the reduced coefficients come out right).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignPartition {
    /// 0-based row index within the level's matrix.
    pub pivot_row: usize,
    /// Ascending 0-based columns with positive pivot entries.
    pub positive: Vec<usize>,
    /// Ascending 0-based columns with negative pivot entries.
    pub negative: Vec<usize>,
    /// Ascending 0-based zero pivot columns carried on the I side.
    pub attached_zero: Vec<usize>,
}

impl SignPartition {
    pub fn p(&self) -> usize {
        self.positive.len()
    }

    pub fn q(&self) -> usize {
        self.negative.len()
    }

    /// The I side in pairing order: positive columns plus attached zeros,
    /// ascending.
    pub fn i_side(&self) -> Vec<usize> {
        let mut side: Vec<usize> = self
            .positive
            .iter()
            .chain(&self.attached_zero)
            .copied()
            .collect();
        side.sort_unstable();
        side
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("no mixed row available for pivoting")]
    NoMixedRow,
    #[error("pivot row {row} has an undecided entry at column {col}")]
    UndecidedEntry { row: usize, col: usize },
}

/// Pivot selection rule. FirstMixed is the default; MinProduct picks the
/// mixed row minimizing P*Q to curb column growth on larger systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotPolicy {
    #[default]
    FirstMixed,
    MinProduct,
}

impl PivotPolicy {
    pub fn label(self) -> &'static str {
        match self {
            PivotPolicy::FirstMixed => "first",
            PivotPolicy::MinProduct => "minpq",
        }
    }
}

fn partition_row(signs_matrix: &[Vec<EntrySign>], row: usize) -> Result<SignPartition, PartitionError> {
    let signs = &signs_matrix[row];
    if let Some(col) = signs.iter().position(|&s| s == EntrySign::Undecided) {
        return Err(PartitionError::UndecidedEntry { row, col });
    }
    let positive: Vec<usize> = (0..signs.len())
        .filter(|&c| signs[c] == EntrySign::Positive)
        .collect();
    let negative: Vec<usize> = (0..signs.len())
        .filter(|&c| signs[c] == EntrySign::Negative)
        .collect();
    if positive.is_empty() || negative.is_empty() {
        return Err(PartitionError::NoMixedRow);
    }
    // A zero pivot column still matters if any other row can be nonzero
    // there; undecided counts as possibly nonzero.
    let attached_zero: Vec<usize> = (0..signs.len())
        .filter(|&c| {
            signs[c] == EntrySign::Zero
                && signs_matrix
                    .iter()
                    .enumerate()
                    .any(|(r, s)| r != row && s[c] != EntrySign::Zero)
        })
        .collect();
    Ok(SignPartition {
        pivot_row: row,
        positive,
        negative,
        attached_zero,
    })
}

fn choose_pivot(
    signs_matrix: &[Vec<EntrySign>],
    rows: &[usize],
    policy: PivotPolicy,
) -> Result<SignPartition, PartitionError> {
    match policy {
        PivotPolicy::FirstMixed => partition_row(signs_matrix, rows[0]),
        PivotPolicy::MinProduct => {
            let mut best: Option<SignPartition> = None;
            let mut first_err: Option<PartitionError> = None;
            for &r in rows {
                match partition_row(signs_matrix, r) {
                    Ok(part) => {
                        let pq = part.p() * part.q();
                        if best.as_ref().is_none_or(|b| pq < b.p() * b.q()) {
                            best = Some(part);
                        }
                    }
                    Err(e) => {
                        first_err.get_or_insert(e);
                    }
                }
            }
            best.ok_or(first_err.unwrap_or(PartitionError::NoMixedRow))
        }
    }
}

/// Public pivot partitioning over a full matrix: classifies rows itself and
/// applies the policy to the mixed ones.
pub fn partition_pivot<T: EntryDomain>(
    matrix: &[Vec<T>],
    policy: PivotPolicy,
    sign_policy: &SignPolicy,
) -> Result<SignPartition, PartitionError> {
    let signs: Vec<Vec<EntrySign>> = matrix
        .iter()
        .map(|row| row.iter().map(|e| e.entry_sign(sign_policy)).collect())
        .collect();
    let mixed: Vec<usize> = (0..matrix.len())
        .filter(|&r| matches!(row_sign_profile(&signs[r]), Ok(RowProfile::Mixed)))
        .collect();
    if mixed.is_empty() {
        return Err(PartitionError::NoMixedRow);
    }
    choose_pivot(&signs, &mixed, policy)
}

/// One reduction step. Returns the reduced matrix (one row per non-pivot row
/// of `rows`, in order) and the ancestry pair (i, j) of each new column, in
/// vec column-stacking order: I ascending within each j, J ascending outer.
pub fn reduce_once<T: EntryDomain>(
    matrix: &[Vec<T>],
    rows: &[usize],
    partition: &SignPartition,
) -> (Vec<Vec<T>>, Vec<(usize, usize)>) {
    let i_side = partition.i_side();
    let mut pairs = Vec::with_capacity(i_side.len() * partition.negative.len());
    for &j in &partition.negative {
        for &i in &i_side {
            pairs.push((i, j));
        }
    }
    let pivot = &matrix[partition.pivot_row];
    let mut reduced = Vec::with_capacity(rows.len().saturating_sub(1));
    for &r in rows {
        if r == partition.pivot_row {
            continue;
        }
        let source = &matrix[r];
        let row: Vec<T> = pairs
            .iter()
            .map(|&(i, j)| pivot[i].mul(&source[j]).sub(&pivot[j].mul(&source[i])))
            .collect();
        reduced.push(row);
    }
    (reduced, pairs)
}

/// One stage of the elimination as recorded in the trace.
#[derive(Debug, Clone)]
pub struct Level<T> {
    pub matrix: Vec<Vec<T>>,
    /// Decided signs; None marks an undecided symbolic entry.
    pub signs: Vec<Vec<Option<i8>>>,
    /// Rows dropped as identically zero before pivoting.
    pub dropped_rows: Vec<usize>,
    /// Partition used to produce the next level (absent on the last level).
    pub partition: Option<SignPartition>,
    /// For each column, the parent-level column pair it represents; None on
    /// the input level, whose columns are their own ancestors.
    pub ancestry: Option<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Reduced to a single mixed equation.
    SingleEquation,
    /// Every remaining equation was identically zero.
    NoEquations,
    /// A uniform-sign row refuted positivity.
    UniformRow { level: usize, row: usize },
    /// A symbolic sign could not be decided.
    Undecided { level: usize, row: usize, col: usize },
}

#[derive(Debug, Clone)]
pub struct DinesTrace<T> {
    pub levels: Vec<Level<T>>,
    pub stop: StopReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfeasibleInfo {
    pub level: usize,
    pub row: usize,
    /// Decided signs of the offending row, zeros included.
    pub signs: Vec<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndeterminateInfo {
    pub level: usize,
    pub row: usize,
    pub col: usize,
    pub expression: String,
    pub samples: SamplingSummary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Feasible,
    Infeasible(InfeasibleInfo),
    Indeterminate(IndeterminateInfo),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Feasible => "feasible",
            Verdict::Infeasible(_) => "infeasible",
            Verdict::Indeterminate(_) => "indeterminate",
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Verdict::Feasible)
    }
}

/// Runs the elimination to a verdict.
///
/// Rows are classified in order at every level: the first identically-zero
/// row is dropped as vacuous, the first uniform-sign row refutes, the first
/// row whose classification is blocked by an undecided sign aborts with
/// Indeterminate. When at most one mixed equation remains the system has a
/// positive solution.
pub fn decide<T: EntryDomain>(
    system: Vec<Vec<T>>,
    policy: PivotPolicy,
    sign_policy: &SignPolicy,
) -> (Verdict, DinesTrace<T>) {
    assert!(!system.is_empty(), "decide requires at least one equation");
    let mut matrix = system;
    let mut ancestry: Option<Vec<(usize, usize)>> = None;
    let mut levels: Vec<Level<T>> = Vec::new();

    loop {
        let level_index = levels.len();
        let sign_matrix: Vec<Vec<EntrySign>> = matrix
            .iter()
            .map(|row| row.iter().map(|e| e.entry_sign(sign_policy)).collect())
            .collect();
        let rendered_signs: Vec<Vec<Option<i8>>> = sign_matrix
            .iter()
            .map(|row| row.iter().map(|s| s.as_i8()).collect())
            .collect();

        let mut retained: Vec<usize> = Vec::new();
        let mut dropped: Vec<usize> = Vec::new();
        let mut fatal: Option<Verdict> = None;
        for (r, signs) in sign_matrix.iter().enumerate() {
            match row_sign_profile(signs) {
                Ok(RowProfile::Mixed) => retained.push(r),
                Ok(RowProfile::AllZero) => dropped.push(r),
                Ok(RowProfile::AllNonneg | RowProfile::AllNonpos) => {
                    fatal = Some(Verdict::Infeasible(InfeasibleInfo {
                        level: level_index,
                        row: r,
                        signs: signs.iter().map(|s| s.as_i8().unwrap()).collect(),
                    }));
                    break;
                }
                Err(UndecidedEntry { col }) => {
                    let report = matrix[r][col].indeterminate_report(sign_policy);
                    fatal = Some(Verdict::Indeterminate(IndeterminateInfo {
                        level: level_index,
                        row: r,
                        col,
                        expression: report.expression,
                        samples: report.samples,
                    }));
                    break;
                }
            }
        }

        if let Some(verdict) = fatal {
            let stop = match &verdict {
                Verdict::Infeasible(info) => StopReason::UniformRow {
                    level: info.level,
                    row: info.row,
                },
                Verdict::Indeterminate(info) => StopReason::Undecided {
                    level: info.level,
                    row: info.row,
                    col: info.col,
                },
                Verdict::Feasible => unreachable!(),
            };
            levels.push(Level {
                matrix,
                signs: rendered_signs,
                dropped_rows: dropped,
                partition: None,
                ancestry,
            });
            return (verdict, DinesTrace { levels, stop });
        }

        if retained.len() <= 1 {
            let stop = if retained.is_empty() {
                StopReason::NoEquations
            } else {
                StopReason::SingleEquation
            };
            levels.push(Level {
                matrix,
                signs: rendered_signs,
                dropped_rows: dropped,
                partition: None,
                ancestry,
            });
            return (Verdict::Feasible, DinesTrace { levels, stop });
        }

        let partition = match choose_pivot(&sign_matrix, &retained, policy) {
            Ok(p) => p,
            Err(PartitionError::UndecidedEntry { row, col }) => {
                let report = matrix[row][col].indeterminate_report(sign_policy);
                let verdict = Verdict::Indeterminate(IndeterminateInfo {
                    level: level_index,
                    row,
                    col,
                    expression: report.expression,
                    samples: report.samples,
                });
                levels.push(Level {
                    matrix,
                    signs: rendered_signs,
                    dropped_rows: dropped,
                    partition: None,
                    ancestry,
                });
                return (
                    verdict,
                    DinesTrace {
                        levels,
                        stop: StopReason::Undecided {
                            level: level_index,
                            row,
                            col,
                        },
                    },
                );
            }
            Err(PartitionError::NoMixedRow) => {
                unreachable!("retained rows are mixed by construction")
            }
        };

        let (next_matrix, pairs) = reduce_once(&matrix, &retained, &partition);
        levels.push(Level {
            matrix,
            signs: rendered_signs,
            dropped_rows: dropped,
            partition: Some(partition),
            ancestry,
        });
        matrix = next_matrix;
        ancestry = Some(pairs);
    }
}
