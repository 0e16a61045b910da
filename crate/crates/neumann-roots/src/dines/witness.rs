//! Explicit positive solutions on rational instances: a terminal solution of
//! the final equation, lifted level by level back to the input system.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::Rational;

use super::engine::{DinesTrace, Level, SignPolicy, StopReason};


#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("witness lifting requires a feasible instance trace")]
    NotFeasible,
    #[error("lifted value at level {level}, column {col} is not positive")]
    NonPositiveLift { level: usize, col: usize },
    #[error("internal lifting inconsistency: {0}")]
    Internal(String),
}

/// Strictly positive rational solution of the level-0 system, scaled so the
/// last coordinate (the homogenizing variable) equals 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessVector {
    pub values: Vec<Rational>,
}

impl WitnessVector {
    /// The solution of the non-homogeneous system: every coordinate except
    /// the trailing homogenizing 1.
    pub fn unhomogenized(&self) -> &[Rational] {
        &self.values[..self.values.len() - 1]
    }
}

/// Positive solution of the final level. For the single remaining mixed
/// equation this is the classic construction x_i = -sum_J b_j on the positive
/// side and x_j = sum_I b_i on the negative side; columns with zero
/// coefficient are free and get 1, as does everything when no equation
/// remains.
pub fn terminal_witness(level: &Level<Rational>) -> Result<Vec<Rational>, LiftError> {
    let cols = level
        .matrix
        .first()
        .map(Vec::len)
        .ok_or_else(|| LiftError::Internal("empty final level".into()))?;
    let retained: Vec<usize> = (0..level.matrix.len())
        .filter(|r| !level.dropped_rows.contains(r))
        .collect();
    match retained.len() {
        0 => Ok(vec![crate::exact::rat(1); cols]),
        1 => {
            let row = &level.matrix[retained[0]];
            let pos_sum: Rational = row.iter().filter(|v| v.is_positive()).sum();
            let neg_sum: Rational = row.iter().filter(|v| v.is_negative()).sum();
            if pos_sum.is_zero() || neg_sum.is_zero() {
                return Err(LiftError::Internal("final equation is not mixed".into()));
            }
            Ok(row
                .iter()
                .map(|v| {
                    if v.is_positive() {
                        -neg_sum.clone()
                    } else if v.is_negative() {
                        pos_sum.clone()
                    } else {
                        crate::exact::rat(1)
                    }
                })
                .collect())
        }
        _ => Err(LiftError::Internal(
            "terminal witness requires at most one live equation".into(),
        )),
    }
}

/// Lifts a positive solution of the final level back to level 0 and
/// normalizes the homogenizing (last) coordinate to 1.
///
/// At each level, with pivot row b and split I (zeros attached) / J:
/// x_i = -sum_{j in J} b_j * y_{(i,j)} and x_j = sum_{i in I} b_i * y_{(i,j)},
/// where y are the next level's values; columns outside the split are free
/// and get 1. The result satisfies every level-0 equation exactly, which is
/// asserted before returning.
pub fn lift_witness(
    trace: &DinesTrace<Rational>,
    terminal: Vec<Rational>,
) -> Result<WitnessVector, LiftError> {
    if !matches!(trace.stop, StopReason::SingleEquation | StopReason::NoEquations) {
        return Err(LiftError::NotFeasible);
    }
    let mut values = terminal;
    for (k, level) in trace.levels.iter().enumerate().rev().skip(1) {
        let part = level
            .partition
            .as_ref()
            .ok_or_else(|| LiftError::Internal(format!("level {k} has no partition")))?;
        let pairs = trace.levels[k + 1]
            .ancestry
            .as_ref()
            .ok_or_else(|| LiftError::Internal(format!("level {} has no ancestry", k + 1)))?;
        if pairs.len() != values.len() {
            return Err(LiftError::Internal("ancestry arity mismatch".into()));
        }
        let value_of = |i: usize, j: usize| -> Option<&Rational> {
            pairs
                .iter()
                .position(|&p| p == (i, j))
                .map(|idx| &values[idx])
        };
        let pivot = &level.matrix[part.pivot_row];
        let cols = pivot.len();
        let i_side = part.i_side();
        let mut lifted = vec![crate::exact::rat(1); cols];
        for &i in &i_side {
            let mut acc = Rational::zero();
            for &j in &part.negative {
                let y = value_of(i, j)
                    .ok_or_else(|| LiftError::Internal("missing pair value".into()))?;
                acc -= &pivot[j] * y;
            }
            lifted[i] = acc;
        }
        for &j in &part.negative {
            let mut acc = Rational::zero();
            for &i in &i_side {
                let y = value_of(i, j)
                    .ok_or_else(|| LiftError::Internal("missing pair value".into()))?;
                acc += &pivot[i] * y;
            }
            lifted[j] = acc;
        }
        for (col, v) in lifted.iter().enumerate() {
            if !v.is_positive() {
                return Err(LiftError::NonPositiveLift { level: k, col });
            }
        }
        values = lifted;
    }

    // Exact satisfaction of every input equation.
    for (r, row) in trace.levels[0].matrix.iter().enumerate() {
        let residual: Rational = row.iter().zip(&values).map(|(b, x)| b * x).sum();
        if !residual.is_zero() {
            return Err(LiftError::Internal(format!(
                "lifted vector violates input equation {r}"
            )));
        }
    }
    let scale = values
        .last()
        .cloned()
        .ok_or_else(|| LiftError::Internal("empty witness".into()))?;
    if !scale.is_positive() {
        return Err(LiftError::Internal("non-positive homogenizing value".into()));
    }
    let values = values.into_iter().map(|v| v / &scale).collect();
    Ok(WitnessVector { values })
}

/// Convenience: decide an instance system, then construct and lift the
/// witness when feasible.
pub fn decide_and_lift(
    system: Vec<Vec<Rational>>,
    policy: super::PivotPolicy,
) -> (super::Verdict, DinesTrace<Rational>, Option<Result<WitnessVector, LiftError>>) {
    let sign_policy = SignPolicy::default();
    let (verdict, trace) = super::decide(system, policy, &sign_policy);
    let witness = if verdict.is_feasible() {
        Some(
            terminal_witness(trace.levels.last().expect("nonempty trace"))
                .and_then(|terminal| lift_witness(&trace, terminal)),
        )
    } else {
        None
    };
    (verdict, trace, witness)
}
