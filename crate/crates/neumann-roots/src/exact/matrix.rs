//! Dense rational matrices and exact Gaussian elimination.

use std::fmt;

use num_traits::{Signed, Zero};

use super::Rational;

/// Row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Self { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Self {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Rank information returned when elimination runs out of nonzero pivots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularReport {
    pub rank: usize,
}

impl fmt::Display for SingularReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "singular system (rank {})", self.rank)
    }
}

/// Solves m·x = rhs exactly for a square matrix.
///
/// Full pivoting, selecting the remaining entry of largest absolute value;
/// any nonzero pivot would be correct, this rule is the fixed deterministic
/// choice and keeps intermediate numerators and denominators small.
pub fn gauss_solve(m: &RationalMatrix, rhs: &[Rational]) -> Result<Vec<Rational>, SingularReport> {
    assert_eq!(m.rows(), m.cols(), "gauss_solve requires a square matrix");
    assert_eq!(rhs.len(), m.rows(), "rhs length must match row count");
    let n = m.rows();
    let mut a = m.clone();
    let mut b = rhs.to_vec();
    // col_perm[k] = original column index placed at position k
    let mut col_perm: Vec<usize> = (0..n).collect();

    for k in 0..n {
        // Find the largest-magnitude pivot in the trailing submatrix.
        let mut best: Option<(usize, usize)> = None;
        let mut best_abs = Rational::zero();
        for r in k..n {
            for c in k..n {
                let v = a.get(r, c);
                if !v.is_zero() {
                    let abs = v.abs();
                    if best.is_none() || abs > best_abs {
                        best = Some((r, c));
                        best_abs = abs;
                    }
                }
            }
        }
        let Some((pr, pc)) = best else {
            return Err(SingularReport { rank: k });
        };
        if pr != k {
            for c in 0..n {
                let tmp = a.get(pr, c).clone();
                a.set(pr, c, a.get(k, c).clone());
                a.set(k, c, tmp);
            }
            b.swap(pr, k);
        }
        if pc != k {
            for r in 0..n {
                let tmp = a.get(r, pc).clone();
                a.set(r, pc, a.get(r, k).clone());
                a.set(r, k, tmp);
            }
            col_perm.swap(pc, k);
        }
        let pivot = a.get(k, k).clone();
        for r in k + 1..n {
            let factor = a.get(r, k) / &pivot;
            if factor.is_zero() {
                continue;
            }
            for c in k..n {
                let v = a.get(r, c) - &factor * a.get(k, c);
                a.set(r, c, v);
            }
            let nb = &b[r] - &factor * &b[k];
            b[r] = nb;
        }
    }

    // Back substitution in permuted coordinates.
    let mut y = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        let mut acc = b[k].clone();
        for (c, yc) in y.iter().enumerate().take(n).skip(k + 1) {
            acc -= a.get(k, c) * yc;
        }
        y[k] = acc / a.get(k, k);
    }
    let mut x = vec![Rational::zero(); n];
    for k in 0..n {
        x[col_perm[k]] = y[k].clone();
    }
    Ok(x)
}
