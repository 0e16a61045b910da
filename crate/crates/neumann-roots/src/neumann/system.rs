//! Homogeneous system construction in both entry domains.
//!
//! The system has n+1 rows and n+2 columns. Row 0 is the normalization
//! constraint: (eps_1, ..., eps_{n+1}, -1), the trailing column being the
//! homogenizing variable later pinned to 1. Row r for candidate root l_r has
//! entries eps_s * prod_{j != s} (l_r - a_j) and a zero in the homogenizing
//! column.

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::Rational;
use crate::gappoly::{scene_from_placement, GapPolynomial, OrderedScene, SceneSymbol};

use super::{epsilon_vector, InstanceParameters, NeumannCase};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlacementMismatch {
    #[error("instance shape does not match the case (need n+1 constants and n roots)")]
    Shape,
    #[error("constants must be strictly ascending")]
    ConstantsNotAscending,
    #[error("candidate roots must be strictly ascending")]
    RootsNotAscending,
    #[error("root {root} lies outside its declared interval {interval}")]
    RootOutsideInterval { root: usize, interval: usize },
    #[error("a candidate root coincides with a constant")]
    RootHitsConstant,
}

/// Symbolic matrix over the case's ordering class, plus the scene that fixes
/// the gap coordinates.
pub fn build_system_symbolic(case: &NeumannCase) -> (OrderedScene, Vec<Vec<GapPolynomial>>) {
    let n = case.n;
    let scene = scene_from_placement(n, &case.placement);
    let gc = scene.gap_count();
    let eps = epsilon_vector(&case.subset, n);
    let a_vals: Vec<GapPolynomial> = (1..=n + 1).map(|j| scene.value(SceneSymbol::A(j))).collect();
    let l_vals: Vec<GapPolynomial> = (1..=n)
        .map(|r| scene.value(SceneSymbol::Lambda(r)))
        .collect();

    let mut rows = Vec::with_capacity(n + 1);
    let mut row0: Vec<GapPolynomial> = eps
        .iter()
        .map(|&e| GapPolynomial::constant(gc, BigInt::from(e)))
        .collect();
    row0.push(GapPolynomial::constant(gc, -1));
    rows.push(row0);

    for lam in &l_vals {
        let mut row = Vec::with_capacity(n + 2);
        for (s, &eps_s) in eps.iter().enumerate() {
            let mut prod = GapPolynomial::constant(gc, BigInt::from(eps_s));
            for (j, aj) in a_vals.iter().enumerate() {
                if j != s {
                    prod = prod.mul(&lam.sub(aj));
                }
            }
            row.push(prod);
        }
        row.push(GapPolynomial::zero(gc));
        rows.push(row);
    }
    (scene, rows)
}

/// Exact rational matrix for one concrete instance of the case.
pub fn build_system_instance(
    case: &NeumannCase,
    inst: &InstanceParameters,
) -> Result<Vec<Vec<Rational>>, PlacementMismatch> {
    inst.check_placement(&case.placement)?;
    let n = case.n;
    let eps = epsilon_vector(&case.subset, n);
    let mut rows = Vec::with_capacity(n + 1);
    let mut row0: Vec<Rational> = eps.iter().map(|&e| crate::exact::rat(e as i64)).collect();
    row0.push(crate::exact::rat(-1));
    rows.push(row0);
    for lam in &inst.lambda {
        let mut row = Vec::with_capacity(n + 2);
        for (s, &eps_s) in eps.iter().enumerate() {
            let mut prod = crate::exact::rat(eps_s as i64);
            for (j, aj) in inst.a.iter().enumerate() {
                if j != s {
                    prod *= lam - aj;
                }
            }
            row.push(prod);
        }
        row.push(crate::exact::rat(0));
        rows.push(row);
    }
    Ok(rows)
}
