//! Reconstruction of the pencil polynomial from a witness and Sturm
//! verification that its roots land in the declared intervals.

use num_traits::{One, Signed};
use thiserror::Error;

use crate::exact::{
    sturm_count, RealBound, Rational, SturmError, UnivariatePolynomial,
};

use super::{epsilon_vector, RootPlacement, SubsetS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UPolyError {
    #[error("need n+1 squared coordinates for n+1 constants")]
    Shape,
    #[error("squared coordinates must be nonnegative")]
    NegativeSquare,
    #[error("signed squares must sum to 1 exactly, got {0}")]
    ConstraintViolated(String),
    #[error("polynomial must be monic of degree n")]
    NotMonic,
    #[error(transparent)]
    Sturm(#[from] SturmError),
}

/// U(x) = sum_j eps_j * qsq_j * prod_{k != j} (x - a_k).
///
/// Requires sum_j eps_j qsq_j = 1, which makes U monic of degree n. Zero
/// entries are tolerated (the caller flags them: they generically pin a root
/// onto a constant).
pub fn u_polynomial(
    qsq: &[Rational],
    subset: &SubsetS,
    a: &[Rational],
) -> Result<UnivariatePolynomial, UPolyError> {
    if a.is_empty() || qsq.len() != a.len() {
        return Err(UPolyError::Shape);
    }
    if qsq.iter().any(Signed::is_negative) {
        return Err(UPolyError::NegativeSquare);
    }
    let n = a.len() - 1;
    let eps = epsilon_vector(subset, n);
    let signed_sum: Rational = qsq
        .iter()
        .zip(&eps)
        .map(|(q, &e)| q * crate::exact::rat(e as i64))
        .sum();
    if !signed_sum.is_one() {
        return Err(UPolyError::ConstraintViolated(crate::exact::format_rational(
            &signed_sum,
        )));
    }
    let mut u = UnivariatePolynomial::zero();
    for j in 0..=n {
        let mut term = UnivariatePolynomial::constant(
            qsq[j].clone() * crate::exact::rat(eps[j] as i64),
        );
        for (k, ak) in a.iter().enumerate() {
            if k != j {
                term = term.mul(&UnivariatePolynomial::linear_root(ak));
            }
        }
        u = u.add(&term);
    }
    Ok(u)
}

/// Per-interval root counts versus the placement's multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootCheck {
    /// Distinct real roots found in each of the n+2 intervals.
    pub counts: Vec<usize>,
    /// Placement multiplicity of each interval.
    pub expected: Vec<usize>,
    pub total_real: usize,
    pub matches: bool,
}

/// Counts the roots of a monic degree-n polynomial in each interval cut by
/// the constants and compares against the placement.
pub fn verify_roots(
    u: &UnivariatePolynomial,
    a: &[Rational],
    placement: &RootPlacement,
) -> Result<RootCheck, UPolyError> {
    let n = a.len() - 1;
    if u.degree() != Some(n) || !u.leading_coefficient().is_some_and(One::is_one) {
        return Err(UPolyError::NotMonic);
    }
    let mut bounds = Vec::with_capacity(n + 3);
    bounds.push(RealBound::NegInfinite);
    bounds.extend(a.iter().cloned().map(RealBound::Finite));
    bounds.push(RealBound::PosInfinite);
    let mut counts = Vec::with_capacity(n + 2);
    for w in bounds.windows(2) {
        counts.push(sturm_count(u, &w[0], &w[1])?);
    }
    let expected = placement.interval_counts(n);
    let total_real = counts.iter().sum();
    let matches = counts == expected && total_real == n;
    Ok(RootCheck {
        counts,
        expected,
        total_real,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use crate::neumann::{NeumannCase, SubsetS};
    use num_traits::Zero;

    fn s(members: &[usize], n: usize) -> SubsetS {
        SubsetS::new(members.to_vec(), n).unwrap()
    }

    #[test]
    fn witness_polynomial_is_monic_with_roots_inside() {
        let a = [rat(0), rat(1), rat(2)];
        let qsq = [ratio(3, 32), ratio(3, 16), ratio(35, 32)];
        let u = u_polynomial(&qsq, &s(&[1, 3], 2), &a).unwrap();
        // x^2 - x + 3/16, roots 1/4 and 3/4.
        assert_eq!(
            u,
            UnivariatePolynomial::from_coeffs(vec![ratio(3, 16), rat(-1), rat(1)])
        );
        let placement = NeumannCase::parse("S13L11").unwrap().placement;
        let check = verify_roots(&u, &a, &placement).unwrap();
        assert!(check.matches);
        assert_eq!(check.counts, vec![0, 2, 0, 0]);
    }

    #[test]
    fn explicit_product_case() {
        let a = [rat(0), rat(1), rat(2)];
        let qsq = [ratio(3, 8), ratio(1, 4), ratio(3, 8)];
        let u = u_polynomial(&qsq, &s(&[1, 2, 3], 2), &a).unwrap();
        // (x - 1/2)(x - 3/2)
        assert!(u.eval(&ratio(1, 2)).is_zero());
        assert!(u.eval(&ratio(3, 2)).is_zero());
        let placement = NeumannCase::parse("S123L12").unwrap().placement;
        let check = verify_roots(&u, &a, &placement).unwrap();
        assert!(check.matches);
        assert_eq!(check.counts, vec![0, 1, 1, 0]);
    }

    #[test]
    fn constraint_violation_is_reported() {
        let a = [rat(0), rat(1), rat(2)];
        let qsq = [rat(1), rat(1), rat(1)];
        assert!(matches!(
            u_polynomial(&qsq, &s(&[1, 2, 3], 2), &a),
            Err(UPolyError::ConstraintViolated(_))
        ));
    }

    #[test]
    fn no_real_roots_is_a_mismatch_not_an_error() {
        // x^2 + 1 is monic of degree 2 with no real roots.
        let u = UnivariatePolynomial::from_coeffs(vec![rat(1), rat(0), rat(1)]);
        let a = [rat(0), rat(1), rat(2)];
        let placement = NeumannCase::parse("S13L11").unwrap().placement;
        let check = verify_roots(&u, &a, &placement).unwrap();
        assert!(!check.matches);
        assert_eq!(check.total_real, 0);
    }

    #[test]
    fn linearity_in_the_squared_coordinates() {
        let a = [rat(0), rat(1), rat(2)];
        let subset = s(&[1, 2, 3], 2);
        let x = [ratio(3, 8), ratio(1, 4), ratio(3, 8)];
        let y = [ratio(1, 4), ratio(1, 2), ratio(1, 4)];
        let alpha = ratio(1, 3);
        let beta = ratio(2, 3);
        let mix: Vec<Rational> = x
            .iter()
            .zip(&y)
            .map(|(xv, yv)| &alpha * xv + &beta * yv)
            .collect();
        let ux = u_polynomial(&x, &subset, &a).unwrap();
        let uy = u_polynomial(&y, &subset, &a).unwrap();
        let umix = u_polynomial(&mix, &subset, &a).unwrap();
        assert_eq!(umix, ux.scale(&alpha).add(&uy.scale(&beta)));
    }
}
