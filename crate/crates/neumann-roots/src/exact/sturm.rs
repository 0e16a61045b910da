//! Sturm chains and exact real-root counting on intervals.

use num_traits::{Signed, Zero};
use thiserror::Error;

use super::{Rational, UnivariatePolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SturmError {
    #[error("root counting requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("interval endpoint {0} is a root of the polynomial")]
    EndpointIsRoot(String),
    #[error("empty interval: lower bound must be strictly below upper bound")]
    EmptyInterval,
}

/// Interval endpoint for root counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealBound {
    NegInfinite,
    Finite(Rational),
    PosInfinite,
}

/// p / gcd(p, p'): same roots, all simple.
pub fn squarefree_part(p: &UnivariatePolynomial) -> UnivariatePolynomial {
    let d = p.derivative();
    if d.is_zero() {
        // Degree 0 (or zero polynomial): already squarefree.
        return p.clone();
    }
    let g = p.gcd(&d);
    if g.degree() == Some(0) {
        p.clone()
    } else {
        p.div_rem(&g).0
    }
}

/// Signed remainder sequence of a squarefree polynomial: p, p', then each
/// negated remainder, ending at a nonzero constant.
#[derive(Debug, Clone)]
pub struct SturmChain {
    polys: Vec<UnivariatePolynomial>,
}

impl SturmChain {
    /// Builds the chain for the squarefree part of `p`.
    pub fn new(p: &UnivariatePolynomial) -> Result<Self, SturmError> {
        if p.is_zero() {
            return Err(SturmError::ZeroPolynomial);
        }
        let p0 = squarefree_part(p);
        let mut polys = vec![p0.clone()];
        let p1 = p0.derivative();
        if !p1.is_zero() {
            polys.push(p1);
            loop {
                let k = polys.len();
                let (_, rem) = polys[k - 2].div_rem(&polys[k - 1]);
                if rem.is_zero() {
                    break;
                }
                polys.push(rem.neg());
            }
        }
        Ok(Self { polys })
    }

    pub fn polys(&self) -> &[UnivariatePolynomial] {
        &self.polys
    }

    /// Strict bound on root magnitude: 1 + max |c_i| / |c_deg|.
    pub fn cauchy_bound(&self) -> Rational {
        let p = &self.polys[0];
        let lead = p.leading_coefficient().expect("nonzero by construction").abs();
        let mut m = Rational::zero();
        if let Some(deg) = p.degree() {
            for c in &p.coeffs()[..deg] {
                let ratio = c.abs() / &lead;
                if ratio > m {
                    m = ratio;
                }
            }
        }
        m + super::rat(1)
    }

    fn variations_at(&self, x: &Rational) -> usize {
        let mut last: i8 = 0;
        let mut count = 0;
        for q in &self.polys {
            let s = super::rational_sign(&q.eval(x));
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }
}

/// Number of distinct real roots of `p` in the interval (lo, hi].
///
/// Finite endpoints may not be roots (EndpointIsRoot); infinite endpoints are
/// replaced internally by the Cauchy bound, which no root can reach, so the
/// half-open interval coincides with the open one. Multiple roots count once
/// because the chain is built from the squarefree part.
pub fn sturm_count(
    p: &UnivariatePolynomial,
    lo: &RealBound,
    hi: &RealBound,
) -> Result<usize, SturmError> {
    let chain = SturmChain::new(p)?;
    for v in [lo, hi] {
        if let RealBound::Finite(v) = v {
            if chain.polys[0].eval(v).is_zero() {
                return Err(SturmError::EndpointIsRoot(super::format_rational(v)));
            }
        }
    }
    // Replacement for an infinite endpoint: beyond every root and beyond the
    // finite partner, so the substituted interval is always proper.
    let mut reach = chain.cauchy_bound();
    for v in [lo, hi] {
        if let RealBound::Finite(v) = v {
            let needed = v.abs() + super::rat(1);
            if needed > reach {
                reach = needed;
            }
        }
    }
    let lo_val = match lo {
        RealBound::NegInfinite => -reach.clone(),
        RealBound::Finite(v) => v.clone(),
        RealBound::PosInfinite => return Err(SturmError::EmptyInterval),
    };
    let hi_val = match hi {
        RealBound::NegInfinite => return Err(SturmError::EmptyInterval),
        RealBound::Finite(v) => v.clone(),
        RealBound::PosInfinite => reach,
    };
    if lo_val >= hi_val {
        return Err(SturmError::EmptyInterval);
    }
    Ok(chain.variations_at(&lo_val) - chain.variations_at(&hi_val))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_coeffs(cs.iter().map(|&c| rat(c)).collect())
    }

    fn fin(n: i64, d: i64) -> RealBound {
        RealBound::Finite(ratio(n, d))
    }

    #[test]
    fn counts_single_root_between_endpoints() {
        // x^2 - 3x + 2 has roots 1 and 2.
        let q = p(&[2, -3, 1]);
        assert_eq!(sturm_count(&q, &fin(1, 2), &fin(3, 2)).unwrap(), 1);
        assert_eq!(
            sturm_count(&q, &RealBound::NegInfinite, &RealBound::PosInfinite).unwrap(),
            2
        );
    }

    #[test]
    fn no_real_roots() {
        let q = p(&[1, 0, 1]); // x^2 + 1
        assert_eq!(
            sturm_count(&q, &RealBound::NegInfinite, &RealBound::PosInfinite).unwrap(),
            0
        );
    }

    #[test]
    fn witness_quadratic_has_both_roots_in_unit_interval() {
        // x^2 - x + 3/16: roots 1/4 and 3/4 by the quadratic formula.
        let q = UnivariatePolynomial::from_coeffs(vec![ratio(3, 16), rat(-1), rat(1)]);
        assert_eq!(sturm_count(&q, &fin(0, 1), &fin(1, 1)).unwrap(), 2);
    }

    #[test]
    fn endpoint_root_is_reported() {
        let q = p(&[2, -3, 1]);
        assert_eq!(
            sturm_count(&q, &fin(1, 1), &fin(3, 1)),
            Err(SturmError::EndpointIsRoot("1".into()))
        );
    }

    #[test]
    fn multiple_roots_count_once() {
        // (x-1)^2 (x+2)
        let q = p(&[2, -3, 0, 1]);
        assert_eq!(
            sturm_count(&q, &RealBound::NegInfinite, &RealBound::PosInfinite).unwrap(),
            2
        );
    }

    proptest! {
        // Counts over a partition of an interval sum to the whole count,
        // and the full-line count matches the discriminant on quadratics.
        #[test]
        fn partition_sums_and_discriminant(a in -8i64..=8, b in -8i64..=8, c in -8i64..=8) {
            prop_assume!(a != 0);
            let q = p(&[c, b, a]);
            let disc = b * b - 4 * a * c;
            let whole = sturm_count(&q, &RealBound::NegInfinite, &RealBound::PosInfinite).unwrap();
            let expected = if disc > 0 { 2 } else if disc == 0 { 1 } else { 0 };
            prop_assert_eq!(whole, expected);

            // Split at a couple of non-root points and compare.
            for split in [ratio(-1, 3), ratio(17, 5)] {
                if q.eval(&split).is_zero() {
                    continue;
                }
                let left = sturm_count(&q, &RealBound::NegInfinite, &RealBound::Finite(split.clone())).unwrap();
                let right = sturm_count(&q, &RealBound::Finite(split), &RealBound::PosInfinite).unwrap();
                prop_assert_eq!(left + right, whole);
            }
        }
    }
}
