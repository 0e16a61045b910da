//! Class-wide sign determination for gap polynomials.
//!
//! A polynomial whose gap expansion has coefficients of one sign is that sign
//! everywhere on the positive orthant. When the raw expansion is mixed, the
//! expansion of (g1 + ... + gk)^m * p may still be uniform for some small m,
//! which certifies the same thing; m = 0 suffices for every tabulated n = 2
//! case and the multiplier is a fallback for exploratory runs. When no
//! certificate is found the answer is Indeterminate, carrying a seeded
//! sampling summary: observing both signs proves the sign really varies over
//! the ordering class, a uniform sample is merely conjectural.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{GapPolynomial, OrderedScene};

/// Default Polya multiplier cap.
pub const DEFAULT_POLYA_MAX: usize = 4;
/// Sample count behind every Indeterminate report.
pub const SIGN_SAMPLE_COUNT: usize = 1000;
/// Fixed stream for sign sampling, so reports are reproducible.
pub const SIGN_SAMPLE_SEED: u64 = 0x7369676e73;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignValue {
    Negative,
    Zero,
    Positive,
    Indeterminate(Box<IndeterminateReport>),
}

impl SignValue {
    pub fn decided(&self) -> Option<i8> {
        match self {
            SignValue::Negative => Some(-1),
            SignValue::Zero => Some(0),
            SignValue::Positive => Some(1),
            SignValue::Indeterminate(_) => None,
        }
    }
}

/// What the sampler saw at the undecided expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleClass {
    /// Both signs observed: the sign provably depends on the gaps.
    MixedSigns,
    /// Every nonzero sample was positive; not a certificate.
    ConjecturedPositive,
    /// Every nonzero sample was negative; not a certificate.
    ConjecturedNegative,
    /// Every sample vanished.
    AllZeroSamples,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingSummary {
    pub seed: u64,
    pub total: usize,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub classification: SampleClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndeterminateReport {
    pub expression: String,
    pub samples: SamplingSummary,
}

/// Decision without the sampling pass; `None` means no certificate exists up
/// to the given multiplier power. Used for bulk classification where the
/// sampling report would be discarded anyway.
pub fn try_decide_sign(p: &GapPolynomial, polya_max: usize) -> Option<i8> {
    if p.is_zero() {
        return Some(0);
    }
    // A uniform-coefficient certificate at any power forces a fixed nonzero
    // value at every positive point, so a zero or a sign clash at probe
    // points rules every power out at once.
    let sum = p.coefficient_sum();
    if sum.is_zero() {
        return None;
    }
    let expected: i8 = if sum.is_positive() { 1 } else { -1 };
    for probe in probe_points(p.gap_count()) {
        let v = p.evaluate_int(&probe);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != expected {
            return None;
        }
    }
    let multiplier = gap_sum(p.gap_count());
    let mut q = p.clone();
    for _ in 0..=polya_max {
        if q.all_coefficients_positive() {
            return Some(1);
        }
        if q.all_coefficients_negative() {
            return Some(-1);
        }
        q = q.mul(&multiplier);
    }
    None
}

/// Full sign decision. Positive/Negative are exact class-wide certificates;
/// Indeterminate carries the rendered expression and the sampling summary.
pub fn sign_of(p: &GapPolynomial, polya_max: usize) -> SignValue {
    match try_decide_sign(p, polya_max) {
        Some(0) => SignValue::Zero,
        Some(1) => SignValue::Positive,
        Some(-1) => SignValue::Negative,
        Some(_) => unreachable!(),
        None => SignValue::Indeterminate(Box::new(IndeterminateReport {
            expression: p.to_string(),
            samples: sample_signs(p),
        })),
    }
}

/// Sign readable off sign-definite linear factors alone: divides out every
/// positive difference form of the scene and reports the residual constant's
/// sign. `None` when a non-constant residual remains, i.e. the sign is not
/// visible from a factorization into ordered-value differences.
pub fn sign_by_difference_factors(p: &GapPolynomial, scene: &OrderedScene) -> Option<i8> {
    if p.is_zero() {
        return Some(0);
    }
    let mut residual = p.clone();
    for form in scene.positive_difference_forms() {
        while let Some(q) = residual.divide_exact(&form) {
            residual = q;
            if residual.total_degree() == Some(0) {
                break;
            }
        }
    }
    if residual.total_degree() == Some(0) {
        let c = residual.coefficient_sum();
        Some(if c.is_positive() { 1 } else { -1 })
    } else {
        None
    }
}

/// Deterministic sampling of the polynomial's sign over the open orthant.
pub fn sample_signs(p: &GapPolynomial) -> SamplingSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(SIGN_SAMPLE_SEED);
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    for _ in 0..SIGN_SAMPLE_COUNT {
        let gaps: Vec<i64> = (0..p.gap_count()).map(|_| rng.gen_range(1..=64)).collect();
        let v = p.evaluate_int(&gaps);
        if v.is_zero() {
            zero += 1;
        } else if v.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    let classification = match (pos, neg) {
        (0, 0) => SampleClass::AllZeroSamples,
        (_, 0) => SampleClass::ConjecturedPositive,
        (0, _) => SampleClass::ConjecturedNegative,
        _ => SampleClass::MixedSigns,
    };
    SamplingSummary {
        seed: SIGN_SAMPLE_SEED,
        total: SIGN_SAMPLE_COUNT,
        positive: pos,
        negative: neg,
        zero,
        classification,
    }
}

fn gap_sum(gap_count: usize) -> GapPolynomial {
    GapPolynomial::gap_range_sum(gap_count, 0, gap_count)
}

fn probe_points(gap_count: usize) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SIGN_SAMPLE_SEED ^ 0xA5A5);
    let mut probes = vec![vec![1i64; gap_count]];
    for _ in 0..7 {
        probes.push((0..gap_count).map(|_| rng.gen_range(1..=16)).collect());
    }
    probes
}
