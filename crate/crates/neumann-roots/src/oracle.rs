//! Independent ground truth: seeded exact sampling inside an ordering class,
//! direct solution of the pinned square system, and cross-validation of the
//! elimination engine against it.

use num_traits::Signed;
use rand::Rng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dines::{
    decide, lift_witness, terminal_witness, DinesTrace, PivotPolicy, SignPolicy, Verdict,
};
use crate::exact::{
    format_rational, gauss_solve, rat, RationalMatrix, Rational, SingularReport,
};
use crate::gappoly::scene_from_placement;
use crate::neumann::{
    build_system_instance, build_system_symbolic, verify_roots, u_polynomial, InstanceParameters,
    NeumannCase,
};

/// Reproducible sampling plan. Gaps are drawn independently per (seed, case,
/// index) from rationals in [gap_low, gap_high] with denominators up to
/// denominator_bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    pub samples: usize,
    pub gap_low: Rational,
    pub gap_high: Rational,
    pub denominator_bound: u32,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            samples: 100,
            gap_low: crate::exact::ratio(1, 8),
            gap_high: rat(8),
            denominator_bound: 64,
        }
    }
}

impl SampleConfig {
    pub fn with_seed_samples(seed: u64, samples: usize) -> Self {
        Self {
            seed,
            samples,
            ..Self::default()
        }
    }
}

fn stream_for(seed: u64, case_name: &str, index: u64) -> ChaCha20Rng {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(case_name.as_bytes());
    hasher.update(index.to_le_bytes());
    let digest = hasher.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    rand::SeedableRng::from_seed(key)
}

/// Draws one instance of the case: positive gaps, then prefix sums from base
/// 0, split back into constants and roots by the scene order. Identical
/// (seed, case, index) triples give identical instances.
pub fn sample_instance(case: &NeumannCase, config: &SampleConfig, index: u64) -> InstanceParameters {
    let scene = scene_from_placement(case.n, &case.placement);
    let mut rng = stream_for(config.seed, &case.name(), index);
    let mut gaps = Vec::with_capacity(scene.gap_count());
    for _ in 0..scene.gap_count() {
        let denom = rng.gen_range(1..=config.denominator_bound as i64);
        let lo_num = (&config.gap_low * rat(denom)).ceil().to_integer();
        let hi_num = (&config.gap_high * rat(denom)).floor().to_integer();
        let lo_i = i64::try_from(&lo_num).expect("gap bound fits i64");
        let hi_i = i64::try_from(&hi_num).expect("gap bound fits i64");
        let numer = rng.gen_range(lo_i..=hi_i);
        gaps.push(crate::exact::ratio(numer, denom));
    }
    let mut value = rat(0);
    let mut a = Vec::with_capacity(case.n + 1);
    let mut lambda = Vec::with_capacity(case.n);
    for (k, sym) in scene.symbols().iter().enumerate() {
        if k > 0 {
            value += &gaps[k - 1];
        }
        match sym {
            crate::gappoly::SceneSymbol::A(_) => a.push(value.clone()),
            crate::gappoly::SceneSymbol::Lambda(_) => lambda.push(value.clone()),
        }
    }
    InstanceParameters { a, lambda }
}

/// Outcome of solving the pinned square system directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirectResult {
    /// Unique solution, strictly positive in every coordinate.
    Feasible(Vec<Rational>),
    /// Unique solution with some coordinate <= 0.
    Infeasible,
    /// Rank-deficient matrix; the caller resamples.
    Singular(SingularReport),
}

/// Pins the homogenizing coordinate to 1 and solves the remaining square
/// (n+1) x (n+1) system exactly.
pub fn direct_feasibility(case: &NeumannCase, inst: &InstanceParameters) -> DirectResult {
    let rows = match build_system_instance(case, inst) {
        Ok(rows) => rows,
        Err(_) => return DirectResult::Infeasible,
    };
    let n = case.n;
    let mut square = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for row in &rows {
        square.push(row[..n + 1].to_vec());
        rhs.push(-row[n + 1].clone());
    }
    let m = RationalMatrix::from_rows(square);
    match gauss_solve(&m, &rhs) {
        Ok(solution) => {
            if solution.iter().all(Signed::is_positive) {
                DirectResult::Feasible(solution)
            } else {
                DirectResult::Infeasible
            }
        }
        Err(report) => DirectResult::Singular(report),
    }
}

/// Per-sample record in a cross-check report.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SampleOutcome {
    pub index: u64,
    /// Instance-mode elimination verdict.
    pub verdict: String,
    /// Direct square-solve verdict.
    pub direct: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    /// Lifted witness equals the direct solution exactly (feasible samples).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_matches_direct: Option<bool>,
    /// Sturm counts of the reconstructed polynomial match the placement.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots_match: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub case: String,
    pub symbolic: String,
    pub samples: Vec<SampleOutcome>,
    pub agreement: bool,
    pub singular_retries: usize,
    pub non_positive_lifts: usize,
}

/// Runs the symbolic decision once, then per sample the instance-mode
/// elimination, the direct solve, witness lifting and root verification.
/// Disagreement between any two decisive answers is recorded verbatim.
pub fn cross_validate(
    case: &NeumannCase,
    config: &SampleConfig,
    sign_policy: &SignPolicy,
    pivot: PivotPolicy,
) -> CrossCheckReport {
    let (_, symbolic_rows) = build_system_symbolic(case);
    let (symbolic_verdict, _) = decide(symbolic_rows, pivot, sign_policy);
    let mut samples = Vec::with_capacity(config.samples);
    let mut agreement = true;
    let mut singular_retries = 0usize;
    let mut non_positive_lifts = 0usize;

    for k in 0..config.samples as u64 {
        // Retry indices live above the base range so they stay reproducible.
        let mut index = k;
        let mut attempt = 0;
        let (inst, direct) = loop {
            let inst = sample_instance(case, config, index);
            match direct_feasibility(case, &inst) {
                DirectResult::Singular(_) if attempt < 10 => {
                    singular_retries += 1;
                    attempt += 1;
                    index = k + (attempt as u64) * (config.samples as u64).max(1) * 1000;
                }
                other => break (inst, other),
            }
        };
        let system = build_system_instance(case, &inst).expect("sampled instance fits placement");
        let (instance_verdict, trace) = decide(system, pivot, sign_policy);

        let mut outcome = SampleOutcome {
            index: k,
            verdict: instance_verdict.label().to_owned(),
            direct: match &direct {
                DirectResult::Feasible(_) => "feasible".into(),
                DirectResult::Infeasible => "infeasible".into(),
                DirectResult::Singular(r) => format!("singular(rank {})", r.rank),
            },
            witness: None,
            witness_matches_direct: None,
            roots_match: None,
        };

        let direct_feasible = matches!(direct, DirectResult::Feasible(_));
        if instance_verdict.is_feasible() != direct_feasible {
            agreement = false;
        }
        if let Some(expected) = symbolic_verdict_bit(&symbolic_verdict) {
            if expected != instance_verdict.is_feasible() {
                agreement = false;
            }
        }

        if instance_verdict.is_feasible() {
            match lift_and_verify(case, &inst, &trace) {
                Ok((witness, roots_match)) => {
                    if let DirectResult::Feasible(direct_solution) = &direct {
                        let matches = witness.unhomogenized() == direct_solution.as_slice();
                        if !matches {
                            agreement = false;
                        }
                        outcome.witness_matches_direct = Some(matches);
                    }
                    outcome.witness = Some(
                        witness
                            .unhomogenized()
                            .iter()
                            .map(format_rational)
                            .collect(),
                    );
                    if !roots_match {
                        agreement = false;
                    }
                    outcome.roots_match = Some(roots_match);
                }
                Err(_) => {
                    non_positive_lifts += 1;
                    agreement = false;
                }
            }
        }
        samples.push(outcome);
    }

    CrossCheckReport {
        case: case.name(),
        symbolic: symbolic_verdict.label().to_owned(),
        samples,
        agreement,
        singular_retries,
        non_positive_lifts,
    }
}

fn symbolic_verdict_bit(verdict: &Verdict) -> Option<bool> {
    match verdict {
        Verdict::Feasible => Some(true),
        Verdict::Infeasible(_) => Some(false),
        Verdict::Indeterminate(_) => None,
    }
}

fn lift_and_verify(
    case: &NeumannCase,
    inst: &InstanceParameters,
    trace: &DinesTrace<Rational>,
) -> Result<(crate::dines::WitnessVector, bool), crate::dines::LiftError> {
    let terminal = terminal_witness(trace.levels.last().expect("nonempty trace"))?;
    let witness = lift_witness(trace, terminal)?;
    let qsq = witness.unhomogenized();
    let u = u_polynomial(qsq, &case.subset, &inst.a).expect("witness satisfies the constraint");
    let roots_match = verify_roots(&u, &inst.a, &case.placement)
        .map(|check| check.matches)
        .unwrap_or(false);
    Ok((witness, roots_match))
}
