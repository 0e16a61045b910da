//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured result (run with `--nocapture` to see them).

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use neumann_roots::dines::{decide, PivotPolicy, SignPolicy, Verdict};
use neumann_roots::exact::{ratio, Rational};
use neumann_roots::gappoly::{GapPolynomial, OrderedScene, SampleClass, SceneSymbol};
use neumann_roots::neumann::{
    build_system_instance, enumerate_cases, InstanceParameters, NeumannCase,
};
use neumann_roots::oracle::{cross_validate, sample_instance, SampleConfig};
use neumann_roots::report::{build_table, compare_with_golden, parse_golden, run_symbolic};

const GOLDEN_N2: &str = include_str!("../data/golden_n2.csv");

const FEASIBLE_N2: [&str; 10] = [
    "S1L23", "S2L03", "S3L01", "S12L13", "S13L00", "S13L11", "S13L22", "S13L33", "S23L02",
    "S123L12",
];

fn a(j: usize) -> SceneSymbol {
    SceneSymbol::A(j)
}

fn l(r: usize) -> SceneSymbol {
    SceneSymbol::Lambda(r)
}

/// Product of value differences under a scene.
fn diff_product(scene: &OrderedScene, factors: &[(SceneSymbol, SceneSymbol)]) -> GapPolynomial {
    let mut acc = GapPolynomial::constant(scene.gap_count(), 1);
    for &(x, y) in factors {
        acc = acc.mul(&scene.difference(x, y));
    }
    acc
}

/// a_i*a_j style value product.
fn value_product(scene: &OrderedScene, x: SceneSymbol, y: SceneSymbol) -> GapPolynomial {
    scene.value(x).mul(&scene.value(y))
}

/// a1a2 - a1a3 + a2a3 - a2l1 - a2l2 + l1l2
fn expr_a(scene: &OrderedScene) -> GapPolynomial {
    value_product(scene, a(1), a(2))
        .sub(&value_product(scene, a(1), a(3)))
        .add(&value_product(scene, a(2), a(3)))
        .sub(&value_product(scene, a(2), l(1)))
        .sub(&value_product(scene, a(2), l(2)))
        .add(&value_product(scene, l(1), l(2)))
}

/// a1a2 + a1a3 - a2a3 - a1l1 - a1l2 + l1l2
fn expr_b(scene: &OrderedScene) -> GapPolynomial {
    value_product(scene, a(1), a(2))
        .add(&value_product(scene, a(1), a(3)))
        .sub(&value_product(scene, a(2), a(3)))
        .sub(&value_product(scene, a(1), l(1)))
        .sub(&value_product(scene, a(1), l(2)))
        .add(&value_product(scene, l(1), l(2)))
}

/// a1a2 - a1a3 - a2a3 + a3l1 + a3l2 - l1l2
fn expr_c(scene: &OrderedScene) -> GapPolynomial {
    value_product(scene, a(1), a(2))
        .sub(&value_product(scene, a(1), a(3)))
        .sub(&value_product(scene, a(2), a(3)))
        .add(&value_product(scene, a(3), l(1)))
        .add(&value_product(scene, a(3), l(2)))
        .sub(&value_product(scene, l(1), l(2)))
}

#[test]
fn criterion_1_golden_table_reproduction() {
    let start = Instant::now();
    let output = build_table(2, &SignPolicy::default(), PivotPolicy::FirstMixed);
    let elapsed = start.elapsed();

    assert_eq!(output.rows.len(), 70);
    let feasible: Vec<&str> = output
        .rows
        .iter()
        .filter(|r| r.verdict == "1")
        .map(|r| r.case.as_str())
        .collect();
    assert_eq!(feasible, FEASIBLE_N2, "feasible case set must match exactly");
    for row in &output.rows {
        assert_ne!(row.verdict, "?", "{} must be decisive", row.case);
    }

    let golden = parse_golden(GOLDEN_N2).unwrap();
    let diff = compare_with_golden(&output.rows, &golden);
    assert!(
        diff.verdicts_match(),
        "verdict mismatches: {:?}",
        diff.verdict_mismatches
    );
    assert!(
        diff.step_notes.is_empty(),
        "step/pf divergences: {:?}",
        diff.step_notes
    );
    assert!(
        elapsed.as_secs() < 10,
        "table took {elapsed:?}, budget is 10 s"
    );
    println!(
        "criterion 1 PASS: 70/70 verdicts match the golden table (steps and pf too) in {elapsed:?}"
    );
}

#[test]
fn criterion_2_worked_example_trace() {
    let case = NeumannCase::parse("S13L00").unwrap();
    let run = run_symbolic(&case, &SignPolicy::default(), PivotPolicy::FirstMixed);
    assert!(run.verdict.is_feasible(), "S13L00 must be feasible");

    // Level 0 sign matrix.
    let level0 = &run.trace.levels[0];
    assert_eq!(
        level0.signs,
        vec![
            vec![Some(1), Some(-1), Some(1), Some(-1)],
            vec![Some(1), Some(-1), Some(1), Some(0)],
            vec![Some(1), Some(-1), Some(1), Some(0)],
        ]
    );
    let part0 = level0.partition.as_ref().unwrap();
    assert_eq!(part0.pivot_row, 0);
    assert_eq!(part0.positive, vec![0, 2], "I = {{1,3}} (1-based)");
    assert_eq!(part0.negative, vec![1, 3], "J = {{2,4}} (1-based)");
    assert!(part0.attached_zero.is_empty());

    // Level 1: vec order (1,2),(3,2),(1,4),(3,4); first row signs + - + +.
    let level1 = &run.trace.levels[1];
    assert_eq!(
        level1.ancestry.as_ref().unwrap(),
        &vec![(0, 1), (2, 1), (0, 3), (2, 3)]
    );
    assert_eq!(
        level1.signs[0],
        vec![Some(1), Some(-1), Some(1), Some(1)],
        "level-1 first-row signs in vec order"
    );
    let part1 = level1.partition.as_ref().unwrap();
    assert_eq!(part1.positive, vec![0, 2, 3]);
    assert_eq!(part1.negative, vec![1]);

    // Final level: columns (1,2),(3,2),(4,2); the first and third entries
    // factor exactly as products of ordered-value differences.
    let level2 = &run.trace.levels[2];
    assert_eq!(
        level2.ancestry.as_ref().unwrap(),
        &vec![(0, 1), (2, 1), (3, 1)]
    );
    let scene = &run.scene;
    let first = diff_product(
        scene,
        &[(a(2), a(1)), (a(3), a(1)), (a(3), a(2)), (l(2), l(1))],
    );
    assert_eq!(level2.matrix[0][0], first, "(a2-a1)(a3-a1)(a3-a2)(l2-l1)");
    let third = diff_product(
        scene,
        &[(a(3), a(2)), (a(1), l(1)), (a(1), l(2)), (l(2), l(1))],
    )
    .neg();
    assert_eq!(level2.matrix[0][2], third, "-(a3-a2)(a1-l1)(a1-l2)(l2-l1)");

    // Signs implied by those factorizations: +1 and -1; middle undecided
    // (its sign really varies over the class); row mixed, hence feasible.
    assert_eq!(level2.signs[0][0], Some(1));
    assert_eq!(level2.signs[0][2], Some(-1));
    assert_eq!(level2.signs[0][1], None);
    println!("criterion 2 PASS: S13L00 trace reproduces the worked example exactly");
}

#[test]
fn criterion_3_partial_factorization_regression() {
    // Final sign rows at Polya power 0 for the ten cases resolved by partial
    // factorization, plus the printed factorization identities themselves.
    let expected: [(&str, i8, usize); 10] = [
        ("S12L11", -1, 4),
        ("S12L33", 1, 4),
        ("S13L01", 1, 3),
        ("S13L02", 1, 3),
        ("S13L03", 1, 3),
        ("S13L12", 1, 3),
        ("S13L13", 1, 3),
        ("S13L23", 1, 3),
        ("S23L00", -1, 4),
        ("S23L22", 1, 4),
    ];
    let zero_polya = SignPolicy { polya_max: 0 };
    for (name, sign, width) in expected {
        let case = NeumannCase::parse(name).unwrap();
        let run = run_symbolic(&case, &zero_polya, PivotPolicy::FirstMixed);
        match &run.verdict {
            Verdict::Infeasible(info) => {
                assert_eq!(info.level, 2, "{name} must be refuted at the final level");
                assert_eq!(info.signs.len(), width, "{name} final row width");
                assert!(
                    info.signs.iter().all(|&s| s == sign),
                    "{name} final sign row must be uniformly {sign}, got {:?}",
                    info.signs
                );
            }
            other => panic!("{name}: expected infeasible at Polya power 0, got {other:?}"),
        }
    }

    // The partial-factorization identities, as exact gap-polynomial
    // equalities under each scene that uses them.
    let scene_of = |name: &str| {
        let case = NeumannCase::parse(name).unwrap();
        neumann_roots::gappoly::scene_from_placement(case.n, &case.placement)
    };
    // expr_a = (l1-a1)(a3-a2) + (a3-l2)(a2-l1)
    for name in ["S12L11", "S12L33", "S23L00"] {
        let sc = scene_of(name);
        let rhs = diff_product(&sc, &[(l(1), a(1)), (a(3), a(2))])
            .add(&diff_product(&sc, &[(a(3), l(2)), (a(2), l(1))]));
        assert_eq!(expr_a(&sc), rhs, "{name}: first expr_a identity");
    }
    // expr_a = (l1-a1)(l2-a2) + (a3-l2)(a2-a1)
    for name in ["S23L00", "S23L22"] {
        let sc = scene_of(name);
        let rhs = diff_product(&sc, &[(l(1), a(1)), (l(2), a(2))])
            .add(&diff_product(&sc, &[(a(3), l(2)), (a(2), a(1))]));
        assert_eq!(expr_a(&sc), rhs, "{name}: rearranged expr_a identity");
    }
    // expr_b = (a2-l1)(a1-a3) + (a1-l1)(a3-l2)
    for name in ["S12L11", "S12L33", "S13L01", "S13L23"] {
        let sc = scene_of(name);
        let rhs = diff_product(&sc, &[(a(2), l(1)), (a(1), a(3))])
            .add(&diff_product(&sc, &[(a(1), l(1)), (a(3), l(2))]));
        assert_eq!(expr_b(&sc), rhs, "{name}: first expr_b identity");
    }
    // expr_b = (a2-l1)(a1-l2) + (a3-l2)(a1-a2)
    for name in ["S13L01", "S13L02", "S13L03"] {
        let sc = scene_of(name);
        let rhs = diff_product(&sc, &[(a(2), l(1)), (a(1), l(2))])
            .add(&diff_product(&sc, &[(a(3), l(2)), (a(1), a(2))]));
        assert_eq!(expr_b(&sc), rhs, "{name}: alternative expr_b identity");
    }
    // expr_c = (l1-a1)(a3-a2) + (l1-a3)(a2-l2)
    for name in ["S13L12", "S13L13", "S23L00", "S23L22"] {
        let sc = scene_of(name);
        let rhs = diff_product(&sc, &[(l(1), a(1)), (a(3), a(2))])
            .add(&diff_product(&sc, &[(l(1), a(3)), (a(2), l(2))]));
        assert_eq!(expr_c(&sc), rhs, "{name}: expr_c identity");
    }

    // The stated per-scene conclusions, decided at Polya power 0.
    use neumann_roots::gappoly::{sign_of, SignValue};
    let sign0 = |p: &GapPolynomial| sign_of(p, 0);
    assert_eq!(sign0(&expr_a(&scene_of("S12L11"))), SignValue::Positive);
    assert_eq!(sign0(&expr_b(&scene_of("S12L11"))), SignValue::Negative);
    assert_eq!(sign0(&expr_a(&scene_of("S12L33"))), SignValue::Positive);
    assert_eq!(sign0(&expr_b(&scene_of("S12L33"))), SignValue::Positive);
    for name in ["S13L01", "S13L02", "S13L03"] {
        assert_eq!(sign0(&expr_b(&scene_of(name))), SignValue::Negative, "{name}");
    }
    for name in ["S13L12", "S13L13"] {
        assert_eq!(sign0(&expr_c(&scene_of(name))), SignValue::Positive, "{name}");
    }
    assert_eq!(sign0(&expr_b(&scene_of("S13L23"))), SignValue::Positive);
    assert_eq!(sign0(&expr_a(&scene_of("S23L00"))), SignValue::Positive);
    assert_eq!(sign0(&expr_c(&scene_of("S23L00"))), SignValue::Negative);
    assert_eq!(sign0(&expr_a(&scene_of("S23L22"))), SignValue::Positive);
    assert_eq!(sign0(&expr_c(&scene_of("S23L22"))), SignValue::Positive);

    println!("criterion 3 PASS: all ten partially-factorized cases decide at power 0 with the stated sign rows and identities");
}

#[test]
fn criterion_4_oracle_cross_validation() {
    let config = SampleConfig::with_seed_samples(42, 100);
    let sign_policy = SignPolicy::default();
    let cases = enumerate_cases(2);
    let reports: Vec<_> = cases
        .par_iter()
        .map(|case| cross_validate(case, &config, &sign_policy, PivotPolicy::FirstMixed))
        .collect();
    assert_eq!(reports.len(), 70);
    let mut lifted_witnesses = 0usize;
    for report in &reports {
        assert!(report.agreement, "{} disagreed", report.case);
        assert_eq!(
            report.non_positive_lifts, 0,
            "{} had non-positive lifts",
            report.case
        );
        for sample in &report.samples {
            if sample.verdict == "feasible" {
                assert_eq!(
                    sample.witness_matches_direct,
                    Some(true),
                    "{} sample {}: lifted witness must equal the direct solution",
                    report.case,
                    sample.index
                );
                lifted_witnesses += 1;
            }
        }
    }
    assert_eq!(
        lifted_witnesses, 1000,
        "exactly the 10 feasible cases x 100 samples lift witnesses"
    );
    println!("criterion 4 PASS: 70/70 agreements over 100 samples each; {lifted_witnesses} lifted witnesses all equal the direct solutions; 0 non-positive lifts");
}

#[test]
fn criterion_5_root_realization() {
    let config = SampleConfig::with_seed_samples(42, 100);
    let sign_policy = SignPolicy::default();
    for name in FEASIBLE_N2 {
        let case = NeumannCase::parse(name).unwrap();
        let report = cross_validate(&case, &config, &sign_policy, PivotPolicy::FirstMixed);
        assert!(report.agreement, "{name} disagreed");
        for sample in &report.samples {
            assert_eq!(sample.verdict, "feasible", "{name} sample {}", sample.index);
            assert_eq!(
                sample.roots_match,
                Some(true),
                "{name} sample {}: interval root counts must match the placement",
                sample.index
            );
        }
    }
    // The four one-interval cases place both roots in each interval in turn.
    for (name, interval) in [("S13L00", 0), ("S13L11", 1), ("S13L22", 2), ("S13L33", 3)] {
        let case = NeumannCase::parse(name).unwrap();
        assert_eq!(case.placement.interval_counts(2)[interval], 2);
    }
    println!(
        "criterion 5 PASS: 10 feasible cases x 100 witnesses, every interval root count exact"
    );
}

#[test]
fn criterion_6_n3_property_sweep() {
    let start = Instant::now();
    let config = SampleConfig::with_seed_samples(42, 25);
    let sign_policy = SignPolicy::default();
    let cases = enumerate_cases(3);
    assert_eq!(cases.len(), 15 * 35);

    let results: Vec<_> = cases
        .par_iter()
        .map(|case| {
            let run = run_symbolic(case, &sign_policy, PivotPolicy::FirstMixed);
            let report = cross_validate(case, &config, &sign_policy, PivotPolicy::FirstMixed);
            (run, report)
        })
        .collect();

    let mut decisive = 0usize;
    let mut indeterminate = 0usize;
    for (run, report) in &results {
        match &run.verdict {
            Verdict::Indeterminate(info) => {
                indeterminate += 1;
                assert!(
                    !info.expression.is_empty(),
                    "{}: indeterminate without expression",
                    report.case
                );
                let s = &info.samples;
                assert_eq!(
                    s.positive + s.negative + s.zero,
                    s.total,
                    "{}: sampling counts must sum to the total",
                    report.case
                );
                let consistent = match s.classification {
                    SampleClass::MixedSigns => s.positive > 0 && s.negative > 0,
                    SampleClass::ConjecturedPositive => s.positive > 0 && s.negative == 0,
                    SampleClass::ConjecturedNegative => s.negative > 0 && s.positive == 0,
                    SampleClass::AllZeroSamples => s.positive == 0 && s.negative == 0,
                };
                assert!(consistent, "{}: inconsistent sampling summary", report.case);
            }
            _ => {
                decisive += 1;
                assert!(
                    report.agreement,
                    "{}: decisive symbolic verdict disagreed with instances",
                    report.case
                );
            }
        }
        // Instance runs must agree with the direct solver regardless.
        for sample in &report.samples {
            assert_eq!(
                sample.verdict == "feasible",
                sample.direct == "feasible",
                "{} sample {}: engine vs direct",
                report.case,
                sample.index
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 300,
        "n=3 sweep took {elapsed:?}, budget is 5 minutes"
    );
    println!(
        "criterion 6 PASS: 525 cases ({decisive} decisive, {indeterminate} indeterminate with coherent reports), 25 samples each, in {elapsed:?}"
    );
}

#[test]
fn criterion_7_invariance_suite() {
    // Translation and positive scaling leave instance verdicts and
    // normalized witnesses unchanged.
    let cases = enumerate_cases(2);
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    let config = SampleConfig::default();
    let sign_policy = SignPolicy::default();
    for trial in 0..50 {
        let case = &cases[rng.gen_range(0..cases.len())];
        let inst = sample_instance(case, &config, 10_000 + trial);
        let shift = ratio(rng.gen_range(-64..=64), rng.gen_range(1..=16));
        let scale = ratio(rng.gen_range(1..=64), rng.gen_range(1..=16));
        let transform = |v: &Rational| v * &scale + &shift;
        let moved = InstanceParameters {
            a: inst.a.iter().map(transform).collect(),
            lambda: inst.lambda.iter().map(transform).collect(),
        };

        let base = decide_instance(case, &inst, &sign_policy);
        let shifted = decide_instance(case, &moved, &sign_policy);
        assert_eq!(
            base.0.is_feasible(),
            shifted.0.is_feasible(),
            "trial {trial} {}: verdict changed under affine reparametrization",
            case.name()
        );
        if let (Some(w1), Some(w2)) = (base.1, shifted.1) {
            assert_eq!(
                w1, w2,
                "trial {trial} {}: normalized witness changed",
                case.name()
            );
        }
    }

    // Both pivot policies give the same 70 verdicts.
    let first = build_table(2, &sign_policy, PivotPolicy::FirstMixed);
    let minpq = build_table(2, &sign_policy, PivotPolicy::MinProduct);
    for (a, b) in first.rows.iter().zip(&minpq.rows) {
        assert_eq!(a.case, b.case);
        assert_eq!(
            a.verdict, b.verdict,
            "{}: pivot policies disagree on the verdict",
            a.case
        );
    }
    println!("criterion 7 PASS: 50 affine-invariance trials and 70/70 pivot-policy agreements");
}

fn decide_instance(
    case: &NeumannCase,
    inst: &InstanceParameters,
    sign_policy: &SignPolicy,
) -> (Verdict, Option<Vec<Rational>>) {
    let system = build_system_instance(case, inst).expect("instance in class");
    let (verdict, trace) = decide(system, PivotPolicy::FirstMixed, sign_policy);
    let witness = if verdict.is_feasible() {
        let terminal =
            neumann_roots::dines::terminal_witness(trace.levels.last().unwrap()).unwrap();
        let w = neumann_roots::dines::lift_witness(&trace, terminal).unwrap();
        Some(w.unhomogenized().to_vec())
    } else {
        None
    };
    (verdict, witness)
}

#[test]
fn acceptance_cli_gate() {
    // The stated command lines, end to end through the binary.
    let bin = env!("CARGO_BIN_EXE_neumann-roots");
    let golden_path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/golden_n2.csv");

    let table = std::process::Command::new(bin)
        .args(["table", "--n", "2", "--golden", golden_path])
        .output()
        .expect("run table");
    assert!(
        table.status.success(),
        "table --golden must exit 0: {}",
        String::from_utf8_lossy(&table.stderr)
    );

    let oracle = std::process::Command::new(bin)
        .args(["oracle", "--all", "--n", "2", "--samples", "100", "--seed", "42"])
        .output()
        .expect("run oracle");
    assert!(oracle.status.success(), "oracle sweep must exit 0");
    let stdout = String::from_utf8_lossy(&oracle.stdout);
    assert!(
        stdout.contains("70/70 agreements, 0 non-positive lifts"),
        "oracle summary line missing: {stdout}"
    );
    println!("acceptance CLI gate PASS: table --golden and oracle --all exit 0");
}
