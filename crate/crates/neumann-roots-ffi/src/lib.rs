//! C ABI for the decision engine: opaque handles, status codes, and
//! JSON/CSV string outputs that bindings in other languages can consume
//! without knowing any Rust types.
//!
//! Memory contract: every `char*` handed out by this library is owned by the
//! caller and must be released with `nr_string_free`; every `NrCheck*` with
//! `nr_check_free`. All functions are panic-safe and return `NR_INTERNAL`
//! instead of unwinding across the boundary.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use neumann_roots::dines::{
    render_trace_json, render_trace_text, PivotPolicy, SignPolicy, Verdict,
};
use neumann_roots::exact::{format_rational, parse_rational_list};
use neumann_roots::neumann::{u_polynomial, verify_roots, InstanceParameters, NeumannCase};
use neumann_roots::oracle::{
    cross_validate, direct_feasibility, sample_instance, DirectResult, SampleConfig,
};
use neumann_roots::report::{build_table, run_symbolic, SymbolicRun};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrStatus {
    NrOk = 0,
    NrNullPointer = 1,
    NrInvalidUtf8 = 2,
    NrMalformedName = 3,
    NrMalformedNumber = 4,
    NrPlacementMismatch = 5,
    NrUnsupportedSize = 6,
    NrInfeasibleCase = 7,
    NrInternal = 8,
}

/// Decision outcome.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrVerdict {
    NrFeasible = 0,
    NrInfeasible = 1,
    NrIndeterminate = 2,
}

/// Run options; get a default-initialized value from `nr_options_default`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct NrOptions {
    /// Polya multiplier cap for symbolic sign decisions.
    pub polya_max: u32,
    /// 0 = first mixed row, nonzero = minimize the P*Q split.
    pub pivot_minpq: u32,
    /// Sampling seed for witness and cross-validation runs.
    pub seed: u64,
    /// Sample count for cross-validation runs.
    pub samples: u32,
    /// Accept n beyond the built-in cap (column growth is multiplicative).
    pub allow_large: u32,
}

const N_CAP: usize = neumann_roots::cli::DEFAULT_N_CAP;

/// Opaque handle to one symbolic decision.
pub struct NrCheck {
    run: SymbolicRun,
}

fn options_from(ptr: *const NrOptions) -> NrOptions {
    if ptr.is_null() {
        default_options()
    } else {
        unsafe { *ptr }
    }
}

fn default_options() -> NrOptions {
    NrOptions {
        polya_max: neumann_roots::gappoly::DEFAULT_POLYA_MAX as u32,
        pivot_minpq: 0,
        seed: 42,
        samples: 100,
        allow_large: 0,
    }
}

fn pivot_of(options: &NrOptions) -> PivotPolicy {
    if options.pivot_minpq != 0 {
        PivotPolicy::MinProduct
    } else {
        PivotPolicy::FirstMixed
    }
}

fn sign_policy_of(options: &NrOptions) -> SignPolicy {
    SignPolicy {
        polya_max: options.polya_max as usize,
    }
}

fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, NrStatus> {
    if ptr.is_null() {
        return Err(NrStatus::NrNullPointer);
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| NrStatus::NrInvalidUtf8)
}

fn parse_case(ptr: *const c_char, options: &NrOptions) -> Result<NeumannCase, NrStatus> {
    let name = read_str(ptr)?;
    let case = NeumannCase::parse(name).map_err(|_| NrStatus::NrMalformedName)?;
    if case.n > N_CAP && options.allow_large == 0 {
        return Err(NrStatus::NrUnsupportedSize);
    }
    Ok(case)
}

fn hand_out(s: String, out: *mut *mut c_char) -> NrStatus {
    if out.is_null() {
        return NrStatus::NrNullPointer;
    }
    match CString::new(s) {
        Ok(cs) => {
            unsafe { *out = cs.into_raw() };
            NrStatus::NrOk
        }
        Err(_) => NrStatus::NrInternal,
    }
}

fn guarded(f: impl FnOnce() -> NrStatus) -> NrStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(NrStatus::NrInternal)
}

/// Returns the option block every call treats as the default.
#[no_mangle]
pub extern "C" fn nr_options_default() -> NrOptions {
    default_options()
}

/// Library version string; static storage, do not free.
#[no_mangle]
pub extern "C" fn nr_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Decides a case symbolically. On NR_OK the caller owns the handle.
/// # Safety
/// `case_name` must be a valid NUL-terminated string and `out` a valid
/// pointer; `options` may be null for defaults.
#[no_mangle]
pub unsafe extern "C" fn nr_check_new(
    case_name: *const c_char,
    options: *const NrOptions,
    out: *mut *mut NrCheck,
) -> NrStatus {
    guarded(|| {
        if out.is_null() {
            return NrStatus::NrNullPointer;
        }
        let options = options_from(options);
        let case = match parse_case(case_name, &options) {
            Ok(c) => c,
            Err(status) => return status,
        };
        let run = run_symbolic(&case, &sign_policy_of(&options), pivot_of(&options));
        unsafe { *out = Box::into_raw(Box::new(NrCheck { run })) };
        NrStatus::NrOk
    })
}

/// Reads the verdict out of a check handle.
/// # Safety
/// `check` must come from `nr_check_new` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nr_check_verdict(check: *const NrCheck, out: *mut NrVerdict) -> NrStatus {
    guarded(|| {
        if check.is_null() || out.is_null() {
            return NrStatus::NrNullPointer;
        }
        let check = unsafe { &*check };
        let v = match &check.run.verdict {
            Verdict::Feasible => NrVerdict::NrFeasible,
            Verdict::Infeasible(_) => NrVerdict::NrInfeasible,
            Verdict::Indeterminate(_) => NrVerdict::NrIndeterminate,
        };
        unsafe { *out = v };
        NrStatus::NrOk
    })
}

/// Elimination level at which a refutation happened, or -1.
/// # Safety
/// `check` must come from `nr_check_new` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nr_check_fail_level(check: *const NrCheck, out: *mut i32) -> NrStatus {
    guarded(|| {
        if check.is_null() || out.is_null() {
            return NrStatus::NrNullPointer;
        }
        let check = unsafe { &*check };
        let level = match &check.run.verdict {
            Verdict::Infeasible(info) => info.level as i32,
            _ => -1,
        };
        unsafe { *out = level };
        NrStatus::NrOk
    })
}

/// Full trace as JSON; free with nr_string_free.
/// # Safety
/// `check` must come from `nr_check_new` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nr_check_trace_json(check: *const NrCheck, out: *mut *mut c_char) -> NrStatus {
    guarded(|| {
        if check.is_null() {
            return NrStatus::NrNullPointer;
        }
        let check = unsafe { &*check };
        let doc = render_trace_json(
            Some(&check.run.case.name()),
            "symbolic",
            &check.run.verdict,
            &check.run.trace,
        );
        hand_out(serde_json::to_string(&doc).expect("trace serializes"), out)
    })
}

/// Full trace as human-readable text; free with nr_string_free.
/// # Safety
/// `check` must come from `nr_check_new` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nr_check_trace_text(check: *const NrCheck, out: *mut *mut c_char) -> NrStatus {
    guarded(|| {
        if check.is_null() {
            return NrStatus::NrNullPointer;
        }
        let check = unsafe { &*check };
        let text = render_trace_text(
            Some(&check.run.case.name()),
            "symbolic",
            &check.run.verdict,
            &check.run.trace,
        );
        hand_out(text, out)
    })
}

/// Releases a check handle. Null is tolerated.
/// # Safety
/// `check` must come from `nr_check_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn nr_check_free(check: *mut NrCheck) {
    if !check.is_null() {
        drop(unsafe { Box::from_raw(check) });
    }
}

/// Verdict table for every subset and placement of the given n, as CSV with
/// columns case,verdict,fail_level,pf. Free with nr_string_free.
/// # Safety
/// `out` must be a valid pointer; `options` may be null for defaults.
#[no_mangle]
pub unsafe extern "C" fn nr_table_csv(
    n: u32,
    options: *const NrOptions,
    out: *mut *mut c_char,
) -> NrStatus {
    guarded(|| {
        let options = options_from(options);
        let n = n as usize;
        if n == 0 || (n > N_CAP && options.allow_large == 0) {
            return NrStatus::NrUnsupportedSize;
        }
        let table = build_table(n, &sign_policy_of(&options), pivot_of(&options));
        let mut csv = String::from("case,verdict,fail_level,pf\n");
        for row in &table.rows {
            csv.push_str(&format!(
                "{},{},{},{}\n",
                row.case, row.verdict, row.step, row.pf
            ));
        }
        hand_out(csv, out)
    })
}

/// Constructs a verified witness for a case as JSON. `a_csv`/`lambda_csv`
/// may both be null to sample an instance from the seed in `options`.
/// Returns NR_INFEASIBLE_CASE when no strictly positive solution exists.
/// # Safety
/// String arguments must be NUL-terminated when non-null and `out` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_witness_json(
    case_name: *const c_char,
    a_csv: *const c_char,
    lambda_csv: *const c_char,
    options: *const NrOptions,
    out: *mut *mut c_char,
) -> NrStatus {
    guarded(|| {
        let options = options_from(options);
        let case = match parse_case(case_name, &options) {
            Ok(c) => c,
            Err(status) => return status,
        };
        let inst = if a_csv.is_null() && lambda_csv.is_null() {
            let config = SampleConfig {
                seed: options.seed,
                ..SampleConfig::default()
            };
            sample_instance(&case, &config, 0)
        } else {
            let a_text = match read_str(a_csv) {
                Ok(t) => t,
                Err(s) => return s,
            };
            let l_text = match read_str(lambda_csv) {
                Ok(t) => t,
                Err(s) => return s,
            };
            let (Ok(a), Ok(lambda)) = (parse_rational_list(a_text), parse_rational_list(l_text))
            else {
                return NrStatus::NrMalformedNumber;
            };
            InstanceParameters { a, lambda }
        };
        if inst.check_placement(&case.placement).is_err() {
            return NrStatus::NrPlacementMismatch;
        }
        let qsq = match direct_feasibility(&case, &inst) {
            DirectResult::Feasible(solution) => solution,
            DirectResult::Infeasible | DirectResult::Singular(_) => {
                return NrStatus::NrInfeasibleCase
            }
        };
        let u = u_polynomial(&qsq, &case.subset, &inst.a).expect("witness satisfies constraint");
        let check = match verify_roots(&u, &inst.a, &case.placement) {
            Ok(c) => c,
            Err(_) => return NrStatus::NrInternal,
        };
        let doc = serde_json::json!({
            "case": case.name(),
            "a": inst.a.iter().map(format_rational).collect::<Vec<_>>(),
            "lambda": inst.lambda.iter().map(format_rational).collect::<Vec<_>>(),
            "qsq": qsq.iter().map(format_rational).collect::<Vec<_>>(),
            "u_coefficients": u.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
            "interval_counts": check.counts,
            "expected_counts": check.expected,
            "matches": check.matches,
        });
        hand_out(doc.to_string(), out)
    })
}

/// Cross-validates one case (symbolic vs instance elimination vs direct
/// solving) and returns the JSON report. Free with nr_string_free.
/// # Safety
/// `case_name` must be a valid NUL-terminated string and `out` a valid
/// pointer; `options` may be null for defaults.
#[no_mangle]
pub unsafe extern "C" fn nr_cross_validate_json(
    case_name: *const c_char,
    options: *const NrOptions,
    out: *mut *mut c_char,
) -> NrStatus {
    guarded(|| {
        let options = options_from(options);
        let case = match parse_case(case_name, &options) {
            Ok(c) => c,
            Err(status) => return status,
        };
        let config = SampleConfig {
            seed: options.seed,
            samples: options.samples as usize,
            ..SampleConfig::default()
        };
        let report = cross_validate(&case, &config, &sign_policy_of(&options), pivot_of(&options));
        hand_out(serde_json::to_string(&report).expect("report serializes"), out)
    })
}

/// Releases a string produced by this library. Null is tolerated.
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn nr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
