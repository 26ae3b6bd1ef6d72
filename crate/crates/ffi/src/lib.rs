//! C ABI over the `mcda` library.
//!
//! Conventions:
//! - Every fallible function returns an [`McdaStatus`]; on failure a message
//!   is available from [`mcda_last_error`] on the same thread.
//! - Problems live behind the opaque [`McdaProblem`] handle, created by
//!   `mcda_problem_*` constructors and released with [`mcda_problem_free`].
//! - Output arrays are caller-allocated; their length is passed explicitly
//!   and must match the problem dimension.
//! - Method parameters use the flat `key = value` spec format
//!   (`vikor.v = 1`, `bwm.mic = 2, 4, 1`, ...). `NULL` means defaults.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mcda::aggregation::{aggregate, RankTable, Rule};
use mcda::analysis::{kendall_tau_b, pearson};
use mcda::problem::{load_problem, parse_csv};
use mcda::specfile::RunSpec;
use mcda::{Criterion, DecisionProblem, Direction, ErrorKind, McdaError, MethodOutput, RankVector};

/// Status codes. 1 to 4 match the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McdaStatus {
    Ok = 0,
    Usage = 1,
    Data = 2,
    Method = 3,
    Network = 4,
    /// Null pointer, invalid UTF-8 or a buffer length that does not match.
    InvalidArgument = 5,
    /// A Rust panic was caught at the boundary.
    Panic = 6,
}

/// Criterion direction for [`mcda_problem_new`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McdaDirection {
    Max = 0,
    Min = 1,
}

/// Consensus rule for [`mcda_aggregate`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McdaRule {
    Mode = 0,
    Borda = 1,
    Copeland = 2,
}

/// Opaque decision problem.
pub struct McdaProblem {
    inner: DecisionProblem,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(McdaStatus, String);

impl From<McdaError> for Failure {
    fn from(e: McdaError) -> Self {
        let status = match e.kind() {
            ErrorKind::Usage => McdaStatus::Usage,
            ErrorKind::Data => McdaStatus::Data,
            ErrorKind::Method => McdaStatus::Method,
            ErrorKind::Network => McdaStatus::Network,
        };
        Failure(status, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(McdaStatus::InvalidArgument, msg.into())
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, records its error message and converts panics.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> McdaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            McdaStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            McdaStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(invalid(format!("{name} is NULL")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{name} is not valid UTF-8")))
}

unsafe fn problem_arg<'a>(p: *const McdaProblem) -> Result<&'a DecisionProblem, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| invalid("problem is NULL"))
}

unsafe fn out_slice<'a, T>(p: *mut T, len: usize, want: usize, name: &str) -> Result<&'a mut [T], Failure> {
    if p.is_null() {
        return Err(invalid(format!("{name} is NULL")));
    }
    if len != want {
        return Err(invalid(format!("{name} has length {len}, expected {want}")));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

unsafe fn in_slice<'a, T>(p: *const T, len: usize, name: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(invalid(format!("{name} is NULL")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn boxed(p: DecisionProblem) -> *mut McdaProblem {
    Box::into_raw(Box::new(McdaProblem { inner: p }))
}

/// Message for the last failing call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn mcda_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mcda_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a decision problem from CSV text (criterion names, directions,
/// optional `weights` row, then one row per alternative).
///
/// # Safety
/// `csv` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mcda_problem_from_csv(csv: *const c_char, out: *mut *mut McdaProblem) -> McdaStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("out is NULL"));
        }
        *out = boxed(parse_csv(str_arg(csv, "csv")?)?);
        Ok(())
    })
}

/// Loads a decision problem from a CSV, JSON or TOML file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mcda_problem_load(path: *const c_char, out: *mut *mut McdaProblem) -> McdaStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("out is NULL"));
        }
        *out = boxed(load_problem(str_arg(path, "path")?)?);
        Ok(())
    })
}

/// Builds a problem from a row-major `n_alternatives x n_criteria` matrix.
/// Alternatives are labeled a1, a2, ... and criteria c1, c2, ...
/// `weights` may be NULL (no weights).
///
/// # Safety
/// `matrix` must hold `n_alternatives * n_criteria` values, `directions`
/// and (if not NULL) `weights` must hold `n_criteria` values.
#[no_mangle]
pub unsafe extern "C" fn mcda_problem_new(
    n_alternatives: usize,
    n_criteria: usize,
    matrix: *const f64,
    directions: *const McdaDirection,
    weights: *const f64,
    out: *mut *mut McdaProblem,
) -> McdaStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("out is NULL"));
        }
        let cells = n_alternatives
            .checked_mul(n_criteria)
            .ok_or_else(|| invalid("matrix dimensions overflow"))?;
        let values = in_slice(matrix, cells, "matrix")?;
        let dirs = in_slice(directions, n_criteria, "directions")?;
        let w = if weights.is_null() { None } else { Some(in_slice(weights, n_criteria, "weights")?) };
        let criteria = (0..n_criteria)
            .map(|j| {
                let d = match dirs[j] {
                    McdaDirection::Max => Direction::Max,
                    McdaDirection::Min => Direction::Min,
                };
                Criterion::new(format!("c{}", j + 1), d, w.map(|w| w[j]))
            })
            .collect();
        let rows = if n_criteria == 0 { vec![] } else { values.chunks(n_criteria).map(<[f64]>::to_vec).collect() };
        let alternatives = (1..=n_alternatives).map(|i| format!("a{i}")).collect();
        *out = boxed(DecisionProblem::new(alternatives, criteria, rows)?);
        Ok(())
    })
}

/// Releases a problem. NULL is ignored.
///
/// # Safety
/// `problem` must come from a `mcda_problem_*` constructor and not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn mcda_problem_free(problem: *mut McdaProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Number of alternatives (0 for NULL).
///
/// # Safety
/// `problem` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mcda_problem_alternatives(problem: *const McdaProblem) -> usize {
    problem.as_ref().map_or(0, |p| p.inner.n_alternatives())
}

/// Number of criteria (0 for NULL).
///
/// # Safety
/// `problem` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mcda_problem_criteria(problem: *const McdaProblem) -> usize {
    problem.as_ref().map_or(0, |p| p.inner.n_criteria())
}

/// Resolves and runs one method, refusing the wrong family before any work.
unsafe fn run_method(
    problem: *const McdaProblem,
    method: *const c_char,
    params: *const c_char,
    seed: u64,
    want_weights: bool,
) -> Result<MethodOutput, Failure> {
    let p = problem_arg(problem)?;
    let method = str_arg(method, "method")?.trim().to_ascii_lowercase();
    let mut spec = if params.is_null() { RunSpec::default() } else { RunSpec::parse_config(str_arg(params, "params")?)? };
    spec.methods = vec![method];
    let resolved = spec.resolve(p, Some(seed))?.remove(0);
    if resolved.produces_weights() != want_weights {
        let msg = if want_weights {
            "ranking method passed to mcda_weights; use mcda_rank"
        } else {
            "weighting method passed to mcda_rank; use mcda_weights"
        };
        return Err(Failure(McdaStatus::Usage, msg.into()));
    }
    Ok(resolved.run(p)?)
}

/// Ranks the alternatives with a scoring or outranking method (`topsis`,
/// `promethee_ii`, `ec_promethee`, ...). `seed` is used by stochastic
/// methods. Writes one score and one rank (1 = best) per alternative, and
/// whether a larger score is better into `higher_is_better` unless NULL.
///
/// # Safety
/// `method` and (if not NULL) `params` must be NUL-terminated; `scores` and
/// `ranks` must each hold `len` elements, `len` = number of alternatives.
#[no_mangle]
pub unsafe extern "C" fn mcda_rank(
    problem: *const McdaProblem,
    method: *const c_char,
    params: *const c_char,
    seed: u64,
    scores: *mut f64,
    ranks: *mut usize,
    len: usize,
    higher_is_better: *mut bool,
) -> McdaStatus {
    guard(|| {
        let n = problem_arg(problem)?.n_alternatives();
        let scores = out_slice(scores, len, n, "scores")?;
        let ranks = out_slice(ranks, len, n, "ranks")?;
        match run_method(problem, method, params, seed, false)? {
            MethodOutput::Ranking(r) => {
                scores.copy_from_slice(&r.scores);
                ranks.copy_from_slice(r.ranks.as_slice());
                if let Some(h) = higher_is_better.as_mut() {
                    *h = r.higher_is_better;
                }
                Ok(())
            }
            MethodOutput::Weights(_) => unreachable!("family checked in run_method"),
        }
    })
}

/// Criterion weights from a weighting method (`entropy`, `critic`, `cilos`,
/// `idocriw`, `merec`, `bwm`). BWM reads `bwm.mic` and `bwm.lic` from
/// `params`.
///
/// # Safety
/// `method` and (if not NULL) `params` must be NUL-terminated; `weights`
/// must hold `len` elements, `len` = number of criteria.
#[no_mangle]
pub unsafe extern "C" fn mcda_weights(
    problem: *const McdaProblem,
    method: *const c_char,
    params: *const c_char,
    weights: *mut f64,
    len: usize,
) -> McdaStatus {
    guard(|| {
        let k = problem_arg(problem)?.n_criteria();
        let out = out_slice(weights, len, k, "weights")?;
        match run_method(problem, method, params, 0, true)? {
            MethodOutput::Weights(w) => {
                out.copy_from_slice(&w.weights);
                Ok(())
            }
            MethodOutput::Ranking(_) => unreachable!("family checked in run_method"),
        }
    })
}

/// Consensus over `n_rows` rank vectors stored row-major
/// (`n_rows x n_alternatives`). Writes the consensus rank of each
/// alternative (1 = best).
///
/// # Safety
/// `ranks` must hold `n_rows * n_alternatives` values and `out` must hold
/// `n_alternatives`.
#[no_mangle]
pub unsafe extern "C" fn mcda_aggregate(
    ranks: *const usize,
    n_rows: usize,
    n_alternatives: usize,
    rule: McdaRule,
    out: *mut usize,
) -> McdaStatus {
    guard(|| {
        let cells = n_rows.checked_mul(n_alternatives).ok_or_else(|| invalid("dimensions overflow"))?;
        let values = in_slice(ranks, cells, "ranks")?;
        let out = out_slice(out, n_alternatives, n_alternatives, "out")?;
        if n_alternatives == 0 {
            return Err(invalid("n_alternatives is 0"));
        }
        let rows = values
            .chunks(n_alternatives)
            .map(|r| RankVector::new(r.to_vec()))
            .collect::<mcda::Result<Vec<_>>>()?;
        let labels = (1..=n_rows).map(|i| format!("row{i}")).collect();
        let table = RankTable::new(labels, rows)?;
        let rule = match rule {
            McdaRule::Mode => Rule::Mode,
            McdaRule::Borda => Rule::Borda,
            McdaRule::Copeland => Rule::Copeland,
        };
        out.copy_from_slice(aggregate(&table, rule)?.order.as_slice());
        Ok(())
    })
}

unsafe fn correlation(
    a: *const f64,
    b: *const f64,
    len: usize,
    out: *mut f64,
    f: fn(&[f64], &[f64]) -> mcda::Result<Option<f64>>,
) -> McdaStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("out is NULL"));
        }
        let (a, b) = (in_slice(a, len, "a")?, in_slice(b, len, "b")?);
        *out = f(a, b)?.unwrap_or(f64::NAN);
        Ok(())
    })
}

/// Kendall tau-b of two equally long vectors. Writes NaN when undefined
/// (a constant vector).
///
/// # Safety
/// `a` and `b` must hold `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mcda_kendall_tau(a: *const f64, b: *const f64, len: usize, out: *mut f64) -> McdaStatus {
    correlation(a, b, len, out, kendall_tau_b)
}

/// Pearson correlation of two equally long vectors. Writes NaN when
/// undefined (a constant vector).
///
/// # Safety
/// `a` and `b` must hold `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mcda_pearson(a: *const f64, b: *const f64, len: usize, out: *mut f64) -> McdaStatus {
    correlation(a, b, len, out, pearson)
}
