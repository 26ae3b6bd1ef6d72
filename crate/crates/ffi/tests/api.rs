use std::ffi::{CStr, CString};
use std::ptr;

use mcda_ffi::*;

const CS1: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/cs1.csv");
const CS2: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/cs2.csv");

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(mcda_last_error()) }.to_str().unwrap().to_string()
}

struct Handle(*mut McdaProblem);

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { mcda_problem_free(self.0) }
    }
}

fn load(path: &str) -> Handle {
    let mut p = ptr::null_mut();
    let st = unsafe { mcda_problem_load(c(path).as_ptr(), &mut p) };
    assert_eq!(st, McdaStatus::Ok, "{}", last_error());
    Handle(p)
}

fn rank(h: &Handle, method: &str, params: Option<&str>, seed: u64) -> (McdaStatus, Vec<f64>, Vec<usize>, bool) {
    let n = unsafe { mcda_problem_alternatives(h.0) };
    let (mut scores, mut ranks, mut hib) = (vec![0.0; n], vec![0; n], false);
    let params = params.map(c);
    let st = unsafe {
        mcda_rank(
            h.0,
            c(method).as_ptr(),
            params.as_ref().map_or(ptr::null(), |p| p.as_ptr()),
            seed,
            scores.as_mut_ptr(),
            ranks.as_mut_ptr(),
            n,
            &mut hib,
        )
    };
    (st, scores, ranks, hib)
}

fn weights(h: &Handle, method: &str, params: Option<&str>) -> (McdaStatus, Vec<f64>) {
    let k = unsafe { mcda_problem_criteria(h.0) };
    let mut w = vec![0.0; k];
    let params = params.map(c);
    let st = unsafe {
        mcda_weights(h.0, c(method).as_ptr(), params.as_ref().map_or(ptr::null(), |p| p.as_ptr()), w.as_mut_ptr(), k)
    };
    (st, w)
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(mcda_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn topsis_reproduces_published_ranks() {
    let h = load(CS1);
    assert_eq!(unsafe { mcda_problem_alternatives(h.0) }, 7);
    assert_eq!(unsafe { mcda_problem_criteria(h.0) }, 7);
    let (st, scores, ranks, hib) = rank(&h, "TOPSIS", None, 0);
    assert_eq!(st, McdaStatus::Ok);
    assert_eq!(ranks, [5, 6, 1, 4, 2, 3, 7]);
    assert!(hib);
    assert!(scores.iter().all(|s| (0.0..=1.0).contains(s)));
    assert_eq!(last_error(), "");
}

#[test]
fn rank_matches_library() {
    let h = load(CS1);
    let problem = mcda::problem::load_problem(CS1).unwrap();
    let spec: mcda::specfile::RunSpec = "methods = vikor\nvikor.v = 1".parse().unwrap();
    let lib = match spec.resolve(&problem, None).unwrap()[0].run(&problem).unwrap() {
        mcda::MethodOutput::Ranking(r) => r,
        other => panic!("{other:?}"),
    };
    let (st, scores, ranks, hib) = rank(&h, "vikor", Some("vikor.v = 1"), 0);
    assert_eq!(st, McdaStatus::Ok);
    assert_eq!(scores, lib.scores);
    assert_eq!(ranks, lib.ranks.as_slice());
    assert_eq!(hib, lib.higher_is_better);
    assert!(!hib);
}

#[test]
fn stochastic_method_is_seeded() {
    let h = load(CS1);
    let params = "ec.custom_set = 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5\nec.iterations = 300\npromethee.f = usual";
    let a = rank(&h, "ec_promethee", Some(params), 7);
    let b = rank(&h, "ec_promethee", Some(params), 7);
    assert_eq!(a.0, McdaStatus::Ok, "{}", last_error());
    assert_eq!(a.1, b.1);
    assert_eq!(a.2, b.2);
}

#[test]
fn published_objective_weights() {
    let h = load(CS2);
    for (method, row) in [
        ("critic", [0.140, 0.313, 0.178, 0.106, 0.114, 0.148]),
        ("entropy", [0.288, 0.236, 0.116, 0.109, 0.039, 0.212]),
    ] {
        let (st, w) = weights(&h, method, None);
        assert_eq!(st, McdaStatus::Ok, "{method}: {}", last_error());
        for (got, want) in w.iter().zip(row) {
            assert!((got - want).abs() <= 0.01, "{method}: {w:?}");
        }
    }
    let (st, w) = weights(&h, "bwm", Some("bwm.mic = 2, 4, 5, 3, 1, 6\nbwm.lic = 6, 1, 3, 5, 4, 2"));
    assert_eq!(st, McdaStatus::Ok, "{}", last_error());
    assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-9);
}

#[test]
fn bwm_without_comparisons_is_a_method_error() {
    let h = load(CS2);
    let (st, _) = weights(&h, "bwm", None);
    assert_ne!(st, McdaStatus::Ok);
    assert!(!last_error().is_empty());
}

#[test]
fn wrong_method_family_is_a_usage_error() {
    let h = load(CS2);
    let (st, ..) = rank(&h, "entropy", None, 0);
    assert_eq!(st, McdaStatus::Usage);
    assert!(last_error().contains("mcda_weights"));
    let (st, _) = weights(&h, "topsis", None);
    assert_eq!(st, McdaStatus::Usage);
}

#[test]
fn unknown_method_maps_to_its_kind() {
    let h = load(CS1);
    let (st, ..) = rank(&h, "nosuch", None, 0);
    let expected = mcda::McdaError::UnknownMethod("nosuch".into()).kind().exit_code();
    assert_eq!(st as i32, expected);
}

#[test]
fn bad_csv_is_a_data_error() {
    let mut p = ptr::null_mut();
    let st = unsafe { mcda_problem_from_csv(c("alternative,x\n").as_ptr(), &mut p) };
    assert_eq!(st, McdaStatus::Data);
    assert!(p.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn csv_text_and_raw_matrix_agree() {
    let csv = "alternative,c1,c2\ndirection,max,min\nweights,0.6,0.4\na1,3,10\na2,5,12\na3,4,8\n";
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { mcda_problem_from_csv(c(csv).as_ptr(), &mut p) }, McdaStatus::Ok);
    let from_csv = Handle(p);

    let matrix = [3.0, 10.0, 5.0, 12.0, 4.0, 8.0];
    let dirs = [McdaDirection::Max, McdaDirection::Min];
    let w = [0.6, 0.4];
    let mut q = ptr::null_mut();
    let st = unsafe { mcda_problem_new(3, 2, matrix.as_ptr(), dirs.as_ptr(), w.as_ptr(), &mut q) };
    assert_eq!(st, McdaStatus::Ok, "{}", last_error());
    let raw = Handle(q);

    for m in ["wsm", "topsis", "saw", "edas"] {
        let a = rank(&from_csv, m, None, 0);
        let b = rank(&raw, m, None, 0);
        assert_eq!(a.0, McdaStatus::Ok, "{m}: {}", last_error());
        assert_eq!((a.1, a.2), (b.1, b.2), "{m}");
    }
}

#[test]
fn unweighted_problem_needs_weights() {
    let matrix = [3.0, 10.0, 5.0, 12.0, 4.0, 8.0];
    let dirs = [McdaDirection::Max, McdaDirection::Max];
    let mut q = ptr::null_mut();
    assert_eq!(
        unsafe { mcda_problem_new(3, 2, matrix.as_ptr(), dirs.as_ptr(), ptr::null(), &mut q) },
        McdaStatus::Ok
    );
    let h = Handle(q);
    let (st, ..) = rank(&h, "topsis", None, 0);
    assert_ne!(st, McdaStatus::Ok);
    assert!(last_error().to_lowercase().contains("weight"), "{}", last_error());
}

#[test]
fn null_and_length_checks() {
    let h = load(CS1);
    let mut scores = [0.0; 7];
    let mut ranks = [0usize; 6];
    let st = unsafe {
        mcda_rank(h.0, c("topsis").as_ptr(), ptr::null(), 0, scores.as_mut_ptr(), ranks.as_mut_ptr(), 6, ptr::null_mut())
    };
    assert_eq!(st, McdaStatus::InvalidArgument);
    assert!(last_error().contains("expected 7"));

    let mut ranks = [0usize; 7];
    let st = unsafe {
        mcda_rank(ptr::null(), c("topsis").as_ptr(), ptr::null(), 0, scores.as_mut_ptr(), ranks.as_mut_ptr(), 7, ptr::null_mut())
    };
    assert_eq!(st, McdaStatus::InvalidArgument);
    let st = unsafe {
        mcda_rank(h.0, ptr::null(), ptr::null(), 0, scores.as_mut_ptr(), ranks.as_mut_ptr(), 7, ptr::null_mut())
    };
    assert_eq!(st, McdaStatus::InvalidArgument);
    assert_eq!(unsafe { mcda_problem_load(c(CS1).as_ptr(), ptr::null_mut()) }, McdaStatus::InvalidArgument);
    assert_eq!(unsafe { mcda_problem_alternatives(ptr::null()) }, 0);
    unsafe { mcda_problem_free(ptr::null_mut()) };
}

#[test]
fn invalid_utf8_is_rejected() {
    let bad = CString::new(vec![0xff, 0xfe]).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { mcda_problem_from_csv(bad.as_ptr(), &mut p) }, McdaStatus::InvalidArgument);
}

#[test]
fn last_error_is_per_thread() {
    let mut p = ptr::null_mut();
    assert_ne!(unsafe { mcda_problem_from_csv(c("").as_ptr(), &mut p) }, McdaStatus::Ok);
    assert!(!last_error().is_empty());
    let other = std::thread::spawn(last_error).join().unwrap();
    assert_eq!(other, "");
}

#[test]
fn correlations() {
    let a = [1.0, 2.0, 3.0, 4.0];
    let rev = [4.0, 3.0, 2.0, 1.0];
    let mut out = 0.0;
    assert_eq!(unsafe { mcda_kendall_tau(a.as_ptr(), rev.as_ptr(), 4, &mut out) }, McdaStatus::Ok);
    assert_eq!(out, -1.0);
    // one discordant pair out of six, no ties
    let b = [2.0, 1.0, 3.0, 4.0];
    unsafe { mcda_kendall_tau(a.as_ptr(), b.as_ptr(), 4, &mut out) };
    assert!((out - 4.0 / 6.0).abs() < 1e-12);
    unsafe { mcda_pearson(a.as_ptr(), b.as_ptr(), 4, &mut out) };
    assert!((out - 0.8).abs() < 1e-12);

    let flat = [1.0; 4];
    assert_eq!(unsafe { mcda_pearson(a.as_ptr(), flat.as_ptr(), 4, &mut out) }, McdaStatus::Ok);
    assert!(out.is_nan());
}

#[test]
fn aggregate_rules() {
    // three voters over three alternatives; a2 wins every rule
    let ranks = [2, 1, 3, 1, 2, 3, 3, 1, 2];
    let mut out = [0usize; 3];
    for rule in [McdaRule::Borda, McdaRule::Copeland] {
        assert_eq!(unsafe { mcda_aggregate(ranks.as_ptr(), 3, 3, rule, out.as_mut_ptr()) }, McdaStatus::Ok);
        assert_eq!(out, [2, 1, 3], "{rule:?}");
    }
    assert_eq!(unsafe { mcda_aggregate(ranks.as_ptr(), 3, 3, McdaRule::Mode, out.as_mut_ptr()) }, McdaStatus::Ok);
    assert_eq!(out[1], 1);

    let bad = [1, 1, 5];
    assert_eq!(unsafe { mcda_aggregate(bad.as_ptr(), 1, 3, McdaRule::Borda, out.as_mut_ptr()) }, McdaStatus::Data);
}
