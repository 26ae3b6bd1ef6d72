//! Acceptance suite: one PASS/FAIL line per criterion, with the sub-checks
//! behind it. Runs as a plain binary (`harness = false`) so the report is
//! always printed.
//!
//! Sub-checks listed in `KNOWN_GAPS` are published values this crate does
//! not reproduce; the reasons are written next to each entry. They are
//! reported as FAIL. Any other failing sub-check makes the run fail.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mcda::aggregation::{aggregate, Rule};
use mcda::analysis::{
    build_comparison, correlation_matrix, kendall_tau_b, Coefficient, ComparisonTable, CorrelationMatrix,
};
use mcda::datasets;
use mcda::llm::{self, ask, ask_with_key, ChatConfig, ChatError, PromptContexts, RetryConfig, TEMPLATES};
use mcda::method::MethodSpec;
use mcda::outranking::{ec_promethee, promethee_ii_flows, EcConfig, PreferenceFunction, Thresholds};
use mcda::scoring::{rank_scoring, ScoringMethodId, ScoringParams};
use mcda::weighting::{bwm, weights_for, BwmComparisons, WeightingMethodId};
use mcda::{Criterion, DecisionProblem, Direction, ErrorKind};

/// Published values that are not reproduced, with the reason.
const KNOWN_GAPS: &[(&str, &str)] = &[
    (
        "c1.vikor",
        "the published VIKOR row lists the Q-sorted alternative indices in the rank slots; the Q-index ranking is [5,6,1,4,2,3,7]",
    ),
    (
        "c3.cilos",
        "the published CILOS row depends on random noise injected for a zero column minimum; no deterministic variant comes within 0.01",
    ),
    (
        "c3.bwm",
        "the published BWM row is not an optimum of the linear or ratio model for the stated comparisons",
    ),
    (
        "c5.pearson_cilos_merec",
        "Pearson on the published CILOS and MEREC rows is 0.589, outside 0.85 +/- 0.05",
    ),
];

/// Written diagnoses for rows allowed to deviate from the published table.
const DIAGNOSES: &[(&str, &str)] = &[
    (
        "MAUT",
        "one adjacent swap (a1/a5): the published row comes from floating-point residue in the MIN min-max step utility",
    ),
    ("VIKOR", "published row is an index listing, not ranks"),
];

const CONSENSUS: [&str; 7] = ["a3", "a5", "a6", "a4", "a1", "a2", "a7"];
const EC_PUBLISHED: [usize; 7] = [5, 7, 1, 3, 2, 4, 6];

#[derive(Default)]
struct Report {
    checks: Vec<(u8, String, bool, String)>,
}

impl Report {
    fn check(&mut self, criterion: u8, id: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push((criterion, id.to_string(), pass, detail.into()));
    }

    fn info(&mut self, criterion: u8, detail: impl Into<String>) {
        self.checks.push((criterion, String::new(), true, detail.into()));
    }
}

fn kendall(a: &[f64], b: &[f64]) -> Option<f64> {
    kendall_tau_b(a, b).ok().flatten()
}

fn secs(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

// criterion 1 ---------------------------------------------------------------

fn criterion_1(r: &mut Report) -> ComparisonTable {
    let start = Instant::now();
    let problem = datasets::material_selection();
    let specs = datasets::material_spec().resolve(&problem, None).expect("spec resolves");
    let table = build_comparison(&problem, &specs, &[]).expect("comparison runs");
    let elapsed = start.elapsed();

    let published = datasets::published_ranks();
    let diagnoses: BTreeMap<_, _> = DIAGNOSES.iter().copied().collect();
    let mut exact = 0;
    let mut computed = 0;
    for spec in &specs {
        if matches!(spec, MethodSpec::EcPromethee { .. }) {
            continue; // stochastic, judged under criterion 2
        }
        computed += 1;
        let label = spec.label();
        let theirs = &published.row(label).expect("published row").values;
        match table.row(label) {
            Some(ours) if &ours.values == theirs => exact += 1,
            Some(ours) => {
                let tau = kendall(&ours.values, theirs);
                let diagnosed = diagnoses.get(label);
                r.check(
                    1,
                    &format!("c1.{}", label.to_lowercase().replace(' ', "_")),
                    tau.is_some_and(|t| t >= 0.90) && diagnosed.is_some(),
                    format!(
                        "{label} deviates: ours {:?} published {:?}, tau {:.3} (need >= 0.90); diagnosis: {}",
                        ours.values,
                        theirs,
                        tau.unwrap_or(f64::NAN),
                        diagnosed.unwrap_or(&"none")
                    ),
                );
            }
            None => r.check(
                1,
                &format!("c1.{}", label.to_lowercase().replace(' ', "_")),
                false,
                format!("{label} failed to run"),
            ),
        }
    }
    r.check(1, "c1.exact_rows", exact >= 25, format!("{exact}/{computed} non-stochastic rows reproduce exactly (need >= 25)"));
    r.check(1, "c1.runtime", elapsed < Duration::from_secs(10), format!("full 31-method run in {} (limit 10s)", secs(elapsed)));
    table
}

// criterion 2 ---------------------------------------------------------------

fn ec_config(seed: u64) -> (Thresholds, Vec<PreferenceFunction>, EcConfig) {
    let problem = datasets::material_selection();
    let specs = datasets::material_spec().resolve(&problem, Some(seed)).unwrap();
    specs
        .into_iter()
        .find_map(|s| match s {
            MethodSpec::EcPromethee {
                thresholds,
                functions,
                config,
            } => Some((thresholds, functions, config)),
            _ => None,
        })
        .expect("spec lists ec_promethee")
}

fn criterion_2(r: &mut Report) {
    let problem = datasets::material_selection();
    let mut hits = 0;
    let mut modal_hits = 0;
    let seeds: Vec<u64> = (1..=20).collect();
    for &seed in &seeds {
        let (t, f, c) = ec_config(seed);
        assert_eq!(c.iterations, 10_000);
        let res = ec_promethee(&problem, &t, &f, &c).unwrap();
        if res.ranking.ranks.as_slice() == EC_PUBLISHED {
            hits += 1;
        }
        if res.modal_ranks == EC_PUBLISHED {
            modal_hits += 1;
        }
    }
    r.check(2, "c2.seeds", hits >= 16, format!("{hits}/20 seeds give [5,7,1,3,2,4,6] (need >= 16)"));
    r.info(2, format!("per-alternative modal ranks alone equal the published row in {modal_hits}/20 seeds (a2 is bimodal)"));

    let (t, f, c) = ec_config(42);
    let a = ec_promethee(&problem, &t, &f, &c).unwrap();
    let b = ec_promethee(&problem, &t, &f, &c).unwrap();
    let bits = |x: &[f64]| x.iter().map(|v| v.to_bits()).collect::<Vec<_>>();
    let same = bits(&a.ranking.scores) == bits(&b.ranking.scores)
        && bits(&a.mean_ranks) == bits(&b.mean_ranks)
        && a.frequencies == b.frequencies
        && a.ranking.ranks == b.ranking.ranks;
    r.check(2, "c2.reproducible", same, "seed 42 run twice: bit-identical scores, mean ranks and frequency tables");
}

// criterion 3 ---------------------------------------------------------------

fn criterion_3(r: &mut Report) -> ComparisonTable {
    let start = Instant::now();
    let problem = datasets::urban_projects();
    let specs = datasets::urban_spec().resolve(&problem, None).unwrap();
    let table = build_comparison(&problem, &specs, &[]).unwrap();
    let elapsed = start.elapsed();
    let published = datasets::published_weights();
    for id in WeightingMethodId::ALL {
        let label = id.label();
        let theirs = &published.row(label).unwrap().values;
        match table.row(label) {
            Some(ours) => {
                let worst = ours.values.iter().zip(theirs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                r.check(
                    3,
                    &format!("c3.{}", id.token()),
                    worst <= 0.01,
                    format!("{label}: max |diff| {worst:.4} (limit 0.01); ours {:?}", round3(&ours.values)),
                );
            }
            None => r.check(3, &format!("c3.{}", id.token()), false, format!("{label} failed: {:?}", table.diagnostics)),
        }
    }
    r.check(3, "c3.runtime", elapsed < Duration::from_secs(2), format!("six weighting methods in {} (limit 2s)", secs(elapsed)));
    table
}

fn round3(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| (x * 1000.0).round() / 1000.0).collect()
}

// criterion 4 ---------------------------------------------------------------

fn criterion_4(r: &mut Report, reproduced: &ComparisonTable) {
    let mut with_refs = reproduced.clone();
    for t in datasets::material_references() {
        with_refs.append_external(&t).unwrap();
    }
    for (suffix, table) in [("", reproduced), ("+refs", &with_refs)] {
        let ranks = table.rank_table().unwrap();
        for rule in [Rule::Mode, Rule::Borda, Rule::Copeland] {
            let res = aggregate(&ranks, rule).unwrap();
            let order: Vec<&str> = res.order.order().iter().map(|&i| table.columns[i].as_str()).collect();
            let name = format!("{rule:?}").to_lowercase();
            r.check(
                4,
                &format!("c4.{name}{suffix}"),
                order == CONSENSUS,
                format!(
                    "{name} over {} rows{}: {}",
                    table.len(),
                    if suffix.is_empty() { "" } else { " incl. Rao and Manshadi" },
                    order.join(",")
                ),
            );
        }
    }
}

// criterion 5 ---------------------------------------------------------------

fn near(v: Option<f64>, target: f64, tol: f64) -> bool {
    v.is_some_and(|v| (v - target).abs() <= tol)
}

fn criterion_5(r: &mut Report, reproduced_ranks: &ComparisonTable, reproduced_weights: &ComparisonTable) {
    let ranks = datasets::published_ranks();
    let km = correlation_matrix(&ranks, Coefficient::KendallTauB).unwrap();
    let rao_man = km.get("Rao (2006)", "Manshadi et al. (2007)");
    r.check(5, "c5.kendall_rao_manshadi", near(rao_man, 0.809524, 1e-6), format!("Kendall(Rao, Manshadi) = {rao_man:.6?}"));
    let rao_codas = km.get("Rao (2006)", "CODAS");
    r.check(5, "c5.kendall_rao_codas", near(rao_codas, 0.142857, 1e-6), format!("Kendall(Rao, CODAS) = {rao_codas:.6?}"));
    let (min, _, _) = km.min_off_diagonal().unwrap();
    let codas_vikor = km.get("CODAS", "VIKOR");
    let n = km.labels.len();
    let tied = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| km.values[i][j].is_some_and(|v| (v - min).abs() < 1e-12))
        .count();
    r.check(
        5,
        "c5.kendall_min",
        (min - 0.05).abs() <= 0.01 && codas_vikor.is_some_and(|v| (v - min).abs() < 1e-12),
        format!("Kendall off-diagonal minimum {min:.4}, attained by CODAS-VIKOR ({codas_vikor:.4?}) and {} other pairs", tied - 1),
    );

    let weights = datasets::published_weights();
    let pm = correlation_matrix(&weights, Coefficient::Pearson).unwrap();
    for (id, a, b, target) in [
        ("c5.pearson_cilos_merec", "CILOS", "MEREC", 0.85),
        ("c5.pearson_entropy_idocriw", "Entropy", "IDOCRIW", 0.83),
        ("c5.pearson_bottero_cilos", "Bottero et al. (2015)", "CILOS", -0.76),
        ("c5.pearson_critic_rodrigues", "CRITIC", "Rodrigues et al. (2021)", -0.66),
    ] {
        let v = pm.get(a, b);
        r.check(5, id, near(v, target, 0.05), format!("Pearson({a}, {b}) = {v:.3?} (target {target} +/- 0.05)"));
    }

    // the same statistics on the reproduced tables, for reference
    let mut ours = reproduced_ranks.clone();
    for t in datasets::material_references() {
        ours.append_external(&t).unwrap();
    }
    let k2 = correlation_matrix(&ours, Coefficient::KendallTauB).unwrap();
    let (min, i, j) = k2.min_off_diagonal().unwrap();
    r.info(5, format!("reproduced ranks: Kendall minimum {min:.4} at {}-{}", k2.labels[i], k2.labels[j]));
    let mut ours = reproduced_weights.clone();
    for t in datasets::urban_references() {
        ours.append_external(&t).unwrap();
    }
    let p2 = correlation_matrix(&ours, Coefficient::Pearson).unwrap();
    r.info(
        5,
        format!(
            "reproduced weights: Pearson(CILOS, MEREC) {:.3?}, (Entropy, IDOCRIW) {:.3?}",
            p2.get("CILOS", "MEREC"),
            p2.get("Entropy", "IDOCRIW")
        ),
    );
}

// criterion 6 ---------------------------------------------------------------

fn random_problem(rng: &mut ChaCha8Rng, max_alternatives: usize) -> DecisionProblem {
    let m = rng.gen_range(2..=max_alternatives);
    let k = rng.gen_range(2..=5);
    let criteria = (0..k)
        .map(|j| {
            let d = if rng.gen_bool(0.5) { Direction::Max } else { Direction::Min };
            Criterion::new(format!("c{j}"), d, Some(rng.gen_range(0.05..1.0)))
        })
        .collect();
    let matrix = (0..m).map(|_| (0..k).map(|_| rng.gen_range(0.5..100.0)).collect()).collect();
    DecisionProblem::new((0..m).map(|i| format!("a{i}")).collect(), criteria, matrix).unwrap()
}

fn permuted<T: Copy>(v: &[T], perm: &[usize]) -> Vec<T> {
    perm.iter().map(|&i| v[i]).collect()
}

fn outranking_inputs(k: usize) -> (Thresholds, Vec<PreferenceFunction>) {
    (Thresholds::zeros(k), vec![PreferenceFunction::Usual; k])
}

fn criterion_6(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);

    // alternative-permutation equivariance
    let mut violations: Vec<String> = Vec::new();
    for _ in 0..100 {
        let p = random_problem(&mut rng, 6);
        let mut perm: Vec<usize> = (0..p.n_alternatives()).collect();
        perm.shuffle(&mut rng);
        let q = p.permute_alternatives(&perm);
        for id in ScoringMethodId::ALL {
            let params = ScoringParams::default_for(id);
            match (rank_scoring(id, &p, &params), rank_scoring(id, &q, &params)) {
                (Ok(a), Ok(b)) if b.ranks.as_slice() == permuted(a.ranks.as_slice(), &perm) => {}
                (Err(_), Err(_)) => {}
                _ => violations.push(id.label().to_string()),
            }
        }
        let (t, f) = outranking_inputs(p.n_criteria());
        for (name, spec) in [
            ("PROMETHEE II", mcda::method::PrometheeVariant::II),
            ("PROMETHEE IV", mcda::method::PrometheeVariant::IV),
        ] {
            let s = MethodSpec::Promethee {
                variant: spec,
                thresholds: t.clone(),
                functions: f.clone(),
            };
            let ok = match (s.run(&p), s.run(&q)) {
                (Ok(mcda::MethodOutput::Ranking(a)), Ok(mcda::MethodOutput::Ranking(b))) => {
                    b.ranks.as_slice() == permuted(a.ranks.as_slice(), &perm)
                }
                _ => false,
            };
            if !ok {
                violations.push(name.into());
            }
        }
        // EC: per-iteration weights do not depend on the alternatives, so
        // mean ranks and frequency tables permute exactly
        let config = EcConfig {
            custom_set: vec![0.5; p.n_criteria()],
            iterations: 200,
            seed: rng.gen(),
            aggregation: Default::default(),
        };
        match (ec_promethee(&p, &t, &f, &config), ec_promethee(&q, &t, &f, &config)) {
            (Ok(a), Ok(b)) if b.mean_ranks == permuted(&a.mean_ranks, &perm) && b.frequencies == perm.iter().map(|&i| a.frequencies[i].clone()).collect::<Vec<_>>() => {}
            _ => violations.push("EC PROMETHEE".into()),
        }
    }
    violations.dedup();
    r.check(
        6,
        "c6.permutation",
        violations.is_empty(),
        format!("alternative-permutation equivariance, 31 ranking methods x 100 instances; violations: {violations:?}"),
    );

    // weight simplex
    let mut bad: Vec<String> = Vec::new();
    let mut declined = BTreeMap::<&str, usize>::new();
    for _ in 0..100 {
        let p = random_problem(&mut rng, 6);
        for id in WeightingMethodId::ALL {
            let cmp = if id == WeightingMethodId::Bwm { Some(random_bwm(&mut rng, p.n_criteria())) } else { None };
            match weights_for(id, &p, cmp.as_ref()) {
                Ok(w) => {
                    let sum: f64 = w.weights.iter().sum();
                    if (sum - 1.0).abs() > 1e-9 || w.weights.iter().any(|&x| !(x >= 0.0)) {
                        bad.push(format!("{}: {:?}", id.label(), w.weights));
                    }
                }
                // singular loss systems and constant columns are reported, not mis-weighted
                Err(e) if e.kind() == ErrorKind::Method => *declined.entry(id.label()).or_default() += 1,
                Err(e) => bad.push(format!("{}: {e}", id.label())),
            }
        }
    }
    r.check(
        6,
        "c6.simplex",
        bad.is_empty(),
        format!("weights >= 0 and sum to 1 within 1e-9, 6 methods x 100 matrices; method errors {declined:?}; violations {bad:?}"),
    );

    // Kendall tau vs pair enumeration, all permutation pairs up to n = 5
    let mut pairs = 0;
    let mut worst: f64 = 0.0;
    for n in 2..=5usize {
        let perms = permutations(n);
        for a in &perms {
            for b in &perms {
                let (fa, fb): (Vec<f64>, Vec<f64>) =
                    (a.iter().map(|&x| x as f64).collect(), b.iter().map(|&x| x as f64).collect());
                let mut s = 0i32;
                for i in 0..n {
                    for j in i + 1..n {
                        s += ((a[i] as i32 - a[j] as i32).signum()) * ((b[i] as i32 - b[j] as i32).signum());
                    }
                }
                let oracle = s as f64 / (n * (n - 1) / 2) as f64;
                worst = worst.max((kendall(&fa, &fb).unwrap() - oracle).abs());
                pairs += 1;
            }
        }
    }
    r.check(6, "c6.kendall", worst < 1e-12, format!("{pairs} permutation pairs (n = 2..5), max |tau - oracle| {worst:.1e}"));

    // BWM vs grid search
    let mut worst_gap: f64 = 0.0;
    let mut failures = 0;
    for case in 0..50 {
        let n = if case % 2 == 0 { 3 } else { 4 };
        let c = random_bwm(&mut rng, n);
        let lp = bwm(n, &c).unwrap();
        let (grid_w, grid_xi) = grid_oracle(&c);
        let lp_xi = max_deviation(&c, &lp.weights.weights);
        let diff = lp.weights.weights.iter().zip(&grid_w).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        // alternative optima: then the grid point is optimal up to its resolution
        let slope = c.mic.iter().chain(&c.lic).copied().max().unwrap() as f64;
        let ok = lp_xi <= grid_xi + 1e-12 && (diff <= 2e-3 || grid_xi - lp_xi <= 2e-3 * slope);
        if !ok {
            failures += 1;
        }
        if diff <= 2e-3 {
            worst_gap = worst_gap.max(diff);
        }
    }
    r.check(
        6,
        "c6.bwm",
        failures == 0,
        format!("50 comparison sets (3-4 criteria): LP xi never above the grid minimum, weights within 2e-3 of the grid optimum (max {worst_gap:.1e}) or tied optima; failures {failures}"),
    );

    // dominance
    let mut broken = Vec::new();
    for _ in 0..100 {
        let p = dominance_instance(&mut rng);
        for id in [ScoringMethodId::Saw, ScoringMethodId::Wsm, ScoringMethodId::Wpm] {
            let rk = rank_scoring(id, &p, &ScoringParams::None).unwrap();
            if rk.ranks.as_slice()[0] >= rk.ranks.as_slice()[1] {
                broken.push(id.label());
            }
        }
    }
    r.check(6, "c6.dominance", broken.is_empty(), format!("SAW/WSM/WPM rank a dominating row first on 100 instances; violations {broken:?}"));

    // PROMETHEE II net flows sum to zero
    let mut worst_sum: f64 = 0.0;
    for _ in 0..100 {
        let p = random_problem(&mut rng, 8);
        let k = p.n_criteria();
        let f = [PreferenceFunction::Usual, PreferenceFunction::Linear, PreferenceFunction::Gaussian];
        let functions: Vec<_> = (0..k).map(|_| *f.choose(&mut rng).unwrap()).collect();
        let t = Thresholds {
            q: vec![1.0; k],
            p: vec![20.0; k],
            s: vec![10.0; k],
        };
        let flows = promethee_ii_flows(&p, &t, &functions).unwrap();
        worst_sum = worst_sum.max(flows.net.iter().sum::<f64>().abs());
    }
    r.check(6, "c6.net_flow", worst_sum <= 1e-9, format!("100 random problems: max |sum of net flows| {worst_sum:.1e}"));
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![1]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

fn random_bwm(rng: &mut ChaCha8Rng, n: usize) -> BwmComparisons {
    let best = rng.gen_range(0..n);
    let worst = (best + rng.gen_range(1..n)) % n;
    let mut mic: Vec<u32> = (0..n).map(|_| rng.gen_range(2..=9)).collect();
    let mut lic: Vec<u32> = (0..n).map(|_| rng.gen_range(2..=9)).collect();
    mic[best] = 1;
    lic[worst] = 1;
    lic[best] = mic[worst];
    BwmComparisons { mic, lic }
}

fn max_deviation(c: &BwmComparisons, w: &[f64]) -> f64 {
    let b = c.mic.iter().position(|&v| v == 1).unwrap();
    let wst = c.lic.iter().position(|&v| v == 1).unwrap();
    (0..w.len())
        .flat_map(|j| [(w[b] - c.mic[j] as f64 * w[j]).abs(), (w[j] - c.lic[j] as f64 * w[wst]).abs()])
        .fold(0.0, f64::max)
}

/// Exhaustive simplex grid: step 1e-3 for three criteria, 2e-3 for four.
fn grid_oracle(c: &BwmComparisons) -> (Vec<f64>, f64) {
    let n = c.mic.len();
    let steps: usize = if n == 3 { 1000 } else { 500 };
    let h = steps as f64;
    let mut best = (vec![], f64::INFINITY);
    let mut consider = |w: &[f64]| {
        let d = max_deviation(c, w);
        if d < best.1 {
            best = (w.to_vec(), d);
        }
    };
    for i in 0..=steps {
        for j in 0..=steps - i {
            if n == 3 {
                consider(&[i as f64 / h, j as f64 / h, (steps - i - j) as f64 / h]);
            } else {
                for k in 0..=steps - i - j {
                    consider(&[i as f64 / h, j as f64 / h, k as f64 / h, (steps - i - j - k) as f64 / h]);
                }
            }
        }
    }
    best
}

/// Row 0 weakly dominates row 1 on every direction-folded criterion, strictly
/// on at least one; positive weights. A third row keeps columns non-constant.
fn dominance_instance(rng: &mut ChaCha8Rng) -> DecisionProblem {
    let m = rng.gen_range(3..=6);
    let k = rng.gen_range(1..=5);
    let dirs: Vec<Direction> = (0..k).map(|_| if rng.gen_bool(0.5) { Direction::Max } else { Direction::Min }).collect();
    let mut matrix: Vec<Vec<f64>> = (0..m).map(|_| (0..k).map(|_| rng.gen_range(20.0..50.0)).collect()).collect();
    let strict = rng.gen_range(0..k);
    for j in 0..k {
        let gap = if j == strict || rng.gen_bool(0.5) { rng.gen_range(0.5..10.0) } else { 0.0 };
        matrix[0][j] = if dirs[j] == Direction::Max { matrix[1][j] + gap } else { matrix[1][j] - gap };
    }
    let criteria = dirs
        .iter()
        .enumerate()
        .map(|(j, &d)| Criterion::new(format!("c{j}"), d, Some(rng.gen_range(0.05..1.0))))
        .collect();
    DecisionProblem::new((0..m).map(|i| format!("a{i}")).collect(), criteria, matrix).unwrap()
}

// criterion 7 ---------------------------------------------------------------

fn criterion_7(r: &mut Report, ranks: &ComparisonTable, weights: &ComparisonTable) {
    let mut ranks = ranks.clone();
    for t in datasets::material_references() {
        ranks.append_external(&t).unwrap();
    }
    let mut weights = weights.clone();
    for t in datasets::urban_references() {
        weights.append_external(&t).unwrap();
    }
    let rank_corr: CorrelationMatrix = correlation_matrix(&ranks, Coefficient::KendallTauB).unwrap();
    let weight_corr = correlation_matrix(&weights, Coefficient::Pearson).unwrap();
    let contexts = PromptContexts {
        rank_table: Some(&ranks),
        weight_table: Some(&weights),
        rank_corr: Some(&rank_corr),
        weight_corr: Some(&weight_corr),
    };
    let dir = tempfile::tempdir().unwrap();
    let ids: Vec<&str> = TEMPLATES.iter().map(|t| t.id).collect();
    let written = llm::dump_prompts(&ids, &contexts, dir.path()).unwrap();
    let files = std::fs::read_dir(dir.path()).unwrap().count();
    let verbatim = TEMPLATES.iter().all(|t| {
        let text = std::fs::read_to_string(dir.path().join(format!("{}.txt", t.id))).unwrap();
        text.lines().last() == Some(t.question)
    });
    r.check(
        7,
        "c7.dump",
        written.len() == 24 && files == 24 && verbatim,
        format!("{files} prompt files over both case studies; final lines verbatim: {verbatim}"),
    );

    let server = common::serve(vec![(200, common::completion("OK"))]);
    let mut config = ChatConfig::new(&server.url, "mock-model");
    config.retry = RetryConfig {
        max_attempts: 3,
        base_delay: Duration::from_millis(5),
        max_delay: Duration::from_millis(10),
    };
    let prompt = std::fs::read_to_string(&written[0]).unwrap();
    let transcript = ask_with_key(&config, "test-key", &prompt);
    let ok = match &transcript {
        Ok(t) => {
            let json = serde_json::to_string(t).unwrap();
            t.response == "OK" && t.prompt == prompt && !json.contains("test-key") && serde_json::from_str::<llm::Transcript>(&json).unwrap() == *t
        }
        Err(_) => false,
    };
    r.check(7, "c7.chat", ok, "mock endpoint echoing OK yields a transcript that round-trips and omits the key");

    config.api_key_env = "MCDA_ACCEPTANCE_UNSET_KEY".into();
    std::env::remove_var(&config.api_key_env);
    let before = server.requests.lock().unwrap().len();
    let missing = ask(&config, &prompt);
    let fast = matches!(missing, Err(ChatError::MissingKey(ref v)) if v == "MCDA_ACCEPTANCE_UNSET_KEY")
        && server.requests.lock().unwrap().len() == before;
    r.check(7, "c7.missing_key", fast, "unset key variable: MissingKey error naming it, no request sent");
}

fn main() {
    // skip cleanly under `cargo test -- --list` and name filters
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }

    let mut r = Report::default();
    let ranks = criterion_1(&mut r);
    criterion_2(&mut r);
    let weights = criterion_3(&mut r);
    criterion_4(&mut r, &ranks);
    criterion_5(&mut r, &ranks, &weights);
    criterion_6(&mut r);
    criterion_7(&mut r, &ranks, &weights);

    let known: BTreeMap<_, _> = KNOWN_GAPS.iter().copied().collect();
    let titles = [
        "material-selection ranks reproduce the published table",
        "EC PROMETHEE stochastic check",
        "urban-projects weights reproduce the published table",
        "consensus a3,a5,a6,a4,a1,a2,a7 under mode, Borda, Copeland",
        "correlation spot values",
        "property suites",
        "LLM pipeline",
    ];
    let mut unexpected = Vec::new();
    println!();
    for (n, title) in (1u8..=7).zip(titles) {
        let checks: Vec<_> = r.checks.iter().filter(|c| c.0 == n).collect();
        let pass = checks.iter().all(|c| c.2);
        println!("CRITERION {n}: {} - {title}", if pass { "PASS" } else { "FAIL" });
        for (_, id, ok, detail) in checks {
            if id.is_empty() {
                println!("    info  {detail}");
                continue;
            }
            let tag = match (ok, known.contains_key(id.as_str())) {
                (true, false) => "pass",
                (true, true) => "pass",
                (false, true) => "FAIL (known gap)",
                (false, false) => "FAIL",
            };
            println!("    {tag:<16} {id}: {detail}");
            if !ok && !known.contains_key(id.as_str()) {
                unexpected.push(id.clone());
            }
            if *ok && known.contains_key(id.as_str()) {
                println!("    note: {id} is listed as a known gap but now passes; remove it from KNOWN_GAPS");
            }
        }
    }
    println!();
    for (id, why) in KNOWN_GAPS {
        println!("known gap {id}: {why}");
    }
    if unexpected.is_empty() {
        println!("\nacceptance: no failures outside the known gaps");
    } else {
        println!("\nacceptance: unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
