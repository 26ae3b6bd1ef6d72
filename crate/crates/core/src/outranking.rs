//! PROMETHEE II, PROMETHEE IV and EC-PROMETHEE.
//!
//! MIN criteria are folded by reciprocal (x → 1/x) before pairwise
//! differences are taken, so thresholds for MIN criteria are expressed on
//! the reciprocal scale.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{McdaError, Result};
use crate::problem::DecisionProblem;
use crate::rank::{RankVector, ScoreRanking};

/// Grid resolution of the PROMETHEE IV quadrature.
pub const QUADRATURE_POINTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum PreferenceFunction {
    Usual,
    UShape,
    VShape,
    Level,
    Linear,
    Gaussian,
}

impl PreferenceFunction {
    /// Preference degree for a (folded) difference `d`.
    pub fn degree(self, d: f64, q: f64, p: f64, s: f64) -> f64 {
        if d <= 0.0 {
            return 0.0;
        }
        match self {
            Self::Usual => 1.0,
            Self::UShape => (d > q) as u8 as f64,
            Self::VShape => {
                if d >= p {
                    1.0
                } else {
                    d / p
                }
            }
            Self::Level => {
                if d <= q {
                    0.0
                } else if d <= p {
                    0.5
                } else {
                    1.0
                }
            }
            Self::Linear => {
                if d <= q {
                    0.0
                } else if d <= p {
                    (d - q) / (p - q)
                } else {
                    1.0
                }
            }
            Self::Gaussian => 1.0 - (-d * d / (2.0 * s * s)).exp(),
        }
    }

    fn token(self) -> &'static str {
        match self {
            Self::Usual => "usual",
            Self::UShape => "u-shape",
            Self::VShape => "v-shape",
            Self::Level => "level",
            Self::Linear => "linear",
            Self::Gaussian => "gaussian",
        }
    }
}

impl FromStr for PreferenceFunction {
    type Err = McdaError;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase().replace('_', "-");
        Ok(match t.as_str() {
            "usual" | "t1" => Self::Usual,
            "u-shape" | "ushape" | "t2" => Self::UShape,
            "v-shape" | "vshape" | "t3" => Self::VShape,
            "level" | "t4" => Self::Level,
            "linear" | "t5" => Self::Linear,
            "gaussian" | "t6" => Self::Gaussian,
            _ => return Err(McdaError::params("PROMETHEE", format!("unknown preference function {s:?}"))),
        })
    }
}

impl TryFrom<String> for PreferenceFunction {
    type Error = McdaError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<PreferenceFunction> for String {
    fn from(f: PreferenceFunction) -> String {
        f.token().to_string()
    }
}

impl fmt::Display for PreferenceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Indifference (q), preference (p) and Gaussian (s) thresholds per criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub s: Vec<f64>,
}

impl Thresholds {
    /// All-zero q/p with unit s: only meaningful for USUAL criteria.
    pub fn zeros(k: usize) -> Self {
        Thresholds {
            q: vec![0.0; k],
            p: vec![0.0; k],
            s: vec![1.0; k],
        }
    }

    pub fn validate(&self, k: usize, functions: &[PreferenceFunction]) -> Result<()> {
        let bad = |r: String| Err(McdaError::params("PROMETHEE", r));
        if self.q.len() != k || self.p.len() != k || self.s.len() != k || functions.len() != k {
            return bad(format!("q, p, s and functions need {k} entries each"));
        }
        for j in 0..k {
            let (q, p, s) = (self.q[j], self.p[j], self.s[j]);
            if !(q.is_finite() && p.is_finite() && s.is_finite()) {
                return bad(format!("criterion {}: thresholds must be finite", j + 1));
            }
            if q < 0.0 || p < q {
                return bad(format!("criterion {}: need 0 <= q <= p (q = {q}, p = {p})", j + 1));
            }
            if s <= 0.0 {
                return bad(format!("criterion {}: s must be > 0", j + 1));
            }
            let f = functions[j];
            if matches!(f, PreferenceFunction::VShape) && p == 0.0 {
                return bad(format!("criterion {}: v-shape needs p > 0", j + 1));
            }
            if matches!(f, PreferenceFunction::Linear) && p == q {
                return bad(format!("criterion {}: linear needs p > q", j + 1));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum EcAggregation {
    /// Order by mean iteration rank, then modal rank, then index.
    #[default]
    MeanRank,
    /// Order by modal rank, then mean rank, then index.
    Modal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EcConfig {
    /// Per-criterion weight anchors in [0, 1].
    pub custom_set: Vec<f64>,
    pub iterations: usize,
    pub seed: u64,
    #[serde(default)]
    pub aggregation: EcAggregation,
}

impl EcConfig {
    pub fn validate(&self, k: usize) -> Result<()> {
        let bad = |r: String| Err(McdaError::params("EC PROMETHEE", r));
        if self.iterations == 0 {
            return bad("iterations must be >= 1".into());
        }
        if self.custom_set.len() != k {
            return bad(format!("custom_set needs {k} entries"));
        }
        if self.custom_set.iter().any(|c| !(0.0..=1.0).contains(c)) {
            return bad("custom_set entries must lie in [0, 1]".into());
        }
        if self.custom_set.iter().all(|&c| c == 0.0) {
            return bad("custom_set is all zero".into());
        }
        Ok(())
    }
}

/// Positive, negative and net outranking flows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Flows {
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
    pub net: Vec<f64>,
}

fn folded_columns(problem: &DecisionProblem) -> Result<Vec<Vec<f64>>> {
    (0..problem.n_criteria())
        .map(|j| {
            let col = problem.column(j);
            if problem.criteria()[j].direction.is_max() {
                Ok(col)
            } else if col.contains(&0.0) {
                Err(McdaError::method(
                    "PROMETHEE",
                    format!("MIN criterion {} contains a zero", problem.criteria()[j].name),
                ))
            } else {
                Ok(col.iter().map(|x| 1.0 / x).collect())
            }
        })
        .collect()
}

/// Flows from a per-criterion preference degree `pref(j, d)`.
fn flows_with(cols: &[Vec<f64>], weights: &[f64], pref: impl Fn(usize, f64) -> f64) -> Flows {
    let n = cols.first().map_or(0, Vec::len);
    let wsum: f64 = weights.iter().sum();
    let mut pi = vec![vec![0.0; n]; n];
    for (j, col) in cols.iter().enumerate() {
        if weights[j] == 0.0 {
            continue;
        }
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    pi[a][b] += weights[j] * pref(j, col[a] - col[b]);
                }
            }
        }
    }
    let denom = if n > 1 { (n - 1) as f64 } else { 1.0 };
    let plus: Vec<f64> = (0..n).map(|a| pi[a].iter().sum::<f64>() / wsum / denom).collect();
    let minus: Vec<f64> = (0..n).map(|b| (0..n).map(|a| pi[a][b]).sum::<f64>() / wsum / denom).collect();
    let net = plus.iter().zip(&minus).map(|(p, m)| p - m).collect();
    Flows { plus, minus, net }
}

fn check(problem: &DecisionProblem, t: &Thresholds, f: &[PreferenceFunction]) -> Result<Vec<f64>> {
    t.validate(problem.n_criteria(), f)?;
    problem.require_weights()
}

pub fn promethee_ii_flows(
    problem: &DecisionProblem,
    thresholds: &Thresholds,
    functions: &[PreferenceFunction],
) -> Result<Flows> {
    let w = check(problem, thresholds, functions)?;
    let cols = folded_columns(problem)?;
    Ok(flows_with(&cols, &w, |j, d| {
        functions[j].degree(d, thresholds.q[j], thresholds.p[j], thresholds.s[j])
    }))
}

/// PROMETHEE II: ranks by net flow, higher is better.
pub fn promethee_ii(
    problem: &DecisionProblem,
    thresholds: &Thresholds,
    functions: &[PreferenceFunction],
) -> Result<ScoreRanking> {
    ScoreRanking::from_scores(promethee_ii_flows(problem, thresholds, functions)?.net, true)
}

/// Cumulative trapezoid of the preference function over [0, range] on a
/// uniform grid; the integral up to d is read off by linear interpolation.
struct AreaTable {
    step: f64,
    cumulative: Vec<f64>,
}

impl AreaTable {
    fn new(range: f64, f: impl Fn(f64) -> f64) -> Self {
        let m = QUADRATURE_POINTS;
        let step = range / m as f64;
        let mut cumulative = Vec::with_capacity(m + 1);
        cumulative.push(0.0);
        let mut prev = f(0.0);
        for i in 1..=m {
            let cur = f(step * i as f64);
            let last = cumulative[i - 1];
            cumulative.push(last + 0.5 * step * (prev + cur));
            prev = cur;
        }
        AreaTable { step, cumulative }
    }

    fn area(&self, d: f64) -> f64 {
        if d <= 0.0 || self.step == 0.0 {
            return 0.0;
        }
        let pos = d / self.step;
        let i = (pos.floor() as usize).min(self.cumulative.len() - 2);
        let frac = pos - i as f64;
        self.cumulative[i] + frac * (self.cumulative[i + 1] - self.cumulative[i])
    }
}

pub fn promethee_iv_flows(
    problem: &DecisionProblem,
    thresholds: &Thresholds,
    functions: &[PreferenceFunction],
) -> Result<Flows> {
    let w = check(problem, thresholds, functions)?;
    let cols = folded_columns(problem)?;
    let tables: Vec<AreaTable> = cols
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let lo = col.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            AreaTable::new(hi - lo, |x| {
                functions[j].degree(x, thresholds.q[j], thresholds.p[j], thresholds.s[j])
            })
        })
        .collect();
    Ok(flows_with(&cols, &w, |j, d| tables[j].area(d)))
}

/// PROMETHEE IV: pairwise preference is the integral of the preference
/// function from 0 to the difference, giving a continuous variant of the
/// net flow.
pub fn promethee_iv(
    problem: &DecisionProblem,
    thresholds: &Thresholds,
    functions: &[PreferenceFunction],
) -> Result<ScoreRanking> {
    ScoreRanking::from_scores(promethee_iv_flows(problem, thresholds, functions)?.net, true)
}

/// Weight vector drawn for one EC iteration: each criterion uniformly on
/// [max(0, c/2), min(1, 3c/2)], renormalized to sum 1. Iteration `i` uses
/// ChaCha8 stream `i` of `seed`, so draws are independent of evaluation order.
pub fn ec_sample_weights(config: &EcConfig, iteration: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(iteration as u64);
    let raw: Vec<f64> = config
        .custom_set
        .iter()
        .map(|&c| {
            let lo = (c - 0.5 * c).max(0.0);
            let hi = (c + 0.5 * c).min(1.0);
            if hi > lo {
                rng.gen_range(lo..hi)
            } else {
                lo
            }
        })
        .collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|w| w / total).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EcResult {
    /// Final order; scores are 1-based positions (lower is better).
    pub ranking: ScoreRanking,
    pub mean_ranks: Vec<f64>,
    /// Smallest most-frequent rank per alternative.
    pub modal_ranks: Vec<usize>,
    /// True where an alternative has more than one most-frequent rank.
    pub multimodal: Vec<bool>,
    /// `frequencies[a][r-1]` = number of iterations giving alternative a rank r.
    pub frequencies: Vec<Vec<usize>>,
    pub iterations: usize,
    pub seed: u64,
}

/// EC-PROMETHEE: PROMETHEE II repeated under random weights drawn around the
/// custom-set anchors. The problem's own weights are not used.
pub fn ec_promethee(
    problem: &DecisionProblem,
    thresholds: &Thresholds,
    functions: &[PreferenceFunction],
    config: &EcConfig,
) -> Result<EcResult> {
    let k = problem.n_criteria();
    thresholds.validate(k, functions)?;
    config.validate(k)?;
    let cols = folded_columns(problem)?;
    let n = problem.n_alternatives();
    let runs: Vec<RankVector> = (0..config.iterations)
        .into_par_iter()
        .map(|it| {
            let w = ec_sample_weights(config, it);
            let flows = flows_with(&cols, &w, |j, d| {
                functions[j].degree(d, thresholds.q[j], thresholds.p[j], thresholds.s[j])
            });
            crate::rank::scores_to_ranks(&flows.net, true)
        })
        .collect();
    let mut frequencies = vec![vec![0usize; n]; n];
    let mut sums = vec![0usize; n];
    for r in &runs {
        for (a, &rank) in r.as_slice().iter().enumerate() {
            frequencies[a][rank - 1] += 1;
            sums[a] += rank;
        }
    }
    let mean_ranks: Vec<f64> = sums.iter().map(|&s| s as f64 / config.iterations as f64).collect();
    let mut modal_ranks = vec![0; n];
    let mut multimodal = vec![false; n];
    for a in 0..n {
        let top = *frequencies[a].iter().max().unwrap();
        let modes: Vec<usize> = (0..n).filter(|&r| frequencies[a][r] == top).collect();
        modal_ranks[a] = modes[0] + 1;
        multimodal[a] = modes.len() > 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    match config.aggregation {
        EcAggregation::MeanRank => order.sort_by(|&a, &b| {
            mean_ranks[a]
                .total_cmp(&mean_ranks[b])
                .then(modal_ranks[a].cmp(&modal_ranks[b]))
                .then(a.cmp(&b))
        }),
        EcAggregation::Modal => order.sort_by(|&a, &b| {
            modal_ranks[a]
                .cmp(&modal_ranks[b])
                .then(mean_ranks[a].total_cmp(&mean_ranks[b]))
                .then(a.cmp(&b))
        }),
    }
    let mut position = vec![0.0; n];
    for (p, &a) in order.iter().enumerate() {
        position[a] = (p + 1) as f64;
    }
    Ok(EcResult {
        ranking: ScoreRanking::from_scores(position, false)?,
        mean_ranks,
        modal_ranks,
        multimodal,
        frequencies,
        iterations: config.iterations,
        seed: config.seed,
    })
}
