//! The scoring-based ranking methods: each maps a weighted decision problem
//! to one real score per alternative.

mod additive;
mod distance;
mod moora;
mod pairwise;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{McdaError, Result};
use crate::problem::DecisionProblem;
use crate::rank::ScoreRanking;

pub use distance::{vikor, VikorResult};
pub use moora::{multimoora, MultimooraResult};

/// WASPAS mixing coefficient between the additive and multiplicative parts.
pub const WASPAS_LAMBDA: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ScoringMethodId {
    Aras,
    Cocoso,
    Codas,
    Copras,
    Cradis,
    Edas,
    Gra,
    Mabac,
    Macbeth,
    Mairca,
    Marcos,
    Maut,
    Moora,
    Moosra,
    Multimoora,
    Ocra,
    Oreste,
    Piv,
    Psi,
    Rov,
    Saw,
    Spotis,
    Todim,
    Topsis,
    Vikor,
    Wsm,
    Wpm,
    Waspas,
}

impl ScoringMethodId {
    pub const ALL: [ScoringMethodId; 28] = [
        Self::Aras,
        Self::Cocoso,
        Self::Codas,
        Self::Copras,
        Self::Cradis,
        Self::Edas,
        Self::Gra,
        Self::Mabac,
        Self::Macbeth,
        Self::Mairca,
        Self::Marcos,
        Self::Maut,
        Self::Moora,
        Self::Moosra,
        Self::Multimoora,
        Self::Ocra,
        Self::Oreste,
        Self::Piv,
        Self::Psi,
        Self::Rov,
        Self::Saw,
        Self::Spotis,
        Self::Todim,
        Self::Topsis,
        Self::Vikor,
        Self::Wsm,
        Self::Wpm,
        Self::Waspas,
    ];

    /// Lowercase token used in spec files and on the command line.
    pub fn token(self) -> &'static str {
        match self {
            Self::Aras => "aras",
            Self::Cocoso => "cocoso",
            Self::Codas => "codas",
            Self::Copras => "copras",
            Self::Cradis => "cradis",
            Self::Edas => "edas",
            Self::Gra => "gra",
            Self::Mabac => "mabac",
            Self::Macbeth => "macbeth",
            Self::Mairca => "mairca",
            Self::Marcos => "marcos",
            Self::Maut => "maut",
            Self::Moora => "moora",
            Self::Moosra => "moosra",
            Self::Multimoora => "multimoora",
            Self::Ocra => "ocra",
            Self::Oreste => "oreste",
            Self::Piv => "piv",
            Self::Psi => "psi",
            Self::Rov => "rov",
            Self::Saw => "saw",
            Self::Spotis => "spotis",
            Self::Todim => "todim",
            Self::Topsis => "topsis",
            Self::Vikor => "vikor",
            Self::Wsm => "wsm",
            Self::Wpm => "wpm",
            Self::Waspas => "waspas",
        }
    }

    /// Display label used for comparison-table rows.
    pub fn label(self) -> &'static str {
        match self {
            Self::Aras => "ARAS",
            Self::Cocoso => "CoCoSo",
            Self::Codas => "CODAS",
            Self::Copras => "COPRAS",
            Self::Cradis => "CRADIS",
            Self::Edas => "EDAS",
            Self::Gra => "GRA",
            Self::Mabac => "MABAC",
            Self::Macbeth => "MACBETH",
            Self::Mairca => "MAIRCA",
            Self::Marcos => "MARCOS",
            Self::Maut => "MAUT",
            Self::Moora => "MOORA",
            Self::Moosra => "MOOSRA",
            Self::Multimoora => "MULTIMOORA",
            Self::Ocra => "OCRA",
            Self::Oreste => "ORESTE",
            Self::Piv => "PIV",
            Self::Psi => "PSI",
            Self::Rov => "ROV",
            Self::Saw => "SAW",
            Self::Spotis => "SPOTIS",
            Self::Todim => "TODIM",
            Self::Topsis => "TOPSIS",
            Self::Vikor => "VIKOR",
            Self::Wsm => "WSM",
            Self::Wpm => "WPM",
            Self::Waspas => "WASPAS",
        }
    }

    /// Whether larger scores mean better alternatives.
    pub fn higher_is_better(self) -> bool {
        !matches!(
            self,
            Self::Cradis | Self::Mairca | Self::Oreste | Self::Piv | Self::Spotis | Self::Vikor
        )
    }
}

impl FromStr for ScoringMethodId {
    type Err = McdaError;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|m| m.token() == t)
            .ok_or_else(|| McdaError::UnknownMethod(s.trim().to_string()))
    }
}

impl TryFrom<String> for ScoringMethodId {
    type Error = McdaError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ScoringMethodId> for String {
    fn from(m: ScoringMethodId) -> String {
        m.token().to_string()
    }
}

impl fmt::Display for ScoringMethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Method-specific parameters. Methods without parameters take `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ScoringParams {
    None,
    Cocoso { l: f64 },
    Codas { lambda: f64 },
    Gra { epsilon: f64 },
    Oreste { alpha: f64 },
    Todim { teta: f64 },
    Vikor { v: f64 },
    /// Empty bound vectors mean "use the column range of the data". With
    /// `extend`, a bound that the data crosses is widened to the data
    /// extreme instead of being rejected.
    Spotis { smin: Vec<f64>, smax: Vec<f64>, extend: bool },
    /// Exponential utility on MAX criteria, step utility on MIN criteria.
    Maut { step_size: f64 },
}

impl ScoringParams {
    /// Default parameters for `method` (the values of the first case study).
    pub fn default_for(method: ScoringMethodId) -> Self {
        use ScoringMethodId as M;
        match method {
            M::Cocoso => ScoringParams::Cocoso { l: 0.5 },
            M::Codas => ScoringParams::Codas { lambda: 0.02 },
            M::Gra => ScoringParams::Gra { epsilon: 0.5 },
            M::Oreste => ScoringParams::Oreste { alpha: 0.4 },
            M::Todim => ScoringParams::Todim { teta: 1.0 },
            M::Vikor => ScoringParams::Vikor { v: 0.5 },
            M::Spotis => ScoringParams::Spotis {
                smin: vec![],
                smax: vec![],
                extend: false,
            },
            M::Maut => ScoringParams::Maut { step_size: 1.0 },
            _ => ScoringParams::None,
        }
    }

    fn matches(&self, method: ScoringMethodId) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(&Self::default_for(method))
    }

    fn validate(&self, method: ScoringMethodId, problem: &DecisionProblem) -> Result<()> {
        let bad = |reason: String| Err(McdaError::params(method.label(), reason));
        match *self {
            ScoringParams::Cocoso { l } if !(0.0..=1.0).contains(&l) => bad(format!("l = {l} outside [0, 1]")),
            ScoringParams::Codas { lambda } if !(lambda >= 0.0 && lambda.is_finite()) => {
                bad(format!("lambda = {lambda} must be >= 0"))
            }
            ScoringParams::Gra { epsilon } if !(epsilon > 0.0 && epsilon <= 1.0) => {
                bad(format!("epsilon = {epsilon} outside (0, 1]"))
            }
            ScoringParams::Oreste { alpha } if !(0.0..=1.0).contains(&alpha) => {
                bad(format!("alpha = {alpha} outside [0, 1]"))
            }
            ScoringParams::Todim { teta } if !(teta > 0.0 && teta.is_finite()) => bad(format!("teta = {teta} must be > 0")),
            ScoringParams::Vikor { v } if !(0.0..=1.0).contains(&v) => bad(format!("v = {v} outside [0, 1]")),
            ScoringParams::Maut { step_size } if !(step_size > 0.0 && step_size.is_finite()) => {
                bad(format!("step_size = {step_size} must be > 0"))
            }
            ScoringParams::Spotis { ref smin, ref smax, extend } => {
                if smin.is_empty() && smax.is_empty() {
                    return Ok(());
                }
                let k = problem.n_criteria();
                if smin.len() != k || smax.len() != k {
                    return bad(format!("smin/smax need {k} entries each"));
                }
                for j in 0..k {
                    if !(smin[j] < smax[j]) {
                        return bad(format!("criterion {}: smin {} is not below smax {}", j + 1, smin[j], smax[j]));
                    }
                    for (i, row) in problem.matrix().iter().enumerate() {
                        if extend {
                            continue;
                        }
                        if row[j] < smin[j] || row[j] > smax[j] {
                            return Err(McdaError::method(
                                method.label(),
                                format!(
                                    "value {} of {} on {} outside [{}, {}]",
                                    row[j],
                                    problem.alternatives()[i],
                                    problem.criteria()[j].name,
                                    smin[j],
                                    smax[j]
                                ),
                            ));
                        }
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Runs one scoring method. A single alternative is always ranked first
/// (its score is reported as 0).
pub fn rank_scoring(
    method: ScoringMethodId,
    problem: &DecisionProblem,
    params: &ScoringParams,
) -> Result<ScoreRanking> {
    use ScoringMethodId as M;
    if !params.matches(method) {
        return Err(McdaError::params(
            method.label(),
            format!("parameter set {params:?} does not belong to this method"),
        ));
    }
    let w = problem.require_weights()?;
    params.validate(method, problem)?;
    if problem.n_alternatives() == 1 {
        return ScoreRanking::from_scores(vec![0.0], method.higher_is_better());
    }
    let x = problem.matrix();
    let d = problem.directions();
    let ctx = Ctx {
        method,
        x,
        d: &d,
        w: &w,
    };
    let scores = match (method, params) {
        (M::Aras, _) => additive::aras(&ctx)?,
        (M::Cocoso, &ScoringParams::Cocoso { l }) => additive::cocoso(&ctx, l)?,
        (M::Codas, &ScoringParams::Codas { lambda }) => distance::codas(&ctx, lambda)?,
        (M::Copras, _) => additive::copras(&ctx)?,
        (M::Cradis, _) => distance::cradis(&ctx)?,
        (M::Edas, _) => distance::edas(&ctx)?,
        (M::Gra, &ScoringParams::Gra { epsilon }) => distance::gra(&ctx, epsilon)?,
        (M::Mabac, _) => distance::mabac(&ctx)?,
        (M::Macbeth, _) => additive::macbeth(&ctx)?,
        (M::Mairca, _) => distance::mairca(&ctx)?,
        (M::Marcos, _) => distance::marcos(&ctx)?,
        (M::Maut, &ScoringParams::Maut { step_size }) => additive::maut(&ctx, step_size)?,
        (M::Moora, _) => moora::moora(&ctx)?,
        (M::Moosra, _) => moora::moosra(&ctx)?,
        (M::Multimoora, _) => return Ok(moora::multimoora_unchecked(&ctx)?.ranking),
        (M::Ocra, _) => additive::ocra(&ctx)?,
        (M::Oreste, &ScoringParams::Oreste { alpha }) => pairwise::oreste(&ctx, alpha),
        (M::Piv, _) => distance::piv(&ctx)?,
        (M::Psi, _) => additive::psi(&ctx)?,
        (M::Rov, _) => additive::rov(&ctx)?,
        (M::Saw, _) => additive::saw(&ctx)?,
        (M::Spotis, ScoringParams::Spotis { smin, smax, extend }) => {
            distance::spotis(&ctx, smin, smax, *extend)?
        },
        (M::Todim, &ScoringParams::Todim { teta }) => pairwise::todim(&ctx, teta)?,
        (M::Topsis, _) => distance::topsis(&ctx)?,
        (M::Vikor, &ScoringParams::Vikor { v }) => distance::vikor_unchecked(&ctx, v)?.q,
        (M::Wsm, _) => additive::wsm(&ctx)?,
        (M::Wpm, _) => additive::wpm(&ctx)?,
        (M::Waspas, _) => additive::waspas(&ctx, WASPAS_LAMBDA)?,
        _ => unreachable!("parameter variant checked above"),
    };
    ScoreRanking::from_scores(scores, method.higher_is_better())
        .map_err(|e| McdaError::method(method.label(), e.to_string()))
}

/// Shared inputs of a method evaluation.
pub(crate) struct Ctx<'a> {
    pub method: ScoringMethodId,
    pub x: &'a [Vec<f64>],
    pub d: &'a [crate::problem::Direction],
    pub w: &'a [f64],
}

impl Ctx<'_> {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn k(&self) -> usize {
        self.d.len()
    }

    pub fn fail(&self, reason: impl Into<String>) -> McdaError {
        McdaError::method(self.method.label(), reason)
    }

    /// Every entry must be strictly positive (ratio-based methods).
    pub fn require_positive(&self) -> Result<()> {
        if self.x.iter().flatten().any(|&v| v <= 0.0) {
            return Err(self.fail("requires strictly positive performance values"));
        }
        Ok(())
    }

    /// Column minimum and maximum, failing on constant columns.
    pub fn span(&self, j: usize) -> Result<(f64, f64)> {
        let lo = crate::normalize::col_min(self.x, j);
        let hi = crate::normalize::col_max(self.x, j);
        if hi == lo {
            return Err(McdaError::Degenerate {
                column: j,
                what: format!("{} (constant column)", self.method.label()),
            });
        }
        Ok((lo, hi))
    }

    /// Min-max normalization with MIN columns reversed: 1 = best.
    pub fn minmax(&self) -> Result<Vec<Vec<f64>>> {
        crate::normalize::normalize(self.x, self.d, crate::normalize::Scheme::MinMax).map_err(|e| match e {
            McdaError::Degenerate { column, .. } => McdaError::Degenerate {
                column,
                what: format!("{} (constant column)", self.method.label()),
            },
            other => other,
        })
    }
}

pub(crate) fn weighted_row_sums(m: &[Vec<f64>], w: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|r| r.iter().zip(w).map(|(a, b)| a * b).sum())
        .collect()
}
