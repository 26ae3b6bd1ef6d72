//! A method identifier bundled with its parameters, runnable against a
//! decision problem.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::outranking::{ec_promethee, promethee_ii, promethee_iv, EcConfig, PreferenceFunction, Thresholds};
use crate::problem::DecisionProblem;
use crate::rank::ScoreRanking;
use crate::scoring::{rank_scoring, ScoringMethodId, ScoringParams};
use crate::weighting::{weights_for, BwmComparisons, WeightVector, WeightingMethodId};

/// Seed used for EC-PROMETHEE when none is given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrometheeVariant {
    II,
    IV,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MethodSpec {
    Scoring {
        id: ScoringMethodId,
        params: ScoringParams,
    },
    Promethee {
        variant: PrometheeVariant,
        thresholds: Thresholds,
        functions: Vec<PreferenceFunction>,
    },
    EcPromethee {
        thresholds: Thresholds,
        functions: Vec<PreferenceFunction>,
        config: EcConfig,
    },
    Weighting {
        id: WeightingMethodId,
        bwm: Option<BwmComparisons>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MethodOutput {
    Ranking(ScoreRanking),
    Weights(WeightVector),
}

impl MethodSpec {
    pub fn token(&self) -> &'static str {
        match self {
            MethodSpec::Scoring { id, .. } => id.token(),
            MethodSpec::Promethee { variant: PrometheeVariant::II, .. } => "promethee_ii",
            MethodSpec::Promethee { variant: PrometheeVariant::IV, .. } => "promethee_iv",
            MethodSpec::EcPromethee { .. } => "ec_promethee",
            MethodSpec::Weighting { id, .. } => id.token(),
        }
    }

    /// Row label in comparison tables.
    pub fn label(&self) -> &'static str {
        match self {
            MethodSpec::Scoring { id, .. } => id.label(),
            MethodSpec::Promethee { variant: PrometheeVariant::II, .. } => "PROMETHEE II",
            MethodSpec::Promethee { variant: PrometheeVariant::IV, .. } => "PROMETHEE IV",
            MethodSpec::EcPromethee { .. } => "EC PROMETHEE",
            MethodSpec::Weighting { id, .. } => id.label(),
        }
    }

    pub fn produces_weights(&self) -> bool {
        matches!(self, MethodSpec::Weighting { .. })
    }

    pub fn run(&self, problem: &DecisionProblem) -> Result<MethodOutput> {
        Ok(match self {
            MethodSpec::Scoring { id, params } => MethodOutput::Ranking(rank_scoring(*id, problem, params)?),
            MethodSpec::Promethee {
                variant,
                thresholds,
                functions,
            } => MethodOutput::Ranking(match variant {
                PrometheeVariant::II => promethee_ii(problem, thresholds, functions)?,
                PrometheeVariant::IV => promethee_iv(problem, thresholds, functions)?,
            }),
            MethodSpec::EcPromethee {
                thresholds,
                functions,
                config,
            } => MethodOutput::Ranking(ec_promethee(problem, thresholds, functions, config)?.ranking),
            MethodSpec::Weighting { id, bwm } => MethodOutput::Weights(weights_for(*id, problem, bwm.as_ref())?),
        })
    }
}
