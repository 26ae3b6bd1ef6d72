//! Flat `key = value` run specifications.
//!
//! ```text
//! methods = topsis, vikor, promethee_ii
//! vikor.v = 1
//! promethee.q = 5, 10, 1.7
//! ```
//!
//! List values are comma separated. Lines starting with `#` are comments.
//! Parameters for methods that are not listed are accepted but unused.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{McdaError, Result};
use crate::method::{MethodSpec, PrometheeVariant, DEFAULT_SEED};
use crate::outranking::{EcAggregation, EcConfig, PreferenceFunction, Thresholds};
use crate::problem::DecisionProblem;
use crate::scoring::{ScoringMethodId, ScoringParams};
use crate::weighting::{BwmComparisons, WeightingMethodId};

const PARAM_KEYS: &[&str] = &[
    "promethee.q",
    "promethee.p",
    "promethee.s",
    "promethee.f",
    "ec.custom_set",
    "ec.iterations",
    "ec.seed",
    "ec.aggregation",
    "maut.step_size",
    "cocoso.l",
    "codas.lambda",
    "gra.epsilon",
    "oreste.alpha",
    "todim.teta",
    "vikor.v",
    "spotis.smin",
    "spotis.smax",
    "spotis.bounds",
    "bwm.mic",
    "bwm.lic",
];

const DEFAULT_EC_ITERATIONS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunSpec {
    /// Method tokens in run order.
    pub methods: Vec<String>,
    /// Parameter values keyed by `method.param`, kept as written.
    pub params: BTreeMap<String, String>,
}

fn is_method_token(t: &str) -> bool {
    matches!(t, "promethee_ii" | "promethee_iv" | "ec_promethee")
        || t.parse::<ScoringMethodId>().is_ok()
        || t.parse::<WeightingMethodId>().is_ok()
}

impl FromStr for RunSpec {
    type Err = McdaError;

    fn from_str(text: &str) -> Result<Self> {
        let spec = RunSpec::parse_config(text)?;
        if spec.methods.is_empty() {
            return Err(McdaError::Parse("spec lists no methods".into()));
        }
        Ok(spec)
    }
}

impl RunSpec {
    /// Like `parse`, but a missing `methods` line is allowed (parameter-only
    /// config files).
    pub fn parse_config(text: &str) -> Result<Self> {
        let mut spec = RunSpec::default();
        let mut seen_methods = false;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| McdaError::Parse(format!("spec line {}: expected `key = value`", n + 1)))?;
            let key = key.trim().to_ascii_lowercase();
            let value = value.trim().to_string();
            if key == "methods" {
                if seen_methods {
                    return Err(McdaError::Parse(format!("spec line {}: duplicate `methods`", n + 1)));
                }
                seen_methods = true;
                for t in value.split(',').map(|t| t.trim().to_ascii_lowercase()).filter(|t| !t.is_empty()) {
                    if !is_method_token(&t) {
                        return Err(McdaError::UnknownMethod(t));
                    }
                    if spec.methods.contains(&t) {
                        return Err(McdaError::Parse(format!("spec line {}: method {t} listed twice", n + 1)));
                    }
                    spec.methods.push(t);
                }
            } else if PARAM_KEYS.contains(&key.as_str()) {
                if spec.params.insert(key.clone(), value).is_some() {
                    return Err(McdaError::Parse(format!("spec line {}: duplicate key {key}", n + 1)));
                }
            } else {
                return Err(McdaError::Parse(format!("spec line {}: unknown key {key:?}", n + 1)));
            }
        }
        Ok(spec)
    }
}

impl fmt::Display for RunSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "methods = {}", self.methods.join(", "))?;
        for (k, v) in &self.params {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}

fn parse_f64(key: &str, s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| McdaError::Parse(format!("{key}: {s:?} is not a finite number")))
}

fn parse_list<T>(key: &str, s: &str, item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    s.split(',').map(|t| t.trim()).filter(|t| !t.is_empty()).map(item).collect::<Result<Vec<_>>>().map_err(|e| match e {
        McdaError::Parse(m) if !m.starts_with(key) => McdaError::Parse(format!("{key}: {m}")),
        other => other,
    })
}

impl RunSpec {
    pub fn parse_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        std::fs::read_to_string(path).map_err(|e| McdaError::io(path, e))?.parse()
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }

    fn number(&self, key: &str) -> Result<Option<f64>> {
        self.get(key).map(|v| parse_f64(key, v)).transpose()
    }

    fn numbers(&self, key: &str) -> Result<Option<Vec<f64>>> {
        self.get(key).map(|v| parse_list(key, v, |t| parse_f64(key, t))).transpose()
    }

    fn integers(&self, key: &str) -> Result<Option<Vec<u32>>> {
        self.get(key)
            .map(|v| {
                parse_list(key, v, |t| {
                    t.parse::<u32>().map_err(|_| McdaError::Parse(format!("{key}: {t:?} is not a positive integer")))
                })
            })
            .transpose()
    }

    /// Per-criterion list where a single value is broadcast to all criteria.
    fn per_criterion<T: Clone>(&self, key: &str, k: usize, values: Vec<T>) -> Result<Vec<T>> {
        match values.len() {
            1 => Ok(vec![values[0].clone(); k]),
            n if n == k => Ok(values),
            n => Err(McdaError::params(key, format!("expected 1 or {k} values, got {n}"))),
        }
    }

    fn promethee_inputs(&self, k: usize) -> Result<(Thresholds, Vec<PreferenceFunction>)> {
        let mut t = Thresholds::zeros(k);
        for (key, slot) in [("promethee.q", &mut t.q), ("promethee.p", &mut t.p), ("promethee.s", &mut t.s)] {
            if let Some(v) = self.numbers(key)? {
                *slot = self.per_criterion(key, k, v)?;
            }
        }
        let functions = match self.get("promethee.f") {
            Some(v) => {
                let f = parse_list("promethee.f", v, |t| t.parse::<PreferenceFunction>())?;
                self.per_criterion("promethee.f", k, f)?
            }
            None => vec![PreferenceFunction::Usual; k],
        };
        Ok((t, functions))
    }

    fn ec_config(&self, problem: &DecisionProblem, seed: Option<u64>) -> Result<EcConfig> {
        let k = problem.n_criteria();
        let custom_set = match self.numbers("ec.custom_set")? {
            Some(v) => self.per_criterion("ec.custom_set", k, v)?,
            None => problem
                .weights()
                .ok_or_else(|| McdaError::params("EC PROMETHEE", "ec.custom_set is missing and the problem has no weights"))?,
        };
        let iterations = match self.get("ec.iterations") {
            Some(v) => v
                .trim()
                .parse::<usize>()
                .map_err(|_| McdaError::Parse(format!("ec.iterations: {v:?} is not a count")))?,
            None => DEFAULT_EC_ITERATIONS,
        };
        let spec_seed = self
            .get("ec.seed")
            .map(|v| v.trim().parse::<u64>().map_err(|_| McdaError::Parse(format!("ec.seed: {v:?} is not a seed"))))
            .transpose()?;
        let aggregation = match self.get("ec.aggregation").map(|s| s.trim().to_ascii_lowercase()) {
            None => EcAggregation::default(),
            Some(s) if s == "mean" || s == "mean_rank" => EcAggregation::MeanRank,
            Some(s) if s == "mode" || s == "modal" => EcAggregation::Modal,
            Some(s) => return Err(McdaError::Parse(format!("ec.aggregation: unknown value {s:?}"))),
        };
        Ok(EcConfig {
            custom_set,
            iterations,
            seed: seed.or(spec_seed).unwrap_or(DEFAULT_SEED),
            aggregation,
        })
    }

    fn scoring_params(&self, id: ScoringMethodId) -> Result<ScoringParams> {
        let mut p = ScoringParams::default_for(id);
        let set = |slot: &mut f64, key: &str| -> Result<()> {
            if let Some(v) = self.number(key)? {
                *slot = v;
            }
            Ok(())
        };
        match &mut p {
            ScoringParams::Cocoso { l } => set(l, "cocoso.l")?,
            ScoringParams::Codas { lambda } => set(lambda, "codas.lambda")?,
            ScoringParams::Gra { epsilon } => set(epsilon, "gra.epsilon")?,
            ScoringParams::Oreste { alpha } => set(alpha, "oreste.alpha")?,
            ScoringParams::Todim { teta } => set(teta, "todim.teta")?,
            ScoringParams::Vikor { v } => set(v, "vikor.v")?,
            ScoringParams::Maut { step_size } => set(step_size, "maut.step_size")?,
            ScoringParams::Spotis { smin, smax, extend } => {
                *smin = self.numbers("spotis.smin")?.unwrap_or_default();
                *smax = self.numbers("spotis.smax")?.unwrap_or_default();
                *extend = match self.params.get("spotis.bounds").map(String::as_str) {
                    None | Some("strict") => false,
                    Some("extend") => true,
                    Some(other) => {
                        return Err(McdaError::params(
                            "SPOTIS",
                            format!("spotis.bounds must be strict or extend, got {other:?}"),
                        ))
                    }
                };
            }
            ScoringParams::None => {}
        }
        Ok(p)
    }

    /// BWM comparisons from the spec, if both vectors are present.
    pub fn bwm(&self) -> Result<Option<BwmComparisons>> {
        match (self.integers("bwm.mic")?, self.integers("bwm.lic")?) {
            (Some(mic), Some(lic)) => Ok(Some(BwmComparisons { mic, lic })),
            (None, None) => Ok(None),
            _ => Err(McdaError::params("BWM", "bwm.mic and bwm.lic must be given together")),
        }
    }

    /// Resolves every listed method against `problem`. `seed` overrides
    /// `ec.seed`; without either the EC seed is [`DEFAULT_SEED`].
    pub fn resolve(&self, problem: &DecisionProblem, seed: Option<u64>) -> Result<Vec<MethodSpec>> {
        let k = problem.n_criteria();
        self.methods
            .iter()
            .map(|t| {
                Ok(match t.as_str() {
                    "promethee_ii" | "promethee_iv" => {
                        let (thresholds, functions) = self.promethee_inputs(k)?;
                        MethodSpec::Promethee {
                            variant: if t == "promethee_ii" { PrometheeVariant::II } else { PrometheeVariant::IV },
                            thresholds,
                            functions,
                        }
                    }
                    "ec_promethee" => {
                        let (thresholds, functions) = self.promethee_inputs(k)?;
                        MethodSpec::EcPromethee {
                            thresholds,
                            functions,
                            config: self.ec_config(problem, seed)?,
                        }
                    }
                    _ => {
                        if let Ok(id) = t.parse::<ScoringMethodId>() {
                            MethodSpec::Scoring {
                                id,
                                params: self.scoring_params(id)?,
                            }
                        } else {
                            let id: WeightingMethodId = t.parse()?;
                            MethodSpec::Weighting {
                                id,
                                bwm: if id == WeightingMethodId::Bwm { self.bwm()? } else { None },
                            }
                        }
                    }
                })
            })
            .collect()
    }
}
