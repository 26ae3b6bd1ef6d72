//! Bundled case-study data: the material-selection and urban-projects
//! problems, their method specs and the published comparison rows.

use crate::analysis::{parse_table, ComparisonTable};
use crate::outranking::{PreferenceFunction, Thresholds};
use crate::problem::{parse_csv, DecisionProblem};
use crate::specfile::RunSpec;
use crate::weighting::BwmComparisons;

pub const MATERIAL_SELECTION_CSV: &str = include_str!("../data/cs1.csv");
pub const URBAN_PROJECTS_CSV: &str = include_str!("../data/cs2.csv");
pub const MATERIAL_SPEC: &str = include_str!("../data/table4.spec");
pub const URBAN_SPEC: &str = include_str!("../data/table7.spec");
pub const PUBLISHED_RANKS_CSV: &str = include_str!("../data/table4_published.csv");
pub const PUBLISHED_WEIGHTS_CSV: &str = include_str!("../data/table7_published.csv");
pub const RAO_CSV: &str = include_str!("../data/rao.csv");
pub const MANSHADI_CSV: &str = include_str!("../data/manshadi.csv");
pub const BOTTERO_CSV: &str = include_str!("../data/bottero.csv");
pub const RODRIGUES_CSV: &str = include_str!("../data/rodrigues.csv");

/// Seven cryogenic-tank materials over seven criteria, with weights.
pub fn material_selection() -> DecisionProblem {
    parse_csv(MATERIAL_SELECTION_CSV).expect("bundled material-selection data is valid")
}

/// Five urban projects over six criteria, no weights.
pub fn urban_projects() -> DecisionProblem {
    parse_csv(URBAN_PROJECTS_CSV).expect("bundled urban-projects data is valid")
}

/// PROMETHEE thresholds used with the material-selection problem.
pub fn material_thresholds() -> Thresholds {
    Thresholds {
        q: vec![5.0, 10.0, 1.7, 0.02, 0.01, 0.01, 0.01],
        p: vec![9.0, 20.0, 2.5, 0.04, 0.03, 0.03, 0.03],
        s: vec![7.0, 15.0, 1.9, 0.03, 0.02, 0.02, 0.02],
    }
}

pub fn material_functions() -> Vec<PreferenceFunction> {
    vec![PreferenceFunction::Usual; 7]
}

pub fn material_spec() -> RunSpec {
    MATERIAL_SPEC.parse().expect("bundled spec is valid")
}

pub fn urban_spec() -> RunSpec {
    URBAN_SPEC.parse().expect("bundled spec is valid")
}

/// Best-to-others and others-to-worst vectors for the urban-projects BWM run.
pub fn urban_bwm() -> BwmComparisons {
    BwmComparisons {
        mic: vec![2, 4, 5, 3, 1, 6],
        lic: vec![6, 1, 3, 5, 4, 2],
    }
}

/// Published rank rows for the material-selection methods (33 rows,
/// including the two literature references).
pub fn published_ranks() -> ComparisonTable {
    parse_table(PUBLISHED_RANKS_CSV).expect("bundled table is valid")
}

/// Published weight rows for the urban-projects methods (8 rows,
/// including the two literature references).
pub fn published_weights() -> ComparisonTable {
    parse_table(PUBLISHED_WEIGHTS_CSV).expect("bundled table is valid")
}

/// Literature reference rows for the material-selection problem.
pub fn material_references() -> Vec<ComparisonTable> {
    [RAO_CSV, MANSHADI_CSV]
        .iter()
        .map(|t| parse_table(t).expect("bundled table is valid"))
        .collect()
}

/// Literature reference rows for the urban-projects problem.
pub fn urban_references() -> Vec<ComparisonTable> {
    [BOTTERO_CSV, RODRIGUES_CSV]
        .iter()
        .map(|t| parse_table(t).expect("bundled table is valid"))
        .collect()
}
