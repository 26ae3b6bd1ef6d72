//! The prompt catalogue: seven rank-comparison, four rank-correlation,
//! eight weight-comparison and five weight-correlation questions, kept
//! verbatim (including doubled question marks).

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ContextKind {
    RankTable,
    WeightTable,
    RankCorr,
    WeightCorr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PromptTemplate {
    pub id: &'static str,
    pub question: &'static str,
    pub required_context: ContextKind,
}

const fn t(id: &'static str, question: &'static str, required_context: ContextKind) -> PromptTemplate {
    PromptTemplate {
        id,
        question,
        required_context,
    }
}

use ContextKind::*;

pub const TEMPLATES: [PromptTemplate; 24] = [
    t("rank_compare.q1", "Which methods are more similar and which ones are more dissimilar?", RankTable),
    t("rank_compare.q2", "Which alternative(s) consistently ranks high or low across all the methods??", RankTable),
    t(
        "rank_compare.q3",
        "Are there any noticeable differences in rankings across the methods? if so, what could account for these differences??",
        RankTable,
    ),
    t("rank_compare.q4", "Is there a consensus among the methods for any specific alternative(s)?", RankTable),
    t(
        "rank_compare.q5",
        "Are there any unexpected rankings for certain alternatives when comparing across methods??",
        RankTable,
    ),
    t(
        "rank_compare.q6",
        "Are there any methods that consistently rank alternatives differently than most other methods??",
        RankTable,
    ),
    t("rank_compare.q7", "What is the most common ranking for each alternative across all methods??", RankTable),
    t(
        "rank_corr.q1",
        "Explain the significance of analyzing the correlation of ranks between different MCDA methods.",
        RankCorr,
    ),
    t(
        "rank_corr.q2",
        "What are the implications if there is a high correlation between the ranks produced by different MCDA methods?",
        RankCorr,
    ),
    t(
        "rank_corr.q3",
        "What might cause a low correlation in rankings between different MCDA methods?",
        RankCorr,
    ),
    t(
        "rank_corr.q4",
        "What precautions or considerations should be taken when comparing the rankings of different MCDA methods?",
        RankCorr,
    ),
    t("weight_compare.q1", "Which methods are more similar and which ones are more dissimilar?", WeightTable),
    t(
        "weight_compare.q2",
        "Are there certain criteria that consistently receive high weights across all methods? What might these key criteria suggest about the decision problem at hand?",
        WeightTable,
    ),
    t(
        "weight_compare.q3",
        "Conversely, are there criteria that consistently receive low weights across all methods? This could indicate aspects that are less important to the decision context.",
        WeightTable,
    ),
    t(
        "weight_compare.q4",
        "How much variability is there in weights assigned to each criterion by different methods? High variability could suggest that different methods interpret the importance of the criteria differently.",
        WeightTable,
    ),
    t(
        "weight_compare.q5",
        "Are there any noticeable correlations between the weights assigned by different methods",
        WeightTable,
    ),
    t(
        "weight_compare.q6",
        "Can you identify outlier methods that assign weights significantly different from others?",
        WeightTable,
    ),
    t(
        "weight_compare.q7",
        "Is there a specific method that consistently assigns higher or lower weights to all criteria? If so, what does this indicate about the method's evaluation approach?",
        WeightTable,
    ),
    t(
        "weight_compare.q8",
        "Do the weightings across different methods suggest a consensus on the importance ranking of the criteria?",
        WeightTable,
    ),
    t(
        "weight_corr.q1",
        "Explain the significance of analyzing the correlation of weights between different MCDA methods.",
        WeightCorr,
    ),
    t(
        "weight_corr.q2",
        "What might cause differences in the weighting of criteria across various MCDA methods?",
        WeightCorr,
    ),
    t(
        "weight_corr.q3",
        "How can the correlation of weights between different MCDA methods impact the final decision?",
        WeightCorr,
    ),
    t(
        "weight_corr.q4",
        "What could be the implications if there is a high correlation of weights across different MCDA methods?",
        WeightCorr,
    ),
    t(
        "weight_corr.q5",
        "What strategies can be used to address inconsistencies in the weights assigned by different MCDA methods?",
        WeightCorr,
    ),
];

pub fn template(id: &str) -> Option<&'static PromptTemplate> {
    TEMPLATES.iter().find(|t| t.id == id)
}
