//! Multicriteria decision analysis: scoring and outranking methods,
//! objective and comparison-based criterion weighting, rank aggregation,
//! cross-method correlation analysis and prompt rendering for chat-model
//! assisted interpretation.

pub mod aggregation;
pub mod analysis;
pub mod datasets;
pub mod error;
pub mod llm;
pub mod method;
pub mod normalize;
pub mod output;
pub mod outranking;
pub mod problem;
pub mod rank;
pub mod scoring;
pub mod specfile;
pub mod weighting;

pub use error::{ErrorKind, McdaError, Result};
pub use method::{MethodOutput, MethodSpec};
pub use problem::{Criterion, DecisionProblem, Direction};
pub use rank::{RankVector, ScoreRanking};
pub use weighting::WeightVector;
