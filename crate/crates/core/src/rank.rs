//! Score-to-rank conversion (competition ranking, 1 = best).

use serde::{Deserialize, Serialize};

use crate::error::{McdaError, Result};

/// Absolute tolerance under which two scores count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RankVector(Vec<usize>);

impl RankVector {
    /// Checks range and competition-ranking consistency.
    pub fn new(ranks: Vec<usize>) -> Result<Self> {
        let n = ranks.len();
        if n == 0 {
            return Err(McdaError::Data("empty rank vector".into()));
        }
        if ranks.iter().any(|&r| r == 0 || r > n) {
            return Err(McdaError::Data(format!("ranks must lie in [1, {n}]: {ranks:?}")));
        }
        let mut counts = vec![0usize; n + 1];
        for &r in &ranks {
            counts[r] += 1;
        }
        // competition ranking: each occupied rank r with k holders forces
        // ranks r+1..r+k-1 to be empty and the next occupied rank to be r+k
        let mut expected = 1;
        let mut r = 1;
        while r <= n {
            if counts[r] > 0 {
                if r != expected {
                    return Err(McdaError::Data(format!(
                        "not a competition ranking: {ranks:?}"
                    )));
                }
                expected = r + counts[r];
            }
            r += 1;
        }
        Ok(RankVector(ranks))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// Alternative indices from best to worst (ties by index).
    pub fn order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.0.len()).collect();
        idx.sort_by_key(|&i| (self.0[i], i));
        idx
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&r| r as f64).collect()
    }
}

/// Competition ranking of `scores`. Scores are sorted best-first and grouped
/// with the group's leading score; anything within [`TIE_TOLERANCE`] of the
/// leader shares its rank.
pub fn scores_to_ranks(scores: &[f64], higher_is_better: bool) -> RankVector {
    assert!(
        scores.iter().all(|s| s.is_finite()),
        "scores_to_ranks requires finite scores"
    );
    let key = |i: usize| if higher_is_better { -scores[i] } else { scores[i] };
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| key(a).total_cmp(&key(b)));
    let mut ranks = vec![0; scores.len()];
    let mut pos = 0;
    while pos < idx.len() {
        let leader = key(idx[pos]);
        let mut end = pos;
        while end < idx.len() && key(idx[end]) - leader <= TIE_TOLERANCE {
            ranks[idx[end]] = pos + 1;
            end += 1;
        }
        pos = end;
    }
    RankVector(ranks)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRanking {
    pub scores: Vec<f64>,
    pub higher_is_better: bool,
    pub ranks: RankVector,
}

impl ScoreRanking {
    pub fn from_scores(scores: Vec<f64>, higher_is_better: bool) -> Result<Self> {
        if let Some(i) = scores.iter().position(|s| !s.is_finite()) {
            return Err(McdaError::Data(format!(
                "score of alternative {} is not finite",
                i + 1
            )));
        }
        let ranks = scores_to_ranks(&scores, higher_is_better);
        Ok(ScoreRanking {
            scores,
            higher_is_better,
            ranks,
        })
    }
}
