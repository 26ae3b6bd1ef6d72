//! Consensus rankings over a table of method rank vectors: modal rank,
//! Borda count and Copeland pairwise majority.

use serde::{Deserialize, Serialize};

use crate::error::{McdaError, Result};
use crate::rank::{scores_to_ranks, RankVector};

/// Labeled rank vectors over a shared set of alternatives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankTable {
    labels: Vec<String>,
    rows: Vec<RankVector>,
}

impl RankTable {
    pub fn new(labels: Vec<String>, rows: Vec<RankVector>) -> Result<Self> {
        if labels.len() != rows.len() {
            return Err(McdaError::Dimension(format!("{} labels for {} rows", labels.len(), rows.len())));
        }
        if let Some(first) = rows.first() {
            if let Some(bad) = rows.iter().position(|r| r.len() != first.len()) {
                return Err(McdaError::Dimension(format!(
                    "row {:?} has {} ranks, expected {}",
                    labels[bad],
                    rows[bad].len(),
                    first.len()
                )));
            }
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(McdaError::Data(format!("duplicate row label {l:?}")));
            }
        }
        Ok(RankTable { labels, rows })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rows(&self) -> &[RankVector] {
        &self.rows
    }

    pub fn n_alternatives(&self) -> usize {
        self.rows.first().map_or(0, RankVector::len)
    }

    fn require_rows(&self) -> Result<usize> {
        if self.rows.is_empty() {
            return Err(McdaError::Data("rank table has no rows".into()));
        }
        Ok(self.n_alternatives())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsensusResult {
    pub order: RankVector,
    /// Groups (alternative indices, ascending) that the rule could not separate.
    pub ties: Vec<Vec<usize>>,
    /// True where the alternative had more than one most-frequent rank
    /// (always false for Borda and Copeland).
    pub multimodal: Vec<bool>,
    /// Rule-specific score: modal rank, Borda points or Copeland score.
    pub scores: Vec<f64>,
}

/// Groups of indices sharing an equal key, only groups of size > 1.
fn equal_groups<K: PartialEq>(keys: &[K]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut done = vec![false; keys.len()];
    for a in 0..keys.len() {
        if done[a] {
            continue;
        }
        let g: Vec<usize> = (a..keys.len()).filter(|&b| keys[b] == keys[a]).collect();
        for &b in &g {
            done[b] = true;
        }
        if g.len() > 1 {
            groups.push(g);
        }
    }
    groups
}

/// Modal rank per alternative. Alternatives sharing a modal rank, and
/// multimodal alternatives (which take their smallest mode), are separated
/// by mean rank and then by alternative index.
pub fn mode_rank(table: &RankTable) -> Result<ConsensusResult> {
    let n = table.require_rows()?;
    let mut modal = vec![0usize; n];
    let mut multimodal = vec![false; n];
    // rank sums order alternatives exactly like mean ranks, without rounding
    let mut rank_sum = vec![0usize; n];
    for a in 0..n {
        let mut freq = vec![0usize; n + 1];
        for r in &table.rows {
            let rank = r.as_slice()[a];
            freq[rank] += 1;
            rank_sum[a] += rank;
        }
        let top = *freq.iter().max().unwrap();
        let modes: Vec<usize> = (1..=n).filter(|&r| freq[r] == top).collect();
        modal[a] = modes[0];
        multimodal[a] = modes.len() > 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| modal[a].cmp(&modal[b]).then(rank_sum[a].cmp(&rank_sum[b])).then(a.cmp(&b)));
    let mut ranks = vec![0; n];
    for (pos, &a) in order.iter().enumerate() {
        ranks[a] = pos + 1;
    }
    Ok(ConsensusResult {
        order: RankVector::new(ranks)?,
        ties: equal_groups(&modal),
        multimodal,
        scores: modal.iter().map(|&r| r as f64).collect(),
    })
}

fn from_scores(scores: Vec<f64>) -> Result<ConsensusResult> {
    let order = scores_to_ranks(&scores, true);
    Ok(ConsensusResult {
        ties: equal_groups(order.as_slice()),
        multimodal: vec![false; scores.len()],
        order,
        scores,
    })
}

/// Borda count with n - rank points per row; ties keep competition ranks.
pub fn borda(table: &RankTable) -> Result<ConsensusResult> {
    let n = table.require_rows()?;
    let mut points = vec![0.0; n];
    for r in &table.rows {
        for (a, &rank) in r.as_slice().iter().enumerate() {
            points[a] += (n - rank) as f64;
        }
    }
    from_scores(points)
}

/// Pairwise majority matrix: `m[a][b]` is +1 when more rows rank `a` above
/// `b` than the reverse, -1 for the opposite and 0 for a tie.
pub fn pairwise_majority(table: &RankTable) -> Vec<Vec<i32>> {
    let n = table.n_alternatives();
    let mut m = vec![vec![0; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let mut margin = 0i64;
            for r in &table.rows {
                let (ra, rb) = (r.as_slice()[a], r.as_slice()[b]);
                margin += (rb > ra) as i64 - (ra > rb) as i64;
            }
            m[a][b] = margin.signum() as i32;
            m[b][a] = -m[a][b];
        }
    }
    m
}

/// Copeland score: +1 for each pairwise majority win, -1 for each loss.
pub fn copeland(table: &RankTable) -> Result<ConsensusResult> {
    table.require_rows()?;
    let scores = pairwise_majority(table)
        .iter()
        .map(|row| row.iter().sum::<i32>() as f64)
        .collect();
    from_scores(scores)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Mode,
    Borda,
    Copeland,
}

impl std::str::FromStr for Rule {
    type Err = McdaError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mode" => Ok(Rule::Mode),
            "borda" => Ok(Rule::Borda),
            "copeland" => Ok(Rule::Copeland),
            other => Err(McdaError::UnknownMethod(other.to_string())),
        }
    }
}

pub fn aggregate(table: &RankTable, rule: Rule) -> Result<ConsensusResult> {
    match rule {
        Rule::Mode => mode_rank(table),
        Rule::Borda => borda(table),
        Rule::Copeland => copeland(table),
    }
}
