//! Methods that compare alternatives pairwise or through rank positions.

use super::Ctx;
use crate::error::Result;

/// Besson (mean) ranks of `values`, 1 = smallest; ties share the mean of the
/// positions they occupy.
pub(crate) fn besson_ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; values.len()];
    let mut start = 0;
    while start < idx.len() {
        let mut end = start;
        while end + 1 < idx.len() && values[idx[end + 1]] == values[idx[start]] {
            end += 1;
        }
        let mean = (start + end) as f64 / 2.0 + 1.0;
        for &i in &idx[start..=end] {
            out[i] = mean;
        }
        start = end + 1;
    }
    out
}

/// ORESTE: Besson ranks per criterion (best = 1) and of the weights (largest
/// = 1) are combined into projection distances alpha*r_ij + (1-alpha)*r_j;
/// the global Besson rank of every distance is summed per alternative.
/// Lower totals are better.
pub(super) fn oreste(c: &Ctx, alpha: f64) -> Vec<f64> {
    let neg_w: Vec<f64> = c.w.iter().map(|w| -w).collect();
    let wr = besson_ranks(&neg_w);
    let mut dist = vec![vec![0.0; c.k()]; c.n()];
    for j in 0..c.k() {
        let col: Vec<f64> = c
            .x
            .iter()
            .map(|r| if c.d[j].is_max() { -r[j] } else { r[j] })
            .collect();
        for (i, r) in besson_ranks(&col).into_iter().enumerate() {
            dist[i][j] = alpha * r + (1.0 - alpha) * wr[j];
        }
    }
    let flat: Vec<f64> = dist.iter().flatten().cloned().collect();
    let global = besson_ranks(&flat);
    global.chunks(c.k()).map(|ch| ch.iter().sum()).collect()
}

/// TODIM with relative weights w/max(w) and attenuation factor `teta`.
/// Values are sum-normalized (reciprocals for MIN criteria); the summed
/// dominance degrees are rescaled to [0, 1].
pub(super) fn todim(c: &Ctx, teta: f64) -> Result<Vec<f64>> {
    c.require_positive()?;
    let p = crate::normalize::normalize(c.x, c.d, crate::normalize::Scheme::Sum)?;
    let wmax = c.w.iter().cloned().fold(0.0, f64::max);
    if wmax <= 0.0 {
        return Err(c.fail("all weights are zero"));
    }
    let wr: Vec<f64> = c.w.iter().map(|w| w / wmax).collect();
    let wsum: f64 = wr.iter().sum();
    let n = c.n();
    let mut delta = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for k in 0..c.k() {
                let diff = p[i][k] - p[j][k];
                if diff > 0.0 {
                    delta[i] += (wr[k] * diff / wsum).sqrt();
                } else if diff < 0.0 && wr[k] > 0.0 {
                    delta[i] -= (wsum * -diff / wr[k]).sqrt() / teta;
                }
            }
        }
    }
    let lo = delta.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = delta.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(if hi > lo {
        delta.iter().map(|d| (d - lo) / (hi - lo)).collect()
    } else {
        vec![0.0; n]
    })
}
