//! Additive and multiplicative aggregation methods.

use super::{weighted_row_sums, Ctx};
use crate::error::Result;
use crate::normalize::{col_max, col_min, map_columns, normalize, Scheme};

/// Additive ratio assessment: columns scaled by (optimal + column sum), MIN
/// columns inverted first; score = weighted sum / weighted optimal sum.
pub(super) fn aras(c: &Ctx) -> Result<Vec<f64>> {
    c.require_positive()?;
    let mut optimal = vec![0.0; c.k()];
    let m = map_columns(c.x, |j, col| {
        let col: Vec<f64> = if c.d[j].is_max() {
            col.to_vec()
        } else {
            col.iter().map(|v| 1.0 / v).collect()
        };
        let best = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let total = best + col.iter().sum::<f64>();
        optimal[j] = best / total;
        col.iter().map(|v| v / total).collect()
    });
    let s0: f64 = optimal.iter().zip(c.w).map(|(a, b)| a * b).sum();
    Ok(weighted_row_sums(&m, c.w).into_iter().map(|s| s / s0).collect())
}

/// Combined compromise solution. Weighted sum S and weighted power P of the
/// min-max matrix; both are shifted by 1 when their minimum is 0 so the
/// relative strategies stay finite.
pub(super) fn cocoso(c: &Ctx, l: f64) -> Result<Vec<f64>> {
    let m = c.minmax()?;
    let mut s = weighted_row_sums(&m, c.w);
    let mut p: Vec<f64> = m
        .iter()
        .map(|r| r.iter().zip(c.w).map(|(x, w)| x.powf(*w)).sum())
        .collect();
    for v in [&mut s, &mut p] {
        if v.iter().cloned().fold(f64::INFINITY, f64::min) == 0.0 {
            v.iter_mut().for_each(|x| *x += 1.0);
        }
    }
    let fold = |v: &[f64], f: fn(f64, f64) -> f64, init| v.iter().cloned().fold(init, f);
    let (smin, smax) = (fold(&s, f64::min, f64::INFINITY), fold(&s, f64::max, f64::NEG_INFINITY));
    let (pmin, pmax) = (fold(&p, f64::min, f64::INFINITY), fold(&p, f64::max, f64::NEG_INFINITY));
    let total: f64 = s.iter().zip(&p).map(|(a, b)| a + b).sum();
    Ok(s.iter()
        .zip(&p)
        .map(|(&si, &pi)| {
            let ka = (si + pi) / total;
            let kb = si / smin + pi / pmin;
            let kc = (l * si + (1.0 - l) * pi) / (l * smax + (1.0 - l) * pmax);
            (ka * kb * kc).cbrt() + (ka + kb + kc) / 3.0
        })
        .collect())
}

/// Complex proportional assessment on the plain sum-normalized matrix.
pub(super) fn copras(c: &Ctx) -> Result<Vec<f64>> {
    c.require_positive()?;
    let m = map_columns(c.x, |_, col| {
        let s: f64 = col.iter().sum();
        col.iter().map(|v| v / s).collect()
    });
    let n = c.n();
    let mut plus = vec![0.0; n];
    let mut minus = vec![0.0; n];
    for (i, row) in m.iter().enumerate() {
        for j in 0..c.k() {
            let v = row[j] * c.w[j];
            if c.d[j].is_max() {
                plus[i] += v;
            } else {
                minus[i] += v;
            }
        }
    }
    let q: Vec<f64> = if c.d.iter().any(|d| !d.is_max()) {
        let smin = minus.iter().cloned().fold(f64::INFINITY, f64::min);
        let ssum: f64 = minus.iter().sum();
        let inv: f64 = minus.iter().map(|s| smin / s).sum();
        plus.iter()
            .zip(&minus)
            .map(|(p, s)| p + smin * ssum / (s * inv))
            .collect()
    } else {
        plus
    };
    let qmax = q.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(q.iter().map(|v| v / qmax).collect())
}

/// Direct cardinal scoring: weighted sum of min-max normalized performances.
pub(super) fn macbeth(c: &Ctx) -> Result<Vec<f64>> {
    Ok(weighted_row_sums(&c.minmax()?, c.w))
}

/// Multi-attribute utility: u(x) = (e^x - 1)/(e - 1) on MAX criteria and
/// u(x) = ceil(x / step) * step on MIN criteria, both on the min-max scale.
pub(super) fn maut(c: &Ctx, step: f64) -> Result<Vec<f64>> {
    let e = std::f64::consts::E;
    let m = c.minmax()?;
    let u = map_columns(&m, |j, col| {
        if c.d[j].is_max() {
            col.iter().map(|x| (x.exp() - 1.0) / (e - 1.0)).collect()
        } else {
            col.iter().map(|x| (x / step).ceil() * step).collect()
        }
    });
    Ok(weighted_row_sums(&u, c.w))
}

/// Operational competitiveness rating.
pub(super) fn ocra(c: &Ctx) -> Result<Vec<f64>> {
    c.require_positive()?;
    let n = c.n();
    let mut input = vec![0.0; n];
    let mut output = vec![0.0; n];
    for j in 0..c.k() {
        let (lo, hi) = (col_min(c.x, j), col_max(c.x, j));
        for i in 0..n {
            let x = c.x[i][j];
            if c.d[j].is_max() {
                output[i] += c.w[j] * (x - lo) / lo;
            } else {
                input[i] += c.w[j] * (hi - x) / lo;
            }
        }
    }
    let shift = |v: &mut Vec<f64>| {
        let m = v.iter().cloned().fold(f64::INFINITY, f64::min);
        v.iter_mut().for_each(|x| *x -= m);
    };
    shift(&mut input);
    shift(&mut output);
    let mut r: Vec<f64> = input.iter().zip(&output).map(|(a, b)| a + b).collect();
    shift(&mut r);
    Ok(r)
}

/// Preference selection index. Criterion weights are derived from the
/// preference variation of the max-linear matrix; problem weights are unused.
pub(super) fn psi(c: &Ctx) -> Result<Vec<f64>> {
    c.require_positive()?;
    let m = normalize(c.x, c.d, Scheme::MaxLinear)?;
    let n = c.n() as f64;
    let phi: Vec<f64> = (0..c.k())
        .map(|j| {
            let mean = m.iter().map(|r| r[j]).sum::<f64>() / n;
            1.0 - m.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>()
        })
        .collect();
    let total: f64 = phi.iter().sum();
    if total == 0.0 {
        return Err(c.fail("preference deviations sum to zero"));
    }
    let psi: Vec<f64> = phi.iter().map(|p| p / total).collect();
    Ok(weighted_row_sums(&m, &psi))
}

/// Range of value: min-max utilities, weighted sum.
pub(super) fn rov(c: &Ctx) -> Result<Vec<f64>> {
    Ok(weighted_row_sums(&c.minmax()?, c.w))
}

/// Simple additive weighting on the max-linear matrix.
pub(super) fn saw(c: &Ctx) -> Result<Vec<f64>> {
    c.require_positive()?;
    Ok(weighted_row_sums(&normalize(c.x, c.d, Scheme::MaxLinear)?, c.w))
}

/// 1 + min-max normalization, shared by WSM, WPM and WASPAS.
fn shifted_minmax(c: &Ctx) -> Result<Vec<Vec<f64>>> {
    Ok(c.minmax()?
        .into_iter()
        .map(|r| r.into_iter().map(|v| 1.0 + v).collect())
        .collect())
}

fn weighted_products(m: &[Vec<f64>], w: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|r| r.iter().zip(w).map(|(x, w)| x.powf(*w)).product())
        .collect()
}

pub(super) fn wsm(c: &Ctx) -> Result<Vec<f64>> {
    Ok(weighted_row_sums(&shifted_minmax(c)?, c.w))
}

pub(super) fn wpm(c: &Ctx) -> Result<Vec<f64>> {
    Ok(weighted_products(&shifted_minmax(c)?, c.w))
}

pub(super) fn waspas(c: &Ctx, lambda: f64) -> Result<Vec<f64>> {
    let m = shifted_minmax(c)?;
    Ok(weighted_row_sums(&m, c.w)
        .into_iter()
        .zip(weighted_products(&m, c.w))
        .map(|(s, p)| lambda * s + (1.0 - lambda) * p)
        .collect())
}
