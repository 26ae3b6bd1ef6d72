//! Dense two-phase simplex with Bland's rule, sized for small problems.
//!
//! Solves: minimize cᵀx subject to A_ub x ≤ b_ub, A_eq x = b_eq, x ≥ 0.

use crate::error::{McdaError, Result};

const EPS: f64 = 1e-10;

pub struct LinearProgram {
    pub c: Vec<f64>,
    pub a_ub: Vec<Vec<f64>>,
    pub b_ub: Vec<f64>,
    pub a_eq: Vec<Vec<f64>>,
    pub b_eq: Vec<f64>,
}

struct Tableau {
    /// rows × (cols + 1); last column holds the right-hand side
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn cols(&self) -> usize {
        self.t[0].len() - 1
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col];
        self.t[row].iter_mut().for_each(|v| *v /= p);
        let pivot_row = self.t[row].clone();
        for (r, line) in self.t.iter_mut().enumerate() {
            if r != row {
                let f = line[col];
                if f != 0.0 {
                    line.iter_mut().zip(&pivot_row).for_each(|(v, p)| *v -= f * p);
                }
            }
        }
        self.basis[row] = col;
    }

    /// Minimizes `cost` over the columns allowed by `allowed`. Returns false
    /// when the objective is unbounded.
    fn run(&mut self, cost: &[f64], allowed: impl Fn(usize) -> bool) -> bool {
        let rhs = self.cols();
        loop {
            // reduced costs: c_j - c_Bᵀ B⁻¹ A_j
            let entering = (0..rhs).filter(|&j| allowed(j)).find(|&j| {
                let z: f64 = self
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(r, &b)| cost[b] * self.t[r][j])
                    .sum();
                cost[j] - z < -EPS
            });
            let Some(col) = entering else { return true };
            let mut best: Option<(usize, f64)> = None;
            for r in 0..self.t.len() {
                let a = self.t[r][col];
                if a > EPS {
                    let ratio = self.t[r][rhs] / a;
                    let better = match best {
                        None => true,
                        Some((br, bv)) => ratio < bv - EPS || (ratio <= bv + EPS && self.basis[r] < self.basis[br]),
                    };
                    if better {
                        best = Some((r, ratio));
                    }
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }
}

impl LinearProgram {
    pub fn solve(&self) -> Result<Vec<f64>> {
        let n = self.c.len();
        let m_ub = self.a_ub.len();
        let m = m_ub + self.a_eq.len();
        // columns: x (n) | slacks (m_ub) | artificials (m)
        let width = n + m_ub + m;
        let mut t = vec![vec![0.0; width + 1]; m];
        let mut rows: Vec<(&[f64], f64, bool)> = Vec::with_capacity(m);
        for (a, &b) in self.a_ub.iter().zip(&self.b_ub) {
            rows.push((a, b, true));
        }
        for (a, &b) in self.a_eq.iter().zip(&self.b_eq) {
            rows.push((a, b, false));
        }
        let mut basis = vec![0; m];
        for (r, (a, b, is_ub)) in rows.iter().enumerate() {
            if a.len() != n {
                return Err(McdaError::Dimension("constraint width differs from objective".into()));
            }
            let sign = if *b < 0.0 { -1.0 } else { 1.0 };
            for j in 0..n {
                t[r][j] = sign * a[j];
            }
            if *is_ub {
                t[r][n + r] = sign;
            }
            t[r][width] = sign * b;
            if *is_ub && sign > 0.0 {
                basis[r] = n + r;
            } else {
                t[r][n + m_ub + r] = 1.0;
                basis[r] = n + m_ub + r;
            }
        }
        let mut tab = Tableau { t, basis };
        let artificial = |j: usize| j >= n + m_ub;
        let phase1: Vec<f64> = (0..width).map(|j| if artificial(j) { 1.0 } else { 0.0 }).collect();
        tab.run(&phase1, |_| true);
        let infeas: f64 = (0..m)
            .filter(|&r| artificial(tab.basis[r]))
            .map(|r| tab.t[r][width])
            .sum();
        if infeas > 1e-9 {
            return Err(McdaError::method("LP", "infeasible constraints"));
        }
        // drive remaining (zero-level) artificials out of the basis
        for r in 0..m {
            if artificial(tab.basis[r]) {
                if let Some(col) = (0..n + m_ub).find(|&j| tab.t[r][j].abs() > EPS) {
                    tab.pivot(r, col);
                }
            }
        }
        let mut phase2 = vec![0.0; width];
        phase2[..n].copy_from_slice(&self.c);
        if !tab.run(&phase2, |j| !artificial(j)) {
            return Err(McdaError::method("LP", "objective is unbounded"));
        }
        let mut x = vec![0.0; n];
        for (r, &b) in tab.basis.iter().enumerate() {
            if b < n {
                x[b] = tab.t[r][width];
            }
        }
        Ok(x)
    }
}
