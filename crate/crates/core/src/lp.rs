//! Exact conic feasibility by phase-one simplex over rationals.
//!
//! Given columns `a_1..a_m` and a target `b`, either finds `y ≥ 0` with
//! `Σ y_k a_k = b`, or a vector `h` with `⟨a_k, h⟩ ≥ 0` for every `k` and
//! `⟨b, h⟩ < 0` (Farkas alternative). Pivoting uses Bland's rule, so the
//! result is deterministic and the method terminates.

use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConicOutcome {
    /// Nonnegative multipliers, one per column.
    Combination(Vec<Rat>),
    /// Farkas separator in the row space.
    Separator(Vec<Rat>),
}

struct Tableau {
    /// rows x (structural + artificial) columns
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    /// phase-one reduced costs per column
    cost: Vec<Rat>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.rows[r][col].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for &j in &nz {
                let d = &f * &pivot_row[j];
                self.rows[i][j] -= d;
            }
            let d = &f * &pivot_rhs;
            self.rhs[i] -= d;
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for &j in &nz {
                let d = &f * &pivot_row[j];
                self.cost[j] -= d;
            }
        }
        self.basis[r] = col;
    }

    fn entering(&self) -> Option<usize> {
        self.cost.iter().position(|c| c.is_negative())
    }

    fn leaving(&self, col: usize) -> Option<usize> {
        let mut best: Option<(usize, Rat)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !row[col].is_positive() {
                continue;
            }
            let ratio = &self.rhs[i] / &row[col];
            best = match best {
                None => Some((i, ratio)),
                Some((bi, br)) => {
                    if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                        Some((i, ratio))
                    } else {
                        Some((bi, br))
                    }
                }
            };
        }
        best.map(|(i, _)| i)
    }
}

/// Decides whether `target` lies in the cone spanned by `columns`.
/// Every column must have the same length as `target`.
pub fn conic_combination(columns: &[Vec<Rat>], target: &[Rat]) -> ConicOutcome {
    let d = target.len();
    let m = columns.len();
    assert!(columns.iter().all(|c| c.len() == d), "column length mismatch");

    // flip rows so the right-hand side is nonnegative
    let signs: Vec<Rat> = target
        .iter()
        .map(|b| if b.is_negative() { -Rat::one() } else { Rat::one() })
        .collect();
    let mut rows = vec![vec![Rat::zero(); m + d]; d];
    for (k, col) in columns.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            if !v.is_zero() {
                rows[i][k] = v * &signs[i];
            }
        }
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row[m + i] = Rat::one();
    }
    let rhs: Vec<Rat> = target.iter().zip(&signs).map(|(b, s)| b * s).collect();
    // reduced cost of structural column k is -Σ_i rows[i][k]
    let mut cost = vec![Rat::zero(); m + d];
    for (k, c) in cost.iter_mut().enumerate().take(m) {
        *c = -rows.iter().map(|r| r[k].clone()).fold(Rat::zero(), |a, b| a + b);
    }
    let mut t = Tableau { rows, rhs, cost, basis: (m..m + d).collect() };

    while let Some(col) = t.entering() {
        // phase-one objective is bounded below by zero, so a leaving row exists
        let r = t.leaving(col).expect("phase-one problem is bounded");
        t.pivot(r, col);
    }

    let objective: Rat = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(b, _)| **b >= m)
        .map(|(_, v)| v.clone())
        .fold(Rat::zero(), |a, b| a + b);

    if objective.is_zero() {
        let mut y = vec![Rat::zero(); m];
        for (b, v) in t.basis.iter().zip(&t.rhs) {
            if *b < m {
                y[*b] = v.clone();
            }
        }
        ConicOutcome::Combination(y)
    } else {
        // dual prices: reduced cost of artificial i equals 1 - pi_i
        let h = (0..d)
            .map(|i| {
                let pi = Rat::one() - &t.cost[m + i];
                -(&signs[i] * pi)
            })
            .collect();
        ConicOutcome::Separator(h)
    }
}
