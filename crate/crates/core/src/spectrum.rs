//! Bound states of `-φ'' + Qφ = μφ` in `(-1/4, 0)` by Wronskian shooting.
//!
//! For a trial `μ` with `k = √(-μ)`, the solution decaying to the left
//! (`φ ≈ e^{k y}`) and the one decaying to the right (`φ ≈ e^{-k y}`) are
//! marched with RK4 to the matching node nearest `y = 0`. Their normalized
//! Wronskian vanishes exactly at eigenvalues.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jost::{rk4_step, StepPotential};
use crate::liouville::{lambda_from_mu, PotentialProfile};

pub const SCAN_POINTS: usize = 200;
pub const DEFAULT_SPECTRUM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenvalueReport {
    /// Eigenvalues of the Schrödinger problem, ascending.
    pub mu: Vec<f64>,
    /// The same eigenvalues of the weighted problem, `λ = -1/4 - μ`.
    pub lambda: Vec<f64>,
    /// Trial values dropped because the march overflowed.
    pub discarded_trials: usize,
    pub scan_points: usize,
}

/// Reusable shooting setup for one potential.
pub struct Shooter {
    pot: StepPotential,
    y: Vec<f64>,
    h: f64,
    matching: usize,
}

impl Shooter {
    pub fn new(q: &PotentialProfile) -> Result<Self> {
        let g = q.grid();
        if g.len() < 3 {
            return Err(Error::GridTooSmall {
                needed: 3,
                got: g.len(),
            });
        }
        let nearest = (-g.first() / g.dx()).round();
        let matching = if nearest <= 1.0 {
            1
        } else {
            (nearest as usize).min(g.len() - 2)
        };
        Ok(Self {
            pot: StepPotential::new(q.samples())?,
            y: g.points().collect(),
            h: g.dx(),
            matching,
        })
    }

    pub fn matching_point(&self) -> f64 {
        self.y[self.matching]
    }

    /// Wronskian `φ_L φ_R' - φ_L' φ_R` at the matching node, divided by the
    /// Euclidean norms of both `(φ, φ')` states. `None` on overflow.
    pub fn wronskian(&self, mu: f64) -> Option<f64> {
        let k = (-mu).sqrt();
        let n = self.y.len();
        let w = |i: usize| self.pot.nodes[i] - mu;
        let wm = |i: usize| self.pot.mids[i] - mu;

        let mut left = (1.0, k);
        for i in 0..self.matching {
            left = rk4_step(left, self.h, w(i), wm(i), w(i + 1));
            left = rescale(left)?;
        }
        let mut right = (1.0, -k);
        for i in (self.matching..n - 1).rev() {
            right = rk4_step(right, -self.h, w(i + 1), wm(i), w(i));
            right = rescale(right)?;
        }
        let norm = left.0.hypot(left.1) * right.0.hypot(right.1);
        Some((left.0 * right.1 - left.1 * right.0) / norm)
    }
}

fn rescale(s: (f64, f64)) -> Option<(f64, f64)> {
    if !(s.0.is_finite() && s.1.is_finite()) {
        return None;
    }
    let size = s.0.abs().max(s.1.abs());
    Some(if size > 1e100 {
        (s.0 / size, s.1 / size)
    } else {
        s
    })
}

/// Scans `SCAN_POINTS` trial values strictly inside `(-1/4, 0)`, brackets
/// sign changes of the Wronskian and bisects each to `tol`.
pub fn find_eigenvalues(q: &PotentialProfile, tol: f64) -> Result<EigenvalueReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "spectrum tolerance {tol} must be positive"
        )));
    }
    let shooter = Shooter::new(q)?;
    let step = 0.25 / (SCAN_POINTS + 1) as f64;
    let trials: Vec<(f64, Option<f64>)> = (1..=SCAN_POINTS)
        .into_par_iter()
        .map(|j| {
            let mu = -0.25 + j as f64 * step;
            (mu, shooter.wronskian(mu))
        })
        .collect();

    let discarded_trials = trials.iter().filter(|t| t.1.is_none()).count();
    let valid: Vec<(f64, f64)> = trials
        .into_iter()
        .filter_map(|(mu, w)| w.map(|w| (mu, w)))
        .collect();

    let mut mu = Vec::new();
    for pair in valid.windows(2) {
        let ((mut a, wa), (mut b, wb)) = (pair[0], pair[1]);
        if wa == 0.0 {
            mu.push(a);
            continue;
        }
        if wa.signum() == wb.signum() {
            continue;
        }
        let sign_a = wa.signum();
        while b - a > tol {
            let mid = 0.5 * (a + b);
            match shooter.wronskian(mid) {
                Some(0.0) => {
                    a = mid;
                    b = mid;
                }
                Some(w) if w.signum() == sign_a => a = mid,
                Some(_) => b = mid,
                None => break,
            }
        }
        mu.push(0.5 * (a + b));
    }
    if let Some(&(last, w)) = valid.last() {
        if w == 0.0 {
            mu.push(last);
        }
    }
    mu.sort_by(f64::total_cmp);
    mu.dedup();
    let lambda = mu.iter().map(|&m| lambda_from_mu(m)).collect();
    Ok(EigenvalueReport {
        mu,
        lambda,
        discarded_trials,
        scan_points: SCAN_POINTS,
    })
}
