//! Jost solution at `μ = -1/4`: the solution of `φ_yy = (Q + 1/4) φ` with
//! `f(y) ~ e^{-y/2}` and `f'(y) ~ -e^{-y/2}/2` as `y → ∞`.
//!
//! Two independent solvers are provided, a backward Runge-Kutta march of
//! the ODE and a backward trapezoid sweep of the equivalent Volterra
//! equation
//!
//! ```text
//! f(y) = e^{-y/2} + ∫_y^∞ (e^{(ξ-y)/2} - e^{(y-ξ)/2}) Q(ξ) f(ξ) dξ.
//! ```
//!
//! Initial data are imposed at the right end of the grid instead of at
//! infinity, so both solvers carry an `O(|Q(y_max)|)` truncation error.

use crate::error::{Error, Result};
use crate::liouville::PotentialProfile;
use crate::numerics::{derivative, interpolate, max_relative_deviation, Grid1D, SampledFunction};

/// Tolerance on `f(y_max) e^{y_max/2} = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-6;

pub const DEFAULT_VOLTERRA_TOL: f64 = 1e-12;
pub const DEFAULT_VOLTERRA_MAX_ITER: usize = 50;

/// Nodes trimmed from each end when evaluating residuals.
pub const RESIDUAL_TRIM: usize = 5;

/// Positive, unit-normalized Jost solution sampled on a y-grid.
#[derive(Debug, Clone, PartialEq)]
pub struct JostFunction {
    f: SampledFunction,
    amp_minus: f64,
}

impl JostFunction {
    /// Checks positivity and the asymptotic normalization at `y_max`, and
    /// extracts the left amplitude `A = f(y_min) e^{y_min/2}`.
    pub fn new(f: SampledFunction) -> Result<Self> {
        for (y, &v) in f.grid().points().zip(f.values()) {
            if !(v > 0.0) {
                return Err(Error::NonPositiveJost { y, value: v });
            }
        }
        let g = f.grid();
        let right = f.last() * (0.5 * g.last()).exp();
        if (right - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Normalization { value: right });
        }
        let amp_minus = f.first() * (0.5 * g.first()).exp();
        Ok(Self { f, amp_minus })
    }

    pub fn samples(&self) -> &SampledFunction {
        &self.f
    }

    pub fn grid(&self) -> &Grid1D {
        self.f.grid()
    }

    pub fn values(&self) -> &[f64] {
        self.f.values()
    }

    /// `A` in `f(y) ≈ A e^{-y/2}` as `y → -∞`.
    pub fn amp_minus(&self) -> f64 {
        self.amp_minus
    }

    pub fn min_value(&self) -> f64 {
        self.values().iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest pointwise relative deviation from `other`. The values span
    /// `e^{±y/2}`, so this is the meaningful sup distance between two Jost
    /// functions.
    pub fn relative_distance(&self, other: &JostFunction) -> Result<f64> {
        if self.grid() != other.grid() {
            return Err(Error::GridMismatch);
        }
        Ok(max_relative_deviation(self.values(), other.values()))
    }
}

/// Which Jost solver a pipeline uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JostMethod {
    Ode,
    Volterra { tol: f64, max_iter: usize },
}

impl JostMethod {
    pub fn volterra() -> Self {
        Self::Volterra {
            tol: DEFAULT_VOLTERRA_TOL,
            max_iter: DEFAULT_VOLTERRA_MAX_ITER,
        }
    }

    pub fn solve(&self, q: &PotentialProfile) -> Result<JostFunction> {
        match *self {
            Self::Ode => solve_jost_ode(q),
            Self::Volterra { tol, max_iter } => solve_jost_volterra(q, tol, max_iter),
        }
    }
}

/// Potential at the nodes and cell midpoints, as consumed by RK4.
pub(crate) struct StepPotential {
    pub nodes: Vec<f64>,
    pub mids: Vec<f64>,
}

impl StepPotential {
    pub fn new(q: &SampledFunction) -> Result<Self> {
        let g = q.grid();
        let mids = (0..g.len() - 1)
            .map(|i| interpolate(q, g.point(i) + 0.5 * g.dx()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            nodes: q.values().to_vec(),
            mids,
        })
    }
}

/// One classic RK4 step of `(φ, φ') ' = (φ', w φ)` with weights at the
/// start, midpoint and end of the step.
#[inline]
pub(crate) fn rk4_step(state: (f64, f64), h: f64, w0: f64, wm: f64, w1: f64) -> (f64, f64) {
    let (p, d) = state;
    let k1 = (d, w0 * p);
    let s2 = (p + 0.5 * h * k1.0, d + 0.5 * h * k1.1);
    let k2 = (s2.1, wm * s2.0);
    let s3 = (p + 0.5 * h * k2.0, d + 0.5 * h * k2.1);
    let k3 = (s3.1, wm * s3.0);
    let s4 = (p + h * k3.0, d + h * k3.1);
    let k4 = (s4.1, w1 * s4.0);
    (
        p + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        d + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    )
}

/// Backward RK4 march from `y_max` with step equal to the grid spacing.
pub fn solve_jost_ode(q: &PotentialProfile) -> Result<JostFunction> {
    let g = *q.grid();
    let n = g.len();
    let pot = StepPotential::new(q.samples())?;
    let h = -g.dx();
    let start = (-0.5 * g.last()).exp();
    let mut state = (start, -0.5 * start);
    let mut values = vec![0.0; n];
    values[n - 1] = state.0;
    for i in (0..n - 1).rev() {
        state = rk4_step(
            state,
            h,
            pot.nodes[i + 1] + 0.25,
            pot.mids[i] + 0.25,
            pot.nodes[i] + 0.25,
        );
        if !(state.0.is_finite() && state.1.is_finite()) {
            return Err(Error::Blowup { y: g.point(i) });
        }
        values[i] = state.0;
    }
    JostFunction::new(SampledFunction::new(g, values)?)
}

/// Trapezoid discretization of the Volterra equation, marched from `y_max`.
///
/// The kernel is split as `e^{-y/2} e^{ξ/2} - e^{y/2} e^{-ξ/2}` and the two
/// moments `I₊(y) = ∫_y e^{ξ/2} Q f` and `I₋(y) = ∫_y e^{-ξ/2} Q f` are
/// accumulated separately, so nothing larger than `e^{|y|/2}` is formed.
/// The kernel vanishes at `ξ = y`, so the diagonal trapezoid weight drops
/// out and each node is explicit in the values already computed.
///
/// Successive sweeps are compared in relative sup norm, starting from the
/// free solution `e^{-y/2}`; the loop ends once two sweeps agree to `tol`.
pub fn solve_jost_volterra(
    q: &PotentialProfile,
    tol: f64,
    max_iter: usize,
) -> Result<JostFunction> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Volterra tolerance {tol} must be positive"
        )));
    }
    let g = *q.grid();
    let mut previous: Vec<f64> = g.points().map(|y| (-0.5 * y).exp()).collect();
    let mut change = f64::INFINITY;
    for _ in 0..max_iter {
        let current = volterra_sweep(&g, q.values())?;
        change = max_relative_deviation(&current, &previous);
        if change < tol {
            return JostFunction::new(SampledFunction::new(g, current)?);
        }
        previous = current;
    }
    Err(Error::NonConvergence {
        iterations: max_iter,
        residual: change,
    })
}

fn volterra_sweep(g: &Grid1D, q: &[f64]) -> Result<Vec<f64>> {
    let n = g.len();
    let h = g.dx();
    let mut f = vec![0.0; n];
    f[n - 1] = (-0.5 * g.last()).exp();
    // moments over [y_{i+1}, y_max], trapezoid weights already applied
    let mut plus = 0.0;
    let mut minus = 0.0;
    let mut last_plus = 0.5 * h * (0.5 * g.last()).exp() * q[n - 1] * f[n - 1];
    let mut last_minus = 0.5 * h * (-0.5 * g.last()).exp() * q[n - 1] * f[n - 1];
    for i in (0..n - 1).rev() {
        let y = g.point(i);
        let ep = (0.5 * y).exp();
        let em = (-0.5 * y).exp();
        // add the half-weight of node i+1 that becomes interior now
        plus += last_plus + if i + 1 < n - 1 { last_plus } else { 0.0 };
        minus += last_minus + if i + 1 < n - 1 { last_minus } else { 0.0 };
        let value = em * (1.0 + plus) - ep * minus;
        if !value.is_finite() {
            return Err(Error::Blowup { y });
        }
        f[i] = value;
        last_plus = 0.5 * h * ep * q[i] * value;
        last_minus = 0.5 * h * em * q[i] * value;
    }
    Ok(f)
}

/// Normalized defect of `φ_yy = (Q + 1/4) φ` on the interior window.
pub fn jost_residual(f: &JostFunction, q: &PotentialProfile) -> Result<f64> {
    equation_residual(f.samples(), q)
}

/// `sup |φ'' - (Q + 1/4) φ| / sup |φ|` over the nodes at least
/// [`RESIDUAL_TRIM`] away from either end.
pub fn equation_residual(phi: &SampledFunction, q: &PotentialProfile) -> Result<f64> {
    if phi.grid() != q.grid() {
        return Err(Error::GridMismatch);
    }
    let n = phi.grid().len();
    if n <= 2 * RESIDUAL_TRIM {
        return Err(Error::GridTooSmall {
            needed: 2 * RESIDUAL_TRIM + 1,
            got: n,
        });
    }
    let d2 = derivative(phi, 2)?;
    let window = RESIDUAL_TRIM..n - RESIDUAL_TRIM;
    let scale = phi.values()[window.clone()]
        .iter()
        .fold(0.0, |a: f64, v| a.max(v.abs()));
    let defect = window
        .map(|i| (d2.values()[i] - (q.values()[i] + 0.25) * phi.values()[i]).abs())
        .fold(0.0, f64::max);
    Ok(if scale > 0.0 { defect / scale } else { defect })
}
