//! Solitary waves `m(t, x) = Φ(x - ct)`, `c > 2`.
//!
//! Their potential is the explicit well
//! `Q(y) = -(c-2) / (2c cosh²(κ (y - y₀)))` with `κ = √((c-2)/(4c))`.
//! For `c = 8/3, y₀ = 0` the Jost function is known in closed form,
//! `f(y) = (3e^{-y/4} + e^{-3y/4}) / (6 cosh(y/4))`, and `g(y) = 4cosh²(y/4)`
//! is a second, growing solution. The profile `Φ` itself has no closed form
//! and is produced by the recovery pipeline.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jost::{JostFunction, JostMethod};
use crate::liouville::{MomentumProfile, PotentialProfile, DEFAULT_DECAY_TOL};
use crate::numerics::{derivative, tail_integral_with, Grid1D, Quadrature, SampledFunction};
use crate::recovery::{recover_m, RecoveryResult};

/// Speed of the solitary wave with the closed-form Jost function.
pub const EXACT_SPEED: f64 = 8.0 / 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolitaryWaveSpec {
    c: f64,
    y0: f64,
}

impl SolitaryWaveSpec {
    pub fn new(c: f64, y0: f64) -> Result<Self> {
        if !(c > 2.0) || !c.is_finite() {
            return Err(Error::InvalidSpeed(c));
        }
        if !y0.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "center y0 = {y0} is not finite"
            )));
        }
        Ok(Self { c, y0 })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn y0(&self) -> f64 {
        self.y0
    }

    /// Well depth `(c-2)/(2c)`.
    pub fn depth(&self) -> f64 {
        (self.c - 2.0) / (2.0 * self.c)
    }

    /// Inverse width `√((c-2)/(4c))`.
    pub fn kappa(&self) -> f64 {
        ((self.c - 2.0) / (4.0 * self.c)).sqrt()
    }

    pub fn potential(&self, y: f64) -> f64 {
        let s = sech(self.kappa() * (y - self.y0));
        -self.depth() * s * s
    }

    pub fn has_exact_jost(&self) -> bool {
        (self.c - EXACT_SPEED).abs() <= 4.0 * f64::EPSILON && self.y0 == 0.0
    }

    /// Distance from `y₀` beyond which `|Q| <= tol`: `4·depth·e^{-2κL} = tol`,
    /// and never less than 8 decay lengths.
    pub fn decay_half_width(&self, tol: f64) -> f64 {
        let k = self.kappa();
        let by_tol = (4.0 * self.depth() / tol).ln() / (2.0 * k);
        by_tol.max(8.0 / k)
    }

    pub fn potential_profile(&self, ygrid: &Grid1D) -> Result<PotentialProfile> {
        let q = SampledFunction::from_fn(*ygrid, |y| self.potential(y))?;
        Ok(PotentialProfile::without_decay_check(q))
    }

    /// Symmetric x-grid wide enough for `Φ` to decay below `decay_tol`.
    pub fn default_xgrid(&self, dx: f64, decay_tol: f64) -> Result<Grid1D> {
        let half = self.decay_half_width(decay_tol);
        let cells = (half / dx).ceil();
        Grid1D::new(self.y0 - cells * dx, dx, 2 * cells as usize + 1)
    }
}

fn sech(x: f64) -> f64 {
    // 2e^{-|x|}/(1+e^{-2|x|}) stays finite for large |x|
    let e = (-x.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

pub fn solitary_potential(spec: &SolitaryWaveSpec, y: f64) -> f64 {
    spec.potential(y)
}

/// Closed-form Jost function for `c = 8/3, y₀ = 0`, evaluated as
/// `e^{-y/2} w(y)` with `w` between 1/3 and 1.
pub fn solitary_jost_exact(y: f64) -> f64 {
    let e = (-0.5 * y.abs()).exp();
    let w = if y >= 0.0 {
        (3.0 + e) / (3.0 * (1.0 + e))
    } else {
        (3.0 * e + 1.0) / (3.0 * (e + 1.0))
    };
    w * (-0.5 * y).exp()
}

/// The growing solution `g(y) = 4 cosh²(y/4)` for `c = 8/3`.
pub fn verify_homogeneous_solution(y: f64) -> f64 {
    let c = (0.25 * y).cosh();
    4.0 * c * c
}

pub fn exact_jost_function(ygrid: &Grid1D) -> Result<JostFunction> {
    JostFunction::new(SampledFunction::from_fn(*ygrid, solitary_jost_exact)?)
}

/// `∫_y^∞ g(ξ)^{-2} dξ` by cubic quadrature from the right end. Beyond the
/// grid `g^{-2} = e^{-ξ}(1 + e^{-ξ/2})^{-4} ≈ e^{-ξ} - 4e^{-3ξ/2}`,
/// contributing `e^{-L} - (8/3)e^{-3L/2}` past `L = y_max`.
pub fn homogeneous_tail_integral(ygrid: &Grid1D) -> Result<SampledFunction> {
    let integrand = SampledFunction::from_fn(*ygrid, |y| {
        let g = verify_homogeneous_solution(y);
        1.0 / (g * g)
    })?;
    let end = ygrid.last();
    let beyond = (-end).exp() - 8.0 / 3.0 * (-1.5 * end).exp();
    Ok(tail_integral_with(&integrand, beyond, Quadrature::Cubic))
}

/// Second solution by reduction of order, `g(y) ∫_y^∞ g^{-2}`, rescaled to
/// unit amplitude against `e^{-y/2}` at the right end.
pub fn reduction_of_order_jost(ygrid: &Grid1D) -> Result<JostFunction> {
    let tail = homogeneous_tail_integral(ygrid)?;
    let raw = tail.map(|y, t| verify_homogeneous_solution(y) * t)?;
    let amplitude = raw.last() * (0.5 * ygrid.last()).exp();
    JostFunction::new(raw.map(|_, v| v / amplitude)?)
}

/// Largest y half-width tried: `e^{-y/2}` and `H ~ e^y` stay within `f64`.
const MAX_HALF_WIDTH: f64 = 600.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitaryOptions {
    pub dy: f64,
    pub decay_tol: f64,
    /// Use the closed-form Jost function when the speed admits it.
    pub exact_fast_path: bool,
    /// Solver for the numerical path.
    pub method: JostMethod,
}

impl Default for SolitaryOptions {
    fn default() -> Self {
        Self {
            dy: 1e-3,
            decay_tol: DEFAULT_DECAY_TOL,
            exact_fast_path: true,
            method: JostMethod::Ode,
        }
    }
}

/// Recovers `Φ` on `xgrid`. The y-grid is centred at `y₀`, starts at the
/// decay half-width of the well and is widened until `H` admits `xgrid`.
pub fn solitary_profile(spec: &SolitaryWaveSpec, xgrid: &Grid1D) -> Result<RecoveryResult> {
    solitary_profile_with(spec, xgrid, &SolitaryOptions::default())
}

pub fn solitary_profile_with(
    spec: &SolitaryWaveSpec,
    xgrid: &Grid1D,
    opts: &SolitaryOptions,
) -> Result<RecoveryResult> {
    let reach = (xgrid.first() - spec.y0)
        .abs()
        .max((xgrid.last() - spec.y0).abs());
    let mut half = spec
        .decay_half_width(opts.decay_tol)
        .max(reach + 2.0)
        .min(MAX_HALF_WIDTH);
    let mut attempt = 0;
    loop {
        let cells = (half / opts.dy).ceil();
        let ygrid = Grid1D::new(spec.y0 - cells * opts.dy, opts.dy, 2 * cells as usize + 1)?;
        let f = if opts.exact_fast_path && spec.has_exact_jost() {
            exact_jost_function(&ygrid)?
        } else {
            opts.method.solve(&spec.potential_profile(&ygrid)?)?
        };
        match recover_m(&f, xgrid) {
            Err(Error::Admissible { .. }) if attempt < 6 && half < MAX_HALF_WIDTH => {
                half = (half * 1.5).min(MAX_HALF_WIDTH);
                attempt += 1;
            }
            other => return other,
        }
    }
}

/// `u = (1 - ∂²)^{-1} m = ½ ∫ e^{-|x-ξ|} m(ξ) dξ`, computed as two one-sided
/// exponential moments `∫_{x0}^x e^{ξ-x} m` and `∫_x^{x1} e^{x-ξ} m`, each
/// updated cell by cell with the trapezoid rule.
pub fn helmholtz_inverse(m: &MomentumProfile) -> SampledFunction {
    let g = *m.grid();
    let v = m.values();
    let n = v.len();
    let h = g.dx();
    let decay = (-h).exp();
    let mut left = vec![0.0; n];
    for i in 1..n {
        left[i] = decay * left[i - 1] + 0.5 * h * (decay * v[i - 1] + v[i]);
    }
    let mut right = vec![0.0; n];
    for i in (0..n - 1).rev() {
        right[i] = decay * right[i + 1] + 0.5 * h * (decay * v[i + 1] + v[i]);
    }
    let u = left
        .iter()
        .zip(&right)
        .map(|(a, b)| 0.5 * (a + b))
        .collect();
    SampledFunction::new(g, u).expect("moments of finite samples are finite")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TravelingWaveCheck {
    pub residual: f64,
    pub scale: f64,
}

/// Defect of `m_t + 2u_x + u m_x + 2m u_x = 0` for `m = Φ(x - ct)`:
/// `R = -cΦ' + 2u' + uΦ' + 2Φu'`, sup over the interior window divided by
/// `c sup|Φ'|`.
pub fn traveling_wave_residual(phi: &MomentumProfile, c: f64) -> Result<f64> {
    Ok(traveling_wave_check(phi, c)?.residual)
}

pub fn traveling_wave_check(phi: &MomentumProfile, c: f64) -> Result<TravelingWaveCheck> {
    if !(c > 2.0) {
        return Err(Error::InvalidSpeed(c));
    }
    let trim = crate::jost::RESIDUAL_TRIM;
    let n = phi.grid().len();
    if n <= 2 * trim {
        return Err(Error::GridTooSmall {
            needed: 2 * trim + 1,
            got: n,
        });
    }
    let u = helmholtz_inverse(phi);
    let du = derivative(&u, 1)?;
    let dphi = derivative(phi.samples(), 1)?;
    let (p, dp, uu, dv) = (phi.values(), dphi.values(), u.values(), du.values());
    let window = trim..n - trim;
    let defect = window
        .clone()
        .map(|i| (-c * dp[i] + 2.0 * dv[i] + uu[i] * dp[i] + 2.0 * p[i] * dv[i]).abs())
        .fold(0.0, f64::max);
    let scale = c * window.map(|i| dp[i].abs()).fold(0.0, f64::max);
    let residual = if scale > 0.0 { defect / scale } else { defect };
    Ok(TravelingWaveCheck { residual, scale })
}
