//! Forward Liouville transformation: momentum `m(x)` to the Schrödinger
//! potential `Q(y)`.
//!
//! The coordinate change is `y = x - ∫_x^∞ (√(m+1) - 1) dξ` and, with
//! `q(y) = m(x) + 1`,
//!
//! ```text
//! Q = 1/(4q) + q_yy/(4q) - 3 q_y² / (16 q²) - 1/4.
//! ```
//!
//! The isospectral weight problem `ψ_xx = ψ/4 + λ(m+1)ψ` maps to
//! `-φ_yy + Qφ = μφ` with spectral parameter `μ = -1/4 - λ`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{
    cumulative_integral, derivative, interpolate, invert_monotone, tail_integral_with, Grid1D,
    MonotoneMap, Quadrature, SampledFunction,
};

pub const DEFAULT_DECAY_TOL: f64 = 1e-10;

/// Maps the weighted spectral parameter `λ` to the Schrödinger one.
pub fn mu_from_lambda(lambda: f64) -> f64 {
    -0.25 - lambda
}

pub fn lambda_from_mu(mu: f64) -> f64 {
    -0.25 - mu
}

fn check_decay(name: &'static str, f: &SampledFunction, tol: f64) -> Result<()> {
    for value in [f.first(), f.last()] {
        if value.abs() > tol {
            return Err(Error::NotDecaying { name, value, tol });
        }
    }
    Ok(())
}

/// Momentum `m = u - u_xx` sampled on an x-grid, with `m + 1 > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumProfile {
    m: SampledFunction,
}

impl MomentumProfile {
    /// Validates positivity of `m + 1` and decay of `|m|` at both ends.
    pub fn new(m: SampledFunction, decay_tol: f64) -> Result<Self> {
        let profile = Self::without_decay_check(m)?;
        check_decay("m", &profile.m, decay_tol)?;
        Ok(profile)
    }

    /// Only `m + 1 > 0` is checked.
    pub fn without_decay_check(m: SampledFunction) -> Result<Self> {
        for (x, &v) in m.grid().points().zip(m.values()) {
            if !(v + 1.0 > 0.0) {
                return Err(Error::NonPositiveWeight { x, value: v + 1.0 });
            }
        }
        Ok(Self { m })
    }

    pub fn samples(&self) -> &SampledFunction {
        &self.m
    }

    pub fn grid(&self) -> &Grid1D {
        self.m.grid()
    }

    pub fn values(&self) -> &[f64] {
        self.m.values()
    }

    pub fn into_samples(self) -> SampledFunction {
        self.m
    }
}

/// Schrödinger potential `Q(y)` sampled on a y-grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialProfile {
    q: SampledFunction,
}

impl PotentialProfile {
    pub fn new(q: SampledFunction, decay_tol: f64) -> Result<Self> {
        check_decay("Q", &q, decay_tol)?;
        Ok(Self { q })
    }

    pub fn without_decay_check(q: SampledFunction) -> Self {
        Self { q }
    }

    pub fn zero(grid: Grid1D) -> Self {
        Self {
            q: SampledFunction::new(grid, vec![0.0; grid.len()]).expect("zeros are finite"),
        }
    }

    pub fn samples(&self) -> &SampledFunction {
        &self.q
    }

    pub fn grid(&self) -> &Grid1D {
        self.q.grid()
    }

    pub fn values(&self) -> &[f64] {
        self.q.values()
    }
}

/// `y(x) = x - ∫_x^∞ (√(m+1) - 1) dξ` sampled on the x-grid, with the
/// integral accumulated from the right end.
///
/// Anchoring at `+∞` makes `y - x → 0` where the Jost function is
/// normalized, which is what the recovery formula inverts exactly. The
/// left-anchored coordinate `x + ∫_{-∞}^x` differs by the constant
/// [`liouville_shift`]; using it would translate every recovered profile
/// by that amount.
pub fn forward_coordinate(m: &MomentumProfile) -> Result<MonotoneMap> {
    let excess = excess(m)?;
    let remaining = tail_integral_with(&excess, 0.0, Quadrature::Trapezoid);
    MonotoneMap::new(remaining.map(|x, s| x - s)?)
}

/// `S = ∫ (√(m+1) - 1) dξ` over the whole grid: the offset between the
/// left- and right-anchored Liouville coordinates.
pub fn liouville_shift(m: &MomentumProfile) -> Result<f64> {
    Ok(cumulative_integral(&excess(m)?, 0.0).last())
}

fn excess(m: &MomentumProfile) -> Result<SampledFunction> {
    m.samples().map(|_, v| (v + 1.0).sqrt() - 1.0)
}

/// How `q_y` and `q_yy` are formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PotentialMethod {
    /// Resample `q` onto the uniform y-grid and difference there.
    #[default]
    Resample,
    /// Difference in x and apply `d/dy = q^{-1/2} d/dx`, then resample `Q`.
    /// Kept as a cross-check.
    ChainRule,
}

pub fn compute_potential(m: &MomentumProfile, ygrid: &Grid1D) -> Result<PotentialProfile> {
    compute_potential_with(m, ygrid, PotentialMethod::Resample)
}

pub fn compute_potential_with(
    m: &MomentumProfile,
    ygrid: &Grid1D,
    method: PotentialMethod,
) -> Result<PotentialProfile> {
    let coord = forward_coordinate(m)?;
    let (lo, hi) = coord.range();
    for y in [ygrid.first(), ygrid.last()] {
        if !(y >= lo && y <= hi) {
            return Err(Error::Range { target: y, lo, hi });
        }
    }
    let weight = m.samples().map(|_, v| v + 1.0)?;

    let q = match method {
        PotentialMethod::Resample => {
            let q = resample(&coord, &weight, ygrid)?;
            let qy = derivative(&q, 1)?;
            let qyy = derivative(&q, 2)?;
            let values = q
                .values()
                .iter()
                .zip(qy.values())
                .zip(qyy.values())
                .map(|((&q, &q1), &q2)| assemble(q, q1, q2))
                .collect();
            SampledFunction::new(*ygrid, values)?
        }
        PotentialMethod::ChainRule => {
            let qx = derivative(&weight, 1)?;
            let qxx = derivative(&weight, 2)?;
            let values: Vec<f64> = weight
                .values()
                .iter()
                .zip(qx.values())
                .zip(qxx.values())
                .map(|((&q, &q1), &q2)| {
                    let qy = q1 / q.sqrt();
                    let qyy = q2 / q - q1 * q1 / (2.0 * q * q);
                    assemble(q, qy, qyy)
                })
                .collect();
            let on_x = SampledFunction::new(*weight.grid(), values)?;
            resample(&coord, &on_x, ygrid)?
        }
    };
    Ok(PotentialProfile::without_decay_check(q))
}

fn assemble(q: f64, qy: f64, qyy: f64) -> f64 {
    0.25 / q + 0.25 * qyy / q - 3.0 * qy * qy / (16.0 * q * q) - 0.25
}

/// Samples `g(x(y))` on `ygrid` by inverting the coordinate map node by node.
fn resample(coord: &MonotoneMap, g: &SampledFunction, ygrid: &Grid1D) -> Result<SampledFunction> {
    let values = (0..ygrid.len())
        .into_par_iter()
        .map(|i| {
            let x = invert_monotone(coord, ygrid.point(i))?;
            interpolate(g, x)
        })
        .collect::<Result<Vec<f64>>>()?;
    SampledFunction::new(*ygrid, values)
}

/// The y-grid with spacing `dy` covering the image of `forward_coordinate(m)`.
pub fn image_grid(m: &MomentumProfile, dy: f64) -> Result<Grid1D> {
    let (lo, hi) = forward_coordinate(m)?.range();
    Grid1D::spanning(lo, hi, dy)
}
