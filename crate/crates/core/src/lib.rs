//! Inverse scattering recovery for the Camassa-Holm equation
//! `m_t + 2u_x + u m_x + 2m u_x = 0`, `m = u - u_xx`.
//!
//! The pipeline runs in both directions:
//!
//! * [`liouville`]: momentum `m(x)` to Schrödinger potential `Q(y)`;
//! * [`jost`]: Jost function `f` of `φ_yy = (Q + 1/4)φ`, by RK4 and by the
//!   Volterra integral equation;
//! * [`recovery`]: `m(x) + 1 = e^{2x} f⁴(H⁻¹(eˣ))` with `H = ∫ f⁻²`.
//!
//! [`solitary`] holds the closed-form solitary-wave potential used as an
//! oracle, and [`spectrum`] locates bound states by shooting.

// `!(v > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod jost;
pub mod liouville;
pub mod numerics;
pub mod recovery;
pub mod solitary;
pub mod spectrum;

pub use error::{Error, Result};
pub use jost::{jost_residual, solve_jost_ode, solve_jost_volterra, JostFunction, JostMethod};
pub use liouville::{
    compute_potential, forward_coordinate, liouville_shift, MomentumProfile, PotentialMethod,
    PotentialProfile, DEFAULT_DECAY_TOL,
};
pub use numerics::{
    cumulative_integral, derivative, interpolate, invert_monotone, Grid1D, MonotoneMap, Quadrature,
    SampledFunction,
};
pub use recovery::{compute_h, invert_pipeline, recover_m, RecoveryDiagnostics, RecoveryResult};
pub use solitary::{
    helmholtz_inverse, solitary_jost_exact, solitary_potential, solitary_profile,
    traveling_wave_residual, verify_homogeneous_solution, SolitaryWaveSpec,
};
pub use spectrum::{find_eigenvalues, EigenvalueReport};
