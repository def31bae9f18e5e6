use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("sample count {got} does not match grid size {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("non-finite sample {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("grid has {got} points, operation needs at least {needed}")]
    GridTooSmall { needed: usize, got: usize },

    #[error("grids do not match")]
    GridMismatch,

    #[error("samples not strictly increasing at index {index}")]
    NotMonotone { index: usize },

    #[error("x = {x} lies outside the grid [{lo}, {hi}]")]
    Domain { x: f64, lo: f64, hi: f64 },

    #[error("target {target} lies outside the range [{lo}, {hi}]")]
    Range { target: f64, lo: f64, hi: f64 },

    #[error("invariant violated: m + 1 = {value} <= 0 at x = {x}")]
    NonPositiveWeight { x: f64, value: f64 },

    #[error(
        "invariant violated: |{name}| = {value} at the boundary exceeds decay tolerance {tol}"
    )]
    NotDecaying {
        name: &'static str,
        value: f64,
        tol: f64,
    },

    #[error("invariant violated: Jost function sample {value} <= 0 at y = {y}")]
    NonPositiveJost { y: f64, value: f64 },

    #[error("invariant violated: Jost normalization f(y_max) e^(y_max/2) = {value}, expected 1")]
    Normalization { value: f64 },

    #[error("x-grid [{xmin}, {xmax}] exceeds the admissible interval [{lo}, {hi}]")]
    Admissible {
        xmin: f64,
        xmax: f64,
        lo: f64,
        hi: f64,
    },

    #[error("wave speed must exceed 2 (got c = {0})")]
    InvalidSpeed(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite state while marching at y = {y}")]
    Blowup { y: f64 },

    #[error("no convergence after {iterations} sweeps (last change {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
}
