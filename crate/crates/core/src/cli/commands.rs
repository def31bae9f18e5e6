use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use super::config::{Method, RunConfig};
use super::csv::read_profile;
use super::CliError;
use crate::error::Error;
use crate::jost::jost_residual;
use crate::liouville::{compute_potential, forward_coordinate, MomentumProfile, PotentialProfile};
use crate::numerics::{Grid1D, SampledFunction};
use crate::recovery::{admissible_interval, compute_h, recover_m};
use crate::solitary::{
    solitary_profile_with, traveling_wave_check, SolitaryOptions, SolitaryWaveSpec,
};
use crate::spectrum::find_eigenvalues;

/// Spacing used by `solitary` and `spectrum --c` when none is configured.
pub const DEFAULT_SPACING: f64 = 1e-3;

/// Relative margin by which a derived x-range is pulled inside the
/// admissible interval, so that `e^x` stays within the range of `H`.
const ADMISSIBLE_MARGIN: f64 = 1e-9;

/// What a command produces before it is written anywhere.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Profile {
        data: SampledFunction,
        diagnostics: Option<Value>,
    },
    Report(Value),
}

#[derive(Debug, Serialize)]
struct GridSummary {
    min: f64,
    max: f64,
    spacing: f64,
    nodes: usize,
}

impl From<&Grid1D> for GridSummary {
    fn from(g: &Grid1D) -> Self {
        Self {
            min: g.first(),
            max: g.last(),
            spacing: g.dx(),
            nodes: g.len(),
        }
    }
}

fn method_name(cfg: &RunConfig) -> &'static str {
    match cfg.method.unwrap_or_default() {
        Method::Ode => "ode",
        Method::Volterra => "volterra",
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize to JSON")
}

/// Largest grid starting at `lo` with spacing `d` whose last node is `<= hi`.
fn grid_within(lo: f64, hi: f64, d: f64) -> crate::Result<Grid1D> {
    let mut n = ((hi - lo) / d).floor() as usize + 1;
    while n > 1 && lo + (n - 1) as f64 * d > hi {
        n -= 1;
    }
    Grid1D::new(lo, d, n)
}

fn shrink(lo: f64, hi: f64) -> (f64, f64) {
    let margin = ADMISSIBLE_MARGIN * (hi - lo);
    (lo + margin, hi - margin)
}

fn y_grid(cfg: &RunConfig, lo: f64, hi: f64, default_dy: f64) -> crate::Result<Grid1D> {
    Grid1D::spanning(
        cfg.ymin.unwrap_or(lo),
        cfg.ymax.unwrap_or(hi),
        cfg.dy.unwrap_or(default_dy),
    )
}

fn read_momentum(path: &Path, cfg: &RunConfig) -> Result<MomentumProfile, CliError> {
    Ok(MomentumProfile::new(read_profile(path)?, cfg.decay_tol)?)
}

fn read_potential(path: &Path, cfg: &RunConfig) -> Result<PotentialProfile, CliError> {
    Ok(PotentialProfile::new(read_profile(path)?, cfg.decay_tol)?)
}

/// Momentum profile to potential. The y-grid defaults to the image of the
/// input grid with the input spacing.
pub fn cmd_forward(input: &Path, cfg: &RunConfig) -> Result<Output, CliError> {
    let m = read_momentum(input, cfg)?;
    let (lo, hi) = forward_coordinate(&m)?.range();
    let ygrid = y_grid(cfg, lo, hi, m.grid().dx())?;
    let q = compute_potential(&m, &ygrid)?;
    Ok(Output::Profile {
        data: q.samples().clone(),
        diagnostics: None,
    })
}

/// Potential to momentum profile. Without explicit bounds the x-grid fills
/// the admissible interval.
pub fn cmd_invert(input: &Path, cfg: &RunConfig) -> Result<Output, CliError> {
    let q = read_potential(input, cfg)?;
    let f = cfg.jost_method().solve(&q)?;
    let (lo, hi) = shrink_admissible(&f)?;
    let dx = cfg.dx.unwrap_or(q.grid().dx());
    let xgrid = match (cfg.xmin, cfg.xmax) {
        (None, None) => grid_within(lo, hi, dx)?,
        (a, b) => Grid1D::spanning(a.unwrap_or(lo), b.unwrap_or(hi), dx)?,
    };
    let r = recover_m(&f, &xgrid)?;
    let diagnostics = json!({
        "method": method_name(cfg),
        "jost_residual": jost_residual(&f, &q)?,
        "x_grid": to_value(&GridSummary::from(&xgrid)),
        "y_grid": to_value(&GridSummary::from(q.grid())),
        "recovery": to_value(&r.diagnostics),
    });
    Ok(Output::Profile {
        data: r.m.into_samples(),
        diagnostics: Some(diagnostics),
    })
}

fn shrink_admissible(f: &crate::jost::JostFunction) -> crate::Result<(f64, f64)> {
    let (lo, hi) = admissible_interval(&compute_h(f)?);
    Ok(shrink(lo, hi))
}

/// Forward then inverse, compared on the input nodes that lie inside both
/// the configured x-window and the admissible interval.
pub fn cmd_roundtrip(input: &Path, cfg: &RunConfig) -> Result<Output, CliError> {
    let m0 = read_momentum(input, cfg)?;
    let g = *m0.grid();
    let (ylo, yhi) = forward_coordinate(&m0)?.range();
    let ygrid = y_grid(cfg, ylo, yhi, g.dx())?;
    let q = compute_potential(&m0, &ygrid)?;
    let f = cfg.jost_method().solve(&q)?;
    let (lo, hi) = shrink_admissible(&f)?;

    let (wlo, whi) = (
        cfg.xmin.unwrap_or(f64::NEG_INFINITY),
        cfg.xmax.unwrap_or(f64::INFINITY),
    );
    if cfg.xmin.is_some_and(|a| a < lo) || cfg.xmax.is_some_and(|b| b > hi) {
        return Err(Error::Admissible {
            xmin: wlo,
            xmax: whi,
            lo,
            hi,
        }
        .into());
    }
    let inside: Vec<usize> = (0..g.len())
        .filter(|&i| (g.point(i) >= lo.max(wlo)) && (g.point(i) <= hi.min(whi)))
        .collect();
    let (first, count) = match (inside.first(), inside.last()) {
        (Some(&a), Some(&b)) if b > a => (a, b - a + 1),
        _ => {
            return Err(Error::Admissible {
                xmin: g.first(),
                xmax: g.last(),
                lo,
                hi,
            }
            .into())
        }
    };
    let window = Grid1D::new(g.point(first), g.dx(), count)?;
    let r = recover_m(&f, &window)?;

    let (mut sup_error, mut at) = (0.0_f64, window.first());
    for (j, &v) in r.m.values().iter().enumerate() {
        let e = (v - m0.values()[first + j]).abs();
        if e > sup_error {
            sup_error = e;
            at = window.point(j);
        }
    }
    Ok(Output::Report(json!({
        "sup_error": sup_error,
        "sup_error_at": at,
        "method": method_name(cfg),
        "window": to_value(&GridSummary::from(&window)),
        "y_grid": to_value(&GridSummary::from(&ygrid)),
        "jost_residual": jost_residual(&f, &q)?,
        "recovery": to_value(&r.diagnostics),
    })))
}

/// Solitary profile for speed `c`. The closed-form Jost function is used at
/// `c = 8/3` unless a solver method is configured explicitly.
pub fn cmd_solitary(c: f64, y0: f64, cfg: &RunConfig) -> Result<Output, CliError> {
    let spec = SolitaryWaveSpec::new(c, y0)?;
    let dx = cfg.dx.unwrap_or(DEFAULT_SPACING);
    let xgrid = match (cfg.xmin, cfg.xmax) {
        (None, None) => spec.default_xgrid(dx, cfg.decay_tol)?,
        (a, b) => {
            let d = spec.default_xgrid(dx, cfg.decay_tol)?;
            Grid1D::spanning(a.unwrap_or(d.first()), b.unwrap_or(d.last()), dx)?
        }
    };
    let opts = SolitaryOptions {
        dy: cfg.dy.unwrap_or(DEFAULT_SPACING),
        decay_tol: cfg.decay_tol,
        exact_fast_path: cfg.method.is_none(),
        method: cfg.jost_method(),
    };
    let r = solitary_profile_with(&spec, &xgrid, &opts)?;
    let check = traveling_wave_check(&r.m, c)?;
    let (peak_x, peak) = r.m.samples().grid().points().zip(r.m.values()).fold(
        (xgrid.first(), f64::NEG_INFINITY),
        |best, (x, &v)| if v > best.1 { (x, v) } else { best },
    );
    let solver = if opts.exact_fast_path && spec.has_exact_jost() {
        "exact"
    } else {
        method_name(cfg)
    };
    let diagnostics = json!({
        "c": c,
        "y0": y0,
        "solver": solver,
        "residual": check.residual,
        "residual_scale": check.scale,
        "peak": peak,
        "peak_x": peak_x,
        "x_grid": to_value(&GridSummary::from(&xgrid)),
        "recovery": to_value(&r.diagnostics),
    });
    Ok(Output::Profile {
        data: r.m.into_samples(),
        diagnostics: Some(diagnostics),
    })
}

pub enum SpectrumSource<'a> {
    File(&'a Path),
    Solitary { c: f64, y0: f64 },
}

/// Eigenvalues in `(-1/4, 0)` for a potential file or a solitary well.
pub fn cmd_spectrum(source: SpectrumSource<'_>, cfg: &RunConfig) -> Result<Output, CliError> {
    let q = match source {
        SpectrumSource::File(path) => read_potential(path, cfg)?,
        SpectrumSource::Solitary { c, y0 } => {
            let spec = SolitaryWaveSpec::new(c, y0)?;
            let dy = cfg.dy.unwrap_or(DEFAULT_SPACING);
            let ygrid = match (cfg.ymin, cfg.ymax) {
                (None, None) => {
                    let cells = (spec.decay_half_width(cfg.decay_tol) / dy).ceil();
                    Grid1D::new(y0 - cells * dy, dy, 2 * cells as usize + 1)?
                }
                _ => {
                    let half = spec.decay_half_width(cfg.decay_tol);
                    y_grid(cfg, y0 - half, y0 + half, dy)?
                }
            };
            spec.potential_profile(&ygrid)?
        }
    };
    let report = find_eigenvalues(&q, cfg.spectrum_tol)?;
    Ok(Output::Report(to_value(&report)))
}
