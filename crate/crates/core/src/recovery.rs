//! Recovery of the momentum from the Jost function:
//!
//! ```text
//! H(y) = ∫_{-∞}^y f(ξ)^{-2} dξ,    m(x) + 1 = e^{2x} f(H^{-1}(e^x))^4.
//! ```
//!
//! `H` maps onto `(0, ∞)` and equals `e^{x(y)}` along the inverse Liouville
//! coordinate, which is what makes the right-hand side a function of `x`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jost::{JostFunction, JostMethod};
use crate::liouville::{MomentumProfile, PotentialProfile};
use crate::numerics::{
    cumulative_integral_with, interpolate, invert_monotone, Grid1D, MonotoneMap, Quadrature,
    SampledFunction,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecoveryDiagnostics {
    /// `e^{y_min} / A²`, the part of `H` left of the grid.
    pub tail_correction: f64,
    pub min_f: f64,
    pub amp_minus: f64,
    pub h_range: (f64, f64),
    /// `[ln H(y_min), ln H(y_max)]`
    pub admissible_x: (f64, f64),
}

#[derive(Debug, Clone)]
pub struct RecoveryResult {
    pub m: MomentumProfile,
    pub h: MonotoneMap,
    pub diagnostics: RecoveryDiagnostics,
}

/// `H` on the Jost grid. The piece left of `y_min` uses `f ≈ A e^{-y/2}`,
/// giving `e^{y_min}/A²`; the rest is integrated with the cubic rule.
pub fn compute_h(f: &JostFunction) -> Result<MonotoneMap> {
    let g = f.grid();
    if let Some((y, &value)) = g.points().zip(f.values()).find(|(_, v)| !(**v > 0.0)) {
        return Err(Error::NonPositiveJost { y, value });
    }
    let inverse_square = f.samples().map(|_, v| 1.0 / (v * v))?;
    let tail = g.first().exp() / (f.amp_minus() * f.amp_minus());
    MonotoneMap::new(cumulative_integral_with(
        &inverse_square,
        tail,
        Quadrature::Cubic,
    ))
}

pub fn admissible_interval(h: &MonotoneMap) -> (f64, f64) {
    let (lo, hi) = h.range();
    (lo.ln(), hi.ln())
}

/// Evaluates `m(x) = e^{2x} f(H^{-1}(e^x))^4 - 1` on every node of `xgrid`.
pub fn recover_m(f: &JostFunction, xgrid: &Grid1D) -> Result<RecoveryResult> {
    let h = compute_h(f)?;
    let (lo, hi) = admissible_interval(&h);
    let (xmin, xmax) = (xgrid.first(), xgrid.last());
    if xmin < lo || xmax > hi {
        return Err(Error::Admissible { xmin, xmax, lo, hi });
    }
    let values = (0..xgrid.len())
        .into_par_iter()
        .map(|i| {
            let x = xgrid.point(i);
            let y = invert_monotone(&h, x.exp())?;
            let fy = interpolate(f.samples(), y)?;
            // (e^x f²)² stays finite where e^{2x} and f⁴ separately do not
            let s = x.exp() * (fy * fy);
            Ok(s * s - 1.0)
        })
        .collect::<Result<Vec<f64>>>()?;
    let m = MomentumProfile::without_decay_check(SampledFunction::new(*xgrid, values)?)?;
    let diagnostics = RecoveryDiagnostics {
        tail_correction: h.values()[0],
        min_f: f.min_value(),
        amp_minus: f.amp_minus(),
        h_range: h.range(),
        admissible_x: (lo, hi),
    };
    Ok(RecoveryResult { m, h, diagnostics })
}

/// Potential to momentum: Jost solve, `H`, then [`recover_m`].
pub fn invert_pipeline(
    q: &PotentialProfile,
    xgrid: &Grid1D,
    method: JostMethod,
) -> Result<RecoveryResult> {
    let f = method.solve(q)?;
    recover_m(&f, xgrid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jost::solve_jost_ode;

    fn free_jost() -> JostFunction {
        let g = Grid1D::spanning(-20.0, 20.0, 1e-3).unwrap();
        JostFunction::new(SampledFunction::from_fn(g, |y| (-0.5 * y).exp()).unwrap()).unwrap()
    }

    #[test]
    fn free_h_is_exponential() {
        let h = compute_h(&free_jost()).unwrap();
        assert!((interpolate(h.base(), 0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((interpolate(h.base(), 2f64.ln()).unwrap() - 2.0).abs() < 1e-12);
        assert!((h.values()[0] / (-20f64).exp() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn free_chain_recovers_zero() {
        let r = recover_m(&free_jost(), &Grid1D::spanning(-10.0, 10.0, 1e-2).unwrap()).unwrap();
        assert!(r.m.samples().max_abs() < 1e-12);
        assert!((r.diagnostics.admissible_x.0 + 20.0).abs() < 1e-12);
        assert!((r.diagnostics.admissible_x.1 - 20.0).abs() < 1e-9);
    }

    #[test]
    fn x_range_beyond_h_is_reported() {
        let err =
            recover_m(&free_jost(), &Grid1D::spanning(-30.0, 0.0, 1e-2).unwrap()).unwrap_err();
        match err {
            Error::Admissible { lo, hi, xmin, .. } => {
                assert_eq!(xmin, -30.0);
                assert!((lo + 20.0).abs() < 1e-12 && (hi - 20.0).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pipeline_on_free_potential() {
        let q = PotentialProfile::zero(Grid1D::spanning(-20.0, 20.0, 1e-3).unwrap());
        let xg = Grid1D::spanning(-15.0, 15.0, 1e-2).unwrap();
        for method in [JostMethod::Ode, JostMethod::volterra()] {
            let r = invert_pipeline(&q, &xg, method).unwrap();
            assert!(r.m.samples().max_abs() <= 1e-9, "{method:?}");
        }
        let composed = recover_m(&solve_jost_ode(&q).unwrap(), &xg).unwrap();
        assert_eq!(
            composed.m,
            invert_pipeline(&q, &xg, JostMethod::Ode).unwrap().m
        );
    }
}
