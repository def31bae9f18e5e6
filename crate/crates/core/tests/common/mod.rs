#![allow(dead_code)]

use chscatter::liouville::image_grid;
use chscatter::{
    compute_potential, recover_m, Grid1D, JostMethod, MomentumProfile, SampledFunction,
};

/// `a e^{-(x-b)²/w}`
#[derive(Debug, Clone, Copy)]
pub struct Bump {
    pub a: f64,
    pub b: f64,
    pub w: f64,
}

impl Bump {
    pub fn eval(&self, x: f64) -> f64 {
        let d = x - self.b;
        self.a * (-d * d / self.w).exp()
    }

    pub fn profile(&self, grid: Grid1D) -> MomentumProfile {
        MomentumProfile::new(
            SampledFunction::from_fn(grid, |x| self.eval(x)).unwrap(),
            1e-10,
        )
        .unwrap()
    }
}

pub const GAUSSIAN: Bump = Bump {
    a: 0.5,
    b: 0.0,
    w: 1.0,
};

/// Sup error of forward-then-inverse on `[-window, window]`, with the
/// profile sampled on `[-half, half]` and `dy = dx`.
pub fn roundtrip_error(bump: Bump, half: f64, window: f64, dx: f64, method: JostMethod) -> f64 {
    let m0 = bump.profile(Grid1D::spanning(-half, half, dx).unwrap());
    let q = compute_potential(&m0, &image_grid(&m0, dx).unwrap()).unwrap();
    let f = method.solve(&q).unwrap();
    let xg = Grid1D::spanning(-window, window, dx).unwrap();
    let r = recover_m(&f, &xg).unwrap();
    xg.points()
        .zip(r.m.values())
        .map(|(x, &v)| (v - bump.eval(x)).abs())
        .fold(0.0, f64::max)
}
