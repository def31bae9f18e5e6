//! Uniform grids and the sampled-function primitives every pipeline stage
//! is built from: cumulative quadrature, finite differences, local cubic
//! interpolation and inversion of strictly increasing samples.

use crate::error::{Error, Result};

/// Uniform one-dimensional grid. Point `i` is `x0 + i * dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x0: f64,
    dx: f64,
    n: usize,
}

impl Grid1D {
    pub fn new(x0: f64, dx: f64, n: usize) -> Result<Self> {
        if !x0.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "left endpoint {x0} is not finite"
            )));
        }
        if !(dx.is_finite() && dx > 0.0) {
            return Err(Error::InvalidGrid(format!("spacing {dx} must be positive")));
        }
        if n < 2 {
            return Err(Error::InvalidGrid(format!("{n} points, need at least 2")));
        }
        Ok(Self { x0, dx, n })
    }

    /// Grid starting at `start` with spacing `dx` and as many points as fit
    /// in `[start, end]`. A trailing remainder below `1e-9 * dx` is treated
    /// as roundoff, so `spanning(-1.0, 1.0, 0.1)` has 21 points.
    pub fn spanning(start: f64, end: f64, dx: f64) -> Result<Self> {
        if !(end > start) {
            return Err(Error::InvalidGrid(format!(
                "bounds [{start}, {end}] are not ordered"
            )));
        }
        if !(dx.is_finite() && dx > 0.0) {
            return Err(Error::InvalidGrid(format!("spacing {dx} must be positive")));
        }
        let cells = ((end - start) / dx + 1e-9).floor();
        Self::new(start, dx, cells as usize + 1)
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn point(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    pub fn first(&self) -> f64 {
        self.x0
    }

    pub fn last(&self) -> f64 {
        self.point(self.n - 1)
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.point(i))
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.first() && x <= self.last()
    }

    /// Index of the cell `[x_j, x_{j+1}]` holding `x`, clamped to valid cells.
    fn cell(&self, x: f64) -> usize {
        let j = ((x - self.x0) / self.dx).floor();
        if j <= 0.0 {
            0
        } else {
            (j as usize).min(self.n - 2)
        }
    }
}

/// Finite samples of a function on a [`Grid1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid1D,
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.points().map(f).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn first(&self) -> f64 {
        self.values[0]
    }

    pub fn last(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Applies `op` pointwise, keeping the grid.
    pub fn map(&self, op: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let values = self
            .grid
            .points()
            .zip(&self.values)
            .map(|(x, &v)| op(x, v))
            .collect();
        Self::new(self.grid, values)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }
}

/// Strictly increasing samples, invertible by [`invert_monotone`].
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneMap {
    base: SampledFunction,
}

impl MonotoneMap {
    pub fn new(base: SampledFunction) -> Result<Self> {
        if let Some(i) = base.values.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::NotMonotone { index: i + 1 });
        }
        Ok(Self { base })
    }

    pub fn base(&self) -> &SampledFunction {
        &self.base
    }

    pub fn grid(&self) -> &Grid1D {
        self.base.grid()
    }

    pub fn values(&self) -> &[f64] {
        self.base.values()
    }

    pub fn range(&self) -> (f64, f64) {
        (self.base.first(), self.base.last())
    }

    pub fn into_inner(self) -> SampledFunction {
        self.base
    }
}

/// Cell quadrature rule used by the cumulative integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Quadrature {
    /// Composite trapezoid, second order.
    #[default]
    Trapezoid,
    /// Each cell integrates the local 4-point cubic, fourth order.
    Cubic,
}

fn cell_integrals(values: &[f64], dx: f64, rule: Quadrature) -> Vec<f64> {
    let n = values.len();
    if rule == Quadrature::Trapezoid || n < 4 {
        return values
            .windows(2)
            .map(|w| 0.5 * dx * (w[0] + w[1]))
            .collect();
    }
    let c = dx / 24.0;
    (0..n - 1)
        .map(|i| {
            if i == 0 {
                c * (9.0 * values[0] + 19.0 * values[1] - 5.0 * values[2] + values[3])
            } else if i == n - 2 {
                c * (values[n - 4] - 5.0 * values[n - 3]
                    + 19.0 * values[n - 2]
                    + 9.0 * values[n - 1])
            } else {
                c * (13.0 * (values[i] + values[i + 1]) - values[i - 1] - values[i + 2])
            }
        })
        .collect()
}

/// Running trapezoid integral: `F[0] = initial`, `F[i] = F[i-1] + trapezoid(i-1, i)`.
pub fn cumulative_integral(f: &SampledFunction, initial: f64) -> SampledFunction {
    cumulative_integral_with(f, initial, Quadrature::Trapezoid)
}

pub fn cumulative_integral_with(
    f: &SampledFunction,
    initial: f64,
    rule: Quadrature,
) -> SampledFunction {
    let cells = cell_integrals(&f.values, f.grid.dx, rule);
    let mut values = Vec::with_capacity(f.values.len());
    let mut acc = initial;
    values.push(acc);
    for c in cells {
        acc += c;
        values.push(acc);
    }
    SampledFunction {
        grid: f.grid,
        values,
    }
}

/// Integral from each node to the right end: `F[n-1] = terminal`,
/// `F[i] = F[i+1] + cell(i, i+1)`. Accumulating from the right keeps full
/// relative precision for integrands that decay to the right.
pub fn tail_integral_with(f: &SampledFunction, terminal: f64, rule: Quadrature) -> SampledFunction {
    let cells = cell_integrals(&f.values, f.grid.dx, rule);
    let n = f.values.len();
    let mut values = vec![0.0; n];
    values[n - 1] = terminal;
    for i in (0..n - 1).rev() {
        values[i] = values[i + 1] + cells[i];
    }
    SampledFunction {
        grid: f.grid,
        values,
    }
}

/// Fourth-order finite-difference derivative of order 1 or 2.
///
/// Interior nodes use the 5-point central stencils; the two nodes at each
/// end use one-sided stencils of the same order (5 points for the first
/// derivative, 6 for the second).
pub fn derivative(f: &SampledFunction, order: u8) -> Result<SampledFunction> {
    let n = f.grid.n;
    let v = &f.values;
    let h = f.grid.dx;
    let out = match order {
        1 => {
            if n < 5 {
                return Err(Error::GridTooSmall { needed: 5, got: n });
            }
            let s = 1.0 / (12.0 * h);
            let mut d = vec![0.0; n];
            d[0] = s * (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]);
            d[1] = s * (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]);
            for i in 2..n - 2 {
                d[i] = s * (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]);
            }
            d[n - 2] = -s
                * (-3.0 * v[n - 1] - 10.0 * v[n - 2] + 18.0 * v[n - 3] - 6.0 * v[n - 4] + v[n - 5]);
            d[n - 1] = -s
                * (-25.0 * v[n - 1] + 48.0 * v[n - 2] - 36.0 * v[n - 3] + 16.0 * v[n - 4]
                    - 3.0 * v[n - 5]);
            d
        }
        2 => {
            if n < 6 {
                return Err(Error::GridTooSmall { needed: 6, got: n });
            }
            let s = 1.0 / (12.0 * h * h);
            let mut d = vec![0.0; n];
            let left0 = |w: &dyn Fn(usize) -> f64| {
                45.0 * w(0) - 154.0 * w(1) + 214.0 * w(2) - 156.0 * w(3) + 61.0 * w(4) - 10.0 * w(5)
            };
            let left1 = |w: &dyn Fn(usize) -> f64| {
                10.0 * w(0) - 15.0 * w(1) - 4.0 * w(2) + 14.0 * w(3) - 6.0 * w(4) + w(5)
            };
            let fwd = |k: usize| v[k];
            let bwd = |k: usize| v[n - 1 - k];
            d[0] = s * left0(&fwd);
            d[1] = s * left1(&fwd);
            for i in 2..n - 2 {
                d[i] = s * (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2]);
            }
            d[n - 2] = s * left1(&bwd);
            d[n - 1] = s * left0(&bwd);
            d
        }
        _ => {
            return Err(Error::InvalidParameter(format!(
                "derivative order {order} (expected 1 or 2)"
            )))
        }
    };
    SampledFunction::new(f.grid, out)
}

/// Local interpolating polynomial through up to four consecutive samples,
/// in Newton forward form over the local coordinate `t = (x - x_s) / dx`.
struct LocalPoly {
    start: usize,
    coeffs: [f64; 4],
    degree: usize,
}

impl LocalPoly {
    /// Stencil for cell `j`: samples `j-1 ..= j+2`, shifted inward at the ends.
    fn for_cell(values: &[f64], j: usize) -> Self {
        let n = values.len();
        let k = n.min(4);
        let start = j.saturating_sub(1).min(n - k);
        let p = &values[start..start + k];
        let mut coeffs = [0.0; 4];
        coeffs[0] = p[0];
        if k > 1 {
            coeffs[1] = p[1] - p[0];
        }
        if k > 2 {
            coeffs[2] = 0.5 * (p[2] - 2.0 * p[1] + p[0]);
        }
        if k > 3 {
            coeffs[3] = (p[3] - 3.0 * p[2] + 3.0 * p[1] - p[0]) / 6.0;
        }
        Self {
            start,
            coeffs,
            degree: k - 1,
        }
    }

    fn eval(&self, t: f64) -> f64 {
        let [a, b, c, d] = self.coeffs;
        match self.degree {
            1 => a + b * t,
            2 => a + t * (b + c * (t - 1.0)),
            _ => a + t * (b + (t - 1.0) * (c + d * (t - 2.0))),
        }
    }

    /// d/dt
    fn slope(&self, t: f64) -> f64 {
        let [_, b, c, d] = self.coeffs;
        match self.degree {
            1 => b,
            2 => b + c * (2.0 * t - 1.0),
            _ => b + c * (2.0 * t - 1.0) + d * (3.0 * t * t - 6.0 * t + 2.0),
        }
    }
}

/// Cubic interpolation from the four samples surrounding `x`.
pub fn interpolate(f: &SampledFunction, x: f64) -> Result<f64> {
    let g = &f.grid;
    if !(x >= g.first() && x <= g.last()) {
        return Err(Error::Domain {
            x,
            lo: g.first(),
            hi: g.last(),
        });
    }
    let j = g.cell(x);
    if x == g.point(j) {
        return Ok(f.values[j]);
    }
    if x == g.point(j + 1) {
        return Ok(f.values[j + 1]);
    }
    let poly = LocalPoly::for_cell(&f.values, j);
    Ok(poly.eval((x - g.point(poly.start)) / g.dx))
}

/// Solves `interpolate(map, x) = target` for `x`.
///
/// Binary search brackets the target between two samples; the local cubic
/// of that cell is then solved by Newton steps safeguarded with bisection.
pub fn invert_monotone(map: &MonotoneMap, target: f64) -> Result<f64> {
    let values = map.values();
    let g = map.grid();
    let n = values.len();
    let (lo, hi) = map.range();
    if !(target >= lo && target <= hi) {
        return Err(Error::Range { target, lo, hi });
    }
    // first index with value > target, so values[j] <= target < values[j+1]
    let upper = values.partition_point(|&v| v <= target);
    if upper == 0 {
        return Ok(g.first());
    }
    let j = upper - 1;
    if values[j] == target || j == n - 1 {
        return Ok(g.point(j));
    }

    let poly = LocalPoly::for_cell(values, j);
    let offset = (j - poly.start) as f64;
    let (mut a, mut b) = (offset, offset + 1.0);
    let mut t = offset + (target - values[j]) / (values[j + 1] - values[j]);
    let tol = f64::EPSILON * target.abs();
    for _ in 0..200 {
        let r = poly.eval(t) - target;
        if r.abs() <= tol {
            break;
        }
        if r < 0.0 {
            a = t;
        } else {
            b = t;
        }
        if b - a <= 4.0 * f64::EPSILON * b.abs().max(1.0) {
            break;
        }
        let slope = poly.slope(t);
        let newton = t - r / slope;
        t = if slope > 0.0 && newton > a && newton < b {
            newton
        } else {
            0.5 * (a + b)
        };
    }
    let x = g.point(poly.start) + t * g.dx;
    Ok(x.clamp(g.point(j), g.point(j + 1)))
}

/// `max_i |a_i - b_i| / |b_i|`, the scale-free distance used to compare
/// functions spanning many orders of magnitude.
pub fn max_relative_deviation(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / y.abs())
        .fold(0.0, f64::max)
}

pub fn max_abs_deviation(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(x0: f64, x1: f64, dx: f64) -> Grid1D {
        Grid1D::spanning(x0, x1, dx).unwrap()
    }

    #[test]
    fn grid_points_are_not_accumulated() {
        let g = Grid1D::new(-30.0, 1e-3, 60_001).unwrap();
        assert_eq!(g.point(60_000), -30.0 + 60_000.0 * 1e-3);
        assert!((g.last() - 30.0).abs() < 1e-12);
        assert_eq!(Grid1D::spanning(-1.0, 1.0, 0.1).unwrap().len(), 21);
    }

    #[test]
    fn grid_rejects_bad_parameters() {
        assert!(Grid1D::new(0.0, 0.0, 10).is_err());
        assert!(Grid1D::new(0.0, -1.0, 10).is_err());
        assert!(Grid1D::new(0.0, 0.1, 1).is_err());
        assert!(Grid1D::new(f64::NAN, 0.1, 3).is_err());
    }

    #[test]
    fn sampled_function_invariants() {
        let g = Grid1D::new(0.0, 1.0, 3).unwrap();
        assert_eq!(
            SampledFunction::new(g, vec![1.0, 2.0]),
            Err(Error::LengthMismatch {
                expected: 3,
                got: 2
            })
        );
        assert!(matches!(
            SampledFunction::new(g, vec![1.0, f64::NAN, 2.0]),
            Err(Error::NonFinite { index: 1, .. })
        ));
    }

    #[test]
    fn monotone_map_rejects_plateaus() {
        let g = Grid1D::new(0.0, 1.0, 4).unwrap();
        let f = SampledFunction::new(g, vec![0.0, 1.0, 1.0, 2.0]).unwrap();
        assert_eq!(MonotoneMap::new(f), Err(Error::NotMonotone { index: 2 }));
    }

    #[test]
    fn cumulative_integral_of_one_is_x() {
        let g = Grid1D::new(0.0, 0.5, 3).unwrap();
        let f = SampledFunction::from_fn(g, |_| 1.0).unwrap();
        assert_eq!(cumulative_integral(&f, 0.0).values(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn cumulative_integral_of_zero_keeps_initial() {
        let f = SampledFunction::from_fn(grid(0.0, 2.0, 0.25), |_| 0.0).unwrap();
        assert!(cumulative_integral(&f, 3.0)
            .values()
            .iter()
            .all(|&v| v == 3.0));
    }

    #[test]
    fn cumulative_integral_of_exp() {
        let f = SampledFunction::from_fn(grid(0.0, 1.0, 1e-4), f64::exp).unwrap();
        let total = cumulative_integral(&f, 0.0).last();
        assert!(
            (total - (std::f64::consts::E - 1.0)).abs() < 1e-8,
            "{total}"
        );
    }

    #[test]
    fn cubic_rule_is_exact_on_cubics() {
        let f =
            SampledFunction::from_fn(grid(-1.0, 2.0, 0.1), |x| x * x * x - 2.0 * x + 0.5).unwrap();
        let anti = |x: f64| x.powi(4) / 4.0 - x * x + 0.5 * x;
        let forward = cumulative_integral_with(&f, 0.0, Quadrature::Cubic);
        let tail = tail_integral_with(&f, 0.0, Quadrature::Cubic);
        for (i, x) in f.grid().points().enumerate() {
            assert!((forward.values()[i] - (anti(x) - anti(-1.0))).abs() < 1e-13);
            assert!((tail.values()[i] - (anti(2.0) - anti(x))).abs() < 1e-13);
        }
    }

    #[test]
    fn cubic_rule_is_fourth_order() {
        let err = |dx: f64| {
            let f = SampledFunction::from_fn(grid(0.0, 3.0, dx), f64::exp).unwrap();
            (cumulative_integral_with(&f, 0.0, Quadrature::Cubic).last() - (3f64.exp() - 1.0)).abs()
        };
        let ratio = err(0.02) / err(0.01);
        assert!(ratio > 14.0 && ratio < 18.0, "{ratio}");
    }

    #[test]
    fn first_derivative_of_square() {
        let f = SampledFunction::from_fn(grid(-2.0, 2.0, 1e-3), |x| x * x).unwrap();
        let d = derivative(&f, 1).unwrap();
        for (x, v) in f.grid().points().zip(d.values()) {
            assert!((v - 2.0 * x).abs() < 1e-9);
        }
    }

    #[test]
    fn second_derivative_of_constant() {
        let f = SampledFunction::from_fn(grid(0.0, 1.0, 0.01), |_| 7.5).unwrap();
        assert!(derivative(&f, 2).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn second_derivative_of_sine() {
        // 2^-10 keeps every node exactly representable; with 1e-3 the node
        // placement rounding alone is amplified to ~1e-8 by the end stencils
        let f = SampledFunction::from_fn(
            grid(0.0, 2.0 * std::f64::consts::PI, 1.0 / 1024.0),
            f64::sin,
        )
        .unwrap();
        let d = derivative(&f, 2).unwrap();
        let err = f
            .grid()
            .points()
            .zip(d.values())
            .map(|(x, v)| (v + x.sin()).abs())
            .fold(0.0, f64::max);
        assert!(err <= 1e-9, "{err}");
    }

    #[test]
    fn stencils_are_exact_on_quartics() {
        let p = |x: f64| 1.0 - x + 0.5 * x * x - 0.25 * x.powi(3) + 0.1 * x.powi(4);
        let p1 = |x: f64| -1.0 + x - 0.75 * x * x + 0.4 * x.powi(3);
        let p2 = |x: f64| 1.0 - 1.5 * x + 1.2 * x * x;
        let f = SampledFunction::from_fn(grid(-1.0, 1.0, 0.125), p).unwrap();
        let d1 = derivative(&f, 1).unwrap();
        let d2 = derivative(&f, 2).unwrap();
        for (i, x) in f.grid().points().enumerate() {
            assert!((d1.values()[i] - p1(x)).abs() < 1e-11, "d1 at {x}");
            assert!((d2.values()[i] - p2(x)).abs() < 1e-10, "d2 at {x}");
        }
    }

    #[test]
    fn derivative_needs_enough_points() {
        let f = SampledFunction::from_fn(Grid1D::new(0.0, 1.0, 4).unwrap(), |x| x).unwrap();
        assert_eq!(
            derivative(&f, 1),
            Err(Error::GridTooSmall { needed: 5, got: 4 })
        );
        let f = SampledFunction::from_fn(Grid1D::new(0.0, 1.0, 5).unwrap(), |x| x).unwrap();
        assert_eq!(
            derivative(&f, 2),
            Err(Error::GridTooSmall { needed: 6, got: 5 })
        );
        assert!(derivative(&f, 3).is_err());
    }

    #[test]
    fn interpolation_reproduces_cubics() {
        let f = SampledFunction::from_fn(grid(0.0, 1.0, 0.1), |x| x * x * x).unwrap();
        assert!((interpolate(&f, 0.05).unwrap() - 1.25e-4).abs() < 1e-16);
        assert!((interpolate(&f, 0.97).unwrap() - 0.97f64.powi(3)).abs() < 1e-15);
    }

    #[test]
    fn interpolation_at_nodes_is_exact() {
        let f = SampledFunction::from_fn(grid(0.0, 1.0, 0.1), |x| (3.0 * x).sin()).unwrap();
        for (i, x) in f.grid().points().enumerate() {
            assert_eq!(interpolate(&f, x).unwrap(), f.values()[i]);
        }
    }

    #[test]
    fn interpolation_of_cosh_mid_cell() {
        let f = SampledFunction::from_fn(grid(-2.0, 2.0, 1e-3), f64::cosh).unwrap();
        let err = (0..3999)
            .map(|i| -2.0 + (i as f64 + 0.5) * 1e-3)
            .map(|x| (interpolate(&f, x).unwrap() - x.cosh()).abs())
            .fold(0.0, f64::max);
        assert!(err <= 1e-11, "{err}");
    }

    #[test]
    fn interpolation_out_of_range_reports_x() {
        let f = SampledFunction::from_fn(grid(0.0, 1.0, 0.1), |x| x).unwrap();
        assert!(matches!(interpolate(&f, 1.5), Err(Error::Domain { x, .. }) if x == 1.5));
        assert!(interpolate(&f, f64::NAN).is_err());
    }

    #[test]
    fn invert_exp_is_log() {
        let m =
            MonotoneMap::new(SampledFunction::from_fn(grid(-5.0, 5.0, 1e-3), f64::exp).unwrap())
                .unwrap();
        assert!(invert_monotone(&m, 1.0).unwrap().abs() < 1e-9);
        assert_eq!(invert_monotone(&m, m.values()[0]).unwrap(), -5.0);
        let top = invert_monotone(&m, m.range().1).unwrap();
        assert!((top - 5.0).abs() < 1e-12);
    }

    #[test]
    fn invert_cubic_root() {
        let m = MonotoneMap::new(
            SampledFunction::from_fn(grid(-2.0, 2.0, 1e-3), |y| y * y * y + y).unwrap(),
        )
        .unwrap();
        assert!((invert_monotone(&m, 2.0).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn invert_out_of_range_reports_both() {
        let m = MonotoneMap::new(SampledFunction::from_fn(grid(0.0, 1.0, 0.1), |x| x).unwrap())
            .unwrap();
        assert_eq!(
            invert_monotone(&m, 2.0),
            Err(Error::Range {
                target: 2.0,
                lo: 0.0,
                hi: m.range().1
            })
        );
    }

    #[test]
    fn invert_meets_residual_contract_on_steep_map() {
        let m =
            MonotoneMap::new(SampledFunction::from_fn(grid(-40.0, 40.0, 1e-2), f64::exp).unwrap())
                .unwrap();
        for &target in &[1e-15, 0.3, 7.0, 1e10, 1e17] {
            let x = invert_monotone(&m, target).unwrap();
            let back = interpolate(m.base(), x).unwrap();
            assert!(
                (back - target).abs() <= 1e-12 * target.max(1.0),
                "{target} -> {back}"
            );
        }
    }

    #[test]
    fn tiny_grids_interpolate_with_lower_degree() {
        let f = SampledFunction::new(Grid1D::new(0.0, 1.0, 2).unwrap(), vec![1.0, 3.0]).unwrap();
        assert_eq!(interpolate(&f, 0.5).unwrap(), 2.0);
        let m = MonotoneMap::new(f).unwrap();
        assert_eq!(invert_monotone(&m, 2.0).unwrap(), 0.5);
    }
}
