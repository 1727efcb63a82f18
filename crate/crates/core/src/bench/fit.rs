use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 500;
const GRID: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FitModel {
    /// `a·e^{b·n} + c`
    Exponential,
    /// `a·n² + b·n + c`
    Quadratic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitResult {
    pub model: FitModel,
    pub params: [f64; 3],
    pub total_squared_residual: f64,
    /// False when the iteration budget ran out; params are the best found.
    pub converged: bool,
}

impl FitResult {
    pub fn eval(&self, n: f64) -> f64 {
        let [a, b, c] = self.params;
        match self.model {
            FitModel::Exponential => a * (b * n).exp() + c,
            FitModel::Quadratic => a * n * n + b * n + c,
        }
    }
}

/// Least-squares exponential and quadratic fits of `(n, gain)` points.
pub fn fit_models(points: &[(f64, f64)]) -> Result<(FitResult, FitResult)> {
    if points.len() < 4 {
        return Err(Error::InvalidArgument(format!(
            "{} points, need at least 4",
            points.len()
        )));
    }
    if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::InvalidArgument("non-finite point".into()));
    }
    Ok((fit_exponential(points), fit_quadratic(points)))
}

fn fit_quadratic(points: &[(f64, f64)]) -> FitResult {
    let m = points.len();
    let design = DMatrix::from_fn(m, 3, |i, j| points[i].0.powi(2 - j as i32));
    let y = DVector::from_iterator(m, points.iter().map(|p| p.1));
    let sol = design
        .clone()
        .svd(true, true)
        .solve(&y, 1e-14)
        .expect("svd computed with both factors");
    let params = [sol[0], sol[1], sol[2]];
    let r = FitResult {
        model: FitModel::Quadratic,
        params,
        total_squared_residual: 0.0,
        converged: true,
    };
    FitResult {
        total_squared_residual: residual(&r, points),
        ..r
    }
}

fn residual(f: &FitResult, points: &[(f64, f64)]) -> f64 {
    points.iter().map(|&(x, y)| (f.eval(x) - y).powi(2)).sum()
}

/// Best `(a, c)` for a fixed rate `b`, and the resulting residual.
fn project(points: &[(f64, f64)], b: f64) -> (f64, f64, f64) {
    let m = points.len() as f64;
    let (mut se, mut see, mut sy, mut sey) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let e = (b * x).exp();
        se += e;
        see += e * e;
        sy += y;
        sey += e * y;
    }
    let det = m * see - se * se;
    let (a, c) = if det.abs() <= 1e-12 * m * see {
        (0.0, sy / m)
    } else {
        ((m * sey - se * sy) / det, (see * sy - se * sey) / det)
    };
    let r = points.iter().map(|&(x, y)| (a * (b * x).exp() + c - y).powi(2)).sum();
    (a, c, r)
}

/// Log-linear regression on `gain − min + ε`.
fn seed_rate(points: &[(f64, f64)]) -> f64 {
    let ymin = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let ymax = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let eps = 1e-3 * (ymax - ymin).max(1e-12);
    let m = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ls: Vec<f64> = points.iter().map(|p| (p.1 - ymin + eps).ln()).collect();
    let xm = xs.iter().sum::<f64>() / m;
    let lm = ls.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - xm).powi(2)).sum();
    let sxl: f64 = xs.iter().zip(&ls).map(|(x, l)| (x - xm) * (l - lm)).sum();
    if sxx > 0.0 {
        sxl / sxx
    } else {
        0.0
    }
}

fn fit_exponential(points: &[(f64, f64)]) -> FitResult {
    let b0 = seed_rate(points);
    let span = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max)
        - points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let bound = (20.0 / span.max(1.0)).max(2.0 * b0.abs());
    let step = 2.0 * bound / GRID as f64;
    let grid: Vec<f64> = (0..=GRID).map(|k| -bound + k as f64 * step).collect();
    let best = grid
        .iter()
        .chain(std::iter::once(&b0))
        .map(|&b| (b, project(points, b).2))
        .fold((b0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });

    // golden section on the grid cell pair around the best rate
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (best.0 - step, best.0 + step);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = project(points, x1).2;
    let mut f2 = project(points, x2).2;
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        if hi - lo <= 1e-12 * (1.0 + best.0.abs()) {
            converged = true;
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = project(points, x1).2;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = project(points, x2).2;
        }
    }
    let mid = 0.5 * (lo + hi);
    let (b, (a, c, r)) = [(mid, project(points, mid)), (best.0, project(points, best.0))]
        .into_iter()
        .min_by(|p, q| p.1 .2.total_cmp(&q.1 .2))
        .expect("two candidates");
    FitResult {
        model: FitModel::Exponential,
        params: [a, b, c],
        total_squared_residual: r,
        converged,
    }
}
