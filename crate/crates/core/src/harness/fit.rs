use serde::Serialize;

use crate::{Error, Result};

/// Least-squares fit of `D(N) = alpha / N + beta N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistanceFit {
    pub alpha: f64,
    pub beta: f64,
    /// `sqrt(alpha / beta)` when both are positive.
    pub n_opt: Option<f64>,
}

pub fn fit_distance_model(ns: &[usize], ds: &[f64]) -> Result<DistanceFit> {
    if ns.len() != ds.len() {
        return Err(Error::DimensionMismatch {
            expected: ns.len(),
            actual: ds.len(),
        });
    }
    // Normal equations with columns u = 1/N and v = N; sum(u v) = k.
    let (mut suu, mut svv, mut sud, mut svd) = (0.0, 0.0, 0.0, 0.0);
    for (&n, &d) in ns.iter().zip(ds) {
        let n = n as f64;
        suu += 1.0 / (n * n);
        svv += n * n;
        sud += d / n;
        svd += d * n;
    }
    let k = ns.len() as f64;
    let det = suu * svv - k * k;
    if ns.len() < 2 || det.is_nan() || det <= 1e-12 * suu * svv {
        return Err(Error::Numerical(
            "degenerate step grid for the distance fit".into(),
        ));
    }
    let alpha = (sud * svv - k * svd) / det;
    let beta = (suu * svd - k * sud) / det;
    let n_opt = (alpha > 0.0 && beta > 0.0).then(|| (alpha / beta).sqrt());
    Ok(DistanceFit { alpha, beta, n_opt })
}

/// Ordinary least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidArgument(
            "need at least two paired points".into(),
        ));
    }
    if xs.iter().chain(ys).any(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidArgument(
            "log-log fit needs positive finite data".into(),
        ));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Numerical("all abscissae coincide".into()));
    }
    Ok(sxy / sxx)
}
