//! Sub-exponential exponent fits.
//!
//! No-recycle fusion costs grow like `cost(N) = c * sqrt(N) * N^(log2(N)/k)`.
//! Taking logs turns this into a line: with `y = ln(cost) - ln(N)/2` and
//! `x = (ln N)^2 / ln 2`, the model reads `y = ln(c) + x/k`, so an ordinary
//! least-squares fit recovers `1/k` as the slope and `ln c` as the
//! intercept.

use crate::error::Error;

/// Result of fitting `cost(N) = c * sqrt(N) * N^(log2(N)/k)` in log space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentFit {
    pub k: f64,
    pub c: f64,
    /// Root-mean-square residual of the fit in log space.
    pub residual: f64,
}

/// Least-squares fit of the sub-exponential cost model over
/// `(size, cost)` points. Needs at least 3 points with strictly increasing
/// sizes and positive costs; a non-increasing log-space trend is rejected as
/// degenerate.
pub fn fit_exponent(points: &[(u64, f64)]) -> Result<ExponentFit, Error> {
    if points.len() < 3 {
        return Err(Error::InvalidFit(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    for pair in points.windows(2) {
        if pair[1].0 <= pair[0].0 {
            return Err(Error::InvalidFit(format!(
                "sizes must be strictly increasing, got {} after {}",
                pair[1].0, pair[0].0
            )));
        }
    }
    if points.iter().any(|&(size, cost)| size == 0 || cost <= 0.0) {
        return Err(Error::InvalidFit(
            "sizes must be positive and costs strictly positive".into(),
        ));
    }

    let ln2 = std::f64::consts::LN_2;
    let xs: Vec<f64> = points
        .iter()
        .map(|&(size, _)| {
            let ln_n = (size as f64).ln();
            ln_n * ln_n / ln2
        })
        .collect();
    let ys: Vec<f64> = points
        .iter()
        .map(|&(size, cost)| cost.ln() - 0.5 * (size as f64).ln())
        .collect();

    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    if sxx < 1e-12 {
        return Err(Error::InvalidFit("collinear sizes, no spread in x".into()));
    }
    let slope = sxy / sxx;
    if slope <= 0.0 {
        return Err(Error::InvalidFit(format!(
            "non-increasing trend (slope {slope:.3e}), data does not follow the model"
        )));
    }
    let intercept = mean_y - slope * mean_x;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (intercept + slope * x)).powi(2))
        .sum();

    Ok(ExponentFit {
        k: 1.0 / slope,
        c: intercept.exp(),
        residual: (sse / n).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(size: u64, c: f64, k: f64) -> f64 {
        let n = size as f64;
        c * n.sqrt() * n.powf(n.log2() / k)
    }

    #[test]
    fn exact_model_points_round_trip() {
        let points: Vec<(u64, f64)> = [4u64, 9, 20, 50, 120]
            .iter()
            .map(|&s| (s, model(s, 1.5, 2.0)))
            .collect();
        let fit = fit_exponent(&points).unwrap();
        assert!((fit.k - 2.0).abs() < 1e-6, "k = {}", fit.k);
        assert!((fit.c - 1.5).abs() < 1e-6, "c = {}", fit.c);
        assert!(fit.residual < 1e-9);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(fit_exponent(&[(3, 1.0), (6, 2.0)]).is_err());
        assert!(fit_exponent(&[(3, 1.0), (3, 2.0), (6, 3.0)]).is_err());
        assert!(fit_exponent(&[(3, 1.0), (6, 0.0), (9, 3.0)]).is_err());
        // decreasing costs cannot follow the growth model
        assert!(fit_exponent(&[(3, 100.0), (6, 10.0), (12, 1.0), (24, 0.1)]).is_err());
    }
}
