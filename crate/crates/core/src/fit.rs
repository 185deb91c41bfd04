//! Exponential decay fits `C·e^{−αn}` by ordinary least squares on `ln y`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpFit {
    #[serde(rename = "C")]
    pub c: f64,
    /// Decay rate per qubit; negative for growing data.
    pub alpha: f64,
    /// Coefficient of determination of the log-linear regression.
    #[serde(rename = "r2")]
    pub r_squared: f64,
}

impl ExpFit {
    pub fn eval(&self, n: f64) -> f64 {
        self.c * (-self.alpha * n).exp()
    }
}

/// Fits `value ≈ C·e^{−α·n}` through `(n, value)` pairs.
pub fn fit_exponential(points: &[(f64, f64)]) -> Result<ExpFit> {
    if points.len() < 2 {
        return Err(Error::Argument(format!(
            "exponential fit needs at least 2 points, got {}",
            points.len()
        )));
    }
    if let Some(&(n, v)) = points
        .iter()
        .find(|(_, v)| v.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) || !v.is_finite())
    {
        return Err(Error::Domain(format!(
            "exponential fit needs strictly positive finite values; got {v} at n={n}"
        )));
    }
    let count = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = points.iter().map(|p| p.1.ln()).sum::<f64>() / count;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, v) in points {
        let dx = x - mean_x;
        let dy = v.ln() - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::Argument(
            "exponential fit needs at least two distinct n".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    };
    Ok(ExpFit {
        c: intercept.exp(),
        alpha: -slope,
        r_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample(c: f64, alpha: f64) -> Vec<(f64, f64)> {
        (1..=6)
            .map(|n| (n as f64, c * (-alpha * n as f64).exp()))
            .collect()
    }

    #[test]
    fn exact_recovery() {
        let fit = fit_exponential(&sample(3.0, 0.5)).unwrap();
        assert!((fit.c - 3.0).abs() < 1e-9);
        assert!((fit.alpha - 0.5).abs() < 1e-9);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn flat_data() {
        let pts: Vec<_> = (1..=5).map(|n| (n as f64, 0.7)).collect();
        let fit = fit_exponential(&pts).unwrap();
        assert!(fit.alpha.abs() < 1e-12);
        assert!((fit.c - 0.7).abs() < 1e-12);
        assert_eq!(fit.r_squared, 1.0);
    }

    #[test]
    fn scaling_moves_only_prefactor() {
        let base = fit_exponential(&sample(0.2, 0.8)).unwrap();
        let scaled: Vec<_> = sample(0.2, 0.8)
            .into_iter()
            .map(|(n, v)| (n, 7.5 * v))
            .collect();
        let fit = fit_exponential(&scaled).unwrap();
        assert!((fit.c / base.c - 7.5).abs() < 1e-9);
        assert!((fit.alpha - base.alpha).abs() < 1e-9);
    }

    #[test]
    fn noisy_data_has_r2_below_one() {
        let pts = [(1.0, 1.0), (2.0, 0.3), (3.0, 0.5), (4.0, 0.05)];
        let fit = fit_exponential(&pts).unwrap();
        assert!(fit.r_squared > 0.0 && fit.r_squared < 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            fit_exponential(&[(1.0, 1.0)]),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            fit_exponential(&[(1.0, 1.0), (2.0, 0.0)]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            fit_exponential(&[(1.0, 1.0), (2.0, -0.5)]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            fit_exponential(&[(2.0, 1.0), (2.0, 0.5)]),
            Err(Error::Argument(_))
        ));
    }

    proptest! {
        #[test]
        fn recovers_generating_parameters(log_c in (1e-6f64).ln()..(10.0f64).ln(), alpha in 0.0..2.0f64) {
            let c = log_c.exp();
            let fit = fit_exponential(&sample(c, alpha)).unwrap();
            prop_assert!(((fit.c - c) / c).abs() < 1e-9);
            if alpha > 0.0 {
                prop_assert!(((fit.alpha - alpha) / alpha).abs() < 1e-9 || (fit.alpha - alpha).abs() < 1e-12);
            }
        }
    }
}
