//! Bernoulli shot-noise model for estimating a kernel entry on hardware.
//!
//! The estimator K̃ is the success fraction of R runs of the kernel-estimating
//! circuit, success meaning the all-zeros outcome. Its spread is
//! `sqrt(K(1−K)/R)`. Requiring the population spread of kernel values to
//! exceed that noise by a factor γ gives the shot count
//!
//! ```text
//! R(n) = γ² · C_μ/C_σ² · e^{(2α_σ − α_μ)n} · [1 − C_μ e^{−α_μ n}]
//! ```
//!
//! with `C_μ e^{−α_μ n}` and `C_σ e^{−α_σ n}` the fitted mean and spread.

use rand::distributions::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::ExpFit;

/// Precision ratio γ used when none is given.
pub const DEFAULT_GAMMA: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShotPlan {
    /// Ratio of kernel-value spread to single-entry estimator spread.
    pub gamma: f64,
    pub mu_fit: ExpFit,
    pub sigma_fit: ExpFit,
}

impl ShotPlan {
    pub fn new(gamma: f64, mu_fit: ExpFit, sigma_fit: ExpFit) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::Argument(format!(
                "precision ratio must be positive, got {gamma}"
            )));
        }
        if !(mu_fit.c > 0.0 && sigma_fit.c > 0.0) {
            return Err(Error::Argument(format!(
                "fit prefactors must be positive (C_mu={}, C_sigma={})",
                mu_fit.c, sigma_fit.c
            )));
        }
        Ok(Self {
            gamma,
            mu_fit,
            sigma_fit,
        })
    }

    /// Modeled mean kernel entry C_μ e^{−α_μ n}.
    pub fn modeled_mean(&self, n: usize) -> f64 {
        self.mu_fit.eval(n as f64)
    }

    /// Modeled spread C_σ e^{−α_σ n}.
    pub fn modeled_std(&self, n: usize) -> f64 {
        self.sigma_fit.eval(n as f64)
    }
}

fn check_probability(k: f64) -> Result<()> {
    if (0.0..=1.0).contains(&k) {
        Ok(())
    } else {
        Err(Error::Domain(format!("kernel value {k} outside [0, 1]")))
    }
}

fn check_repetitions(r: f64) -> Result<()> {
    if r >= 1.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Argument(format!(
            "repetition count must be >= 1, got {r}"
        )))
    }
}

/// Standard deviation `sqrt(k(1−k)/r)` of the success fraction over `r` shots.
///
/// `r` is real so the continuous shot budget from [`required_shots`] can be
/// fed back in without rounding.
pub fn estimator_std(k: f64, r: f64) -> Result<f64> {
    check_probability(k)?;
    check_repetitions(r)?;
    Ok((k * (1.0 - k) / r).sqrt())
}

/// Shot budget R(n) for the fitted decay constants in `plan`.
pub fn required_shots(n: usize, plan: &ShotPlan) -> Result<f64> {
    if n == 0 {
        return Err(Error::Argument("required shots need n >= 1".into()));
    }
    let mu = plan.modeled_mean(n);
    if mu > 1.0 {
        return Err(Error::Domain(format!(
            "modeled mean kernel value {mu} exceeds 1 at n={n}; the fit is invalid here"
        )));
    }
    let (c_mu, a_mu) = (plan.mu_fit.c, plan.mu_fit.alpha);
    let (c_sigma, a_sigma) = (plan.sigma_fit.c, plan.sigma_fit.alpha);
    let nf = n as f64;
    Ok(plan.gamma.powi(2)
        * (c_mu / (c_sigma * c_sigma))
        * ((2.0 * a_sigma - a_mu) * nf).exp()
        * (1.0 - mu))
}

/// Success fraction of `r` Bernoulli(`k`) draws from a ChaCha8 stream seeded
/// with `seed`.
pub fn sample_kernel_estimate(k: f64, r: u64, seed: u64) -> Result<f64> {
    check_probability(k)?;
    if r == 0 {
        return Err(Error::Argument(
            "repetition count must be >= 1, got 0".into(),
        ));
    }
    let coin = Bernoulli::new(k).map_err(|e| Error::Domain(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hits = (0..r).filter(|_| coin.sample(&mut rng)).count();
    Ok(hits as f64 / r as f64)
}

/// `trials` independent estimates, trial `i` seeded with `base_seed + i`.
pub fn sample_many(k: f64, r: u64, trials: u64, base_seed: u64) -> Result<Vec<f64>> {
    (0..trials)
        .into_par_iter()
        .map(|i| sample_kernel_estimate(k, r, base_seed.wrapping_add(i)))
        .collect()
}
