//! Closed-form population quantities.
//!
//! Conditioned on the offsets `ω_n`, every antenna column `y_m` is
//! `CN(0, Σ̃)` with
//!
//! ```text
//! Σ̃ = [ K + σ_z²        Σ e^{-jω_n} ]
//!     [ Σ e^{jω_n}      K + σ_z²    ]
//! ```
//!
//! whose eigenvalues are `K + σ_z² ± γ`, `γ = |Σ e^{jω_n}|`. Averaging over
//! the offsets as well gives the Eig-sum NRMSE (ignoring rounding)
//!
//! ```text
//! NRMSE = (1/K) √( (K + K(K−1)α² + (K + σ_z²)²) / (2M) )
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::covariance::{EigenPair, SampleCovariance};
use crate::error::{AueError, Result};

/// Absolute slack when checking `γ ≤ K`.
const GAMMA_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PopulationSpec {
    pub k_active: usize,
    pub noise_variance: f64,
    /// Characteristic function `E[e^{jω}]` of the CFO.
    pub alpha: f64,
}

impl PopulationSpec {
    pub fn new(k_active: usize, noise_variance: f64, alpha: f64) -> Result<Self> {
        if !(noise_variance.is_finite() && noise_variance > 0.0) {
            return Err(AueError::config(format!(
                "noise variance must be > 0, got {noise_variance}"
            )));
        }
        if !(alpha.is_finite() && alpha.abs() <= 1.0) {
            return Err(AueError::config(format!(
                "alpha must lie in [-1, 1], got {alpha}"
            )));
        }
        Ok(Self {
            k_active,
            noise_variance,
            alpha,
        })
    }

    /// `K + σ_z²`, the per-antenna received power on each pilot symbol.
    pub fn row_power(&self) -> f64 {
        self.k_active as f64 + self.noise_variance
    }

    /// `E[|Σ e^{jω_n}|²] = K + K(K−1)α²`.
    pub fn expected_gamma_sq(&self) -> f64 {
        let k = self.k_active as f64;
        k + k * (k - 1.0) * self.alpha * self.alpha
    }
}

/// `γ = |Σ_n e^{jω_n}|`.
pub fn gamma_exact(omegas: &[f64]) -> f64 {
    omegas
        .iter()
        .map(|&w| Complex64::from_polar(1.0, w))
        .sum::<Complex64>()
        .norm()
}

/// `Σ̃` for a fixed set of offsets, in the same `(R₁, R₂, R̃)` layout as a
/// sample covariance.
pub fn population_covariance(omegas: &[f64], noise_variance: f64) -> Result<SampleCovariance> {
    let diag = omegas.len() as f64 + noise_variance;
    let off = omegas
        .iter()
        .map(|&w| Complex64::from_polar(1.0, -w))
        .sum::<Complex64>();
    SampleCovariance::new(diag, diag, off)
}

/// `(K + σ_z² + γ, K + σ_z² − γ)`.
pub fn population_eigenvalues(spec: &PopulationSpec, gamma: f64) -> Result<EigenPair> {
    let k = spec.k_active as f64;
    if !gamma.is_finite() || gamma < 0.0 || gamma > k + GAMMA_TOLERANCE {
        return Err(AueError::config(format!(
            "gamma must lie in [0, K = {k}], got {gamma}"
        )));
    }
    Ok(EigenPair {
        lambda_max: spec.row_power() + gamma,
        lambda_min: spec.row_power() - gamma,
    })
}

/// Eig-sum NRMSE without the rounding step.
pub fn nrmse_eig_sum_theory(k: usize, m: usize, sigma2: f64, alpha: f64) -> Result<f64> {
    if k == 0 {
        return Err(AueError::config("NRMSE is undefined for K = 0"));
    }
    if m == 0 {
        return Err(AueError::config("number of antennas M must be >= 1"));
    }
    let spec = PopulationSpec::new(k, sigma2, alpha)?;
    let mse = (spec.expected_gamma_sq() + spec.row_power().powi(2)) / (2.0 * m as f64);
    Ok(mse.sqrt() / k as f64)
}

/// First and second moments of the covariance entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovarianceMoments {
    /// `E[R₁] = E[R₂]`
    pub mean_r1: f64,
    /// `E[R₁²] = E[R₂²]`
    pub mean_r1_sq: f64,
    /// `E[R₁ R₂]`
    pub mean_r1_r2: f64,
}

/// `R₁` and `R₂` are Erlang with shape `M` and mean `K + σ_z²`; their cross
/// moment picks up `E|Σ e^{jω}|² / M`.
pub fn moment_oracles(spec: &PopulationSpec, m: usize) -> Result<CovarianceMoments> {
    if m == 0 {
        return Err(AueError::config("number of antennas M must be >= 1"));
    }
    let m = m as f64;
    let p = spec.row_power();
    Ok(CovarianceMoments {
        mean_r1: p,
        mean_r1_sq: (1.0 + 1.0 / m) * p * p,
        mean_r1_r2: spec.expected_gamma_sq() / m + p * p,
    })
}
