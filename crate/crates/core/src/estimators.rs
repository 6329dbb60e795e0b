//! The four active-user-count estimators and their helpers.
//!
//! All schemes consume only the covariance entries `(R₁, R₂, R̃)`:
//!
//! | scheme     | statistic                                   | multiplications |
//! |------------|---------------------------------------------|-----------------|
//! | Eig-sum    | `(R₁ + R₂)/2 − σ_z²`                        | `2M + 3`        |
//! | Eig-diff   | `√((R₁ − R₂)² + 4|R̃|²) / (2|α|)`            | `3M + 7`        |
//! | Orthogonal | `Re R̃`                                      | `M + 1`         |
//! | MLE        | `(R₁ + R₂ + 2 Re R̃)/4 − σ_z²/2`             | `3M + 5`        |
//!
//! where `α = E[e^{jω}]` is the characteristic function of the CFO at 1.
//!
//! Every estimate is rounded half away from zero and then clamped to `[0, N]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::covariance::SampleCovariance;
use crate::error::{AueError, Result};
use crate::model::{CfoKind, CfoModel, SystemConfig};

/// Eig-diff refuses to run when `|α|` is at or below this value.
pub const ALPHA_MIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Scheme {
    #[serde(rename = "eig-sum")]
    EigSum,
    #[serde(rename = "eig-diff")]
    EigDiff,
    #[serde(rename = "orthogonal")]
    Orthogonal,
    #[serde(rename = "mle")]
    Mle,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::EigSum, Scheme::EigDiff, Scheme::Orthogonal, Scheme::Mle];

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::EigSum => "eig-sum",
            Scheme::EigDiff => "eig-diff",
            Scheme::Orthogonal => "orthogonal",
            Scheme::Mle => "mle",
        }
    }

    /// Whether the scheme needs the noise variance.
    pub fn needs_noise_variance(&self) -> bool {
        matches!(self, Scheme::EigSum | Scheme::Mle)
    }

    /// The real-valued statistic before rounding and clamping.
    pub fn statistic(&self, r: &SampleCovariance, ctx: &EstimatorContext) -> Result<f64> {
        Ok(match self {
            Scheme::EigSum => 0.5 * r.trace() - ctx.noise_variance,
            Scheme::EigDiff => r.eigen_gap() / (2.0 * ctx.checked_alpha()?),
            Scheme::Orthogonal => r.r12().re,
            Scheme::Mle => 0.25 * (r.trace() + 2.0 * r.r12().re) - 0.5 * ctx.noise_variance,
        })
    }

    pub fn estimate(&self, r: &SampleCovariance, ctx: &EstimatorContext) -> Result<usize> {
        Ok(round_and_clamp(self.statistic(r, ctx)?, ctx.n_potential))
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = AueError;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .trim()
            .to_ascii_lowercase()
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .collect();
        match key.as_str() {
            "eigsum" => Ok(Scheme::EigSum),
            "eigdiff" => Ok(Scheme::EigDiff),
            "orthogonal" | "orth" => Ok(Scheme::Orthogonal),
            "mle" => Ok(Scheme::Mle),
            _ => Err(AueError::config(format!("unknown scheme '{s}'"))),
        }
    }
}

/// Side information available to the estimators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimatorContext {
    /// `σ_z²`, used by Eig-sum and MLE.
    pub noise_variance: f64,
    /// `α = E[e^{jω}]`, used by Eig-diff.
    pub alpha: f64,
    /// `N`, the upper clamp bound.
    pub n_potential: usize,
}

impl EstimatorContext {
    pub fn new(noise_variance: f64, alpha: f64, n_potential: usize) -> Result<Self> {
        if !(noise_variance.is_finite() && noise_variance > 0.0) {
            return Err(AueError::config(format!(
                "noise variance must be > 0, got {noise_variance}"
            )));
        }
        if !(alpha.is_finite() && alpha.abs() <= 1.0) {
            return Err(AueError::config(format!(
                "characteristic function must lie in [-1, 1], got {alpha}"
            )));
        }
        if n_potential == 0 {
            return Err(AueError::config("N must be >= 1"));
        }
        Ok(Self {
            noise_variance,
            alpha,
            n_potential,
        })
    }

    /// Context matching a simulated system: true `σ_z²` and the CFO
    /// distribution's characteristic function.
    pub fn for_system(cfg: &SystemConfig) -> Result<Self> {
        cfg.validate()?;
        Self::new(
            cfg.noise_variance,
            characteristic_function(&cfg.cfo),
            cfg.n_potential,
        )
    }

    fn checked_alpha(&self) -> Result<f64> {
        let a = self.alpha.abs();
        if a <= ALPHA_MIN {
            return Err(AueError::AlphaTooSmall {
                alpha: a,
                min: ALPHA_MIN,
            });
        }
        Ok(a)
    }
}

/// `E[e^{jω}]`, real because both CFO distributions are symmetric.
///
/// Uniform on `[-a, a]` gives `sin(a)/a`; Gaussian with standard deviation
/// `σ` gives `exp(-σ²/2)`.
pub fn characteristic_function(cfo: &CfoModel) -> f64 {
    if cfo.is_degenerate() {
        return 1.0;
    }
    let a = cfo.angular_bound();
    match cfo.kind() {
        CfoKind::Uniform => a.sin() / a,
        CfoKind::Gaussian => {
            let sigma = a / 3.0;
            (-0.5 * sigma * sigma).exp()
        }
        CfoKind::None => 1.0,
    }
}

/// Rounds half away from zero and clamps to `[0, n]`.
pub fn round_and_clamp(x: f64, n: usize) -> usize {
    let r = x.round();
    if r <= 0.0 || r.is_nan() {
        0
    } else if r >= n as f64 {
        n
    } else {
        r as usize
    }
}

pub fn eig_sum(r: &SampleCovariance, ctx: &EstimatorContext) -> usize {
    // Eig-sum cannot fail
    Scheme::EigSum.estimate(r, ctx).unwrap_or(0)
}

pub fn eig_diff(r: &SampleCovariance, ctx: &EstimatorContext) -> Result<usize> {
    Scheme::EigDiff.estimate(r, ctx)
}

pub fn orthogonal(r: &SampleCovariance, ctx: &EstimatorContext) -> usize {
    Scheme::Orthogonal.estimate(r, ctx).unwrap_or(0)
}

pub fn mle(r: &SampleCovariance, ctx: &EstimatorContext) -> usize {
    Scheme::Mle.estimate(r, ctx).unwrap_or(0)
}

/// Real multiplications needed per estimate, counting the three `M`-length
/// inner products that form `R` and skipping precomputable constants.
pub fn multiplication_count(scheme: Scheme, m: usize) -> usize {
    match scheme {
        Scheme::EigSum => 2 * m + 3,
        Scheme::EigDiff => 3 * m + 7,
        Scheme::Orthogonal => m + 1,
        Scheme::Mle => 3 * m + 5,
    }
}
