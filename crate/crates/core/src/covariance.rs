//! The 2×2 sample covariance `R = Y Yᴴ / M` and its closed-form eigenvalues.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{AueError, Result};
use crate::model::ReceivedPilot;

/// Relative slack on `r1·r2 − |r12|² ≥ 0` to absorb floating-point rounding.
const PSD_TOLERANCE: f64 = 1e-12;

/// Hermitian PSD 2×2 matrix
///
/// ```text
/// R = [ r1        r12 ]
///     [ conj(r12) r2  ]
/// ```
///
/// with `r1 = ‖y₁‖²/M`, `r2 = ‖y₂‖²/M` and `r12 = y₁ y₂ᴴ / M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleCovariance {
    r1: f64,
    r2: f64,
    r12: Complex64,
}

impl SampleCovariance {
    pub fn new(r1: f64, r2: f64, r12: Complex64) -> Result<Self> {
        if ![r1, r2, r12.re, r12.im].iter().all(|v| v.is_finite()) {
            return Err(AueError::config("covariance entries must be finite"));
        }
        if r1 < 0.0 || r2 < 0.0 {
            return Err(AueError::config(format!(
                "covariance diagonal must be >= 0, got ({r1}, {r2})"
            )));
        }
        let cov = Self { r1, r2, r12 };
        let tol = PSD_TOLERANCE * (r1 * r2).max(1.0);
        if cov.determinant() < -tol {
            return Err(AueError::config(format!(
                "covariance is not positive semidefinite: r1·r2 − |r12|² = {}",
                cov.determinant()
            )));
        }
        Ok(cov)
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn r12(&self) -> Complex64 {
        self.r12
    }

    pub fn trace(&self) -> f64 {
        self.r1 + self.r2
    }

    pub fn determinant(&self) -> f64 {
        self.r1 * self.r2 - self.r12.norm_sqr()
    }

    /// `√((r1 − r2)² + 4|r12|²)`, the gap between the two eigenvalues.
    pub fn eigen_gap(&self) -> f64 {
        let d = self.r1 - self.r2;
        (d * d + 4.0 * self.r12.norm_sqr()).max(0.0).sqrt()
    }

    pub fn eigenvalues(&self) -> EigenPair {
        eigenvalues_2x2(self)
    }

    /// Conjugation by `diag(1, e^{-jφ})`, which maps `r12 → e^{jφ} r12`.
    pub fn rotate_phase(&self, phi: f64) -> Self {
        Self {
            r12: self.r12 * Complex64::from_polar(1.0, phi),
            ..*self
        }
    }
}

/// Eigenvalues of a 2×2 Hermitian matrix, largest first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub lambda_max: f64,
    pub lambda_min: f64,
}

impl EigenPair {
    pub fn sum(&self) -> f64 {
        self.lambda_max + self.lambda_min
    }

    pub fn gap(&self) -> f64 {
        self.lambda_max - self.lambda_min
    }
}

/// Computes `R = Y Yᴴ / M`.
pub fn sample_covariance(y: &ReceivedPilot) -> SampleCovariance {
    let (y1, y2) = (y.first_row(), y.second_row());
    let m = y.antennas() as f64;
    let mut r1 = 0.0;
    let mut r2 = 0.0;
    let mut r12 = Complex64::new(0.0, 0.0);
    for (a, b) in y1.iter().zip(y2) {
        r1 += a.norm_sqr();
        r2 += b.norm_sqr();
        r12 += a * b.conj();
    }
    SampleCovariance {
        r1: r1 / m,
        r2: r2 / m,
        r12: r12 / m,
    }
}

/// `λ = (r1 + r2)/2 ± ½√((r1 − r2)² + 4|r12|²)`.
pub fn eigenvalues_2x2(r: &SampleCovariance) -> EigenPair {
    let half_trace = 0.5 * r.trace();
    let half_gap = 0.5 * r.eigen_gap();
    EigenPair {
        lambda_max: half_trace + half_gap,
        lambda_min: half_trace - half_gap,
    }
}
