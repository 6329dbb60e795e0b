//! Stochastic system model: active sets, per-user CFOs, Rayleigh channels,
//! noise and the received 2×M pilot.
//!
//! With the common pilot `s = [1, 1]ᵀ` and perfect power control the received
//! pilot is
//!
//! ```text
//! Y = Σ_{n ∈ A} τ(ω_n) h_nᵀ + Z,     τ(ω) = [1, e^{jω}]ᵀ
//! ```
//!
//! with `h_n ~ CN(0, I_M)` and i.i.d. `CN(0, σ_z²)` noise entries.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{AueError, Result};

/// Shape of the per-user angular CFO distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CfoKind {
    /// ω uniform on `[-2π ε_max, 2π ε_max]`.
    Uniform,
    /// ω Gaussian with zero mean and standard deviation `2π ε_max / 3`, not truncated.
    Gaussian,
    /// No offset at all.
    None,
}

impl fmt::Display for CfoKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CfoKind::Uniform => "uniform",
            CfoKind::Gaussian => "gaussian",
            CfoKind::None => "none",
        })
    }
}

impl FromStr for CfoKind {
    type Err = AueError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "uniform" => Ok(CfoKind::Uniform),
            "gaussian" | "normal" => Ok(CfoKind::Gaussian),
            "none" => Ok(CfoKind::None),
            other => Err(AueError::config(format!("unknown CFO distribution '{other}'"))),
        }
    }
}

/// Distribution of the angular CFO `ω = 2π ε`, parameterized by the maximum
/// normalized offset `ε_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CfoModel {
    kind: CfoKind,
    epsilon_max: f64,
}

impl CfoModel {
    pub fn new(kind: CfoKind, epsilon_max: f64) -> Result<Self> {
        if !epsilon_max.is_finite() || epsilon_max < 0.0 {
            return Err(AueError::config(format!(
                "epsilon_max must be finite and >= 0, got {epsilon_max}"
            )));
        }
        Ok(Self { kind, epsilon_max })
    }

    pub fn uniform(epsilon_max: f64) -> Result<Self> {
        Self::new(CfoKind::Uniform, epsilon_max)
    }

    pub fn gaussian(epsilon_max: f64) -> Result<Self> {
        Self::new(CfoKind::Gaussian, epsilon_max)
    }

    pub fn none() -> Self {
        Self {
            kind: CfoKind::None,
            epsilon_max: 0.0,
        }
    }

    pub fn kind(&self) -> CfoKind {
        self.kind
    }

    pub fn epsilon_max(&self) -> f64 {
        self.epsilon_max
    }

    /// `2π ε_max`, the half-width of the uniform support.
    pub fn angular_bound(&self) -> f64 {
        2.0 * PI * self.epsilon_max
    }

    /// True when every draw is exactly zero.
    pub fn is_degenerate(&self) -> bool {
        self.kind == CfoKind::None || self.epsilon_max == 0.0
    }

    pub fn with_epsilon_max(self, epsilon_max: f64) -> Result<Self> {
        Self::new(self.kind, epsilon_max)
    }

    /// Draws one angular offset ω.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if self.is_degenerate() {
            return 0.0;
        }
        let bound = self.angular_bound();
        match self.kind {
            CfoKind::Uniform => (2.0 * rng.random::<f64>() - 1.0) * bound,
            CfoKind::Gaussian => {
                let z: f64 = rng.sample(StandardNormal);
                z * bound / 3.0
            }
            CfoKind::None => 0.0,
        }
    }
}

/// Draws `k` i.i.d. angular offsets from `cfo`.
pub fn draw_cfos<R: Rng + ?Sized>(cfo: &CfoModel, k: usize, rng: &mut R) -> Vec<f64> {
    (0..k).map(|_| cfo.sample(rng)).collect()
}

/// Per-symbol phase rotation `[1, e^{jω}]`.
pub fn phase_rotation(omega: f64) -> [Complex64; 2] {
    [Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, omega)]
}

/// Draws one `CN(0, variance)` sample.
#[inline]
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let scale = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * scale, im * scale)
}

/// Static parameters of one simulated system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    /// Number of potential users `N`.
    pub n_potential: usize,
    /// Number of active users `K`.
    pub k_active: usize,
    /// Number of base station antennas `M`.
    pub m_antennas: usize,
    /// Noise variance `σ_z²` (the SNR is `1/σ_z²`).
    pub noise_variance: f64,
    pub cfo: CfoModel,
}

impl Default for SystemConfig {
    /// N = 100, K = 25, M = 32, ε_max = 0.15 uniform, SNR = 10 dB.
    fn default() -> Self {
        Self {
            n_potential: 100,
            k_active: 25,
            m_antennas: 32,
            noise_variance: 0.1,
            cfo: CfoModel {
                kind: CfoKind::Uniform,
                epsilon_max: 0.15,
            },
        }
    }
}

impl SystemConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_potential == 0 {
            return Err(AueError::config("number of potential users N must be >= 1"));
        }
        if self.k_active > self.n_potential {
            return Err(AueError::config(format!(
                "active users K = {} exceeds potential users N = {}",
                self.k_active, self.n_potential
            )));
        }
        if self.m_antennas == 0 {
            return Err(AueError::config("number of antennas M must be >= 1"));
        }
        if !(self.noise_variance.is_finite() && self.noise_variance > 0.0) {
            return Err(AueError::config(format!(
                "noise variance must be finite and > 0, got {}",
                self.noise_variance
            )));
        }
        Ok(())
    }

    /// Sets `σ_z² = 10^(-snr_db / 10)`.
    pub fn with_snr_db(mut self, snr_db: f64) -> Result<Self> {
        if !snr_db.is_finite() {
            return Err(AueError::config(format!("SNR must be finite, got {snr_db} dB")));
        }
        self.noise_variance = snr_db_to_noise_variance(snr_db);
        Ok(self)
    }

    pub fn snr_db(&self) -> f64 {
        -10.0 * self.noise_variance.log10()
    }
}

pub fn snr_db_to_noise_variance(snr_db: f64) -> f64 {
    10f64.powf(-snr_db / 10.0)
}

/// The received pilot `Y`, stored as its two rows `y₁` and `y₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReceivedPilot {
    y1: Vec<Complex64>,
    y2: Vec<Complex64>,
}

impl ReceivedPilot {
    pub fn new(y1: Vec<Complex64>, y2: Vec<Complex64>) -> Result<Self> {
        if y1.is_empty() {
            return Err(AueError::config("received pilot rows must not be empty"));
        }
        if y1.len() != y2.len() {
            return Err(AueError::config(format!(
                "received pilot rows differ in length ({} vs {})",
                y1.len(),
                y2.len()
            )));
        }
        if y1
            .iter()
            .chain(&y2)
            .any(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(AueError::config("received pilot contains non-finite entries"));
        }
        Ok(Self { y1, y2 })
    }

    pub fn first_row(&self) -> &[Complex64] {
        &self.y1
    }

    pub fn second_row(&self) -> &[Complex64] {
        &self.y2
    }

    pub fn antennas(&self) -> usize {
        self.y1.len()
    }
}

/// Whether to add the noise matrix `Z` when generating a pilot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Noise {
    On,
    /// Zeroes `Z`; only meant for tests that need the exact signal part.
    Off,
}

/// One draw of the system: who is active, their offsets, and what was received.
#[derive(Debug, Clone)]
pub struct Realization {
    /// Active user indices in `0..N`, sorted.
    pub active: Vec<usize>,
    /// Angular CFO of each active user, in the same order as `active`.
    pub omegas: Vec<f64>,
    pub pilot: ReceivedPilot,
}

/// Draws the active set, the CFOs, the channels and the noise, and returns
/// everything.
///
/// The draw order (active set, then per user its ω followed by its `M`
/// channel taps, then noise row 1, noise row 2) is part of the
/// reproducibility contract.
pub fn realize<R: Rng + ?Sized>(cfg: &SystemConfig, rng: &mut R, noise: Noise) -> Result<Realization> {
    cfg.validate()?;
    let m = cfg.m_antennas;

    let mut active = rand::seq::index::sample(rng, cfg.n_potential, cfg.k_active).into_vec();
    active.sort_unstable();

    let mut y1 = vec![Complex64::new(0.0, 0.0); m];
    let mut y2 = vec![Complex64::new(0.0, 0.0); m];
    let mut omegas = Vec::with_capacity(cfg.k_active);
    for _ in &active {
        let omega = cfg.cfo.sample(rng);
        omegas.push(omega);
        let [_, rot] = phase_rotation(omega);
        for (a, b) in y1.iter_mut().zip(y2.iter_mut()) {
            let h = complex_gaussian(rng, 1.0);
            *a += h;
            *b += rot * h;
        }
    }

    if noise == Noise::On {
        for v in y1.iter_mut().chain(y2.iter_mut()) {
            *v += complex_gaussian(rng, cfg.noise_variance);
        }
    }

    Ok(Realization {
        active,
        omegas,
        pilot: ReceivedPilot { y1, y2 },
    })
}

/// Generates the received pilot `Y` for one coherence interval.
pub fn generate_received<R: Rng + ?Sized>(cfg: &SystemConfig, rng: &mut R) -> Result<ReceivedPilot> {
    realize(cfg, rng, Noise::On).map(|r| r.pilot)
}
