//! Seeded Monte Carlo runner.
//!
//! Every trial owns a ChaCha8 stream selected by `(point seed, trial index)`,
//! so a trial's draws do not depend on which worker runs it. Trials are
//! grouped into fixed-size blocks; each block is reduced sequentially and the
//! block partials are combined in block order. Results are therefore
//! bit-identical for any number of workers.
//!
//! Within a trial the covariance is computed once and every requested scheme
//! is evaluated on it.

mod output;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covariance::{sample_covariance, SampleCovariance};
use crate::error::{AueError, Result};
use crate::estimators::{EstimatorContext, Scheme};
use crate::model::{generate_received, snr_db_to_noise_variance, SystemConfig};
use crate::theory::nrmse_eig_sum_theory;

pub use output::{format_sig, write_csv, write_json, CSV_HEADER};

/// Trials per reduction block. Part of the reproducibility contract.
pub const BLOCK_TRIALS: usize = 256;

pub const DEFAULT_TRIALS: usize = 20_000;

/// How trials are spread over threads. Never affects the numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    Sequential,
    Threads(usize),
    /// The global rayon pool.
    #[default]
    Auto,
}

/// `(1/K) √(mean (K̂ − K)²)`.
pub fn nrmse(estimates: &[usize], k_true: usize) -> Result<f64> {
    if estimates.is_empty() {
        return Err(AueError::config("NRMSE needs at least one estimate"));
    }
    if k_true == 0 {
        return Err(AueError::config("NRMSE is undefined for K = 0"));
    }
    let sum_sq: u64 = estimates.iter().map(|&e| sq_error(e, k_true)).sum();
    Ok(nrmse_from_sum(sum_sq as f64, estimates.len(), k_true))
}

fn sq_error(estimate: usize, k: usize) -> u64 {
    let d = estimate.abs_diff(k) as u64;
    d * d
}

fn nrmse_from_sum(sum_sq: f64, n: usize, k: usize) -> f64 {
    (sum_sq / n as f64).sqrt() / k as f64
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the `index`-th point of a sweep.
pub fn point_seed(master_seed: u64, index: usize) -> u64 {
    mix64(master_seed ^ mix64((index as u64).wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}

/// The random stream owned by one trial.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Generates trial `trial` of a point and returns its sample covariance.
pub fn trial_covariance(cfg: &SystemConfig, seed: u64, trial: usize) -> Result<SampleCovariance> {
    let y = generate_received(cfg, &mut trial_rng(seed, trial))?;
    Ok(sample_covariance(&y))
}

/// Runs `block` over `0..trials` in blocks and folds the partials in order.
fn blocked_reduce<T, F>(trials: usize, par: Parallelism, block: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(std::ops::Range<usize>) -> Result<T> + Sync + Send,
{
    let n_blocks = trials.div_ceil(BLOCK_TRIALS);
    let range = |b: usize| b * BLOCK_TRIALS..((b + 1) * BLOCK_TRIALS).min(trials);
    match par {
        Parallelism::Sequential => (0..n_blocks).map(|b| block(range(b))).collect(),
        Parallelism::Auto => (0..n_blocks).into_par_iter().map(|b| block(range(b))).collect(),
        Parallelism::Threads(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| AueError::config(format!("cannot build thread pool: {e}")))?;
            pool.install(|| (0..n_blocks).into_par_iter().map(|b| block(range(b))).collect())
        }
    }
}

/// Error statistics of one scheme at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeStats {
    pub scheme: Scheme,
    pub trials: usize,
    /// Σ (K̂ − K)²
    pub sum_sq_error: u64,
    /// Σ (K̂ − K)⁴
    pub sum_quartic_error: u128,
    /// Σ (x − K)² for the statistic x before rounding and clamping.
    pub sum_sq_statistic_error: f64,
}

impl SchemeStats {
    fn empty(scheme: Scheme) -> Self {
        Self {
            scheme,
            trials: 0,
            sum_sq_error: 0,
            sum_quartic_error: 0,
            sum_sq_statistic_error: 0.0,
        }
    }

    fn merge(&mut self, other: &SchemeStats) {
        self.trials += other.trials;
        self.sum_sq_error += other.sum_sq_error;
        self.sum_quartic_error += other.sum_quartic_error;
        self.sum_sq_statistic_error += other.sum_sq_statistic_error;
    }

    pub fn mse(&self) -> f64 {
        self.sum_sq_error as f64 / self.trials as f64
    }

    pub fn nrmse(&self, k: usize) -> f64 {
        nrmse_from_sum(self.sum_sq_error as f64, self.trials, k)
    }

    /// NRMSE of the unrounded statistic, the quantity the closed-form theory describes.
    pub fn nrmse_unrounded(&self, k: usize) -> f64 {
        nrmse_from_sum(self.sum_sq_statistic_error, self.trials, k)
    }

    /// Delta-method standard error of [`SchemeStats::nrmse`].
    pub fn nrmse_standard_error(&self, k: usize) -> f64 {
        let n = self.trials as f64;
        let mse = self.mse();
        if mse == 0.0 || self.trials < 2 {
            return 0.0;
        }
        let var_sq = (self.sum_quartic_error as f64 / n - mse * mse) * n / (n - 1.0);
        let se_mse = (var_sq.max(0.0) / n).sqrt();
        se_mse / (2.0 * mse.sqrt() * k as f64)
    }
}

/// Outcome of [`run_point`].
#[derive(Debug, Clone, PartialEq)]
pub struct PointOutcome {
    pub config: SystemConfig,
    pub seed: u64,
    pub trials: usize,
    /// One entry per requested scheme, in request order.
    pub stats: Vec<SchemeStats>,
    /// Number of sample covariances formed; equals `trials`.
    pub covariance_evaluations: u64,
}

impl PointOutcome {
    pub fn get(&self, scheme: Scheme) -> Option<&SchemeStats> {
        self.stats.iter().find(|s| s.scheme == scheme)
    }

    pub fn nrmse(&self, scheme: Scheme) -> Option<f64> {
        self.get(scheme).map(|s| s.nrmse(self.config.k_active))
    }

    pub fn nrmse_standard_error(&self, scheme: Scheme) -> Option<f64> {
        self.get(scheme)
            .map(|s| s.nrmse_standard_error(self.config.k_active))
    }
}

fn dedup_schemes(schemes: &[Scheme]) -> Vec<Scheme> {
    let mut out = Vec::with_capacity(schemes.len());
    for &s in schemes {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// Simulates `trials` coherence intervals of `cfg` and scores every scheme.
pub fn run_point(cfg: &SystemConfig, schemes: &[Scheme], trials: usize, seed: u64) -> Result<PointOutcome> {
    run_point_with(cfg, schemes, trials, seed, Parallelism::Auto)
}

pub fn run_point_with(
    cfg: &SystemConfig,
    schemes: &[Scheme],
    trials: usize,
    seed: u64,
    par: Parallelism,
) -> Result<PointOutcome> {
    cfg.validate()?;
    if trials == 0 {
        return Err(AueError::config("trials must be >= 1"));
    }
    if cfg.k_active == 0 {
        return Err(AueError::config("NRMSE is undefined for K = 0"));
    }
    let schemes = dedup_schemes(schemes);
    if schemes.is_empty() {
        return Err(AueError::config("no schemes requested"));
    }
    let ctx = EstimatorContext::for_system(cfg)?;
    let k = cfg.k_active;
    let kf = k as f64;

    let partials = blocked_reduce(trials, par, |range| {
        let mut stats: Vec<SchemeStats> = schemes.iter().map(|&s| SchemeStats::empty(s)).collect();
        let mut covariances = 0u64;
        for t in range {
            let r = trial_covariance(cfg, seed, t)?;
            covariances += 1;
            for st in stats.iter_mut() {
                let x = st.scheme.statistic(&r, &ctx)?;
                let e = sq_error(crate::estimators::round_and_clamp(x, ctx.n_potential), k);
                st.trials += 1;
                st.sum_sq_error += e;
                st.sum_quartic_error += (e as u128) * (e as u128);
                st.sum_sq_statistic_error += (x - kf) * (x - kf);
            }
        }
        Ok((stats, covariances))
    })?;

    let mut stats: Vec<SchemeStats> = schemes.iter().map(|&s| SchemeStats::empty(s)).collect();
    let mut covariance_evaluations = 0;
    for (block_stats, n) in &partials {
        covariance_evaluations += n;
        for (acc, b) in stats.iter_mut().zip(block_stats) {
            acc.merge(b);
        }
    }

    Ok(PointOutcome {
        config: *cfg,
        seed,
        trials,
        stats,
        covariance_evaluations,
    })
}

/// Sample mean and standard error of one quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanEstimate {
    pub mean: f64,
    pub standard_error: f64,
}

impl MeanEstimate {
    fn from_sums(sum: f64, sum_sq: f64, n: usize) -> Self {
        let nf = n as f64;
        let mean = sum / nf;
        let var = if n > 1 {
            (sum_sq - nf * mean * mean) / (nf - 1.0)
        } else {
            0.0
        };
        Self {
            mean,
            standard_error: (var.max(0.0) / nf).sqrt(),
        }
    }

    /// Distance from `target` in standard errors.
    pub fn z_score(&self, target: f64) -> f64 {
        (self.mean - target).abs() / self.standard_error
    }
}

/// Monte Carlo estimates of `E[R₁]`, `E[R₁²]` and `E[R₁R₂]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampledMoments {
    pub r1: MeanEstimate,
    pub r1_sq: MeanEstimate,
    pub r1_r2: MeanEstimate,
}

pub fn sample_moments(
    cfg: &SystemConfig,
    trials: usize,
    seed: u64,
    par: Parallelism,
) -> Result<SampledMoments> {
    cfg.validate()?;
    if trials < 2 {
        return Err(AueError::config("moment estimation needs at least two trials"));
    }
    let partials = blocked_reduce(trials, par, |range| {
        let mut acc = [0.0f64; 6];
        for t in range {
            let r = trial_covariance(cfg, seed, t)?;
            let vals = [r.r1(), r.r1() * r.r1(), r.r1() * r.r2()];
            for (i, v) in vals.into_iter().enumerate() {
                acc[2 * i] += v;
                acc[2 * i + 1] += v * v;
            }
        }
        Ok(acc)
    })?;
    let mut acc = [0.0f64; 6];
    for p in &partials {
        for (a, b) in acc.iter_mut().zip(p) {
            *a += b;
        }
    }
    Ok(SampledMoments {
        r1: MeanEstimate::from_sums(acc[0], acc[1], trials),
        r1_sq: MeanEstimate::from_sums(acc[2], acc[3], trials),
        r1_r2: MeanEstimate::from_sums(acc[4], acc[5], trials),
    })
}

/// Parameter varied across a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    /// `ε_max`
    #[serde(rename = "epsilon")]
    EpsilonMax,
    /// `M`
    #[serde(rename = "m")]
    Antennas,
    /// SNR in dB
    #[serde(rename = "snr")]
    Snr,
    /// `K`
    #[serde(rename = "k")]
    ActiveUsers,
    None,
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::EpsilonMax => "epsilon",
            SweepAxis::Antennas => "m",
            SweepAxis::Snr => "snr",
            SweepAxis::ActiveUsers => "k",
            SweepAxis::None => "none",
        }
    }

    /// `base` with this axis set to `value`.
    pub fn apply(&self, base: &SystemConfig, value: f64) -> Result<SystemConfig> {
        let mut cfg = *base;
        match self {
            SweepAxis::EpsilonMax => cfg.cfo = cfg.cfo.with_epsilon_max(value)?,
            SweepAxis::Antennas => cfg.m_antennas = as_count(value, "M")?,
            SweepAxis::Snr => {
                if !value.is_finite() {
                    return Err(AueError::config(format!("SNR must be finite, got {value}")));
                }
                cfg.noise_variance = snr_db_to_noise_variance(value);
            }
            SweepAxis::ActiveUsers => cfg.k_active = as_count(value, "K")?,
            SweepAxis::None => {}
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn as_count(value: f64, what: &str) -> Result<usize> {
    if value.is_finite() && value >= 0.0 && value.fract() == 0.0 && value <= u32::MAX as f64 {
        Ok(value as usize)
    } else {
        Err(AueError::config(format!(
            "{what} must be a non-negative integer, got {value}"
        )))
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepAxis {
    type Err = AueError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "epsilon" | "eps" | "eps-max" | "epsilon-max" => Ok(SweepAxis::EpsilonMax),
            "m" | "antennas" => Ok(SweepAxis::Antennas),
            "snr" | "snr-db" => Ok(SweepAxis::Snr),
            "k" | "active-users" => Ok(SweepAxis::ActiveUsers),
            "none" => Ok(SweepAxis::None),
            other => Err(AueError::config(format!("unknown sweep axis '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub axis: SweepAxis,
    /// Axis values in output order. SNR values are in dB. Ignored for [`SweepAxis::None`].
    pub values: Vec<f64>,
}

impl Sweep {
    pub fn single_point() -> Self {
        Self {
            axis: SweepAxis::None,
            values: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub base: SystemConfig,
    pub schemes: Vec<Scheme>,
    pub trials: usize,
    pub master_seed: u64,
    pub sweep: Sweep,
    /// Attach the closed-form NRMSE to Eig-sum rows.
    pub emit_theory: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            base: SystemConfig::default(),
            schemes: Scheme::ALL.to_vec(),
            trials: DEFAULT_TRIALS,
            master_seed: 1,
            sweep: Sweep::single_point(),
            emit_theory: true,
        }
    }
}

impl ExperimentConfig {
    /// The `(axis value, system)` pairs of the sweep, validated.
    pub fn points(&self) -> Result<Vec<(Option<f64>, SystemConfig)>> {
        if self.trials == 0 {
            return Err(AueError::config("trials must be >= 1"));
        }
        if self.schemes.is_empty() {
            return Err(AueError::config("no schemes requested"));
        }
        self.base.validate()?;
        if self.sweep.axis == SweepAxis::None {
            return Ok(vec![(None, self.base)]);
        }
        if self.sweep.values.is_empty() {
            return Err(AueError::config(format!(
                "sweep over '{}' has no values",
                self.sweep.axis
            )));
        }
        self.sweep
            .values
            .iter()
            .map(|&v| {
                self.sweep
                    .axis
                    .apply(&self.base, v)
                    .map(|cfg| (Some(v), cfg))
                    .map_err(|e| self.at(v, e))
            })
            .collect()
    }

    fn at(&self, value: f64, err: AueError) -> AueError {
        AueError::AtPoint {
            axis: self.sweep.axis.name().to_string(),
            value,
            source: Box::new(err),
        }
    }
}

/// One output row: one scheme at one axis value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub axis: SweepAxis,
    pub axis_value: Option<f64>,
    pub scheme: Scheme,
    pub nrmse_sim: f64,
    pub nrmse_theory: Option<f64>,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn rows_for(&self, scheme: Scheme) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(move |r| r.scheme == scheme)
    }
}

pub fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepResult> {
    run_sweep_with(cfg, Parallelism::Auto)
}

/// Runs every point of the sweep. Point `i` uses seed
/// [`point_seed`]`(master_seed, i)`.
pub fn run_sweep_with(cfg: &ExperimentConfig, par: Parallelism) -> Result<SweepResult> {
    let points = cfg.points()?;
    let schemes = dedup_schemes(&cfg.schemes);
    let mut rows = Vec::with_capacity(points.len() * schemes.len());
    for (index, (value, sys)) in points.into_iter().enumerate() {
        let wrap = |e: AueError| match value {
            Some(v) => cfg.at(v, e),
            None => e,
        };
        let outcome = run_point_with(
            &sys,
            &schemes,
            cfg.trials,
            point_seed(cfg.master_seed, index),
            par,
        )
        .map_err(wrap)?;
        let theory = if cfg.emit_theory {
            let alpha = crate::estimators::characteristic_function(&sys.cfo);
            Some(
                nrmse_eig_sum_theory(sys.k_active, sys.m_antennas, sys.noise_variance, alpha)
                    .map_err(wrap)?,
            )
        } else {
            None
        };
        for st in &outcome.stats {
            rows.push(SweepRow {
                axis: cfg.sweep.axis,
                axis_value: value,
                scheme: st.scheme,
                nrmse_sim: st.nrmse(sys.k_active),
                nrmse_theory: if st.scheme == Scheme::EigSum { theory } else { None },
                trials: cfg.trials,
                seed: cfg.master_seed,
            });
        }
    }
    Ok(SweepResult { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CfoModel;
    use approx::assert_relative_eq;

    #[test]
    fn nrmse_examples() {
        assert_eq!(nrmse(&[25, 25, 25], 25).unwrap(), 0.0);
        assert_relative_eq!(nrmse(&[24, 26], 25).unwrap(), 0.04, max_relative = 1e-15);
        assert_relative_eq!(
            nrmse(&[20, 30, 25, 25], 25).unwrap(),
            12.5f64.sqrt() / 25.0,
            max_relative = 1e-15
        );
        assert!(nrmse(&[], 25).is_err());
        assert!(nrmse(&[1], 0).is_err());
    }

    #[test]
    fn point_seeds_differ() {
        let seeds: Vec<u64> = (0..100).map(|i| point_seed(7, i)).collect();
        let mut sorted = seeds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 100);
        assert_ne!(point_seed(7, 0), point_seed(8, 0));
    }

    #[test]
    fn trial_streams_are_independent_of_order() {
        let cfg = SystemConfig::default();
        let a = trial_covariance(&cfg, 5, 17).unwrap();
        let _ = trial_covariance(&cfg, 5, 3).unwrap();
        assert_eq!(a, trial_covariance(&cfg, 5, 17).unwrap());
        assert_ne!(a, trial_covariance(&cfg, 5, 18).unwrap());
    }

    #[test]
    fn one_covariance_per_trial() {
        let cfg = SystemConfig {
            m_antennas: 4,
            ..Default::default()
        };
        let out = run_point(&cfg, &Scheme::ALL, 1000, 3).unwrap();
        assert_eq!(out.covariance_evaluations, 1000);
        assert!(out.stats.iter().all(|s| s.trials == 1000));
        assert_eq!(out.stats.len(), 4);
    }

    #[test]
    fn parallelism_does_not_change_results() {
        let cfg = SystemConfig {
            m_antennas: 8,
            ..Default::default()
        };
        let a = run_point_with(&cfg, &Scheme::ALL, 1500, 9, Parallelism::Sequential).unwrap();
        let b = run_point_with(&cfg, &Scheme::ALL, 1500, 9, Parallelism::Threads(3)).unwrap();
        let c = run_point_with(&cfg, &Scheme::ALL, 1500, 9, Parallelism::Auto).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn run_point_rejects_bad_input() {
        let cfg = SystemConfig::default();
        assert!(run_point(&cfg, &Scheme::ALL, 0, 1).is_err());
        assert!(run_point(&cfg, &[], 10, 1).is_err());
        let k0 = SystemConfig { k_active: 0, ..cfg };
        assert!(matches!(
            run_point(&k0, &Scheme::ALL, 10, 1),
            Err(AueError::Config(_))
        ));
    }

    #[test]
    fn alpha_guard_propagates_with_axis_value() {
        let cfg = ExperimentConfig {
            base: SystemConfig {
                m_antennas: 4,
                ..Default::default()
            },
            schemes: vec![Scheme::EigSum, Scheme::EigDiff],
            trials: 10,
            sweep: Sweep {
                axis: SweepAxis::EpsilonMax,
                values: vec![0.1, 0.5],
            },
            ..Default::default()
        };
        let err = run_sweep(&cfg).unwrap_err();
        assert!(err.is_domain_error());
        match err {
            AueError::AtPoint { axis, value, .. } => {
                assert_eq!(axis, "epsilon");
                assert_eq!(value, 0.5);
            }
            other => panic!("unexpected {other:?}"),
        }
        // without Eig-diff the same sweep is fine
        let ok = ExperimentConfig {
            schemes: vec![Scheme::EigSum],
            ..cfg
        };
        assert_eq!(run_sweep(&ok).unwrap().rows.len(), 2);
    }

    #[test]
    fn axis_application() {
        let base = SystemConfig::default();
        assert_eq!(SweepAxis::Antennas.apply(&base, 64.0).unwrap().m_antennas, 64);
        assert!(SweepAxis::Antennas.apply(&base, 0.0).is_err());
        assert!(SweepAxis::Antennas.apply(&base, 2.5).is_err());
        assert_eq!(SweepAxis::ActiveUsers.apply(&base, 45.0).unwrap().k_active, 45);
        assert!(SweepAxis::ActiveUsers.apply(&base, 101.0).is_err());
        assert_relative_eq!(
            SweepAxis::Snr.apply(&base, 20.0).unwrap().noise_variance,
            0.01,
            max_relative = 1e-14
        );
        assert_eq!(
            SweepAxis::EpsilonMax.apply(&base, 0.05).unwrap().cfo,
            CfoModel::uniform(0.05).unwrap()
        );
        assert!(SweepAxis::EpsilonMax.apply(&base, -0.05).is_err());
    }

    #[test]
    fn theory_only_on_eig_sum_rows() {
        let cfg = ExperimentConfig {
            base: SystemConfig {
                m_antennas: 4,
                ..Default::default()
            },
            trials: 50,
            sweep: Sweep {
                axis: SweepAxis::Antennas,
                values: vec![4.0, 8.0],
            },
            ..Default::default()
        };
        let res = run_sweep(&cfg).unwrap();
        assert_eq!(res.rows.len(), 8);
        for row in &res.rows {
            assert_eq!(row.nrmse_theory.is_some(), row.scheme == Scheme::EigSum);
        }
        let quiet = run_sweep(&ExperimentConfig {
            emit_theory: false,
            ..cfg
        })
        .unwrap();
        assert!(quiet.rows.iter().all(|r| r.nrmse_theory.is_none()));
    }

    #[test]
    fn standard_error_is_small_and_positive() {
        let out = run_point(&SystemConfig::default(), &[Scheme::EigSum], 2000, 4).unwrap();
        let se = out.nrmse_standard_error(Scheme::EigSum).unwrap();
        let v = out.nrmse(Scheme::EigSum).unwrap();
        // roughly NRMSE / √(2n)
        assert!(
            se > 0.3 * v / (4000f64).sqrt() && se < 3.0 * v / (4000f64).sqrt(),
            "{se} {v}"
        );
    }
}
