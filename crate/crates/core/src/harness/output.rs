use std::io::Write;

use super::SweepResult;
use crate::error::{AueError, Result};

pub const CSV_HEADER: [&str; 7] = [
    "axis",
    "axis_value",
    "scheme",
    "nrmse_sim",
    "nrmse_theory",
    "trials",
    "seed",
];

/// Significant digits for NRMSE columns.
const SIG_DIGITS: usize = 12;

/// Formats `x` with `sig` significant digits, switching to exponent notation
/// for very large or very small magnitudes.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sig = sig.max(1);
    let exponent = x.abs().log10().floor() as i32;
    let decimals = sig as i32 - 1 - exponent;
    if (0..=20).contains(&decimals) {
        format!("{:.*}", decimals as usize, x)
    } else {
        format!("{:.*e}", sig - 1, x)
    }
}

fn io_err(e: impl std::fmt::Display) -> AueError {
    AueError::Output(e.to_string())
}

pub fn write_csv<W: Write>(result: &SweepResult, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(io_err)?;
    for row in &result.rows {
        w.write_record([
            row.axis.name().to_string(),
            row.axis_value.map(|v| v.to_string()).unwrap_or_default(),
            row.scheme.name().to_string(),
            format_sig(row.nrmse_sim, SIG_DIGITS),
            row.nrmse_theory
                .map(|v| format_sig(v, SIG_DIGITS))
                .unwrap_or_default(),
            row.trials.to_string(),
            row.seed.to_string(),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

pub fn write_json<W: Write>(result: &SweepResult, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, &result.rows).map_err(io_err)?;
    writeln!(out).map_err(io_err)
}
