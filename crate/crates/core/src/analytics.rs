//! Closed-form equilibrium predictions and Monte Carlo equilibrium estimates.
//!
//! Notation used below: `p_i = (1 - c_i) z_i` is the individual success rate,
//! `t = p_s_ok_ok` the probability that copied adapted behavior is still
//! adapted (`1 - u` in the engine), and `q_i` the share of individual learners.
//! With `q` the expected adapted fraction, social learners succeed with
//! `(1 - c_s) t q`, so
//!
//! ```text
//! q = p_i s q_i + (1 - c_s) t q s (1 - q_i)
//!   = p_i s q_i / (1 - (1 - c_s) t s (1 - q_i))
//! ```

use crate::error::{Result, SimError};
use crate::params::SimParams;
use crate::series::TimeSeries;

/// Expected adapted fraction when everyone learns individually: `(1 - c_i) z_i s_ok`.
pub fn predict_individual_only(c_i: f64, z_i: f64, s_ok: f64) -> f64 {
    (1.0 - c_i) * z_i * s_ok
}

/// Expected adapted fraction of a population with a fixed share `q_i` of
/// individual learners and `1 - q_i` human social learners.
pub fn predict_mixed_equilibrium(q_i: f64, c_i: f64, z_i: f64, c_s: f64, p_s_ok_ok: f64, s_ok: f64) -> Result<f64> {
    let denominator = 1.0 - (1.0 - c_s) * p_s_ok_ok * s_ok * (1.0 - q_i);
    if denominator <= 0.0 {
        return Err(SimError::Degenerate(format!(
            "social feedback term reaches 1 (denominator {denominator})"
        )));
    }
    Ok((1.0 - c_i) * z_i * s_ok * q_i / denominator)
}

/// Expected adapted fraction among social learners alone.
pub fn predict_social_equilibrium(q_i: f64, c_i: f64, z_i: f64, c_s: f64, p_s_ok_ok: f64, s_ok: f64) -> Result<f64> {
    let q = predict_mixed_equilibrium(q_i, c_i, z_i, c_s, p_s_ok_ok, s_ok)?;
    Ok((1.0 - c_s) * p_s_ok_ok * s_ok * q)
}

const THREE_WAY_TOLERANCE: f64 = 1e-10;
const THREE_WAY_MAX_ITERATIONS: usize = 10_000;
const THREE_WAY_DAMPING: f64 = 0.5;

/// Expected adapted fraction with three fixed sub-populations: individual
/// learners (`q_i`), human social learners (`q_s`) and AI learners
/// (`q_ai_frac`). Both social routes see the population's adapted fraction
/// one step late, so
///
/// ```text
/// q = p_i s q_i + (1 - c_s) t q s q_s + (1 - c_ai) t q s q_ai
/// ```
///
/// which is solved by damped fixed-point iteration.
pub fn predict_three_way(q_i: f64, q_s: f64, q_ai_frac: f64, params: &SimParams) -> Result<f64> {
    let total = q_i + q_s + q_ai_frac;
    if (total - 1.0).abs() > 1e-9 {
        return Err(SimError::validation(
            "q_i + q_s + q_ai",
            format!("shares sum to {total}, not 1"),
        ));
    }
    params.validate()?;
    let s = params.s_ok;
    let t = params.social_transmission();
    let individual = params.individual_success() * s * q_i;
    let human = (1.0 - params.c_s_human) * t * s * q_s;
    let ai = (1.0 - params.c_s_ai) * t * s * q_ai_frac;
    let map = |q: f64| individual + (human + ai) * q;

    let mut q = individual;
    let mut residual = f64::INFINITY;
    for _ in 0..THREE_WAY_MAX_ITERATIONS {
        let next = (1.0 - THREE_WAY_DAMPING) * q + THREE_WAY_DAMPING * map(q);
        residual = (next - q).abs();
        q = next;
        if residual < THREE_WAY_TOLERANCE {
            return Ok(q);
        }
    }
    Err(SimError::NoConvergence {
        iterations: THREE_WAY_MAX_ITERATIONS,
        residual,
    })
}

/// A mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
}

impl Estimate {
    /// Number of combined standard errors separating two estimates (signed, `self - other`).
    pub fn z_score(&self, other: &Estimate) -> f64 {
        let se = (self.std_error.powi(2) + other.std_error.powi(2)).sqrt();
        let diff = self.mean - other.mean;
        if se == 0.0 {
            if diff == 0.0 {
                0.0
            } else {
                diff.signum() * f64::INFINITY
            }
        } else {
            diff / se
        }
    }

    /// Pools estimates from independent replicates: mean of means, standard
    /// error of that mean from the individual standard errors.
    pub fn pool(estimates: &[Estimate]) -> Estimate {
        if estimates.is_empty() {
            return Estimate {
                mean: f64::NAN,
                std_error: f64::NAN,
            };
        }
        let n = estimates.len() as f64;
        let mean = estimates.iter().map(|e| e.mean).sum::<f64>() / n;
        let var = estimates.iter().map(|e| e.std_error.powi(2)).sum::<f64>();
        Estimate {
            mean,
            std_error: var.sqrt() / n,
        }
    }
}

pub const BATCHES: usize = 50;

/// Batch-means estimate of the mean of an autocorrelated series: split into
/// `batches` equal contiguous batches (the remainder at the front is
/// dropped), and take the standard error of the batch averages. Falls back to
/// one value per batch for series shorter than `batches`.
pub fn batch_means(values: &[f64], batches: usize) -> Estimate {
    let k = batches.min(values.len()).max(1);
    let size = values.len() / k;
    if size == 0 {
        return Estimate {
            mean: f64::NAN,
            std_error: f64::NAN,
        };
    }
    let used = &values[values.len() - k * size..];
    let means: Vec<f64> = used
        .chunks_exact(size)
        .map(|c| c.iter().sum::<f64>() / size as f64)
        .collect();
    let mean = means.iter().sum::<f64>() / k as f64;
    let std_error = if k > 1 {
        let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (k - 1) as f64;
        (var / k as f64).sqrt()
    } else {
        0.0
    };
    Estimate { mean, std_error }
}

/// Mean `q_ok` over the last `window` steps with a 50-batch standard error.
pub fn estimate_equilibrium(series: &TimeSeries, window: usize) -> Estimate {
    let window = window.min(series.len());
    let values: Vec<f64> = series.trailing(window).iter().map(|s| s.q_ok).collect();
    batch_means(&values, BATCHES)
}
