//! Parameter grids with replicated runs per cell.
//!
//! Cells are enumerated row-major (the first axis varies slowest). Replicate
//! `r` of cell `k` runs with seed `base.seed + k * seeds_per_cell + r`, so any
//! row can be reproduced on its own with [`run_cell`], and the table does not
//! depend on how many workers computed it.

use rayon::prelude::*;

use crate::analytics::{estimate_equilibrium, Estimate};
use crate::engine::run_simulation;
use crate::error::{Result, SimError};
use crate::params::SimParams;

/// Every path an axis may name, in config-file spelling.
pub const AXIS_PATHS: &[&str] = &[
    "environment.u",
    "environment.s_ok",
    "environment.s_not_ok",
    "learning.c_i",
    "learning.z_i",
    "learning.c_s_human",
    "learning.c_s_ai",
    "learning.feedback_decay",
    "evolution.strategy_mutation_p",
    "evolution.propensity_mutation_p",
    "evolution.propensity_mutation_sigma",
    "evolution.initial_social_fraction",
    "evolution.initial_ai_propensity",
    "evolution.initial_propensity_spread",
    "ai.social_update_cost",
    "ai.update_rate",
    "ai.individual_update_cost",
    "ai.z_ai",
    "run.n_agents",
];

/// Writes `value` into the field named by `path`. `ai.update_rate` sets
/// `ai.social_update_cost` to `1 - value`. The result is not validated.
pub fn set_param(params: &mut SimParams, path: &str, value: f64) -> Result<()> {
    let slot: &mut f64 = match path {
        "environment.u" => &mut params.u,
        "environment.s_ok" => &mut params.s_ok,
        "environment.s_not_ok" => &mut params.s_not_ok,
        "learning.c_i" => &mut params.c_i,
        "learning.z_i" => &mut params.z_i,
        "learning.c_s_human" => &mut params.c_s_human,
        "learning.c_s_ai" => &mut params.c_s_ai,
        "learning.feedback_decay" => &mut params.feedback_decay,
        "evolution.strategy_mutation_p" => &mut params.strategy_mutation_p,
        "evolution.propensity_mutation_p" => &mut params.propensity_mutation_p,
        "evolution.propensity_mutation_sigma" => &mut params.propensity_mutation_sigma,
        "evolution.initial_social_fraction" => &mut params.initial_social_fraction,
        "evolution.initial_ai_propensity" => &mut params.initial_ai_propensity,
        "evolution.initial_propensity_spread" => &mut params.initial_propensity_spread,
        "ai.social_update_cost" => &mut params.ai_policy.social_update_cost,
        "ai.individual_update_cost" => &mut params.ai_policy.individual_update_cost,
        "ai.z_ai" => &mut params.ai_policy.z_ai,
        "ai.update_rate" => {
            params.ai_policy.social_update_cost = 1.0 - value;
            return Ok(());
        }
        "run.n_agents" => {
            if value.fract() != 0.0 || value < 0.0 {
                return Err(SimError::validation("run.n_agents", format!("{value} is not a count")));
            }
            params.n_agents = value as usize;
            return Ok(());
        }
        other => {
            return Err(SimError::UnknownKey {
                origin: "sweep axis".into(),
                key: other.to_string(),
            })
        }
    };
    *slot = value;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub path: String,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(path: impl Into<String>, values: impl Into<Vec<f64>>) -> Axis {
        Axis {
            path: path.into(),
            values: values.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: SimParams,
    pub axes: Vec<Axis>,
    pub seeds_per_cell: u32,
}

pub const DEFAULT_SEEDS_PER_CELL: u32 = 10;

impl SweepSpec {
    pub fn new(base: SimParams, axes: Vec<Axis>) -> SweepSpec {
        SweepSpec {
            base,
            axes,
            seeds_per_cell: DEFAULT_SEEDS_PER_CELL,
        }
    }

    pub fn with_seeds(mut self, seeds_per_cell: u32) -> SweepSpec {
        self.seeds_per_cell = seeds_per_cell;
        self
    }

    /// Checks axis count, axis names, and that every cell's parameters validate.
    pub fn validate(&self) -> Result<()> {
        if self.axes.len() > 2 {
            return Err(SimError::validation("sweep.axis", "at most two axes are supported"));
        }
        if self.seeds_per_cell == 0 {
            return Err(SimError::validation("sweep.seeds_per_cell", "must be positive"));
        }
        for axis in &self.axes {
            if axis.values.is_empty() {
                return Err(SimError::validation(
                    "sweep.axis",
                    format!("axis `{}` has no values", axis.path),
                ));
            }
        }
        self.base.validate()?;
        for k in 0..self.cell_count() {
            self.cell_params(k)?.validate()?;
        }
        Ok(())
    }

    pub fn cell_count(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    /// Axis values of cell `index`, row-major.
    pub fn cell_values(&self, index: usize) -> Vec<f64> {
        let mut rest = index;
        let mut values = vec![0.0; self.axes.len()];
        for (slot, axis) in values.iter_mut().zip(&self.axes).rev() {
            let n = axis.values.len();
            *slot = axis.values[rest % n];
            rest /= n;
        }
        values
    }

    /// Parameters of cell `index` without the per-replicate seed applied.
    pub fn cell_params(&self, index: usize) -> Result<SimParams> {
        let mut p = self.base.clone();
        for (axis, value) in self.axes.iter().zip(self.cell_values(index)) {
            set_param(&mut p, &axis.path, value)?;
        }
        Ok(p)
    }

    pub fn seed_for(&self, cell: usize, replicate: u32) -> u64 {
        self.base
            .seed
            .wrapping_add(cell as u64 * self.seeds_per_cell as u64)
            .wrapping_add(replicate as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellStatus {
    Ok,
    /// At least one replicate died out; the estimate covers the others.
    Extinct,
}

impl CellStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CellStatus::Ok => "ok",
            CellStatus::Extinct => "extinct",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axes: Vec<(String, f64)>,
    pub estimate: Estimate,
    pub seeds: u32,
    pub status: CellStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// The row whose axis values match `values` exactly.
    pub fn find(&self, values: &[f64]) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.axes.iter().map(|(_, v)| *v).eq(values.iter().copied()))
    }
}

/// Runs every replicate of one cell sequentially.
pub fn run_cell(spec: &SweepSpec, index: usize) -> Result<SweepRow> {
    let params = spec.cell_params(index)?;
    let window = params.equilibrium_window as usize;
    let mut estimates = Vec::with_capacity(spec.seeds_per_cell as usize);
    let mut status = CellStatus::Ok;
    for r in 0..spec.seeds_per_cell {
        let p = SimParams {
            seed: spec.seed_for(index, r),
            ..params.clone()
        };
        match run_simulation(&p) {
            Ok(series) => estimates.push(estimate_equilibrium(&series, window)),
            Err(SimError::Extinction { .. }) => status = CellStatus::Extinct,
            Err(e) => return Err(e),
        }
    }
    let axes = spec
        .axes
        .iter()
        .zip(spec.cell_values(index))
        .map(|(a, v)| (a.path.clone(), v))
        .collect();
    Ok(SweepRow {
        axes,
        estimate: Estimate::pool(&estimates),
        seeds: spec.seeds_per_cell,
        status,
    })
}

/// Runs the whole grid on up to `workers` threads (0 means rayon's default).
pub fn run_sweep(spec: &SweepSpec, workers: usize) -> Result<SweepResult> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("failed to build sweep worker pool");
    let rows = pool.install(|| {
        (0..spec.cell_count())
            .into_par_iter()
            .map(|k| run_cell(spec, k))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(SweepResult { rows })
}
