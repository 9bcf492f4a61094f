//! The scenario batteries behind each figure, built from the
//! bundled presets.

use std::fmt;
use std::str::FromStr;

use crate::config::{preset_params, preset_sweep};
use crate::error::{Result, SimError};
use crate::params::{LearningMode, SimParams};
use crate::sweep::{Axis, SweepSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    F2,
    F3,
    F4,
    F5,
    F6,
    A1,
    A2,
}

impl Figure {
    pub const ALL: [Figure; 7] = [
        Figure::F2,
        Figure::F3,
        Figure::F4,
        Figure::F5,
        Figure::F6,
        Figure::A1,
        Figure::A2,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Figure::F2 => "2",
            Figure::F3 => "3",
            Figure::F4 => "4",
            Figure::F5 => "5",
            Figure::F6 => "6",
            Figure::A1 => "A1",
            Figure::A2 => "A2",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Figure::ALL
            .into_iter()
            .find(|f| f.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown figure `{s}` (expected one of 2, 3, 4, 5, 6, A1, A2)"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum JobKind {
    Series(SimParams),
    Sweep(SweepSpec),
}

/// One CSV worth of work; `name` is the file stem.
#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub name: String,
    pub kind: JobKind,
}

impl Job {
    fn series(name: &str, params: SimParams) -> Job {
        Job {
            name: name.into(),
            kind: JobKind::Series(params),
        }
    }

    fn sweep(name: &str, spec: SweepSpec) -> Job {
        Job {
            name: name.into(),
            kind: JobKind::Sweep(spec),
        }
    }

    /// Applies `f` to the scenario, or to a sweep's base.
    pub fn map_params(&mut self, f: impl Fn(&mut SimParams)) {
        match &mut self.kind {
            JobKind::Series(p) => f(p),
            JobKind::Sweep(s) => f(&mut s.base),
        }
    }
}

/// The u values of the environmental-change comparison.
pub const U_GRID: [f64; 3] = [0.01, 0.1, 0.5];

/// Jobs for `figure`; `seeds` overrides the replicate count of every sweep.
pub fn figure_jobs(figure: Figure, seeds: Option<u32>) -> Result<Vec<Job>> {
    let u_sweep = |preset: &str| -> Result<SweepSpec> {
        Ok(SweepSpec::new(
            preset_params(preset)?,
            vec![Axis::new("environment.u", U_GRID)],
        ))
    };
    let mut jobs = match figure {
        Figure::F2 => vec![
            Job::series("fig2_individual", preset_params("baseline_individual")?),
            Job::series("fig2_ai_social", preset_params("ai_social")?),
        ],
        Figure::F3 => vec![
            Job::sweep("fig3_individual", u_sweep("baseline_individual")?),
            Job::sweep("fig3_ai_social", u_sweep("ai_social")?),
            Job::sweep("fig3_ai_critical", u_sweep("ai_critical")?),
        ],
        Figure::F4 => vec![Job::sweep(
            "fig4_update_schedule",
            preset_sweep("sweep_update_schedule")?,
        )],
        Figure::F5 => {
            let baseline = preset_sweep("sweep_ai_individual")?;
            let mut critical = baseline.clone();
            critical.base.learning_mode = LearningMode::AiCritical;
            vec![
                Job::sweep("fig5_baseline", baseline),
                Job::sweep("fig5_critical", critical),
            ]
        }
        Figure::F6 => vec![
            Job::series("fig6_ai_critical", preset_params("feedback_ai_critical")?),
            Job::series("fig6_two_sources", preset_params("feedback_two_sources")?),
            Job::series("fig6_phase_out", preset_params("feedback_phase_out")?),
        ],
        Figure::A1 => vec![
            Job::series("figA1_individual", preset_params("baseline_individual")?),
            Job::series("figA1_human_social", preset_params("human_social")?),
        ],
        Figure::A2 => vec![
            Job::series("figA2_ai_social", preset_params("ai_social")?),
            Job::series("figA2_ai_gated", preset_params("ai_gated")?),
        ],
    };
    if let Some(n) = seeds {
        if n == 0 {
            return Err(SimError::validation("seeds", "must be positive"));
        }
        for job in &mut jobs {
            if let JobKind::Sweep(s) = &mut job.kind {
                s.seeds_per_cell = n;
            }
        }
    }
    Ok(jobs)
}
