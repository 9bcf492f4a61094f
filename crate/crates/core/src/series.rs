//! Per-step records produced by a run.

use crate::params::SimParams;

/// Population statistics measured once per step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepStats {
    pub t: u64,
    /// Adapted survivors divided by the nominal population size.
    pub q_ok: f64,
    pub frac_individual: f64,
    /// Mean AI-propensity among social learners, 0 when there are none.
    pub mean_ai_propensity: f64,
    /// AI level after this step's update.
    pub ai_level: f64,
    pub mean_kappa: f64,
    pub env_changed: bool,
}

/// Which branch the AI took when it updated at the end of a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AiBranch {
    /// Kept its previous level.
    Retained,
    /// Copied the population mean.
    Social,
    /// Learned individually.
    Individual,
}

/// Bookkeeping that is not part of the CSV schema: how agents learned and how
/// the AI updated. Lets callers audit reliance on the AI and the mixed policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepAudit {
    /// Agents that attempted to learn from the AI this step.
    pub ai_learners: u32,
    /// Agents that copied a human teacher.
    pub human_learners: u32,
    /// Individual-learning attempts, including critical fallbacks and gated agents.
    pub individual_attempts: u32,
    pub ai_branch: AiBranch,
    /// Expected AI level had it learned individually, `(1 - c_λi) * z_ai`.
    pub individual_expected: f64,
    /// Expected AI level had it snapped to the mean.
    pub social_expected: f64,
}

/// The full record of one seeded run.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub params: SimParams,
    pub steps: Vec<StepStats>,
    pub audit: Vec<StepAudit>,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn q_ok(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        self.steps.iter().map(|s| s.q_ok)
    }

    /// The last `window` steps (or all of them, if shorter).
    pub fn trailing(&self, window: usize) -> &[StepStats] {
        let start = self.steps.len().saturating_sub(window);
        &self.steps[start..]
    }

    pub fn trailing_audit(&self, window: usize) -> &[StepAudit] {
        let start = self.audit.len().saturating_sub(window);
        &self.audit[start..]
    }

    /// Mean fraction of the population that consulted the AI per step over the trailing window.
    pub fn ai_usage(&self, window: usize) -> f64 {
        let audit = self.trailing_audit(window);
        if audit.is_empty() {
            return 0.0;
        }
        let n = self.params.n_agents as f64;
        audit.iter().map(|a| a.ai_learners as f64 / n).sum::<f64>() / audit.len() as f64
    }

    /// Mean of an arbitrary per-step statistic over the trailing window.
    pub fn trailing_mean(&self, window: usize, f: impl Fn(&StepStats) -> f64) -> f64 {
        let tail = self.trailing(window);
        if tail.is_empty() {
            return 0.0;
        }
        tail.iter().map(f).sum::<f64>() / tail.len() as f64
    }
}
