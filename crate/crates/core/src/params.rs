//! Scenario parameters and their validation.
//!
//! [`SimParams::baseline`] holds the reference scenario: 1000 agents,
//! an environment that changes with probability 0.01 per step, survival 0.93
//! for adapted agents and 0.85 otherwise, individual learning at cost 0.05
//! with success rate 0.66, and free social learning.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

/// Which learning procedures are open to the population.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LearningMode {
    /// Every agent learns individually; social learning does not exist.
    IndividualOnly,
    /// Social learners copy a random member of the previous step's population.
    HumanSocial,
    /// Social learners copy either the AI or a human, chosen by propensity.
    AiSocial,
    /// As `AiSocial`, but the AI is closed whenever its level is below the
    /// individual-learning success rate; blocked agents learn individually.
    AiGated,
    /// Social learners consult the AI and fall back to individual learning
    /// when that fails.
    AiCritical,
    /// Social learners consult the AI or a human (by propensity) and fall back
    /// to individual learning when that fails.
    AiAndHumanCritical,
}

impl LearningMode {
    pub const ALL: [LearningMode; 6] = [
        LearningMode::IndividualOnly,
        LearningMode::HumanSocial,
        LearningMode::AiSocial,
        LearningMode::AiGated,
        LearningMode::AiCritical,
        LearningMode::AiAndHumanCritical,
    ];

    /// True when the SOCIAL strategy exists in this mode.
    pub fn allows_social(self) -> bool {
        self != LearningMode::IndividualOnly
    }

    /// True when social learners pick between the AI and a human teacher.
    pub fn has_both_sources(self) -> bool {
        matches!(
            self,
            LearningMode::AiSocial | LearningMode::AiGated | LearningMode::AiAndHumanCritical
        )
    }

    pub fn is_critical(self) -> bool {
        matches!(self, LearningMode::AiCritical | LearningMode::AiAndHumanCritical)
    }

    pub fn name(self) -> &'static str {
        match self {
            LearningMode::IndividualOnly => "individual_only",
            LearningMode::HumanSocial => "human_social",
            LearningMode::AiSocial => "ai_social",
            LearningMode::AiGated => "ai_gated",
            LearningMode::AiCritical => "ai_critical",
            LearningMode::AiAndHumanCritical => "ai_and_human_critical",
        }
    }
}

/// How the AI node refreshes its level at the end of a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AiPolicyMode {
    /// Copy the population's adapted fraction every step.
    SnapToMean,
    /// Copy the population's adapted fraction with probability `1 - social_update_cost`.
    ScheduledSocial,
    /// Learn individually every step.
    Individual,
    /// Choose between individual learning and snapping to the mean each step.
    Mixed,
}

impl AiPolicyMode {
    pub const ALL: [AiPolicyMode; 4] = [
        AiPolicyMode::SnapToMean,
        AiPolicyMode::ScheduledSocial,
        AiPolicyMode::Individual,
        AiPolicyMode::Mixed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AiPolicyMode::SnapToMean => "snap_to_mean",
            AiPolicyMode::ScheduledSocial => "scheduled_social",
            AiPolicyMode::Individual => "individual",
            AiPolicyMode::Mixed => "mixed",
        }
    }
}

/// Branch selection rule for [`AiPolicyMode::Mixed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MixedSelector {
    /// Attempt individual learning with probability `1 - individual_update_cost`,
    /// otherwise snap to the mean. Cheap individual learning is frequent
    /// individual learning, whatever its success rate.
    #[default]
    CostGated,
    /// Take whichever branch has the higher expected resulting level.
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AiPolicyParams {
    /// Per-step probability of skipping a social update; the update rate is `1 - social_update_cost`.
    pub social_update_cost: f64,
    pub individual_update_cost: f64,
    /// Success probability of the AI's own individual learning.
    pub z_ai: f64,
    pub mode: AiPolicyMode,
    #[serde(default)]
    pub mixed_selector: MixedSelector,
}

impl AiPolicyParams {
    pub fn snap_to_mean() -> Self {
        AiPolicyParams {
            social_update_cost: 0.0,
            individual_update_cost: 0.0,
            z_ai: 0.0,
            mode: AiPolicyMode::SnapToMean,
            mixed_selector: MixedSelector::CostGated,
        }
    }

    /// Probability that the AI refreshes from the population on a given step.
    pub fn update_rate(&self) -> f64 {
        1.0 - self.social_update_cost
    }

    /// Probability that one individual-learning update leaves the AI fully adapted.
    pub fn individual_success(&self) -> f64 {
        (1.0 - self.individual_update_cost) * self.z_ai
    }

    pub fn validate(&self) -> Result<()> {
        unit("ai.social_update_cost", self.social_update_cost)?;
        unit("ai.individual_update_cost", self.individual_update_cost)?;
        unit("ai.z_ai", self.z_ai)?;
        Ok(())
    }
}

/// Full parameterization of one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimParams {
    pub n_agents: usize,
    /// Per-step probability that the optimal behavior changes.
    pub u: f64,
    pub s_ok: f64,
    pub s_not_ok: f64,
    pub c_i: f64,
    pub z_i: f64,
    pub c_s_human: f64,
    pub c_s_ai: f64,
    pub strategy_mutation_p: f64,
    pub propensity_mutation_p: f64,
    pub propensity_mutation_sigma: f64,
    pub t_total: u64,
    pub equilibrium_window: u64,
    pub learning_mode: LearningMode,
    /// Multiplier applied to an agent's skill every time it learns from the AI.
    pub feedback_decay: f64,
    pub ai_policy: AiPolicyParams,
    /// Share of the founding population that starts as social learners.
    pub initial_social_fraction: f64,
    /// Founding AI-propensities are uniform on
    /// `[initial_ai_propensity - spread, initial_ai_propensity + spread]`, clamped to `[0, 1]`.
    pub initial_ai_propensity: f64,
    pub initial_propensity_spread: f64,
    pub seed: u64,
}

impl Default for SimParams {
    fn default() -> Self {
        SimParams::baseline()
    }
}

impl SimParams {
    /// The reference individual-only scenario at full scale.
    pub fn baseline() -> Self {
        SimParams {
            n_agents: 1000,
            u: 0.01,
            s_ok: 0.93,
            s_not_ok: 0.85,
            c_i: 0.05,
            z_i: 0.66,
            c_s_human: 0.0,
            c_s_ai: 0.0,
            strategy_mutation_p: 0.005,
            propensity_mutation_p: 0.005,
            propensity_mutation_sigma: 0.1,
            t_total: 200_000,
            equilibrium_window: 50_000,
            learning_mode: LearningMode::IndividualOnly,
            feedback_decay: 1.0,
            ai_policy: AiPolicyParams::snap_to_mean(),
            initial_social_fraction: 0.5,
            initial_ai_propensity: 0.5,
            initial_propensity_spread: 0.5,
            seed: 0,
        }
    }

    pub fn with_mode(mut self, mode: LearningMode) -> Self {
        self.learning_mode = mode;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Success probability of an unpenalized individual learner, `(1 - c_i) * z_i`.
    pub fn individual_success(&self) -> f64 {
        (1.0 - self.c_i) * self.z_i
    }

    /// Probability that observed adapted behavior is still adapted one step later.
    pub fn social_transmission(&self) -> f64 {
        1.0 - self.u
    }

    /// Checks every range invariant, reporting the first violation.
    pub fn validate(&self) -> Result<()> {
        if self.n_agents < 2 {
            return Err(SimError::validation("n_agents", "must be at least 2"));
        }
        unit("u", self.u)?;
        unit("s_ok", self.s_ok)?;
        unit("s_not_ok", self.s_not_ok)?;
        if self.s_ok < self.s_not_ok {
            return Err(SimError::validation(
                "s_ok",
                format!(
                    "survival of adapted agents ({}) is below that of non-adapted agents ({})",
                    self.s_ok, self.s_not_ok
                ),
            ));
        }
        unit("c_i", self.c_i)?;
        unit("z_i", self.z_i)?;
        unit("c_s_human", self.c_s_human)?;
        unit("c_s_ai", self.c_s_ai)?;
        unit("strategy_mutation_p", self.strategy_mutation_p)?;
        unit("propensity_mutation_p", self.propensity_mutation_p)?;
        if !(self.propensity_mutation_sigma.is_finite() && self.propensity_mutation_sigma >= 0.0) {
            return Err(SimError::validation(
                "propensity_mutation_sigma",
                "must be a finite non-negative number",
            ));
        }
        if self.t_total == 0 {
            return Err(SimError::validation("t_total", "must be positive"));
        }
        if self.equilibrium_window == 0 || self.equilibrium_window > self.t_total {
            return Err(SimError::validation(
                "equilibrium_window",
                format!("must lie in 1..={}", self.t_total),
            ));
        }
        if !(self.feedback_decay > 0.0 && self.feedback_decay <= 1.0) {
            return Err(SimError::validation("feedback_decay", "must lie in (0, 1]"));
        }
        self.ai_policy.validate()?;
        unit("initial_social_fraction", self.initial_social_fraction)?;
        unit("initial_ai_propensity", self.initial_ai_propensity)?;
        if !(self.initial_propensity_spread.is_finite() && self.initial_propensity_spread >= 0.0) {
            return Err(SimError::validation(
                "initial_propensity_spread",
                "must be a finite non-negative number",
            ));
        }
        Ok(())
    }
}

/// Validates and returns the parameters unchanged.
pub fn validate_params(params: SimParams) -> Result<SimParams> {
    params.validate()?;
    Ok(params)
}

fn unit(field: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(SimError::validation(field, format!("{value} is outside [0, 1]")))
    }
}
