//! Agents and the AI node.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Individual,
    Social,
}

impl Strategy {
    pub fn flipped(self) -> Strategy {
        match self {
            Strategy::Individual => Strategy::Social,
            Strategy::Social => Strategy::Individual,
        }
    }
}

/// One learner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Agent {
    pub strategy: Strategy,
    /// Probability of consulting the AI rather than a human when learning socially.
    pub ai_propensity: f64,
    /// Whether the agent currently performs the optimal behavior.
    pub adapted: bool,
    /// Individual-learning skill multiplier in `(0, 1]`. Starts at 1 and only shrinks.
    pub kappa: f64,
}

impl Agent {
    /// A newborn: unadapted, full skill.
    pub fn new(strategy: Strategy, ai_propensity: f64) -> Result<Agent> {
        if !(0.0..=1.0).contains(&ai_propensity) {
            return Err(SimError::validation(
                "ai_propensity",
                format!("{ai_propensity} is outside [0, 1]"),
            ));
        }
        Ok(Agent {
            strategy,
            ai_propensity,
            adapted: false,
            kappa: 1.0,
        })
    }

    pub fn with_kappa(mut self, kappa: f64) -> Result<Agent> {
        if !(kappa > 0.0 && kappa <= 1.0) {
            return Err(SimError::validation("kappa", format!("{kappa} is outside (0, 1]")));
        }
        self.kappa = kappa;
        Ok(self)
    }
}

/// The AI's adaptation level: the probability that a learner copying it ends up adapted.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AiNode {
    level: f64,
}

impl AiNode {
    pub fn new(level: f64) -> Result<AiNode> {
        if !(0.0..=1.0).contains(&level) {
            return Err(SimError::validation("ai.level", format!("{level} is outside [0, 1]")));
        }
        Ok(AiNode { level })
    }

    /// Clamps instead of failing; used on values the engine derives itself.
    pub(crate) fn clamped(level: f64) -> AiNode {
        AiNode {
            level: level.clamp(0.0, 1.0),
        }
    }

    pub fn level(&self) -> f64 {
        self.level
    }
}
