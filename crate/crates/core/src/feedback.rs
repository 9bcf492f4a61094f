//! Deskilling: every consultation of the AI shrinks the learner's own
//! individual-learning skill by a constant factor.

use crate::model::Agent;

/// Multiplies `agent.kappa` by `decay`. Call once per step for each agent that
/// consulted the AI, whether or not the consultation succeeded.
#[inline]
pub fn apply_feedback_penalty(agent: &mut Agent, decay: f64) {
    debug_assert!(decay > 0.0 && decay <= 1.0);
    // Underflow would break kappa > 0 after ~7000 consecutive consultations.
    agent.kappa = (agent.kappa * decay).max(f64::MIN_POSITIVE);
}
