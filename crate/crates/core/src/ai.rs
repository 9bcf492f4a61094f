//! End-of-step update rules for the AI node.
//!
//! The AI never dies and never learns mid-step. After the population has been
//! measured it refreshes its level according to [`AiPolicyParams::mode`]:
//!
//! * **snap to mean**: level becomes the measured adapted fraction.
//! * **scheduled social**: snap with probability `λ = 1 - c_λs`, otherwise
//!   keep the old level. Staleness comes from the environment step, which
//!   zeroes the level whenever the optimum moves.
//! * **individual**: become fully adapted with probability `(1 - c_λi) z_ai`,
//!   otherwise settle on a wrong answer (level 0).
//! * **mixed**: pick one of the two previous branches per step, see
//!   [`MixedSelector`].

use rand::Rng;

use crate::model::AiNode;
use crate::params::{AiPolicyMode, AiPolicyParams, MixedSelector};
use crate::rng::chance;
use crate::series::AiBranch;

pub fn ai_snap_to_mean(q_ok: f64) -> AiNode {
    AiNode::clamped(q_ok)
}

/// Snaps to `q_ok` with probability `1 - c_lambda_s`, otherwise keeps `ai`.
pub fn ai_scheduled_update<R: Rng + ?Sized>(ai: AiNode, q_ok: f64, c_lambda_s: f64, rng: &mut R) -> (AiNode, AiBranch) {
    if chance(rng, 1.0 - c_lambda_s) {
        (ai_snap_to_mean(q_ok), AiBranch::Social)
    } else {
        (ai, AiBranch::Retained)
    }
}

/// Level 1 with probability `(1 - c_lambda_i) * z_ai`, level 0 otherwise.
pub fn ai_individual_update<R: Rng + ?Sized>(c_lambda_i: f64, z_ai: f64, rng: &mut R) -> AiNode {
    if chance(rng, (1.0 - c_lambda_i) * z_ai) {
        AiNode::clamped(1.0)
    } else {
        AiNode::clamped(0.0)
    }
}

/// Chooses between individual learning and snapping to the mean.
pub fn ai_mixed_update<R: Rng + ?Sized>(q_ok: f64, policy: &AiPolicyParams, rng: &mut R) -> (AiNode, AiBranch) {
    match policy.mixed_selector {
        MixedSelector::Greedy => {
            if policy.individual_success() > q_ok {
                (
                    ai_individual_update(policy.individual_update_cost, policy.z_ai, rng),
                    AiBranch::Individual,
                )
            } else {
                (ai_snap_to_mean(q_ok), AiBranch::Social)
            }
        }
        MixedSelector::CostGated => {
            if chance(rng, 1.0 - policy.individual_update_cost) {
                (ai_individual_update(0.0, policy.z_ai, rng), AiBranch::Individual)
            } else {
                (ai_snap_to_mean(q_ok), AiBranch::Social)
            }
        }
    }
}

/// Result of one end-of-step update, with the expectations the mixed
/// selector compares.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiUpdate {
    pub node: AiNode,
    pub branch: AiBranch,
    pub individual_expected: f64,
    pub social_expected: f64,
}

/// Applies the configured policy.
pub fn update_ai<R: Rng + ?Sized>(ai: AiNode, q_ok: f64, policy: &AiPolicyParams, rng: &mut R) -> AiUpdate {
    let (node, branch) = match policy.mode {
        AiPolicyMode::SnapToMean => (ai_snap_to_mean(q_ok), AiBranch::Social),
        AiPolicyMode::ScheduledSocial => ai_scheduled_update(ai, q_ok, policy.social_update_cost, rng),
        AiPolicyMode::Individual => (
            ai_individual_update(policy.individual_update_cost, policy.z_ai, rng),
            AiBranch::Individual,
        ),
        AiPolicyMode::Mixed => ai_mixed_update(q_ok, policy, rng),
    };
    AiUpdate {
        node,
        branch,
        individual_expected: policy.individual_success(),
        social_expected: q_ok,
    }
}

/// Expected level at the start of the next learning phase under scheduled
/// social updates, counting the environment step in between: the AI either
/// refreshes (rate `λ`) or keeps its level, which survives only if the
/// optimum does not move.
pub fn expected_scheduled_level(prev: f64, q_ok: f64, update_rate: f64, u: f64) -> f64 {
    (update_rate * q_ok + (1.0 - update_rate) * prev) * (1.0 - u)
}

/// The same transition composed as two independent events,
/// `1 - (1 - λ q)(1 - p (1 - λ)(1 - u))`, with the refreshed level left
/// undegraded. Agrees with [`expected_scheduled_level`] at `λ ∈ {0, 1}` when
/// `u = 0`; elsewhere it adds the cross term of two branches that are in
/// fact mutually exclusive.
pub fn independent_events_recurrence(prev: f64, q_ok: f64, update_rate: f64, u: f64) -> f64 {
    1.0 - (1.0 - update_rate * q_ok) * (1.0 - prev * (1.0 - update_rate) * (1.0 - u))
}
