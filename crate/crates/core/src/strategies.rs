//! Per-agent learning procedures.
//!
//! Each procedure is a single Bernoulli trial (or a short chain of them) whose
//! success probability is stated on the function. The engine calls
//! [`learn`] once per agent per step; the remaining functions are the
//! building blocks it dispatches to.

use rand::Rng;

use crate::model::{Agent, AiNode, Strategy};
use crate::params::{LearningMode, SimParams};
use crate::rng::chance;

/// Succeeds with probability `(1 - c_i) * z_i * agent.kappa`.
#[inline]
pub fn individual_learn<R: Rng + ?Sized>(agent: &Agent, c_i: f64, z_i: f64, rng: &mut R) -> bool {
    chance(rng, (1.0 - c_i) * z_i * agent.kappa)
}

/// Copies a teacher's behavior from the previous step. Fails outright when
/// the teacher was not adapted, otherwise succeeds with probability `1 - c_s_human`.
#[inline]
pub fn social_learn_human<R: Rng + ?Sized>(teacher_adapted: bool, c_s_human: f64, rng: &mut R) -> bool {
    teacher_adapted && chance(rng, 1.0 - c_s_human)
}

/// Succeeds with probability `(1 - c_s_ai) * ai.level()`.
#[inline]
pub fn social_learn_ai<R: Rng + ?Sized>(ai: &AiNode, c_s_ai: f64, rng: &mut R) -> bool {
    chance(rng, (1.0 - c_s_ai) * ai.level())
}

/// Whether the AI may be consulted at all: its level must reach the
/// population-wide individual success rate `(1 - c_i) * z_i`. Ties open the gate.
pub fn gate_ai_access(ai: &AiNode, params: &SimParams) -> bool {
    ai.level() >= params.individual_success()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Teacher {
    Human(usize),
    Ai,
}

/// Picks the source a social learner copies from. In two-source modes the AI
/// is chosen with probability `agent.ai_propensity`, otherwise a uniformly
/// random member of the snapshot.
pub fn choose_teacher<R: Rng + ?Sized>(agent: &Agent, snapshot_len: usize, mode: LearningMode, rng: &mut R) -> Teacher {
    debug_assert!(snapshot_len > 0);
    match mode {
        LearningMode::AiCritical => Teacher::Ai,
        LearningMode::AiSocial | LearningMode::AiGated | LearningMode::AiAndHumanCritical => {
            if chance(rng, agent.ai_propensity) {
                Teacher::Ai
            } else {
                Teacher::Human(rng.random_range(0..snapshot_len))
            }
        }
        LearningMode::HumanSocial | LearningMode::IndividualOnly => Teacher::Human(rng.random_range(0..snapshot_len)),
    }
}

/// Everything the learning phase needs besides the learner.
#[derive(Debug, Clone, Copy)]
pub struct LearningContext<'a> {
    pub params: &'a SimParams,
    pub ai: AiNode,
    /// Adaptation flags from the end of the previous learning phase.
    pub snapshot: &'a [bool],
    /// Precomputed [`gate_ai_access`] for this step.
    pub ai_open: bool,
}

impl<'a> LearningContext<'a> {
    pub fn new(params: &'a SimParams, ai: AiNode, snapshot: &'a [bool]) -> Self {
        LearningContext {
            params,
            ai,
            snapshot,
            ai_open: gate_ai_access(&ai, params),
        }
    }

    fn copy_from<R: Rng + ?Sized>(&self, teacher: Teacher, rng: &mut R) -> bool {
        match teacher {
            Teacher::Ai => social_learn_ai(&self.ai, self.params.c_s_ai, rng),
            Teacher::Human(i) => social_learn_human(self.snapshot[i], self.params.c_s_human, rng),
        }
    }
}

/// What happened when one agent learned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LearnOutcome {
    pub adapted: bool,
    pub consulted_ai: bool,
    pub consulted_human: bool,
    pub learned_individually: bool,
}

/// Social learning with an individual fallback: try the chosen teacher, and
/// on failure learn individually. Success probability `1 - (1 - p_s)(1 - p_i)`.
pub fn critical_social_learn<R: Rng + ?Sized>(agent: &Agent, ctx: &LearningContext<'_>, rng: &mut R) -> LearnOutcome {
    let teacher = choose_teacher(agent, ctx.snapshot.len(), ctx.params.learning_mode, rng);
    let mut out = LearnOutcome {
        consulted_ai: teacher == Teacher::Ai,
        consulted_human: teacher != Teacher::Ai,
        ..LearnOutcome::default()
    };
    out.adapted = ctx.copy_from(teacher, rng);
    if !out.adapted {
        out.learned_individually = true;
        out.adapted = individual_learn(agent, ctx.params.c_i, ctx.params.z_i, rng);
    }
    out
}

/// Runs the agent's learning procedure for this step under the scenario's mode.
pub fn learn<R: Rng + ?Sized>(agent: &Agent, ctx: &LearningContext<'_>, rng: &mut R) -> LearnOutcome {
    let p = ctx.params;
    let mode = p.learning_mode;
    if agent.strategy == Strategy::Individual || !mode.allows_social() {
        return LearnOutcome {
            adapted: individual_learn(agent, p.c_i, p.z_i, rng),
            learned_individually: true,
            ..LearnOutcome::default()
        };
    }
    if mode.is_critical() {
        return critical_social_learn(agent, ctx, rng);
    }
    match choose_teacher(agent, ctx.snapshot.len(), mode, rng) {
        Teacher::Ai if mode == LearningMode::AiGated && !ctx.ai_open => LearnOutcome {
            adapted: individual_learn(agent, p.c_i, p.z_i, rng),
            learned_individually: true,
            ..LearnOutcome::default()
        },
        teacher => LearnOutcome {
            adapted: ctx.copy_from(teacher, rng),
            consulted_ai: teacher == Teacher::Ai,
            consulted_human: teacher != Teacher::Ai,
            learned_individually: false,
        },
    }
}
