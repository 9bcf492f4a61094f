//! The per-step loop.
//!
//! One step runs, in order:
//!
//! 1. environment change (probability `u`): every adaptation flag and the
//!    teacher snapshot are cleared and the AI level drops to 0;
//! 2. learning: every agent runs its procedure against the previous step's
//!    snapshot and the current AI level, and the results become the next
//!    snapshot;
//! 3. survival;
//! 4. measurement: `q_ok` is adapted survivors over `n_agents`;
//! 5. replenishment back to `n_agents`;
//! 6. the AI update towards the measured `q_ok`.
//!
//! Social information is therefore exactly one step old, and learners see the
//! AI level set at the end of the previous step.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::ai::update_ai;
use crate::error::{Result, SimError};
use crate::feedback::apply_feedback_penalty;
use crate::model::{Agent, AiNode, Strategy};
use crate::params::SimParams;
use crate::rng::{chance, seeded, SimRng};
use crate::series::{StepAudit, StepStats, TimeSeries};
use crate::strategies::{learn, LearningContext};

#[derive(Debug, Clone, PartialEq)]
pub struct PopulationState {
    pub agents: Vec<Agent>,
    pub prev_q_ok: f64,
    /// Adaptation flags at the end of the previous learning phase.
    pub snapshot: Vec<bool>,
}

/// Aggregates gathered while the population learns.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LearningSummary {
    pub frac_individual: f64,
    pub mean_ai_propensity: f64,
    pub mean_kappa: f64,
    pub ai_learners: u32,
    pub human_learners: u32,
    pub individual_attempts: u32,
}

impl PopulationState {
    /// The founding population: unadapted, full skill, strategies and
    /// propensities drawn from the `initial_*` parameters.
    pub fn founding<R: Rng + ?Sized>(params: &SimParams, rng: &mut R) -> PopulationState {
        let social_allowed = params.learning_mode.allows_social();
        let agents = (0..params.n_agents)
            .map(|_| {
                let strategy = if social_allowed && chance(rng, params.initial_social_fraction) {
                    Strategy::Social
                } else {
                    Strategy::Individual
                };
                let offset = params.initial_propensity_spread * (2.0 * rng.random::<f64>() - 1.0);
                let ai_propensity = (params.initial_ai_propensity + offset).clamp(0.0, 1.0);
                Agent {
                    strategy,
                    ai_propensity,
                    adapted: false,
                    kappa: 1.0,
                }
            })
            .collect();
        PopulationState {
            agents,
            prev_q_ok: 0.0,
            snapshot: vec![false; params.n_agents],
        }
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    pub fn adapted_count(&self) -> usize {
        self.agents.iter().filter(|a| a.adapted).count()
    }
}

/// Moves the optimum with probability `u`. Returns whether it moved.
pub fn step_environment<R: Rng + ?Sized>(state: &mut PopulationState, ai: &mut AiNode, u: f64, rng: &mut R) -> bool {
    if !chance(rng, u) {
        return false;
    }
    for a in &mut state.agents {
        a.adapted = false;
    }
    state.snapshot.fill(false);
    *ai = AiNode::default();
    true
}

/// Every agent learns once. Rewrites adaptation flags, applies deskilling to
/// agents that consulted the AI, and refreshes the teacher snapshot.
pub fn learning_phase<R: Rng + ?Sized>(
    state: &mut PopulationState,
    ai: AiNode,
    params: &SimParams,
    scratch: &mut Vec<bool>,
    rng: &mut R,
) -> LearningSummary {
    let ctx = LearningContext::new(params, ai, &state.snapshot);
    scratch.clear();
    let mut summary = LearningSummary::default();
    let (mut individual, mut social) = (0usize, 0usize);
    let (mut propensity_sum, mut kappa_sum) = (0.0, 0.0);

    for agent in &mut state.agents {
        let out = learn(agent, &ctx, rng);
        agent.adapted = out.adapted;
        if out.consulted_ai {
            summary.ai_learners += 1;
            apply_feedback_penalty(agent, params.feedback_decay);
        }
        summary.human_learners += out.consulted_human as u32;
        summary.individual_attempts += out.learned_individually as u32;
        match agent.strategy {
            Strategy::Individual => individual += 1,
            Strategy::Social => {
                social += 1;
                propensity_sum += agent.ai_propensity;
            }
        }
        kappa_sum += agent.kappa;
        scratch.push(out.adapted);
    }
    std::mem::swap(&mut state.snapshot, scratch);

    let n = state.agents.len().max(1) as f64;
    summary.frac_individual = individual as f64 / n;
    summary.mean_ai_propensity = if social > 0 {
        propensity_sum / social as f64
    } else {
        0.0
    };
    summary.mean_kappa = kappa_sum / n;
    summary
}

/// Keeps each agent with probability `s_ok` if adapted, `s_not_ok` otherwise,
/// preserving order. Returns the number of adapted survivors.
pub fn survival_phase<R: Rng + ?Sized>(agents: &mut Vec<Agent>, s_ok: f64, s_not_ok: f64, rng: &mut R) -> usize {
    agents.retain(|a| chance(rng, if a.adapted { s_ok } else { s_not_ok }));
    agents.iter().filter(|a| a.adapted).count()
}

/// No survivors were left to reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Extinct;

/// Refills the population to `n_agents` with offspring of uniformly chosen
/// survivors. Offspring inherit strategy and AI-propensity, mutate both, and
/// start unadapted with full skill. The strategy never mutates in
/// individual-only scenarios.
pub fn replenish<R: Rng + ?Sized>(agents: &mut Vec<Agent>, params: &SimParams, rng: &mut R) -> Result<(), Extinct> {
    let survivors = agents.len();
    if survivors == 0 {
        return Err(Extinct);
    }
    let flips_allowed = params.learning_mode.allows_social();
    while agents.len() < params.n_agents {
        let parent = agents[rng.random_range(0..survivors)];
        let mut strategy = parent.strategy;
        if flips_allowed && chance(rng, params.strategy_mutation_p) {
            strategy = strategy.flipped();
        }
        let mut ai_propensity = parent.ai_propensity;
        if chance(rng, params.propensity_mutation_p) {
            let noise: f64 = rng.sample(StandardNormal);
            ai_propensity = (ai_propensity + params.propensity_mutation_sigma * noise).clamp(0.0, 1.0);
        }
        agents.push(Agent {
            strategy,
            ai_propensity,
            adapted: false,
            kappa: 1.0,
        });
    }
    Ok(())
}

/// A run in progress. [`run_simulation`] drives one of these to completion;
/// stepping by hand is useful for inspecting intermediate populations.
#[derive(Debug, Clone)]
pub struct Simulation {
    params: SimParams,
    rng: SimRng,
    state: PopulationState,
    ai: AiNode,
    t: u64,
    scratch: Vec<bool>,
}

impl Simulation {
    pub fn new(params: SimParams) -> Result<Simulation> {
        params.validate()?;
        let mut rng = seeded(params.seed);
        let state = PopulationState::founding(&params, &mut rng);
        Ok(Simulation {
            scratch: Vec::with_capacity(params.n_agents),
            params,
            rng,
            state,
            ai: AiNode::default(),
            t: 0,
        })
    }

    pub fn params(&self) -> &SimParams {
        &self.params
    }

    pub fn state(&self) -> &PopulationState {
        &self.state
    }

    pub fn ai(&self) -> AiNode {
        self.ai
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// Advances one step. On extinction the stats of the fatal step are still
    /// returned in the error position so callers can record them.
    pub fn step(&mut self) -> std::result::Result<(StepStats, StepAudit), (StepStats, StepAudit)> {
        let p = &self.params;
        let env_changed = step_environment(&mut self.state, &mut self.ai, p.u, &mut self.rng);
        let learned = learning_phase(&mut self.state, self.ai, p, &mut self.scratch, &mut self.rng);
        let adapted_survivors = survival_phase(&mut self.state.agents, p.s_ok, p.s_not_ok, &mut self.rng);
        let q_ok = adapted_survivors as f64 / p.n_agents as f64;
        self.state.prev_q_ok = q_ok;

        let mut stats = StepStats {
            t: self.t,
            q_ok,
            frac_individual: learned.frac_individual,
            mean_ai_propensity: learned.mean_ai_propensity,
            ai_level: self.ai.level(),
            mean_kappa: learned.mean_kappa,
            env_changed,
        };
        let mut audit = StepAudit {
            ai_learners: learned.ai_learners,
            human_learners: learned.human_learners,
            individual_attempts: learned.individual_attempts,
            ai_branch: crate::series::AiBranch::Retained,
            individual_expected: p.ai_policy.individual_success(),
            social_expected: q_ok,
        };
        self.t += 1;

        if replenish(&mut self.state.agents, p, &mut self.rng).is_err() {
            return Err((stats, audit));
        }
        let update = update_ai(self.ai, q_ok, &p.ai_policy, &mut self.rng);
        self.ai = update.node;
        stats.ai_level = update.node.level();
        audit.ai_branch = update.branch;
        Ok((stats, audit))
    }
}

/// Runs a full scenario. Deterministic in `params.seed`.
pub fn run_simulation(params: &SimParams) -> Result<TimeSeries> {
    let mut sim = Simulation::new(params.clone())?;
    let n = params.t_total as usize;
    let mut steps = Vec::with_capacity(n);
    let mut audit = Vec::with_capacity(n);
    for _ in 0..n {
        match sim.step() {
            Ok((s, a)) => {
                steps.push(s);
                audit.push(a);
            }
            Err((s, a)) => {
                steps.push(s);
                audit.push(a);
                return Err(SimError::Extinction {
                    step: s.t,
                    partial: Box::new(TimeSeries {
                        params: params.clone(),
                        steps,
                        audit,
                    }),
                });
            }
        }
    }
    Ok(TimeSeries {
        params: params.clone(),
        steps,
        audit,
    })
}
