//! Populations of individual and social learners in a changing environment,
//! with an AI node that learns from them.
//!
//! Each step the optimal behavior may change; agents learn (on their own, by
//! copying someone, or by consulting the AI); adapted agents survive more
//! often; the population is refilled by offspring that inherit their parents'
//! strategy. The long-run adapted fraction measures how well the population
//! as a whole understands its world.
//!
//! ```
//! use rogers_sim::{analytics, run_simulation, LearningMode, SimParams};
//!
//! let params = SimParams {
//!     n_agents: 200,
//!     t_total: 5_000,
//!     equilibrium_window: 2_000,
//!     ..SimParams::baseline().with_mode(LearningMode::IndividualOnly)
//! };
//! let series = run_simulation(&params).unwrap();
//! let eq = analytics::estimate_equilibrium(&series, 2_000);
//! let predicted = analytics::predict_individual_only(params.c_i, params.z_i, params.s_ok);
//! assert!((eq.mean - predicted).abs() < 0.02);
//! ```
//!
//! The guide in `book/` walks through the model chapter by chapter; its code
//! listings are compiled and run as doc-tests of this crate.

pub mod ai;
pub mod analytics;
pub mod battery;
pub mod config;
pub mod engine;
pub mod error;
pub mod feedback;
pub mod io;
pub mod model;
pub mod params;
pub mod rng;
pub mod series;
pub mod strategies;
pub mod sweep;

pub use analytics::Estimate;
pub use config::{load_config, Config};
pub use engine::{run_simulation, Simulation};
pub use error::{Result, SimError};
pub use model::{Agent, AiNode, Strategy};
pub use params::{validate_params, AiPolicyMode, AiPolicyParams, LearningMode, MixedSelector, SimParams};
pub use series::{StepStats, TimeSeries};
pub use sweep::{run_sweep, Axis, SweepResult, SweepSpec};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/strategies.md")]
    mod strategies {}
    #[doc = include_str!("../../../book/src/ai.md")]
    mod ai {}
    #[doc = include_str!("../../../book/src/feedback.md")]
    mod feedback {}
    #[doc = include_str!("../../../book/src/equilibria.md")]
    mod equilibria {}
    #[doc = include_str!("../../../book/src/sweeps.md")]
    mod sweeps {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
