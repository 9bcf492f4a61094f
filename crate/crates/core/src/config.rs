//! Scenario files and the bundled preset catalog.
//!
//! A scenario is a TOML document with five sections. Keys left out of a
//! section take the reference-scenario value; unknown keys are rejected.
//!
//! ```toml
//! [environment]
//! u = 0.01
//! s_ok = 0.93
//! s_not_ok = 0.85
//!
//! [learning]
//! mode = "ai_critical"
//! c_i = 0.05
//! z_i = 0.66
//!
//! [evolution]
//! strategy_mutation_p = 0.005
//!
//! [ai]
//! policy = "scheduled_social"
//! social_update_cost = 0.5
//!
//! [run]
//! n_agents = 1000
//! t_total = 200000
//! equilibrium_window = 50000
//! seed = 1
//! ```
//!
//! Adding a `[sweep]` section with `seeds_per_cell` and up to two
//! `[[sweep.axis]]` tables (`path`, `values`) turns the file into a sweep.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::params::{AiPolicyMode, AiPolicyParams, LearningMode, MixedSelector, SimParams};
use crate::sweep::{Axis, SweepSpec, DEFAULT_SEEDS_PER_CELL};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
struct EnvironmentSection {
    u: f64,
    s_ok: f64,
    s_not_ok: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
struct LearningSection {
    mode: LearningMode,
    c_i: f64,
    z_i: f64,
    c_s_human: f64,
    c_s_ai: f64,
    feedback_decay: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
struct EvolutionSection {
    strategy_mutation_p: f64,
    propensity_mutation_p: f64,
    propensity_mutation_sigma: f64,
    initial_social_fraction: f64,
    initial_ai_propensity: f64,
    initial_propensity_spread: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
struct AiSection {
    policy: AiPolicyMode,
    social_update_cost: f64,
    individual_update_cost: f64,
    z_ai: f64,
    mixed_selector: MixedSelector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
struct RunSection {
    n_agents: usize,
    t_total: u64,
    equilibrium_window: u64,
    seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct AxisSection {
    path: String,
    values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct SweepSection {
    #[serde(default = "default_seeds")]
    seeds_per_cell: u32,
    #[serde(default)]
    axis: Vec<AxisSection>,
}

fn default_seeds() -> u32 {
    DEFAULT_SEEDS_PER_CELL
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ConfigFile {
    environment: EnvironmentSection,
    learning: LearningSection,
    #[serde(default)]
    evolution: EvolutionSection,
    #[serde(default)]
    ai: AiSection,
    run: RunSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sweep: Option<SweepSection>,
}

impl From<&SimParams> for ConfigFile {
    fn from(p: &SimParams) -> ConfigFile {
        ConfigFile {
            environment: EnvironmentSection {
                u: p.u,
                s_ok: p.s_ok,
                s_not_ok: p.s_not_ok,
            },
            learning: LearningSection {
                mode: p.learning_mode,
                c_i: p.c_i,
                z_i: p.z_i,
                c_s_human: p.c_s_human,
                c_s_ai: p.c_s_ai,
                feedback_decay: p.feedback_decay,
            },
            evolution: EvolutionSection {
                strategy_mutation_p: p.strategy_mutation_p,
                propensity_mutation_p: p.propensity_mutation_p,
                propensity_mutation_sigma: p.propensity_mutation_sigma,
                initial_social_fraction: p.initial_social_fraction,
                initial_ai_propensity: p.initial_ai_propensity,
                initial_propensity_spread: p.initial_propensity_spread,
            },
            ai: AiSection {
                policy: p.ai_policy.mode,
                social_update_cost: p.ai_policy.social_update_cost,
                individual_update_cost: p.ai_policy.individual_update_cost,
                z_ai: p.ai_policy.z_ai,
                mixed_selector: p.ai_policy.mixed_selector,
            },
            run: RunSection {
                n_agents: p.n_agents,
                t_total: p.t_total,
                equilibrium_window: p.equilibrium_window,
                seed: p.seed,
            },
            sweep: None,
        }
    }
}

impl ConfigFile {
    fn params(&self) -> SimParams {
        let (e, l, v, a, r) = (&self.environment, &self.learning, &self.evolution, &self.ai, &self.run);
        SimParams {
            n_agents: r.n_agents,
            u: e.u,
            s_ok: e.s_ok,
            s_not_ok: e.s_not_ok,
            c_i: l.c_i,
            z_i: l.z_i,
            c_s_human: l.c_s_human,
            c_s_ai: l.c_s_ai,
            strategy_mutation_p: v.strategy_mutation_p,
            propensity_mutation_p: v.propensity_mutation_p,
            propensity_mutation_sigma: v.propensity_mutation_sigma,
            t_total: r.t_total,
            equilibrium_window: r.equilibrium_window,
            learning_mode: l.mode,
            feedback_decay: l.feedback_decay,
            ai_policy: AiPolicyParams {
                social_update_cost: a.social_update_cost,
                individual_update_cost: a.individual_update_cost,
                z_ai: a.z_ai,
                mode: a.policy,
                mixed_selector: a.mixed_selector,
            },
            initial_social_fraction: v.initial_social_fraction,
            initial_ai_propensity: v.initial_ai_propensity,
            initial_propensity_spread: v.initial_propensity_spread,
            seed: r.seed,
        }
    }
}

macro_rules! section_defaults {
    ($($section:ident => $field:ident),* $(,)?) => {
        $(impl Default for $section {
            fn default() -> Self {
                ConfigFile::from(&SimParams::baseline()).$field
            }
        })*
    };
}

section_defaults!(
    EnvironmentSection => environment,
    LearningSection => learning,
    EvolutionSection => evolution,
    AiSection => ai,
    RunSection => run,
);

/// A parsed, validated scenario file.
#[derive(Debug, Clone, PartialEq)]
pub enum Config {
    Sim(SimParams),
    Sweep(SweepSpec),
}

impl Config {
    /// The scenario's parameters; for a sweep, its base.
    pub fn params(&self) -> &SimParams {
        match self {
            Config::Sim(p) => p,
            Config::Sweep(s) => &s.base,
        }
    }
}

/// Parses scenario text. `origin` names the source in error messages.
pub fn parse_config(text: &str, origin: &str) -> Result<Config> {
    let parse_err = |message: String| SimError::Parse {
        origin: origin.to_string(),
        message,
    };
    let de = toml::Deserializer::parse(text).map_err(|e| parse_err(e.to_string()))?;
    let mut unknown = Vec::new();
    let file: ConfigFile =
        serde_ignored::deserialize(de, |path| unknown.push(path.to_string())).map_err(|e| parse_err(e.to_string()))?;
    if let Some(key) = unknown.into_iter().next() {
        return Err(SimError::UnknownKey {
            origin: origin.to_string(),
            key,
        });
    }
    let params = file.params();
    match file.sweep {
        None => {
            params.validate()?;
            Ok(Config::Sim(params))
        }
        Some(sweep) => {
            let spec = SweepSpec {
                base: params,
                axes: sweep.axis.into_iter().map(|a| Axis::new(a.path, a.values)).collect(),
                seeds_per_cell: sweep.seeds_per_cell,
            };
            spec.validate()?;
            Ok(Config::Sweep(spec))
        }
    }
}

/// Reads a scenario file, or a bundled preset when `path` names one and no
/// such file exists.
pub fn load_config(path: impl AsRef<Path>) -> Result<Config> {
    let path = path.as_ref();
    if !path.exists() {
        if let Some(text) = path.to_str().and_then(preset_text) {
            return parse_config(text, &format!("preset `{}`", path.display()));
        }
    }
    let text = fs::read_to_string(path).map_err(|e| SimError::io(path, e))?;
    parse_config(&text, &path.display().to_string())
}

/// Renders parameters (and optionally sweep axes) as scenario text that
/// [`parse_config`] reads back to the same values.
pub fn to_config_string(config: &Config) -> String {
    let mut file = ConfigFile::from(config.params());
    if let Config::Sweep(spec) = config {
        file.sweep = Some(SweepSection {
            seeds_per_cell: spec.seeds_per_cell,
            axis: spec
                .axes
                .iter()
                .map(|a| AxisSection {
                    path: a.path.clone(),
                    values: a.values.clone(),
                })
                .collect(),
        });
    }
    toml::to_string(&file).expect("scenario serialization cannot fail")
}

/// Bundled scenarios, by name.
pub const PRESETS: &[(&str, &str)] = &[
    (
        "baseline_individual",
        include_str!("../presets/baseline_individual.toml"),
    ),
    ("human_social", include_str!("../presets/human_social.toml")),
    ("ai_social", include_str!("../presets/ai_social.toml")),
    ("ai_gated", include_str!("../presets/ai_gated.toml")),
    ("ai_critical", include_str!("../presets/ai_critical.toml")),
    ("ai_scheduled", include_str!("../presets/ai_scheduled.toml")),
    ("ai_individual", include_str!("../presets/ai_individual.toml")),
    ("ai_mixed", include_str!("../presets/ai_mixed.toml")),
    ("ai_mixed_critical", include_str!("../presets/ai_mixed_critical.toml")),
    (
        "feedback_ai_critical",
        include_str!("../presets/feedback_ai_critical.toml"),
    ),
    (
        "feedback_two_sources",
        include_str!("../presets/feedback_two_sources.toml"),
    ),
    ("feedback_phase_out", include_str!("../presets/feedback_phase_out.toml")),
    (
        "sweep_update_schedule",
        include_str!("../presets/sweep_update_schedule.toml"),
    ),
    (
        "sweep_ai_individual",
        include_str!("../presets/sweep_ai_individual.toml"),
    ),
];

pub fn preset_text(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn load_preset(name: &str) -> Result<Config> {
    let text = preset_text(name).ok_or_else(|| SimError::Parse {
        origin: "preset catalog".into(),
        message: format!("no preset named `{name}`"),
    })?;
    parse_config(text, &format!("preset `{name}`"))
}

/// Loads a preset that must be a single scenario.
pub fn preset_params(name: &str) -> Result<SimParams> {
    match load_preset(name)? {
        Config::Sim(p) => Ok(p),
        Config::Sweep(_) => Err(SimError::Parse {
            origin: format!("preset `{name}`"),
            message: "is a sweep, not a single scenario".into(),
        }),
    }
}

pub fn preset_sweep(name: &str) -> Result<SweepSpec> {
    match load_preset(name)? {
        Config::Sweep(s) => Ok(s),
        Config::Sim(_) => Err(SimError::Parse {
            origin: format!("preset `{name}`"),
            message: "is a single scenario, not a sweep".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    #[test]
    fn baseline_preset_matches_reference() {
        let p = preset_params("baseline_individual").unwrap();
        assert_eq!(p.learning_mode, LearningMode::IndividualOnly);
        assert_eq!(
            p,
            SimParams {
                seed: p.seed,
                ..SimParams::baseline()
            }
        );
    }

    #[test]
    fn every_preset_validates_and_catalog_is_complete() {
        let mut modes = HashSet::new();
        let mut policies = HashSet::new();
        for (name, _) in PRESETS {
            let cfg = load_preset(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            modes.insert(cfg.params().learning_mode);
            policies.insert(cfg.params().ai_policy.mode);
        }
        assert_eq!(modes.len(), LearningMode::ALL.len());
        assert_eq!(policies.len(), AiPolicyMode::ALL.len());
    }

    #[test]
    fn empty_file_is_a_parse_error() {
        assert!(matches!(parse_config("", "empty"), Err(SimError::Parse { .. })));
        assert!(matches!(
            parse_config("[environment\n", "broken"),
            Err(SimError::Parse { .. })
        ));
    }

    #[test]
    fn out_of_range_names_the_field() {
        let text = "[environment]\nu = 2.0\n[learning]\n[run]\n";
        match parse_config(text, "t") {
            Err(SimError::Validation { field, .. }) => assert_eq!(field, "u"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = "[environment]\nuu = 0.2\n[learning]\n[run]\n";
        match parse_config(text, "t") {
            Err(SimError::UnknownKey { key, .. }) => assert_eq!(key, "environment.uu"),
            other => panic!("{other:?}"),
        }
        let text = "[environment]\n[learning]\n[run]\n[extra]\na = 1\n";
        assert!(matches!(parse_config(text, "t"), Err(SimError::UnknownKey { .. })));
    }

    #[test]
    fn bad_axis_path_is_unknown_key() {
        let text = "[environment]\n[learning]\n[run]\n[sweep]\n[[sweep.axis]]\npath = \"ai.zai\"\nvalues = [0.1]\n";
        assert!(matches!(parse_config(text, "t"), Err(SimError::UnknownKey { .. })));
    }

    #[test]
    fn sweep_presets_parse() {
        let s = preset_sweep("sweep_update_schedule").unwrap();
        assert_eq!(s.axes.len(), 2);
        assert_eq!(s.base.learning_mode, LearningMode::AiCritical);
        assert!(preset_params("sweep_update_schedule").is_err());
    }

    #[test]
    fn missing_file_is_io() {
        assert!(matches!(
            load_config("/nonexistent/scenario.toml"),
            Err(SimError::Io { .. })
        ));
        assert!(load_config("ai_social").is_ok());
    }

    fn unit() -> impl Strategy<Value = f64> {
        0.0f64..=1.0
    }

    proptest! {
        #[test]
        fn scenario_text_round_trips(
            u in unit(), s_not_ok in 0.0f64..0.5, c_i in unit(), z_i in unit(),
            c_s in unit(), decay in 0.01f64..=1.0, seed in any::<u64>(),
            mode in prop::sample::select(LearningMode::ALL.to_vec()),
            policy in prop::sample::select(AiPolicyMode::ALL.to_vec()),
            z_ai in unit(), n in 2usize..5000,
        ) {
            let mut p = SimParams::baseline();
            p.u = u;
            p.s_not_ok = s_not_ok;
            p.c_i = c_i;
            p.z_i = z_i;
            p.c_s_human = c_s;
            p.feedback_decay = decay;
            p.seed = seed;
            p.learning_mode = mode;
            p.ai_policy.mode = policy;
            p.ai_policy.z_ai = z_ai;
            p.n_agents = n;
            let cfg = Config::Sim(p);
            let back = parse_config(&to_config_string(&cfg), "round trip").unwrap();
            prop_assert_eq!(back, cfg);
        }
    }
}
