use proptest::prelude::*;
use rogers_sim::{run_simulation, AiPolicyMode, AiPolicyParams, LearningMode, MixedSelector, SimParams};

fn mode() -> impl Strategy<Value = LearningMode> {
    prop::sample::select(LearningMode::ALL.to_vec())
}

fn policy() -> impl Strategy<Value = AiPolicyParams> {
    (
        prop::sample::select(AiPolicyMode::ALL.to_vec()),
        0.0..=1.0f64,
        0.0..=1.0f64,
        0.0..=1.0f64,
        any::<bool>(),
    )
        .prop_map(|(mode, social, individual, z_ai, greedy)| AiPolicyParams {
            mode,
            social_update_cost: social,
            individual_update_cost: individual,
            z_ai,
            mixed_selector: if greedy {
                MixedSelector::Greedy
            } else {
                MixedSelector::CostGated
            },
        })
}

prop_compose! {
    fn scenario()(
        mode in mode(),
        ai_policy in policy(),
        u in 0.0..=1.0f64,
        s_ok in 0.5..=1.0f64,
        c_i in 0.0..=1.0f64,
        z_i in 0.0..=1.0f64,
        c_s_human in 0.0..=1.0f64,
        decay in 0.5..=1.0f64,
        seed in any::<u64>(),
    ) -> SimParams {
        SimParams {
            n_agents: 60,
            t_total: 150,
            equilibrium_window: 50,
            u,
            s_ok,
            s_not_ok: s_ok * 0.9,
            c_i,
            z_i,
            c_s_human,
            feedback_decay: decay,
            ai_policy,
            seed,
            ..SimParams::baseline().with_mode(mode)
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recorded_statistics_stay_in_range(p in scenario()) {
        let series = run_simulation(&p).unwrap();
        prop_assert_eq!(series.len(), p.t_total as usize);
        for (i, s) in series.steps.iter().enumerate() {
            prop_assert_eq!(s.t, i as u64);
            for v in [s.q_ok, s.frac_individual, s.mean_ai_propensity, s.ai_level] {
                prop_assert!((0.0..=1.0).contains(&v));
            }
            prop_assert!(s.mean_kappa > 0.0 && s.mean_kappa <= 1.0);
            if p.feedback_decay == 1.0 || p.learning_mode == LearningMode::IndividualOnly {
                prop_assert_eq!(s.mean_kappa, 1.0);
            }
        }
        if p.learning_mode == LearningMode::IndividualOnly {
            prop_assert!(series.steps.iter().all(|s| s.frac_individual == 1.0));
        }
    }

    #[test]
    fn same_seed_same_series(p in scenario()) {
        let a = run_simulation(&p).unwrap();
        let b = run_simulation(&p).unwrap();
        prop_assert_eq!(a.steps, b.steps);
    }
}
