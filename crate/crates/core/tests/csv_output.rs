use std::fs;

use rogers_sim::analytics::Estimate;
use rogers_sim::config::preset_params;
use rogers_sim::io::{
    read_sweep_csv, read_timeseries_csv, write_sweep, write_sweep_csv, write_timeseries, write_timeseries_csv,
};
use rogers_sim::sweep::{CellStatus, SweepRow};
use rogers_sim::{run_simulation, LearningMode, SimParams, StepStats, SweepResult, TimeSeries};

const GOLDEN_TIMESERIES: &str = include_str!("golden/timeseries_10.csv");
const GOLDEN_SWEEP: &str = include_str!("golden/sweep.csv");

fn golden_params() -> SimParams {
    SimParams {
        n_agents: 50,
        t_total: 10,
        equilibrium_window: 5,
        u: 0.2,
        seed: 2024,
        feedback_decay: 0.9,
        ..SimParams::baseline().with_mode(LearningMode::AiAndHumanCritical)
    }
}

fn golden_sweep() -> SweepResult {
    SweepResult {
        rows: vec![
            SweepRow {
                axes: vec![("environment.u".into(), 0.01), ("ai.update_rate".into(), 0.5)],
                estimate: Estimate {
                    mean: 0.8775371012345,
                    std_error: 0.00028382182,
                },
                seeds: 10,
                status: CellStatus::Ok,
            },
            SweepRow {
                axes: vec![("environment.u".into(), 0.5), ("ai.update_rate".into(), 1.0)],
                estimate: Estimate {
                    mean: 2.0 / 3.0,
                    std_error: 0.0,
                },
                seeds: 10,
                status: CellStatus::Extinct,
            },
            SweepRow {
                axes: vec![("environment.u".into(), 0.1)],
                estimate: Estimate {
                    mean: 0.6,
                    std_error: 1e-5,
                },
                seeds: 3,
                status: CellStatus::Ok,
            },
        ],
    }
}

fn render(series: &TimeSeries) -> String {
    let mut buf = Vec::new();
    write_timeseries(series, &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn seeded_ten_step_run_matches_golden_file() {
    let series = run_simulation(&golden_params()).unwrap();
    assert_eq!(render(&series), GOLDEN_TIMESERIES);
}

#[test]
fn sweep_schema_matches_golden_file() {
    let mut buf = Vec::new();
    write_sweep(&golden_sweep(), &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap(), GOLDEN_SWEEP);
}

#[test]
fn headers_are_stable() {
    assert_eq!(
        GOLDEN_TIMESERIES.lines().next().unwrap(),
        "t,q_ok,frac_individual,mean_ai_propensity,ai_level,mean_kappa,env_changed"
    );
    assert_eq!(
        GOLDEN_SWEEP.lines().next().unwrap(),
        "axis1_name,axis1_value,axis2_name,axis2_value,equilibrium_mean,std_error,seeds,status"
    );
}

#[test]
fn three_steps_make_four_lines() {
    let series = run_simulation(&SimParams {
        t_total: 3,
        equilibrium_window: 1,
        ..golden_params()
    })
    .unwrap();
    assert_eq!(render(&series).lines().count(), 4);
}

#[test]
fn files_read_back_to_nine_digits() {
    let dir = tempfile::tempdir().unwrap();
    let series = run_simulation(&SimParams {
        t_total: 300,
        ..golden_params()
    })
    .unwrap();
    let path = dir.path().join("series.csv");
    write_timeseries_csv(&series, &path).unwrap();
    let back = read_timeseries_csv(&path).unwrap();
    assert_eq!(back.len(), series.steps.len());
    let close = |a: f64, b: f64| a == b || ((a - b) / b).abs() <= 5e-9;
    for (a, b) in back.iter().zip(&series.steps) {
        let StepStats { t, env_changed, .. } = *b;
        assert_eq!((a.t, a.env_changed), (t, env_changed));
        assert!(close(a.q_ok, b.q_ok));
        assert!(close(a.frac_individual, b.frac_individual));
        assert!(close(a.mean_ai_propensity, b.mean_ai_propensity));
        assert!(close(a.ai_level, b.ai_level));
        assert!(close(a.mean_kappa, b.mean_kappa));
    }

    let path = dir.path().join("sweep.csv");
    write_sweep_csv(&golden_sweep(), &path).unwrap();
    let back = read_sweep_csv(&path).unwrap();
    assert_eq!(back.rows.len(), 3);
    assert_eq!(back.rows[1].status, CellStatus::Extinct);
    assert_eq!(back.rows[2].axes, vec![("environment.u".to_string(), 0.1)]);
    assert_eq!(back.rows[0].estimate.mean, 0.877537101);
}

#[test]
fn unwritable_destination_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let series = run_simulation(&SimParams {
        t_total: 3,
        equilibrium_window: 1,
        ..golden_params()
    })
    .unwrap();
    let err = write_timeseries_csv(&series, dir.path().join("missing/x.csv")).unwrap_err();
    assert_eq!(err.exit_code(), 4);
}

#[test]
fn baseline_csv_trailing_mean() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("baseline.csv");
    write_timeseries_csv(
        &run_simulation(&preset_params("baseline_individual").unwrap()).unwrap(),
        &path,
    )
    .unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let rows: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(rows.len(), 200_000);
    let tail = &rows[rows.len() - 50_000..];
    let mean = tail.iter().sum::<f64>() / tail.len() as f64;
    assert!((mean - 0.583).abs() < 0.01, "{mean}");
}
