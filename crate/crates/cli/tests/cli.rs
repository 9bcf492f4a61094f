use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const SMALL: &str = r#"
[environment]
u = 0.05

[learning]
mode = "ai_and_human_critical"
feedback_decay = 0.95

[run]
n_agents = 80
t_total = 400
equilibrium_window = 100
seed = 5
"#;

const SMALL_SWEEP: &str = r#"
[environment]
u = 0.05

[learning]
mode = "ai_critical"

[ai]
policy = "scheduled_social"

[run]
n_agents = 60
t_total = 300
equilibrium_window = 100
seed = 9

[sweep]
seeds_per_cell = 2

[[sweep.axis]]
path = "environment.u"
values = [0.01, 0.5]

[[sweep.axis]]
path = "ai.update_rate"
values = [0.1, 1.0]
"#;

fn rogers(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rogers")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn out(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn read(path: impl AsRef<Path>) -> String {
    fs::read_to_string(path).unwrap()
}

#[test]
fn run_writes_series_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "small.toml", SMALL);
    let dest = out(&dir, "run");
    let o = rogers(&["run", "--config", &cfg, "--out", &dest]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = read(Path::new(&dest).join("timeseries.csv"));
    assert_eq!(csv.lines().count(), 401);
    assert!(csv.starts_with("t,q_ok,frac_individual,mean_ai_propensity,ai_level,mean_kappa,env_changed\n"));

    let again = out(&dir, "again");
    let saved = Path::new(&dest).join("config.toml");
    assert!(rogers(&["run", "--config", saved.to_str().unwrap(), "--out", &again])
        .status
        .success());
    assert_eq!(read(Path::new(&again).join("timeseries.csv")), csv);
}

#[test]
fn seed_flag_controls_the_stream() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "small.toml", SMALL);
    let series = |name: &str, seed: &str| {
        let dest = out(&dir, name);
        assert!(rogers(&["run", "--config", &cfg, "--seed", seed, "--out", &dest])
            .status
            .success());
        read(Path::new(&dest).join("timeseries.csv"))
    };
    assert_eq!(series("a", "11"), series("b", "11"));
    assert_ne!(series("c", "11"), series("d", "12"));
}

#[test]
fn presets_are_accepted_by_name() {
    let o = rogers(&["predict", "--config", "baseline_individual"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("individual_only = 0.58311"), "{text}");
    assert!(text.contains("mixed = 0.58311"), "{text}");
}

#[test]
fn predict_uses_the_given_share() {
    let o = rogers(&["predict", "--config", "human_social", "--q-i", "0.5"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("mixed = 0.54026684"), "{text}");
    assert_eq!(
        rogers(&["predict", "--config", "human_social", "--q-i", "1.5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn configuration_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_u = write(&dir, "u.toml", &SMALL.replace("u = 0.05", "u = 2.0"));
    let o = rogers(&["run", "--config", &bad_u, "--out", &out(&dir, "x")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`u`"));

    let empty = write(&dir, "empty.toml", "");
    assert_eq!(
        rogers(&["run", "--config", &empty, "--out", &out(&dir, "y")])
            .status
            .code(),
        Some(2)
    );

    let typo = write(&dir, "typo.toml", &SMALL.replace("feedback_decay", "feedback_dekay"));
    let o = rogers(&["run", "--config", &typo, "--out", &out(&dir, "z")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("feedback_dekay"));

    let small = write(&dir, "small.toml", SMALL);
    assert_eq!(
        rogers(&["sweep", "--config", &small, "--out", &out(&dir, "w")])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        rogers(&["paper", "--figure", "7", "--out", &out(&dir, "v")])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn io_errors_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = write(&dir, "file", "not a directory");
    let cfg = write(&dir, "small.toml", SMALL);
    assert_eq!(
        rogers(&["run", "--config", &cfg, "--out", &blocker]).status.code(),
        Some(4)
    );
    let missing = out(&dir, "nope.toml");
    assert_eq!(
        rogers(&["run", "--config", &missing, "--out", &out(&dir, "x")])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn extinction_exits_3_with_partial_series() {
    let dir = tempfile::tempdir().unwrap();
    let doomed = SMALL.replace("u = 0.05", "u = 0.05\ns_ok = 0.0\ns_not_ok = 0.0");
    let cfg = write(&dir, "doomed.toml", &doomed);
    let dest = out(&dir, "run");
    let o = rogers(&["run", "--config", &cfg, "--out", &dest]);
    assert_eq!(o.status.code(), Some(3));
    let csv = read(Path::new(&dest).join("timeseries.csv"));
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn sweep_output_is_independent_of_workers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "sweep.toml", SMALL_SWEEP);
    let sweep = |workers: &str| {
        let dest = out(&dir, &format!("w{workers}"));
        let o = rogers(&["sweep", "--config", &cfg, "--out", &dest, "--workers", workers]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        read(Path::new(&dest).join("sweep.csv"))
    };
    let one = sweep("1");
    assert_eq!(one, sweep("3"));
    let lines: Vec<&str> = one.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("environment.u,0.01,ai.update_rate,0.1,"));
    assert!(lines[4].starts_with("environment.u,0.5,ai.update_rate,1,"));
    assert!(lines[1..].iter().all(|l| l.ends_with(",2,ok")));
}

#[test]
fn paper_batteries_write_their_csvs() {
    let dir = tempfile::tempdir().unwrap();
    let quick = ["--seeds", "1", "--steps", "80", "--agents", "30"];
    let cases: [(&str, &[&str]); 7] = [
        ("2", &["fig2_individual", "fig2_ai_social"]),
        ("3", &["fig3_individual", "fig3_ai_social", "fig3_ai_critical"]),
        ("4", &["fig4_update_schedule"]),
        ("5", &["fig5_baseline", "fig5_critical"]),
        ("6", &["fig6_ai_critical", "fig6_two_sources", "fig6_phase_out"]),
        ("A1", &["figA1_individual", "figA1_human_social"]),
        ("A2", &["figA2_ai_social", "figA2_ai_gated"]),
    ];
    for (figure, files) in cases {
        let dest = out(&dir, figure);
        let mut args = vec!["paper", "--figure", figure, "--out", &dest];
        args.extend(quick);
        let o = rogers(&args);
        assert!(
            o.status.success(),
            "figure {figure}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        for f in files {
            let csv = read(Path::new(&dest).join(format!("{f}.csv")));
            assert!(csv.lines().count() > 1, "{f}");
        }
    }
    let heatmap = read(dir.path().join("5").join("fig5_critical.csv"));
    assert_eq!(heatmap.lines().count(), 26);
    let series = read(dir.path().join("2").join("fig2_individual.csv"));
    assert_eq!(series.lines().count(), 81);
}
