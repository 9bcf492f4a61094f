use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rogers_sim::analytics::{
    estimate_equilibrium, predict_individual_only, predict_mixed_equilibrium, predict_social_equilibrium,
    predict_three_way,
};
use rogers_sim::battery::{figure_jobs, Figure, JobKind};
use rogers_sim::config::{load_config, to_config_string};
use rogers_sim::io::{format_float, write_sweep_csv, write_timeseries_csv};
use rogers_sim::{run_simulation, run_sweep, Config, LearningMode, SimError, SimParams, SweepSpec};

/// Individual and social learners with an AI node.
#[derive(Parser)]
#[command(name = "rogers", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its time series.
    Run {
        /// Scenario file or bundled preset name.
        #[arg(long)]
        config: PathBuf,
        /// Overrides the scenario's seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a parameter sweep and write one row per cell.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Print the closed-form equilibria for a scenario.
    Predict {
        #[arg(long)]
        config: PathBuf,
        /// Share of individual learners; defaults to the scenario's founding share.
        #[arg(long)]
        q_i: Option<f64>,
    },
    /// Run the scenario battery behind a figure and write its CSVs.
    Paper {
        /// One of 2, 3, 4, 5, 6, A1, A2.
        #[arg(long)]
        figure: Figure,
        #[arg(long)]
        out: PathBuf,
        /// Replicates per sweep cell.
        #[arg(long)]
        seeds: Option<u32>,
        /// Shorter runs for previews; the measurement window shrinks to a quarter if needed.
        #[arg(long)]
        steps: Option<u64>,
        #[arg(long)]
        agents: Option<usize>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<(), SimError> {
    match command {
        Command::Run { config, seed, out } => {
            let mut params = load_config(&config)?.params().clone();
            if let Some(seed) = seed {
                params.seed = seed;
            }
            params.validate()?;
            create_dir(&out)?;
            write_text(
                &out.join("config.toml"),
                &to_config_string(&Config::Sim(params.clone())),
            )?;
            run_series(&params, &out.join("timeseries.csv"))
        }
        Command::Sweep { config, out, workers } => {
            let spec = match load_config(&config)? {
                Config::Sweep(s) => s,
                Config::Sim(_) => {
                    return Err(SimError::Parse {
                        origin: config.display().to_string(),
                        message: "no [sweep] section".into(),
                    })
                }
            };
            create_dir(&out)?;
            write_text(
                &out.join("config.toml"),
                &to_config_string(&Config::Sweep(spec.clone())),
            )?;
            run_grid(&spec, workers, &out.join("sweep.csv"))
        }
        Command::Predict { config, q_i } => predict(load_config(&config)?.params(), q_i),
        Command::Paper {
            figure,
            out,
            seeds,
            steps,
            agents,
            workers,
        } => {
            create_dir(&out)?;
            for mut job in figure_jobs(figure, seeds)? {
                job.map_params(|p| rescale(p, steps, agents));
                let path = out.join(format!("{}.csv", job.name));
                match &job.kind {
                    JobKind::Series(p) => match run_series(p, &path) {
                        Err(e @ SimError::Extinction { .. }) => eprintln!("{}: {e}", job.name),
                        other => other?,
                    },
                    JobKind::Sweep(s) => run_grid(s, workers, &path)?,
                }
            }
            Ok(())
        }
    }
}

fn rescale(p: &mut SimParams, steps: Option<u64>, agents: Option<usize>) {
    if let Some(t) = steps {
        p.t_total = t;
        p.equilibrium_window = p.equilibrium_window.min((t / 4).max(1));
    }
    if let Some(n) = agents {
        p.n_agents = n;
    }
}

fn run_series(params: &SimParams, path: &Path) -> Result<(), SimError> {
    match run_simulation(params) {
        Ok(series) => {
            write_timeseries_csv(&series, path)?;
            let eq = estimate_equilibrium(&series, params.equilibrium_window as usize);
            println!(
                "{}: equilibrium {} ± {}",
                path.display(),
                format_float(eq.mean),
                format_float(eq.std_error)
            );
            Ok(())
        }
        Err(SimError::Extinction { step, partial }) => {
            write_timeseries_csv(&partial, path)?;
            Err(SimError::Extinction { step, partial })
        }
        Err(e) => Err(e),
    }
}

fn run_grid(spec: &SweepSpec, workers: usize, path: &Path) -> Result<(), SimError> {
    let result = run_sweep(spec, workers)?;
    write_sweep_csv(&result, path)?;
    println!("{}: {} cells", path.display(), result.rows.len());
    Ok(())
}

fn predict(p: &SimParams, q_i: Option<f64>) -> Result<(), SimError> {
    let q_i = q_i.unwrap_or(match p.learning_mode {
        LearningMode::IndividualOnly => 1.0,
        _ => 1.0 - p.initial_social_fraction,
    });
    if !(0.0..=1.0).contains(&q_i) {
        return Err(SimError::Validation {
            field: "q_i",
            reason: format!("{q_i} is outside [0, 1]"),
        });
    }
    let t = p.social_transmission();
    let (c_s, q_ai) = match p.learning_mode {
        LearningMode::IndividualOnly => (p.c_s_human, 0.0),
        LearningMode::HumanSocial => (p.c_s_human, 0.0),
        LearningMode::AiCritical => (p.c_s_ai, 1.0 - q_i),
        _ => (p.c_s_human, (1.0 - q_i) * p.initial_ai_propensity),
    };
    let line = |name: &str, v: f64| println!("{name} = {}", format_float(v));
    line("individual_only", predict_individual_only(p.c_i, p.z_i, p.s_ok));
    line("q_i", q_i);
    line("mixed", predict_mixed_equilibrium(q_i, p.c_i, p.z_i, c_s, t, p.s_ok)?);
    line("social", predict_social_equilibrium(q_i, p.c_i, p.z_i, c_s, t, p.s_ok)?);
    line("three_way", predict_three_way(q_i, 1.0 - q_i - q_ai, q_ai, p)?);
    Ok(())
}

fn create_dir(path: &Path) -> Result<(), SimError> {
    fs::create_dir_all(path).map_err(|source| SimError::Io {
        path: path.into(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> Result<(), SimError> {
    fs::write(path, text).map_err(|source| SimError::Io {
        path: path.into(),
        source,
    })
}
