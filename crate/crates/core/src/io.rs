//! CSV output.
//!
//! Time series: `t,q_ok,frac_individual,mean_ai_propensity,ai_level,mean_kappa,env_changed`,
//! one row per step, `env_changed` as `0`/`1`.
//!
//! Sweeps: `axis1_name,axis1_value,axis2_name,axis2_value,equilibrium_mean,std_error,seeds,status`,
//! one row per cell in row-major order; unused axis columns are empty.
//!
//! Floats are rounded to 9 significant digits and printed in the shortest
//! form that reads back to the rounded value.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::analytics::Estimate;
use crate::error::{Result, SimError};
use crate::series::{StepStats, TimeSeries};
use crate::sweep::{CellStatus, SweepResult, SweepRow};

pub const TIMESERIES_HEADER: [&str; 7] = [
    "t",
    "q_ok",
    "frac_individual",
    "mean_ai_propensity",
    "ai_level",
    "mean_kappa",
    "env_changed",
];

pub const SWEEP_HEADER: [&str; 8] = [
    "axis1_name",
    "axis1_value",
    "axis2_name",
    "axis2_value",
    "equilibrium_mean",
    "std_error",
    "seeds",
    "status",
];

pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded: f64 = format!("{x:.8e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        return "0".into();
    }
    format!("{rounded}")
}

fn parse_float(s: &str) -> std::result::Result<f64, String> {
    match s {
        "nan" => Ok(f64::NAN),
        "inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ => s.parse().map_err(|e| format!("`{s}`: {e}")),
    }
}

fn csv_err(path: &Path, e: csv::Error) -> SimError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => SimError::io(path, io),
        other => SimError::Parse {
            origin: path.display().to_string(),
            message: format!("{other:?}"),
        },
    }
}

pub fn write_timeseries<W: Write>(series: &TimeSeries, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TIMESERIES_HEADER)?;
    for s in &series.steps {
        w.write_record([
            s.t.to_string(),
            format_float(s.q_ok),
            format_float(s.frac_individual),
            format_float(s.mean_ai_propensity),
            format_float(s.ai_level),
            format_float(s.mean_kappa),
            (s.env_changed as u8).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_timeseries_csv(series: &TimeSeries, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| SimError::io(path, e))?;
    write_timeseries(series, BufWriter::new(file)).map_err(|e| csv_err(path, e))
}

fn parse_err(origin: &str, message: impl Into<String>) -> SimError {
    SimError::Parse {
        origin: origin.to_string(),
        message: message.into(),
    }
}

fn check_header(origin: &str, found: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    if found.iter().ne(expected.iter().copied()) {
        return Err(parse_err(
            origin,
            format!("unexpected header {:?}", found.iter().collect::<Vec<_>>()),
        ));
    }
    Ok(())
}

/// Reads a time-series CSV back into step records.
pub fn read_timeseries<R: Read>(input: R, origin: &str) -> Result<Vec<StepStats>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(|e| parse_err(origin, e.to_string()))?.clone();
    check_header(origin, &header, &TIMESERIES_HEADER)?;
    let mut steps = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| parse_err(origin, e.to_string()))?;
        let f = |i: usize| parse_float(&rec[i]).map_err(|m| parse_err(origin, m));
        steps.push(StepStats {
            t: rec[0]
                .parse()
                .map_err(|_| parse_err(origin, format!("bad step `{}`", &rec[0])))?,
            q_ok: f(1)?,
            frac_individual: f(2)?,
            mean_ai_propensity: f(3)?,
            ai_level: f(4)?,
            mean_kappa: f(5)?,
            env_changed: match &rec[6] {
                "0" => false,
                "1" => true,
                other => return Err(parse_err(origin, format!("bad env_changed `{other}`"))),
            },
        });
    }
    Ok(steps)
}

pub fn read_timeseries_csv(path: impl AsRef<Path>) -> Result<Vec<StepStats>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| SimError::io(path, e))?;
    read_timeseries(file, &path.display().to_string())
}

pub fn write_sweep<W: Write>(result: &SweepResult, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for row in &result.rows {
        let axis = |i: usize| -> (String, String) {
            row.axes
                .get(i)
                .map(|(n, v)| (n.clone(), format_float(*v)))
                .unwrap_or_default()
        };
        let (n1, v1) = axis(0);
        let (n2, v2) = axis(1);
        w.write_record([
            n1,
            v1,
            n2,
            v2,
            format_float(row.estimate.mean),
            format_float(row.estimate.std_error),
            row.seeds.to_string(),
            row.status.as_str().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_sweep_csv(result: &SweepResult, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| SimError::io(path, e))?;
    write_sweep(result, BufWriter::new(file)).map_err(|e| csv_err(path, e))
}

pub fn read_sweep<R: Read>(input: R, origin: &str) -> Result<SweepResult> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(|e| parse_err(origin, e.to_string()))?.clone();
    check_header(origin, &header, &SWEEP_HEADER)?;
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| parse_err(origin, e.to_string()))?;
        let f = |i: usize| parse_float(&rec[i]).map_err(|m| parse_err(origin, m));
        let mut axes = Vec::new();
        for (name, value) in [(0, 1), (2, 3)] {
            if !rec[name].is_empty() {
                axes.push((rec[name].to_string(), f(value)?));
            }
        }
        rows.push(SweepRow {
            axes,
            estimate: Estimate {
                mean: f(4)?,
                std_error: f(5)?,
            },
            seeds: rec[6]
                .parse()
                .map_err(|_| parse_err(origin, format!("bad seeds `{}`", &rec[6])))?,
            status: match &rec[7] {
                "ok" => CellStatus::Ok,
                "extinct" => CellStatus::Extinct,
                other => return Err(parse_err(origin, format!("bad status `{other}`"))),
            },
        });
    }
    Ok(SweepResult { rows })
}

pub fn read_sweep_csv(path: impl AsRef<Path>) -> Result<SweepResult> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| SimError::io(path, e))?;
    read_sweep(file, &path.display().to_string())
}
