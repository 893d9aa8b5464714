//! Result files for plotting and archiving.
//!
//! JSON files carry `schema_version` and, unless disabled, a `generated_at`
//! timestamp. CSV files start with a `# schema_version=N` comment line.
//! Everything else is a deterministic function of the inputs.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use qanneal_core::{
    int_to_spin, ising_diagonal, spin_to_braket, AnnealingSchedule, DriverSign, FieldOffsets, Gap,
    Integrator, IsingModel, SimulationResult, SpectrumResult, StateIndex, Term,
};
use serde_json::{json, Value};

use crate::error::{IoError, Result};
use crate::schedule_csv::write_schedule_rows;

pub const SCHEMA_VERSION: u32 = 1;
pub const SWEEP_COLUMNS: [&str; 5] = ["tau", "state_index", "braket", "energy", "probability"];
pub const SPECTRUM_COLUMNS: [&str; 3] = ["s", "level_index", "eigenvalue"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExportOptions {
    pub timestamp: bool,
}

impl Default for ExportOptions {
    fn default() -> Self {
        ExportOptions { timestamp: true }
    }
}

/// What was simulated.
#[derive(Debug, Clone, Copy)]
pub struct RunContext<'a> {
    pub model: &'a IsingModel,
    pub schedule: &'a AnnealingSchedule,
    pub offsets: Option<&'a FieldOffsets>,
}

/// One annealing time of a sweep.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub tau: f64,
    pub outcome: std::result::Result<SimulationResult, qanneal_core::Error>,
}

pub enum Export<'a> {
    Simulation {
        tau: f64,
        result: &'a SimulationResult,
    },
    Sweep(&'a [SweepPoint]),
    Spectrum {
        spectrum: &'a SpectrumResult,
        gap: Option<Gap>,
    },
}

/// One row of a per-state table.
#[derive(Debug, Clone, PartialEq)]
pub struct StateRecord {
    pub index: u64,
    pub braket: String,
    pub energy: f64,
    pub probability: f64,
}

/// Per-state records in index order.
pub fn state_records(model: &IsingModel, probabilities: &[f64]) -> Result<Vec<StateRecord>> {
    let diag = ising_diagonal(model)?;
    let n = model.n_qubits();
    probabilities
        .iter()
        .enumerate()
        .map(|(v, &p)| {
            let spins = int_to_spin(StateIndex(v as u64), n)?;
            Ok(StateRecord {
                index: v as u64,
                braket: spin_to_braket(&spins),
                energy: diag[v],
                probability: p,
            })
        })
        .collect()
}

/// Writes `export` to `path`; spectrum CSVs also produce a companion
/// `s,a,b` schedule file. Returns every path written.
pub fn export_result(
    ctx: &RunContext<'_>,
    export: &Export<'_>,
    format: Format,
    path: impl AsRef<Path>,
    options: ExportOptions,
) -> Result<Vec<PathBuf>> {
    let path = path.as_ref();
    match format {
        Format::Json => {
            let doc = json_document(ctx, export, options)?;
            write_with(path, |w| {
                serde_json::to_writer_pretty(&mut *w, &doc).map_err(std::io::Error::other)?;
                w.write_all(b"\n")
            })?;
            Ok(vec![path.to_path_buf()])
        }
        Format::Csv => match export {
            Export::Simulation { tau, result } => {
                let point = SweepPoint {
                    tau: *tau,
                    outcome: Ok((*result).clone()),
                };
                write_sweep_csv(ctx, std::slice::from_ref(&point), path)?;
                Ok(vec![path.to_path_buf()])
            }
            Export::Sweep(points) => {
                write_sweep_csv(ctx, points, path)?;
                Ok(vec![path.to_path_buf()])
            }
            Export::Spectrum { spectrum, .. } => {
                write_with(path, |w| {
                    writeln!(w, "# schema_version={SCHEMA_VERSION}")?;
                    let mut wtr = csv::Writer::from_writer(w);
                    wtr.write_record(SPECTRUM_COLUMNS)?;
                    for (s, levels) in spectrum.s_grid.iter().zip(&spectrum.levels) {
                        for (k, e) in levels.iter().enumerate() {
                            wtr.write_record([s.to_string(), k.to_string(), e.to_string()])?;
                        }
                    }
                    wtr.flush()
                })?;
                let companion = schedule_companion(path);
                let rows = ctx.schedule.tabulate(&spectrum.s_grid);
                write_with(&companion, |w| write_schedule_rows(w, &rows))?;
                Ok(vec![path.to_path_buf(), companion])
            }
        },
    }
}

/// `out.csv` -> `out.schedule.csv`
pub fn schedule_companion(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    path.with_file_name(format!("{stem}.schedule.csv"))
}

fn write_with<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
{
    let file = File::create(path).map_err(|e| IoError::io(path, e))?;
    let mut w = BufWriter::new(file);
    body(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| IoError::io(path, e))
}

fn write_sweep_csv(ctx: &RunContext<'_>, points: &[SweepPoint], path: &Path) -> Result<()> {
    let mut rows = Vec::with_capacity(points.len());
    for p in points {
        rows.push(match &p.outcome {
            Ok(r) => Ok(state_records(ctx.model, &r.probabilities)?),
            Err(e) => Err(e.to_string()),
        });
    }
    write_with(path, |w| {
        writeln!(w, "# schema_version={SCHEMA_VERSION}")?;
        for (p, r) in points.iter().zip(&rows) {
            if let Err(msg) = r {
                writeln!(w, "# failed tau={}: {msg}", p.tau)?;
            }
        }
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(SWEEP_COLUMNS)?;
        for (p, r) in points.iter().zip(&rows) {
            for rec in r.iter().flatten() {
                wtr.write_record([
                    p.tau.to_string(),
                    rec.index.to_string(),
                    rec.braket.clone(),
                    rec.energy.to_string(),
                    rec.probability.to_string(),
                ])?;
            }
        }
        wtr.flush()
    })
}

/// A row read back from a sweep CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub tau: f64,
    pub record: StateRecord,
}

pub fn read_sweep_csv(path: impl AsRef<Path>) -> Result<Vec<SweepRow>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| IoError::io(path, e))?;
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(file);
    let mut out = Vec::new();
    for record in rdr.records() {
        let parse = |line: u64, reason: String| IoError::Parse {
            path: path.to_path_buf(),
            line,
            reason,
        };
        let record =
            record.map_err(|e| parse(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let num = |k: usize| {
            record[k]
                .parse::<f64>()
                .map_err(|e| parse(line, format!("{}: {e}", SWEEP_COLUMNS[k])))
        };
        out.push(SweepRow {
            tau: num(0)?,
            record: StateRecord {
                index: record[1]
                    .parse()
                    .map_err(|e| parse(line, format!("state_index: {e}")))?,
                braket: record[2].to_string(),
                energy: num(3)?,
                probability: num(4)?,
            },
        });
    }
    Ok(out)
}

fn model_json(model: &IsingModel) -> Value {
    let terms: Vec<Value> = model
        .terms()
        .iter()
        .map(|(t, &w)| {
            let qubits = match *t {
                Term::Field(i) => vec![i],
                Term::Coupling(i, j) => vec![i, j],
            };
            json!({ "qubits": qubits, "coeff": w })
        })
        .collect();
    json!({ "n_qubits": model.n_qubits(), "terms": terms })
}

fn context_json(ctx: &RunContext<'_>, options: ExportOptions) -> serde_json::Map<String, Value> {
    let mut doc = serde_json::Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    if options.timestamp {
        doc.insert(
            "generated_at".into(),
            json!(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)),
        );
    }
    doc.insert("model".into(), model_json(ctx.model));
    let sign = match ctx.schedule.driver_sign() {
        DriverSign::Positive => "positive",
        DriverSign::Negative => "negative",
    };
    doc.insert(
        "schedule".into(),
        json!({ "name": ctx.schedule.label(), "driver_sign": sign }),
    );
    if let Some(off) = ctx.offsets {
        doc.insert("offsets".into(), json!({ "x": off.x(), "z": off.z() }));
    }
    doc
}

fn result_json(model: &IsingModel, tau: f64, r: &SimulationResult) -> Result<Value> {
    let states: Vec<Value> = state_records(model, &r.probabilities)?
        .into_iter()
        .map(|s| {
            json!({
                "index": s.index,
                "braket": s.braket,
                "energy": s.energy,
                "probability": s.probability,
            })
        })
        .collect();
    let trace: Vec<Value> = r
        .convergence_trace
        .iter()
        .map(|c| json!({ "n_steps": c.n_steps, "error_max": c.error_max, "error_mean": c.error_mean }))
        .collect();
    let integrator = match r.integrator {
        Integrator::Magnus => "magnus",
        Integrator::RungeKutta4 => "rk4",
    };
    Ok(json!({
        "tau": tau,
        "status": "ok",
        "integrator": integrator,
        "order": r.order,
        "steps_used": r.steps_used,
        "convergence_trace": trace,
        "states": states,
    }))
}

fn json_document(
    ctx: &RunContext<'_>,
    export: &Export<'_>,
    options: ExportOptions,
) -> Result<Value> {
    let mut doc = context_json(ctx, options);
    match export {
        Export::Simulation { tau, result } => {
            doc.insert("kind".into(), json!("simulation"));
            doc.insert("result".into(), result_json(ctx.model, *tau, result)?);
        }
        Export::Sweep(points) => {
            doc.insert("kind".into(), json!("sweep"));
            let records = points
                .iter()
                .map(|p| match &p.outcome {
                    Ok(r) => result_json(ctx.model, p.tau, r),
                    Err(e) => {
                        Ok(json!({ "tau": p.tau, "status": "failed", "error": e.to_string() }))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            doc.insert("records".into(), Value::Array(records));
        }
        Export::Spectrum { spectrum, gap } => {
            doc.insert("kind".into(), json!("spectrum"));
            let rows = ctx.schedule.tabulate(&spectrum.s_grid);
            doc.insert("s".into(), json!(spectrum.s_grid));
            doc.insert(
                "a".into(),
                json!(rows.iter().map(|r| r.1).collect::<Vec<_>>()),
            );
            doc.insert(
                "b".into(),
                json!(rows.iter().map(|r| r.2).collect::<Vec<_>>()),
            );
            doc.insert("levels".into(), json!(spectrum.levels));
            doc.insert(
                "ground_manifold_gap".into(),
                gap.map_or(Value::Null, |g| json!({ "s": g.s, "gap": g.gap })),
            );
        }
    }
    Ok(Value::Object(doc))
}
