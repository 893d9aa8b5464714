//! Tabulated schedules as `s,a,b` CSV files.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use qanneal_core::{schedule_from_table, AnnealingSchedule, DriverSign, ScheduleTable};

use crate::error::{IoError, Result};

const HEADER: [&str; 3] = ["s", "a", "b"];
const COVER_TOL: f64 = 1e-12;

/// Reads the rows of a schedule file. Line numbers in errors count the
/// header as line 1.
pub fn read_schedule_rows<R: Read>(reader: R, path: &Path) -> Result<Vec<(f64, f64, f64)>> {
    let parse = |line: u64, reason: String| IoError::Parse {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr.headers().map_err(|e| parse(1, e.to_string()))?.clone();
    if header.iter().ne(HEADER) {
        return Err(parse(
            1,
            format!(
                "header must be `s,a,b`, found `{}`",
                header.iter().collect::<Vec<_>>().join(",")
            ),
        ));
    }
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let mut vals = [0.0; 3];
        for (k, v) in vals.iter_mut().enumerate() {
            let field = &record[k];
            *v = field
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| {
                    parse(
                        line,
                        format!(
                            "column {} value `{field}` is not a finite number",
                            HEADER[k]
                        ),
                    )
                })?;
        }
        if let Some(&(prev, _, _)) = rows.last() {
            if vals[0] <= prev {
                return Err(IoError::Order {
                    path: path.to_path_buf(),
                    line,
                    s: vals[0],
                });
            }
        }
        rows.push((vals[0], vals[1], vals[2]));
    }
    if rows.len() < 2 {
        return Err(parse(
            rows.len() as u64 + 1,
            "a schedule needs at least two rows".into(),
        ));
    }
    let (first, last) = (rows[0].0, rows[rows.len() - 1].0);
    if first > COVER_TOL || last < 1.0 - COVER_TOL {
        return Err(IoError::Domain {
            path: path.to_path_buf(),
            first,
            last,
        });
    }
    Ok(rows)
}

pub fn load_schedule_table(path: impl AsRef<Path>) -> Result<ScheduleTable> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| IoError::io(path, e))?;
    let rows = read_schedule_rows(file, path)?;
    Ok(ScheduleTable::new(&rows)?)
}

/// Piecewise-linear schedule through the tabulated nodes, positive driver
/// sign.
pub fn load_schedule_csv(path: impl AsRef<Path>) -> Result<AnnealingSchedule> {
    load_schedule_csv_with(path, DriverSign::Positive)
}

pub fn load_schedule_csv_with(
    path: impl AsRef<Path>,
    sign: DriverSign,
) -> Result<AnnealingSchedule> {
    let path = path.as_ref();
    let label = path.display().to_string();
    Ok(schedule_from_table(load_schedule_table(path)?, sign).with_label(label))
}

/// Writes rows with the shortest representation that parses back to the
/// same `f64`.
pub fn write_schedule_rows<W: Write>(writer: W, rows: &[(f64, f64, f64)]) -> std::io::Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(HEADER)?;
    for &(s, a, b) in rows {
        wtr.write_record([s.to_string(), a.to_string(), b.to_string()])?;
    }
    wtr.flush()
}

pub fn save_schedule_table(table: &ScheduleTable, path: impl AsRef<Path>) -> Result<()> {
    let rows: Vec<_> = table.rows().collect();
    save_rows(&rows, path.as_ref())
}

/// Tabulates `schedule` on `grid` and saves it.
pub fn save_schedule_csv(
    schedule: &AnnealingSchedule,
    grid: &[f64],
    path: impl AsRef<Path>,
) -> Result<()> {
    save_rows(&schedule.tabulate(grid), path.as_ref())
}

fn save_rows(rows: &[(f64, f64, f64)], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| IoError::io(path, e))?;
    write_schedule_rows(file, rows).map_err(|e| IoError::io(path, e))
}
