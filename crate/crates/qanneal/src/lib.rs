//! File formats, result export and sweep drivers on top of `qanneal-core`.
//!
//! ```no_run
//! use qanneal::{read_bqpjson, load_schedule_csv};
//! use qanneal_core::{simulate, SolverConfig};
//!
//! let problem = read_bqpjson("problem.json").unwrap();
//! let schedule = load_schedule_csv("schedule.csv").unwrap();
//! let r = simulate(&problem.model, 10.0, &schedule, &SolverConfig::default(), None).unwrap();
//! println!("{:?}", r.probabilities);
//! ```

pub mod bqpjson;
pub mod error;
pub mod export;
pub mod run;
pub mod schedule_csv;

pub use bqpjson::{read_bqpjson, write_bqpjson, BqpjsonProblem, LoadedProblem, VariableDomain};
pub use error::{IoError, Result};
pub use export::{
    export_result, read_sweep_csv, state_records, Export, ExportOptions, Format, RunContext,
    StateRecord, SweepPoint, SCHEMA_VERSION,
};
pub use qanneal_core;
pub use run::{parse_model_spec, parse_times, run_sweep};
pub use schedule_csv::{
    load_schedule_csv, load_schedule_csv_with, load_schedule_table, save_schedule_csv,
    save_schedule_table,
};
