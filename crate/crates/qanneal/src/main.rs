use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qanneal::error::core_code;
use qanneal::{
    export_result, load_schedule_csv_with, parse_model_spec, parse_times, read_bqpjson, run_sweep,
    Export, ExportOptions, Format, IoError, RunContext,
};
use qanneal_core::{
    binary_to_braket_with, binary_to_spin, builtin_schedule, eigenspectrum, ground_manifold_gap,
    int_to_binary, int_to_spin, simulate, spin_to_binary, spin_to_braket_with, spin_to_int,
    unit_grid, AdaptiveOptions, AnnealingSchedule, BinaryVector, BuiltinSchedule, DriverSign,
    FieldOffsets, Glyphs, IsingModel, SimulationResult, SolverConfig, SpinVector, StateIndex,
};

#[derive(Parser)]
#[command(
    name = "qanneal",
    version,
    about = "Transverse field Ising annealing simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve one model for one annealing time.
    Simulate(SimulateArgs),
    /// Evolve one model for a list of annealing times.
    Sweep(SweepArgs),
    /// Instantaneous eigenvalues of H(s) on a uniform grid.
    Spectrum(SpectrumArgs),
    /// Convert basis-state labels between int, binary, spin and bra-ket form.
    Convert(ConvertArgs),
    /// List the built-in schedules, or tabulate one as s,a,b CSV.
    Schedules(SchedulesArgs),
}

#[derive(Args)]
struct ProblemArgs {
    /// BQPJSON file, or inline terms such as `1,2=-1;1=0.5`.
    #[arg(long)]
    model: String,
    /// Built-in schedule name or an s,a,b CSV file.
    #[arg(long)]
    schedule: String,
    #[arg(long, value_enum, default_value_t = Sign::Positive)]
    driver_sign: Sign,
    /// Per-qubit X offsets, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    x_offsets: Option<String>,
    /// Per-qubit Z offsets, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    z_offsets: Option<String>,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value_t = qanneal_core::magnus::DEFAULT_ORDER)]
    order: usize,
    /// Fixed step count or `adaptive`.
    #[arg(long, default_value = "adaptive")]
    steps: String,
    #[arg(long)]
    mean_tol: Option<f64>,
    #[arg(long)]
    max_tol: Option<f64>,
    /// Give up after this many step doublings.
    #[arg(long)]
    max_doublings: Option<usize>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    /// Defaults to the extension of --out, else json.
    #[arg(long, value_enum)]
    format: Option<OutFormat>,
    /// Leave the timestamp out of JSON files.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Annealing time tau.
    #[arg(long)]
    time: f64,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Comma list or `logspace:lo:hi:count`.
    #[arg(long, allow_hyphen_values = true)]
    times: String,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: OutputArgs,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Number of grid points on [0, 1], at least 2.
    #[arg(long, default_value_t = 101)]
    grid: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long, value_enum)]
    from: LabelKind,
    #[arg(long, value_enum)]
    to: TargetKind,
    /// An integer, or a comma list of bits or spins.
    #[arg(long, allow_hyphen_values = true)]
    value: String,
    /// Qubit count, needed when converting from an integer.
    #[arg(long)]
    n: Option<usize>,
    /// Use u/d and > in bra-kets.
    #[arg(long)]
    ascii: bool,
}

#[derive(Args)]
struct SchedulesArgs {
    /// Print this schedule as s,a,b CSV instead of listing names.
    #[arg(long)]
    tabulate: Option<String>,
    #[arg(long, default_value_t = 11)]
    grid: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sign {
    Positive,
    Negative,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelKind {
    Int,
    Binary,
    Spin,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetKind {
    Int,
    Binary,
    Spin,
    Braket,
}

/// Exit 2 for bad arguments or inputs, 1 for failures while running.
enum Failure {
    Usage {
        code: &'static str,
        message: String,
    },
    Run {
        code: &'static str,
        message: String,
        detail: Vec<String>,
    },
}

type CliResult<T> = Result<T, Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure::Usage {
        code: "E_USAGE",
        message: message.into(),
    }
}

fn input_error(e: IoError) -> Failure {
    Failure::Usage {
        code: e.code(),
        message: e.to_string(),
    }
}

fn core_error(e: qanneal_core::Error) -> Failure {
    use qanneal_core::Error as E;
    let code = core_code(&e);
    match e {
        E::NonConvergence { ref trace } => Failure::Run {
            code,
            message: e.to_string(),
            detail: trace
                .iter()
                .map(|r| {
                    format!(
                        "n_steps={} error_max={:e} error_mean={:e}",
                        r.n_steps, r.error_max, r.error_mean
                    )
                })
                .collect(),
        },
        E::NumericalFailure { .. } => Failure::Run {
            code,
            message: e.to_string(),
            detail: Vec::new(),
        },
        other => Failure::Usage {
            code,
            message: other.to_string(),
        },
    }
}

fn output_error(e: IoError) -> Failure {
    Failure::Run {
        code: e.code(),
        message: e.to_string(),
        detail: Vec::new(),
    }
}

fn load_model(arg: &str) -> CliResult<IsingModel> {
    let path = Path::new(arg);
    if path.is_file() {
        let problem = read_bqpjson(path).map_err(input_error)?;
        if problem.constant_offset != 0.0 {
            log::info!(
                "boolean problem: constant energy offset {}",
                problem.constant_offset
            );
        }
        return Ok(problem.model);
    }
    if arg.contains('=') {
        return parse_model_spec(arg).map_err(input_error);
    }
    Err(usage(format!(
        "--model `{arg}` is neither a file nor an inline spec"
    )))
}

fn load_schedule(arg: &str, sign: Sign) -> CliResult<AnnealingSchedule> {
    let sign = match sign {
        Sign::Positive => DriverSign::Positive,
        Sign::Negative => DriverSign::Negative,
    };
    if let Ok(which) = BuiltinSchedule::from_name(arg) {
        return Ok(builtin_schedule(which).with_driver_sign(sign));
    }
    if Path::new(arg).is_file() {
        return load_schedule_csv_with(arg, sign).map_err(input_error);
    }
    Err(usage(format!(
        "--schedule `{arg}` is neither a built-in schedule nor a file"
    )))
}

fn parse_offsets(p: &ProblemArgs, n: usize) -> CliResult<Option<FieldOffsets>> {
    if p.x_offsets.is_none() && p.z_offsets.is_none() {
        return Ok(None);
    }
    let list = |s: &Option<String>| -> CliResult<Vec<f64>> {
        match s {
            Some(s) => qanneal::run::parse_list(s).map_err(input_error),
            None => Ok(vec![0.0; n]),
        }
    };
    let offsets =
        FieldOffsets::new(list(&p.x_offsets)?, list(&p.z_offsets)?).map_err(core_error)?;
    if offsets.len() != n {
        return Err(usage(format!(
            "offsets list {} values, model has {n} qubits",
            offsets.len()
        )));
    }
    Ok(Some(offsets))
}

fn solver_config(s: &SolverArgs) -> CliResult<SolverConfig> {
    let config = if s.steps == "adaptive" {
        let mut options = AdaptiveOptions::default();
        if let Some(t) = s.mean_tol {
            options.mean_tol = t;
        }
        if let Some(t) = s.max_tol {
            options.max_tol = t;
        }
        if let Some(d) = s.max_doublings {
            options.max_doublings = d;
        }
        SolverConfig::adaptive(s.order, options)
    } else {
        let n: usize = s.steps.parse().map_err(|_| {
            usage(format!(
                "--steps `{}` is not a count or `adaptive`",
                s.steps
            ))
        })?;
        if s.mean_tol.is_some() || s.max_tol.is_some() || s.max_doublings.is_some() {
            return Err(usage(
                "--mean-tol, --max-tol and --max-doublings need --steps adaptive",
            ));
        }
        SolverConfig::fixed(s.order, n)
    };
    config.validate().map_err(core_error)?;
    Ok(config)
}

fn output_format(o: &OutputArgs) -> Format {
    match o.format {
        Some(OutFormat::Json) => Format::Json,
        Some(OutFormat::Csv) => Format::Csv,
        None => match o.out.as_ref().and_then(|p| p.extension()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        },
    }
}

fn write_output(ctx: &RunContext<'_>, export: &Export<'_>, o: &OutputArgs) -> CliResult<()> {
    let Some(out) = &o.out else { return Ok(()) };
    let options = ExportOptions {
        timestamp: !o.no_timestamp,
    };
    let written =
        export_result(ctx, export, output_format(o), out, options).map_err(output_error)?;
    for p in written {
        log::info!("wrote {}", p.display());
    }
    Ok(())
}

fn top_states(model: &IsingModel, r: &SimulationResult, k: usize) -> String {
    let mut order: Vec<usize> = (0..r.probabilities.len()).collect();
    order.sort_by(|&a, &b| {
        r.probabilities[b]
            .total_cmp(&r.probabilities[a])
            .then(a.cmp(&b))
    });
    order
        .iter()
        .take(k)
        .map(|&v| {
            let spins =
                int_to_spin(StateIndex(v as u64), model.n_qubits()).expect("index in range");
            format!(
                "{}={:.6}",
                spin_to_braket_with(&spins, Glyphs::Unicode),
                r.probabilities[v]
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_simulate(args: SimulateArgs) -> CliResult<()> {
    let model = load_model(&args.problem.model)?;
    let schedule = load_schedule(&args.problem.schedule, args.problem.driver_sign)?;
    let offsets = parse_offsets(&args.problem, model.n_qubits())?;
    let config = solver_config(&args.solver)?;
    let result =
        simulate(&model, args.time, &schedule, &config, offsets.as_ref()).map_err(core_error)?;
    let ctx = RunContext {
        model: &model,
        schedule: &schedule,
        offsets: offsets.as_ref(),
    };
    write_output(
        &ctx,
        &Export::Simulation {
            tau: args.time,
            result: &result,
        },
        &args.output,
    )?;
    println!(
        "tau={} order={} steps_used={} top: {}",
        args.time,
        result.order,
        result.steps_used,
        top_states(&model, &result, 5)
    );
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> CliResult<()> {
    let model = load_model(&args.problem.model)?;
    let schedule = load_schedule(&args.problem.schedule, args.problem.driver_sign)?;
    let offsets = parse_offsets(&args.problem, model.n_qubits())?;
    let config = solver_config(&args.solver)?;
    let taus = parse_times(&args.times).map_err(input_error)?;
    let points = run_sweep(
        &model,
        &taus,
        &schedule,
        &config,
        offsets.as_ref(),
        args.jobs,
    )
    .map_err(input_error)?;
    let failures: Vec<String> = points
        .iter()
        .filter_map(|p| {
            p.outcome
                .as_ref()
                .err()
                .map(|e| format!("tau={}: {e}", p.tau))
        })
        .collect();
    if failures.len() == points.len() {
        let code = points[0].outcome.as_ref().err().map_or("E_RUN", core_code);
        return Err(Failure::Run {
            code,
            message: format!("all {} annealing times failed", points.len()),
            detail: failures,
        });
    }
    let ctx = RunContext {
        model: &model,
        schedule: &schedule,
        offsets: offsets.as_ref(),
    };
    write_output(&ctx, &Export::Sweep(&points), &args.output)?;
    for p in &points {
        match &p.outcome {
            Ok(r) => println!(
                "tau={} order={} steps_used={} top: {}",
                p.tau,
                r.order,
                r.steps_used,
                top_states(&model, r, 5)
            ),
            Err(e) => {
                println!("tau={} failed: {e}", p.tau);
                log::warn!("tau={} failed: {e}", p.tau);
            }
        }
    }
    Ok(())
}

fn cmd_spectrum(args: SpectrumArgs) -> CliResult<()> {
    if args.grid < 2 {
        return Err(usage("--grid needs at least 2 points"));
    }
    let model = load_model(&args.problem.model)?;
    let schedule = load_schedule(&args.problem.schedule, args.problem.driver_sign)?;
    let offsets = parse_offsets(&args.problem, model.n_qubits())?;
    let spectrum = eigenspectrum(&model, &schedule, &unit_grid(args.grid), offsets.as_ref())
        .map_err(core_error)?;
    let gap = ground_manifold_gap(&model, &spectrum).map_err(core_error)?;
    let ctx = RunContext {
        model: &model,
        schedule: &schedule,
        offsets: offsets.as_ref(),
    };
    write_output(
        &ctx,
        &Export::Spectrum {
            spectrum: &spectrum,
            gap,
        },
        &args.output,
    )?;
    match gap {
        Some(g) => println!(
            "grid={} ground_manifold_gap={} at s={}",
            args.grid, g.gap, g.s
        ),
        None => println!("grid={} ground_manifold_gap=none", args.grid),
    }
    Ok(())
}

fn parse_ints(value: &str) -> CliResult<Vec<i64>> {
    value
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("`{s}` is not an integer")))
        })
        .collect()
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_convert(args: ConvertArgs) -> CliResult<()> {
    let glyphs = if args.ascii {
        Glyphs::Ascii
    } else {
        Glyphs::Unicode
    };
    let check_n = |len: usize| match args.n {
        Some(n) if n != len => Err(usage(format!("--n {n} but the label has {len} entries"))),
        _ => Ok(()),
    };
    let bits = match args.from {
        LabelKind::Int => {
            let v: u64 =
                args.value.trim().parse().map_err(|_| {
                    usage(format!("`{}` is not a non-negative integer", args.value))
                })?;
            if let TargetKind::Int = args.to {
                println!("{v}");
                return Ok(());
            }
            let n = args
                .n
                .ok_or_else(|| usage("--n is required when converting from int"))?;
            int_to_binary(StateIndex(v), n).map_err(core_error)?
        }
        LabelKind::Binary => {
            let b = BinaryVector::new(&parse_ints(&args.value)?).map_err(core_error)?;
            check_n(b.len())?;
            if let TargetKind::Braket = args.to {
                println!("{}", binary_to_braket_with(&b, glyphs));
                return Ok(());
            }
            b
        }
        LabelKind::Spin => {
            let s = SpinVector::new(&parse_ints(&args.value)?).map_err(core_error)?;
            check_n(s.len())?;
            spin_to_binary(&s)
        }
    };
    let spins = binary_to_spin(&bits);
    let text = match args.to {
        TargetKind::Int => spin_to_int(&spins).map_err(core_error)?.0.to_string(),
        TargetKind::Binary => join(bits.bits()),
        TargetKind::Spin => join(spins.spins()),
        TargetKind::Braket => spin_to_braket_with(&spins, glyphs),
    };
    println!("{text}");
    Ok(())
}

fn cmd_schedules(args: SchedulesArgs) -> CliResult<()> {
    match args.tabulate {
        None => {
            for which in BuiltinSchedule::ALL {
                let s = builtin_schedule(which);
                println!(
                    "{:<13} A(0)={} B(0)={} A(1)={} B(1)={}",
                    which.name(),
                    s.a(0.0),
                    s.b(0.0),
                    s.a(1.0),
                    s.b(1.0)
                );
            }
            Ok(())
        }
        Some(name) => {
            if args.grid < 2 {
                return Err(usage("--grid needs at least 2 points"));
            }
            let which = BuiltinSchedule::from_name(&name).map_err(core_error)?;
            let rows = builtin_schedule(which).tabulate(&unit_grid(args.grid));
            qanneal::schedule_csv::write_schedule_rows(std::io::stdout().lock(), &rows).map_err(
                |e| Failure::Run {
                    code: "E_IO",
                    message: e.to_string(),
                    detail: Vec::new(),
                },
            )
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let (head, tail) = text.split_once("\nUsage:").unwrap_or((&text, ""));
            let head = head
                .trim_start_matches("error:")
                .split_whitespace()
                .collect::<Vec<_>>()
                .join(" ");
            eprintln!("error[E_USAGE]: {head}");
            if !tail.is_empty() {
                eprint!("\nUsage:{tail}");
            }
            return ExitCode::from(2);
        }
    };
    let outcome = match cli.command {
        Command::Simulate(a) => cmd_simulate(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Convert(a) => cmd_convert(a),
        Command::Schedules(a) => cmd_schedules(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage { code, message }) => {
            eprintln!("error[{code}]: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Run {
            code,
            message,
            detail,
        }) => {
            eprintln!("error[{code}]: {message}");
            for line in detail {
                eprintln!("  {line}");
            }
            ExitCode::from(1)
        }
    }
}
