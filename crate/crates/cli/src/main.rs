//! `momentum`: batch front end for the momentum-profile engine.

mod outcome;
mod run;
mod sweep;
mod task;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use momentum_core::scalar::set_float_epsilon;
use momentum_core::{Approx, Rational};

use outcome::{write_failure, Failure, Outcome, RunResult};
use task::{NumericMode, Outputs, TaskFile};

#[derive(Parser)]
#[command(name = "momentum", version, about = "Momentum-profile analyses from JSON task files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the task once.
    Analyze(RunArgs),
    /// Run the task over the parameter range in `parameters.sweep`.
    Sweep(RunArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Args)]
struct RunArgs {
    /// Task file (JSON).
    #[arg(long)]
    task: PathBuf,
    /// Output directory.
    #[arg(long, env = "MOMENTUM_OUT")]
    out: PathBuf,
    /// Overrides the task's numeric mode.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Zero tolerance in float mode.
    #[arg(long)]
    epsilon: Option<f64>,
}

fn read_task(path: &Path) -> RunResult<TaskFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("task file: {e}")))
}

fn numeric_mode(task: &TaskFile, args: &RunArgs) -> NumericMode {
    let from_task = task.numeric_mode.unwrap_or(NumericMode::Exact {});
    let task_eps = match from_task {
        NumericMode::Float { epsilon } => epsilon,
        NumericMode::Exact {} => task::default_epsilon(),
    };
    match (args.mode, from_task) {
        (Some(Mode::Exact), _) => NumericMode::Exact {},
        (Some(Mode::Float), _) | (None, NumericMode::Float { .. }) => NumericMode::Float { epsilon: args.epsilon.unwrap_or(task_eps) },
        (None, NumericMode::Exact {}) => NumericMode::Exact {},
    }
}

fn execute(task: &TaskFile, mode: NumericMode, sweep: bool) -> RunResult<Outcome> {
    match mode {
        NumericMode::Exact {} if sweep => sweep::sweep::<Rational>(task, "exact"),
        NumericMode::Exact {} => run::run::<Rational>(task, "exact"),
        NumericMode::Float { epsilon } => {
            set_float_epsilon(epsilon)?;
            if sweep {
                sweep::sweep::<Approx>(task, "float")
            } else {
                run::run::<Approx>(task, "float")
            }
        }
    }
}

fn fail(out: &Path, outputs: &Outputs, f: &Failure) -> ExitCode {
    write_failure(out, outputs, f);
    eprintln!("{}", serde_json::to_string(&f.to_json()).expect("JSON values always serialize"));
    ExitCode::from(f.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, sweep) = match &cli.command {
        Command::Analyze(a) => (a, false),
        Command::Sweep(a) => (a, true),
    };
    let task = match read_task(&args.task) {
        Ok(t) => t,
        Err(f) => return fail(&args.out, &Outputs::default(), &f),
    };
    let mode = numeric_mode(&task, args);
    let result = execute(&task, mode, sweep).and_then(|o| o.write(&args.out, &task.outputs).map(|_| o));
    match result {
        Ok(o) => {
            println!("{}", o.summary);
            ExitCode::SUCCESS
        }
        Err(f) => fail(&args.out, &task.outputs, &f),
    }
}
