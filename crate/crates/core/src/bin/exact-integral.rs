use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use exact_integral::harness::{
    generate_specs, run_spec, Family, Outcome, Overrides, Task, EXIT_COMPUTATION, EXIT_VALIDATION,
};
use exact_integral::rational::parse_rational;

#[derive(Parser)]
#[command(name = "exact-integral", version, about = "Exact measure and Bochner integrals of task files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the task declared in a task file.
    Integrate {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Compare both integrals of the file's scalar function.
    Compare {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        depth: u32,
        /// Slack of the summability check, as "p/q".
        #[arg(long)]
        eta: String,
    },
    /// Write the dyadic convergence table as CSV.
    Table {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        max_level: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print seeded random task files as a JSON array.
    Gen {
        /// simple, piecewise_linear, vector_simple or series.
        #[arg(long)]
        family: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
    },
}

fn run(command: Command) -> Outcome {
    let validation = |message: String| Outcome {
        code: EXIT_VALIDATION,
        stdout: String::new(),
        stderr: format!("validation error: {message}\n"),
    };
    match command {
        Command::Integrate { spec } => run_spec(&spec, &Overrides::default()),
        Command::Compare { spec, depth, eta } => match parse_rational(&eta) {
            Ok(eta) => run_spec(
                &spec,
                &Overrides { task: Some(Task::Compare), depth: Some(depth), eta: Some(eta), ..Overrides::default() },
            ),
            Err(e) => validation(format!("--eta: {e}")),
        },
        Command::Table { spec, max_level, out } => run_spec(
            &spec,
            &Overrides {
                task: Some(Task::ApproxTable),
                max_level: Some(max_level),
                out: Some(out.to_string_lossy().into_owned()),
                ..Overrides::default()
            },
        ),
        Command::Gen { family, seed, count } => match Family::parse(&family) {
            None => validation(format!("--family: unknown family \"{family}\"")),
            Some(f) => match generate_specs(f, seed, count) {
                Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
                Err(e) => Outcome {
                    code: EXIT_COMPUTATION,
                    stdout: String::new(),
                    stderr: format!("computation error: {e}\n"),
                },
            },
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_VALIDATION as u8 } else { 0 });
        }
    };
    let outcome = run(cli.command);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
