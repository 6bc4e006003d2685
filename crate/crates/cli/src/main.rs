use clap::{Parser, Subcommand};
use kappa_cli::commands::{self, CliError};
use kappa_cli::demo;
use kappa_cli::report::{render_json, render_text, Report};
use kappa_cli::workspace::{self, parse_degrees, CapOverrides, Workspace, ARITY_CAP_ENV, WEIGHT_CAP_ENV};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "kappa", version, about = "Exact rational homotopy computations and the Browder cooperation")]
struct Cli {
    /// Emit a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Bracket-weight cap for free Lie algebras
    #[arg(long, global = true, value_name = "N")]
    weight_cap: Option<usize>,
    /// Highest bracket arity
    #[arg(long, global = true, value_name = "K")]
    arity_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the generalized Jacobi identities up to the arity cap
    CheckJacobi {
        file: PathBuf,
        #[arg(long)]
        target: Option<String>,
    },
    /// Graded dimensions of the invariants of a group action
    Invariants {
        file: PathBuf,
        #[arg(long)]
        group: String,
        #[arg(long)]
        action: Option<String>,
    },
    /// Homotopy groups of the Maurer-Cartan space at a twisting element
    HomotopyGroups {
        file: PathBuf,
        #[arg(long)]
        target: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<String>,
    },
    /// Homotopy groups of the fixed points of a mapping-space model
    Hofixed {
        file: PathBuf,
        #[arg(long)]
        cdga: Option<String>,
        #[arg(long)]
        action: Option<String>,
        #[arg(long, value_parser = degrees, allow_hyphen_values = true)]
        degrees: Option<(i64, i64)>,
    },
    /// Δ₂ and κ values of a coalgebra datum
    Browder {
        file: PathBuf,
        #[arg(long)]
        datum: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
    },
    /// Scan basis monomials for a nonzero κ
    Obstruct {
        file: PathBuf,
        #[arg(long)]
        datum: Option<String>,
        #[arg(long, value_parser = degrees, allow_hyphen_values = true)]
        degrees: Option<(i64, i64)>,
    },
    /// Run a built-in example
    Demo {
        #[arg(value_parser = demo::DEMOS)]
        name: String,
        /// Also write the example as a workspace file
        #[arg(long, value_name = "PATH")]
        export: Option<PathBuf>,
    },
    /// Run every job in a workspace file
    Run { file: PathBuf },
}

fn degrees(s: &str) -> Result<(i64, i64), String> {
    parse_degrees(s).ok_or_else(|| format!("expected a range a..b with a <= b, got `{s}`"))
}

fn env_cap(var: &str) -> Result<Option<usize>, CliError> {
    match std::env::var(var) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| CliError::Io(format!("{var} must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

fn load(path: &Path, o: &CapOverrides) -> Result<Workspace, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    workspace::load(&text, o).map_err(|e| CliError::InFile(path.display().to_string(), e))
}

fn run(cli: &Cli) -> Result<Vec<Report>, CliError> {
    let o = CapOverrides {
        weight_flag: cli.weight_cap,
        arity_flag: cli.arity_cap,
        weight_env: env_cap(WEIGHT_CAP_ENV)?,
        arity_env: env_cap(ARITY_CAP_ENV)?,
    };
    match &cli.command {
        Command::CheckJacobi { file, target } => {
            let ws = load(file, &o)?;
            Ok(vec![commands::check_jacobi(&ws, ws.first_job("check-jacobi"), target.as_deref())?])
        }
        Command::Invariants { file, group, action } => {
            let ws = load(file, &o)?;
            Ok(vec![commands::invariants_cmd(&ws, ws.first_job("invariants"), group, action.as_deref())?])
        }
        Command::HomotopyGroups { file, target, twist } => {
            let ws = load(file, &o)?;
            Ok(vec![commands::homotopy_groups(&ws, ws.first_job("homotopy-groups"), target.as_deref(), twist.as_deref())?])
        }
        Command::Hofixed { file, cdga, action, degrees } => {
            let ws = load(file, &o)?;
            Ok(vec![commands::hofixed(&ws, ws.first_job("hofixed"), cdga.as_deref(), action.as_deref(), *degrees)?])
        }
        Command::Browder { file, datum, element } => {
            let ws = load(file, &o)?;
            Ok(vec![commands::browder(&ws, ws.first_job("browder"), datum.as_deref(), element.as_deref())?])
        }
        Command::Obstruct { file, datum, degrees } => {
            let ws = load(file, &o)?;
            Ok(vec![commands::obstruct(&ws, ws.first_job("obstruct"), datum.as_deref(), *degrees)?])
        }
        Command::Demo { name, export } => {
            let caps = o.resolve(None, None);
            let d = demo::build(name, caps)?;
            if let Some(path) = export {
                std::fs::write(path, demo::export(&d, caps)).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            demo::reports(&d, caps)
        }
        Command::Run { file } => {
            let ws = load(file, &o)?;
            commands::run_jobs(&ws)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(reports) => {
            let out = if cli.json { render_json(&reports) } else { render_text(&reports) };
            print!("{out}");
            ExitCode::from(if reports.iter().all(|r| r.passed()) { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
