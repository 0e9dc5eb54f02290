use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use grassmann_mu::commands::{cap_from_env, parse_point, run, Command, RunConfig, CAP_ENV};
use grassmann_mu::tolerance::RankTolerance;

#[derive(Parser)]
#[command(
    name = "grassmann-mu",
    version,
    about = "Schubert-cell homology, the rank-one frame variety and curvature reducibility"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Integer homology of G_N with certificates
    Homology(Flags),
    /// Class of the degree-4 cycle S_N
    Generator(Flags),
    /// Rank-one variety against S_N and the orientation ledger
    Nu(Flags),
    /// Curvature matrix and reducibility of a connection at a point
    Curvature(Flags),
    /// Reducibility along the segment from the base point to --point
    Scan(Flags),
    /// Write cell listings and boundary matrices into --out
    Export(Flags),
}

#[derive(Args)]
struct Flags {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    qmax: Option<usize>,
    #[arg(long)]
    atol: Option<f64>,
    #[arg(long)]
    rtol: Option<f64>,
    /// finite-difference step (default 1e-3 of the ball radius)
    #[arg(long)]
    h: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON connection descriptor
    #[arg(long)]
    connection: Option<PathBuf>,
    /// x1,x2,x3,x4
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    #[arg(long, default_value_t = 10)]
    steps: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, flags) = match cli.command {
        Sub::Homology(f) => (Command::Homology, f),
        Sub::Generator(f) => (Command::Generator, f),
        Sub::Nu(f) => (Command::Nu, f),
        Sub::Curvature(f) => (Command::Curvature, f),
        Sub::Scan(f) => (Command::Scan, f),
        Sub::Export(f) => (Command::Export, f),
    };
    match execute(command, flags) {
        Ok(ok) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(command: Command, flags: Flags) -> grassmann_mu::Result<bool> {
    let defaults = RankTolerance::default();
    let point = flags.point.as_deref().map(parse_point).transpose()?;
    let config = RunConfig {
        command,
        n: flags.n,
        qmax: flags.qmax,
        atol: flags.atol.unwrap_or(defaults.atol),
        rtol: flags.rtol.unwrap_or(defaults.rtol),
        h: flags.h,
        seed: flags.seed,
        out: flags.out,
        connection: flags.connection,
        point,
        steps: flags.steps,
        cap: cap_from_env(),
    };
    let outcome = run(&config)?;
    match (&config.out, command) {
        (Some(path), c) if c != Command::Export => {
            std::fs::write(path, &outcome.json)?;
            print!("{}", outcome.summary);
        }
        _ => {
            print!("{}", outcome.json);
            eprint!("{}", outcome.summary);
        }
    }
    if std::env::var_os(CAP_ENV).is_some() {
        eprintln!("N cap {} from {CAP_ENV}", config.cap);
    }
    Ok(outcome.ok)
}
