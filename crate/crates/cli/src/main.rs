use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use localizer_cli::cmd::{self, AntipodalOpts, SingleOpts};
use localizer_cli::report::Engine;
use localizer_cli::CliError;
use localizer_core::oracle::GridSpec;

/// Depth-sensor localization in a known polygonal map.
#[derive(Parser)]
#[command(name = "localizer", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the decomposition and indices and save them as an artifact.
    Preprocess {
        workspace: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Poses whose single reading is `d`.
    #[command(allow_negative_numbers = true)]
    QuerySingle {
        #[arg(short, long)]
        artifact: PathBuf,
        #[arg(short)]
        d: f64,
        #[arg(long)]
        json: bool,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        /// include region boundaries in the JSON listing
        #[arg(long)]
        regions: bool,
        /// refuse the artifact unless it was built from this workspace file
        #[arg(long)]
        workspace: Option<PathBuf>,
    },
    /// Poses reading `d1` ahead and `d2` straight behind.
    #[command(allow_negative_numbers = true)]
    QueryAntipodal {
        #[arg(short, long)]
        artifact: PathBuf,
        #[arg(long)]
        d1: f64,
        #[arg(long)]
        d2: f64,
        #[arg(long, value_enum, default_value = "opt")]
        engine: Engine,
        #[arg(long)]
        json: bool,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        #[arg(long)]
        workspace: Option<PathBuf>,
    },
    /// Compare a query against dense sampling; exits 1 on disagreement.
    Oracle {
        #[arg(short, long)]
        artifact: PathBuf,
        /// sample positions along the longer side of the bounding box
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[arg(long, default_value_t = 720)]
        angles: usize,
        /// reading tolerance of the sampler (default: twice the diagonal pitch)
        #[arg(long)]
        grid_eps: Option<f64>,
        /// poses drawn from the answer to check soundness
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(subcommand)]
        query: OracleQuery,
    },
}

#[derive(Subcommand)]
enum OracleQuery {
    #[command(allow_negative_numbers = true)]
    Single {
        #[arg(short)]
        d: f64,
    },
    #[command(allow_negative_numbers = true)]
    Antipodal {
        #[arg(long)]
        d1: f64,
        #[arg(long)]
        d2: f64,
        #[arg(long, value_enum, default_value = "opt")]
        engine: Engine,
    },
}

fn run(cli: Cli) -> Result<(String, u8), CliError> {
    if let Ok(v) = std::env::var("LOCALIZER_EPS") {
        let e: f64 = v.trim().parse().map_err(|_| CliError::Usage(format!("LOCALIZER_EPS: not a number: {v:?}")))?;
        if !localizer_core::set_eps(e) {
            return Err(CliError::Usage(format!("LOCALIZER_EPS must be positive and finite (got {v})")));
        }
    }
    Ok(match cli.command {
        Command::Preprocess { workspace, out } => (cmd::preprocess(&workspace, &out)?, 0),
        Command::QuerySingle { artifact, d, json, svg, regions, workspace } => {
            let p = cmd::load(&artifact, workspace.as_deref())?;
            (cmd::query_single(&p, d, &SingleOpts { json, svg: svg.as_deref(), regions })?, 0)
        }
        Command::QueryAntipodal { artifact, d1, d2, engine, json, svg, workspace } => {
            let p = cmd::load(&artifact, workspace.as_deref())?;
            (cmd::query_antipodal(&p, d1, d2, &AntipodalOpts { json, svg: svg.as_deref(), engine })?, 0)
        }
        Command::Oracle { artifact, resolution, angles, grid_eps, samples, query } => {
            if resolution == 0 || angles == 0 {
                return Err(CliError::Usage("resolution and angles must be positive".into()));
            }
            let p = cmd::load(&artifact, None)?;
            let grid = GridSpec { resolution, angles, eps: grid_eps };
            let sum = match query {
                OracleQuery::Single { d } => cmd::oracle_single(&p, d, &grid, samples)?,
                OracleQuery::Antipodal { d1, d2, engine } => cmd::oracle_antipodal(&p, d1, d2, engine, &grid, samples)?,
            };
            (sum.to_json(), if sum.passed { 0 } else { 1 })
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, code)) => {
            print!("{out}");
            if out.contains("\"notice\": \"no poses\"") {
                eprintln!("no poses");
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
