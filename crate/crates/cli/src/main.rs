use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use lconn_cli::{load_scene, run, CliError, Command, Options};

#[derive(Parser, Debug)]
#[command(version, about = "Checks on connection-valued Higgs fields from JSON scene files")]
struct Args {
    /// torsor-class | classify-surface | spectral | normal-form | involution |
    /// leaf-check | flow | darboux-check | lattices | roundtrip
    command: Command,

    /// Scene file, or a report whose echoed scene should be re-run
    scene: PathBuf,

    #[arg(long)]
    jet_order: Option<i64>,

    /// Numeric tolerance for drift and finite-difference verdicts
    #[arg(long)]
    tol: Option<f64>,

    #[arg(long = "flow-T")]
    flow_t: Option<f64>,

    #[arg(long)]
    flow_dt: Option<f64>,

    /// Seed for the randomized gauge checks
    #[arg(long)]
    seed: Option<u64>,

    /// Write plot data here
    #[arg(long)]
    csv: Option<PathBuf>,

    /// Write the machine-readable report here
    #[arg(long)]
    json: Option<PathBuf>,
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn main_inner(args: Args) -> Result<bool, CliError> {
    let text = std::fs::read_to_string(&args.scene)
        .map_err(|source| CliError::Io { path: args.scene.display().to_string(), source })?;
    let scene = load_scene(&text)?;
    let overrides = Options {
        jet_order: args.jet_order,
        tol: args.tol,
        flow_t: args.flow_t,
        flow_dt: args.flow_dt,
        seed: args.seed,
        ..Options::default()
    };
    let out = run(args.command, &scene, &overrides)?;
    print!("{}", out.report.render());
    if let Some(path) = &args.json {
        write(path, &out.report.to_json())?;
    }
    match (&args.csv, &out.csv) {
        (Some(path), Some(csv)) => write(path, csv)?,
        (Some(_), None) => eprintln!("note: {} produces no plot data", args.command),
        _ => {}
    }
    Ok(out.report.passed())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match main_inner(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
