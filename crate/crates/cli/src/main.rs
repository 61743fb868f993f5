use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use cubicdet_cli::report::ErrorKind;
use cubicdet_cli::spec::{Mode, SurfaceSpec};
use cubicdet_cli::{error_report, run, Command, RunOptions};

/// Lines, determinantal representations and real structure of cubic surfaces.
#[derive(Parser, Debug)]
#[command(name = "cubicdet", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// `fermat`, `f5paper`, `clebsch`, inline JSON, a JSON file, or `-` for stdin.
    surface: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Numeric tolerance for the line search and self-orthogonal vectors.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    jobs: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn emit(text: &str, output: &Option<PathBuf>) -> std::io::Result<()> {
    match output {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.write_all(b"\n")
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("cubicdet: {e}");
        }
    }
    let opts = RunOptions {
        seed: cli.seed,
        tol: cli.tol,
        mode: cli.mode,
    };
    let result = SurfaceSpec::from_arg(&cli.surface).and_then(|s| run(cli.command, &s, &opts));
    let (report, code) = match result {
        Ok(r) if cli.command == Command::Verify && !r.all_passed() => {
            let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            let mut r = r.clone();
            r.error = Some(cubicdet_cli::report::ErrorRecord {
                kind: ErrorKind::Verification,
                message: format!("failed checks: {}", failed.join(", ")),
            });
            (r, ErrorKind::Verification.exit_code())
        }
        Ok(r) => (r, 0),
        Err(e) => {
            eprintln!("cubicdet: {e}");
            (error_report(cli.command, cli.seed, ErrorKind::Input, &e), ErrorKind::Input.exit_code())
        }
    };
    if let Err(e) = emit(&report.to_json(), &cli.output) {
        eprintln!("cubicdet: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
