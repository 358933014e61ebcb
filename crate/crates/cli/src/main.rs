use std::path::PathBuf;
use std::process::ExitCode;

use boussinesq_lab::{parse_config, run_to_dir, ExperimentConfig, ExperimentKind};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "boussinesq-lab", version, about = "Spectral experiments for the damped 2D Boussinesq system")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decay of the linear norms by polar quadrature of the exact kernel.
    LinearDecay(Common),
    /// Pseudo-spectral run of the full system on the torus.
    NonlinearRun(Common),
    /// Angular and convolution integral lemmas.
    LemmaChecks(Common),
    /// Closed-form propagator against an RK4 reference.
    PropagatorVerify(Common),
}

#[derive(Args)]
struct Common {
    /// TOML configuration; defaults (alpha = N = 1) when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory for series.csv, fits.csv and meta.json.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Overrides the seed of the configuration.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = match cli.command {
        Command::LinearDecay(a) => (ExperimentKind::LinearDecay, a),
        Command::NonlinearRun(a) => (ExperimentKind::NonlinearRun, a),
        Command::LemmaChecks(a) => (ExperimentKind::LemmaChecks, a),
        Command::PropagatorVerify(a) => (ExperimentKind::PropagatorVerify, a),
    };

    let mut config = match &args.config {
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            };
            match parse_config(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
        }
        None => ExperimentConfig::with_params(1.0, 1.0),
    };
    if let Err(e) = config.resolve(kind) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }

    let report = match run_to_dir(kind, &config, &args.out) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: writing to {}: {e}", args.out.display());
            return ExitCode::from(2);
        }
    };
    if !args.quiet {
        for f in &report.fits {
            println!(
                "fit   {:<24} exponent {:+.4}  r2 {:.5}",
                f.label, f.fit.exponent, f.fit.r_squared
            );
        }
        for c in &report.checks {
            println!(
                "{} {} = {:.6e} (expected {}, tol {:e})",
                if c.pass { "PASS " } else { "FAIL " },
                c.name,
                c.value,
                c.expected,
                c.tolerance
            );
        }
        println!("artifacts in {}", args.out.display());
    }
    if let Some(err) = &report.error {
        eprintln!("error: {err} (partial output written)");
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
