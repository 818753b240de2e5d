mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "dpoisson",
    version,
    about = "Double Poisson brackets on finite-dimensional algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for every random choice (sampling, spot checks).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify the axioms of a bracket.
    Check {
        /// Preset name (a2, matN, sums like mat1+mat1) or algebra JSON file.
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        bracket: PathBuf,
        /// Check the modified axioms (both Leibniz rules, H0 conditions).
        #[arg(long)]
        modified: bool,
        /// Reduce residuals modulo these parameter relations, e.g. "gamma^2 + alpha*beta".
        #[arg(long = "relation")]
        relations: Vec<String>,
    },
    /// Classify brackets on an algebra.
    Solve {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        modified: bool,
        /// Allow algebras of dimension above 4.
        #[arg(long)]
        force_large: bool,
    },
    /// Inner brackets of a wedge element, or the AYBE system on a wedge subspace.
    Inner {
        #[arg(long)]
        algebra: String,
        #[arg(
            long,
            conflicts_with = "aybe_scan",
            required_unless_present = "aybe_scan"
        )]
        wedge: Option<PathBuf>,
        #[arg(long)]
        aybe_scan: bool,
    },
    /// Poisson table on a representation space, optionally checked against a chart.
    Induce {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        bracket: PathBuf,
        #[arg(long)]
        n: usize,
        /// rep2-a2 (exact) or rep3-a2 (sampled).
        #[arg(long)]
        chart: Option<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Value of the bracket parameter in sampled checks.
        #[arg(long, default_value_t = 1.0)]
        param_value: f64,
        /// Rotate the tangent frame of rep3-a2 by this angle.
        #[arg(long)]
        frame_rotation: Option<f64>,
    },
    /// Dimensions of double derivations, inner ones, and the quotient.
    Hh1 {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        force_large: bool,
    },
    /// Run the reference computations on 𝒜₂ and matrix algebras.
    Report,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(&cli, argv) {
        Ok(report) => {
            let text = match cli.global.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            let written = match &cli.global.out {
                Some(path) => std::fs::write(path, &text).map_err(anyhow::Error::from),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(if report.passed() { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
