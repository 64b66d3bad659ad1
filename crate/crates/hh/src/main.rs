use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hh::config::{Mode, SuiteConfig};
use hh::report::Status;
use hh::{emit, run_suite, HarnessError};

#[derive(Parser)]
#[command(name = "hh", about = "Exact and floating-point checks for Weyl transforms and spherical functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        suite: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Write a data file: profile, matrix or table.
    Emit {
        target: String,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n1: Option<usize>,
    #[arg(long)]
    n2: Option<usize>,
    /// Rational λ, e.g. 1, -1/2.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    lambda: String,
    /// Fock truncation degree.
    #[arg(long = "N")]
    big_n: Option<u32>,
    #[arg(long)]
    kmax: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Both)]
    mode: Mode,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Opts {
    fn config(self) -> Result<SuiteConfig, HarnessError> {
        let cfg = SuiteConfig {
            n: self.n,
            n1: self.n1,
            n2: self.n2,
            max_degree: self.big_n,
            kmax: self.kmax,
            seed: self.seed,
            mode: self.mode,
            out: self.out,
            ..SuiteConfig::default()
        };
        cfg.with_lambda(&self.lambda)
    }
}

fn run(cli: Cli) -> Result<bool, HarnessError> {
    match cli.command {
        Command::Verify { suite, opts } => {
            let cfg = opts.config()?;
            let report = run_suite(&suite, &cfg)?;
            for r in &report.records {
                let status = match r.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Skip => "skip",
                };
                let note = r.note.as_deref().map(|n| format!("  ({n})")).unwrap_or_default();
                println!("{status:4}  {:32} residual={:.3e}{note}", r.check_id, r.residual);
            }
            if let Some(dir) = &cfg.out {
                report.write(dir)?;
            }
            Ok(report.all_pass())
        }
        Command::Emit { target, opts } => {
            let cfg = opts.config()?;
            let path = emit::emit(&target, &cfg)?;
            println!("{}", path.display());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
