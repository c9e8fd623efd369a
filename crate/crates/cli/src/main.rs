use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use superext_cli::commands::{self, Suite, VerifyOptions};
use superext_cli::{CliError, Outcome};

#[derive(Parser)]
#[command(
    name = "superext",
    version,
    about = "Exact cohomology of abelian extensions of Lie superalgebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an algebra, module, extension or map file.
    Validate { file: PathBuf },
    /// Even cohomology of an extension or module file.
    Cohomology {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        degree: u8,
    },
    /// Extend an endomorphism of the ideal, or report the obstruction.
    Extend { extension: PathBuf, map: PathBuf },
    /// Lift an endomorphism of the quotient, or report the obstruction.
    Lift { extension: PathBuf, map: PathBuf },
    /// Run a verification suite.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// JSON file with `a_maps` and `g_maps`.
        #[arg(long)]
        samples: Option<PathBuf>,
        /// Number of random samples drawn in addition to the file.
        #[arg(long, default_value_t = 8)]
        random: usize,
        /// Number of random pairs for the ring checks.
        #[arg(long, default_value_t = 50)]
        pairs: usize,
        /// RNG seed; SUPEREXT_SEED overrides it.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build the semidirect product of an algebra and a module.
    Semidirect {
        algebra: PathBuf,
        module: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    FiveTerm,
    Thm1,
    Cor1,
    Thm2,
    Thm3,
    Oracle,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::FiveTerm => Suite::FiveTerm,
            SuiteArg::Thm1 => Suite::Thm1,
            SuiteArg::Cor1 => Suite::Cor1,
            SuiteArg::Thm2 => Suite::Thm2,
            SuiteArg::Thm3 => Suite::Thm3,
            SuiteArg::Oracle => Suite::Oracle,
        }
    }
}

fn seed(flag: u64) -> Result<u64, CliError> {
    match std::env::var("SUPEREXT_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| {
            CliError::Parse(format!("SUPEREXT_SEED={s:?} is not an unsigned integer"))
        }),
        Err(_) => Ok(flag),
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Validate { file } => commands::validate(&file),
        Command::Cohomology { file, degree } => commands::cohomology(&file, degree),
        Command::Extend { extension, map } => commands::extend(&extension, &map),
        Command::Lift { extension, map } => commands::lift(&extension, &map),
        Command::Verify {
            file,
            suite,
            samples,
            random,
            pairs,
            seed: s,
        } => commands::verify(
            &file,
            &VerifyOptions {
                suite: suite.into(),
                samples,
                random,
                pairs,
                seed: seed(s)?,
            },
        ),
        Command::Semidirect {
            algebra,
            module,
            out,
        } => commands::semidirect(&algebra, &module, &out),
    }
}

fn main() -> ExitCode {
    let outcome = run(Cli::parse()).unwrap_or_else(|e| Outcome::from_error(&e));
    println!(
        "{}",
        serde_json::to_string_pretty(&outcome.report).expect("serializable")
    );
    eprintln!("{}", outcome.summary);
    ExitCode::from(outcome.code as u8)
}
