mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "lieconf",
    version,
    about = "Exact λ-bracket calculus for finite Lie conformal superalgebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for independent checks
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a family member and write its AlgebraDocument
    Build(BuildArgs),
    /// Run a verification suite on a document
    Check(CheckArgs),
    /// Compute the reduced second cohomology with trivial coefficients
    H2(H2Args),
    /// List the finite simple Lie conformal superalgebras
    Catalog,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    /// W, S, S~, K, K'4, Cur or CK6
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Parameter of S_{N,a}, as p/q
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Finite Lie superalgebra of Cur g, e.g. sl(2|1)
    #[arg(long)]
    pub g: Option<String>,
    /// Output path; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Axioms,
    Family,
    Modes,
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// AlgebraDocument JSON
    #[arg(value_name = "FILE", required_unless_present = "input")]
    pub file: Option<PathBuf>,
    /// Same as FILE
    #[arg(long = "in", value_name = "FILE", conflicts_with = "file")]
    pub input: Option<PathBuf>,
}

impl InputArgs {
    pub fn path(&self) -> &PathBuf {
        self.file
            .as_ref()
            .or(self.input.as_ref())
            .expect("clap requires an input")
    }
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = Suite::Axioms)]
    pub suite: Suite,
    /// Check this many seeded samples instead of all triples
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Mode window and degree cap of the modes suite
    #[arg(long, default_value_t = 4)]
    pub max_mode: u32,
}

#[derive(Args, Debug)]
pub struct H2Args {
    #[command(flatten)]
    pub input: InputArgs,
    /// `auto` or a λ-degree cap
    #[arg(long, default_value = "auto")]
    pub cap: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let run = || commands::run(&cli, &echo);
    let outcome = match cli.jobs {
        Some(k) => match rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
        {
            Ok(pool) => pool.install(run),
            Err(e) => Err(Failure::Internal(format!("thread pool: {e}"))),
        },
        None => run(),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
