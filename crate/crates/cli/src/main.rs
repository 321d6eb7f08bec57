//! `km`: build presentations, compute abelianizations and kernel homology,
//! rewrite generators, check characters and run the verification suite.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use km_core::{Family, KmError, Mode};

#[derive(Parser, Debug)]
#[command(name = "km", version, about = "Exact computations with the quad-generated groups Gamma_n^4 and relatives")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report (or presentation) here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<Mode>,
    /// Presentation file (text or JSON) instead of a family.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a presentation and write it out.
    Present(GroupArgs),
    /// Abelianization of a presentation.
    H1(GroupArgs),
    /// Minimal generating set.
    MinGens {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: usize,
    },
    /// Rewrite generators over the minimal generating set, with certificates.
    Rewrite {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Quad to rewrite, e.g. `(1345)`; all generators if omitted.
        #[arg(long)]
        quad: Option<String>,
    },
    /// Abelianization of the kernel of a named homomorphism.
    KernelH1 {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "nu")]
        hom: String,
        /// Coset representatives, e.g. `1;(1234)`.
        #[arg(long)]
        transversal: Option<String>,
        /// Write the Schreier generator labels as JSON.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Characters of the symmetric group on subsets and the four irreducibles.
    Chars {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Run every verification check.
    VerifyAll {
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long)]
        include_slow: bool,
        /// Also check this presentation file against its builder.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 500)]
        random_cases: usize,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: KmError| e.to_string())
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: KmError| e.to_string())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                KmError::InvalidArgument(_) | KmError::Parse(_) | KmError::Unsupported(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
