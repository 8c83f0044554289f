//! Command-line front end for the exact Veronese / Frobenius computations.
//!
//! Exit codes: 0 success, 1 a verified identity failed, 2 invalid input,
//! 3 a resource guard was exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use veronese_fsig::cli::{
    execute, exit_code, Command, Guards, OutputFormat, RunConfig, DEFAULT_MAX_ENUM,
    DEFAULT_MAX_MINORS,
};

#[derive(Parser)]
#[command(
    name = "vfsig",
    version,
    about = "Exact Frobenius root decompositions, dual F-signature bounds, and \
             determinantal ideal certificates for Veronese rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,

    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Cap on brute-force enumeration sizes and output record counts
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ENUM)]
    max_enum: u64,

    /// Cap on the number of maximal minors expanded by verify-minors
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_MINORS)]
    max_minors: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => OutputFormat::Table,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Decompose the p^e-th root module of a graded class into class summands
    Decompose {
        /// Number of variables
        #[arg(long)]
        n: u32,
        /// Veronese degree
        #[arg(long)]
        d: u32,
        /// Characteristic (prime)
        #[arg(long)]
        p: u64,
        /// Root exponent
        #[arg(long)]
        e: u32,
        /// Source class; defaults to the canonical class
        #[arg(long)]
        source_class: Option<u32>,
    },
    /// Exact dual F-signature bounds for e = 1..e_max plus both closed forms
    Signature {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e_max: u32,
    },
    /// Check that the maximal minors of the band matrix span the full
    /// degree-r monomial space; optionally emit membership certificates
    VerifyMinors {
        #[arg(long)]
        n: u32,
        /// Band row count / monomial degree
        #[arg(long)]
        r: u32,
        /// Write expansion-verified certificates for all degree-r monomials
        /// to this JSON file
        #[arg(long)]
        certificates: Option<PathBuf>,
    },
    /// The chain of optimal surjections from each class onto the canonical one
    Chain {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// F-signature estimate: splitting number over root rank
    Fsig {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Decompose {
            n,
            d,
            p,
            e,
            source_class,
        } => Command::Decompose {
            n,
            d,
            p,
            e,
            source_class,
        },
        Cmd::Signature { n, d, p, e_max } => Command::Signature { n, d, p, e_max },
        Cmd::VerifyMinors { n, r, certificates } => Command::VerifyMinors { n, r, certificates },
        Cmd::Chain { n, d } => Command::Chain { n, d },
        Cmd::Fsig { n, d, p, e } => Command::Fsig { n, d, p, e },
    };
    let config = RunConfig {
        command,
        format: cli.format.into(),
        out: cli.out,
        guards: Guards {
            max_enum: cli.max_enum,
            max_minors: cli.max_minors,
        },
    };
    match execute(&config) {
        Ok(output) => {
            print!("{}", output.text);
            if output.verification_failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
