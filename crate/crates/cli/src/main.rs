//! `compositum` command-line tool.

mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use compositum::closure::DEFAULT_MAX_COMPOSITA;
use compositum::numberfield::DEFAULT_MAX_DEGREE;
use compositum::DEFAULT_MAX_GROUP_ORDER;

pub const DEFAULT_SEED: u64 = 0x00c0_ffee;

#[derive(Parser, Debug)]
#[command(name = "compositum", version, about = "Abstract composita of fields over finite permutation groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Context document (JSON); `-` reads stdin.
    #[arg(long, global = true)]
    pub input: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_GROUP_ORDER)]
    pub max_group_order: usize,
    /// Largest tensor algebra dimension the oracle will build.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEGREE)]
    pub max_degree: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    Bimodule,
    PerCoset,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Close the system under identities, duals and amalgamation.
    Close {
        #[arg(long, default_value_t = DEFAULT_MAX_COMPOSITA)]
        max_composita: usize,
    },
    /// Compute the base field and the groups H_A.
    BaseField,
    /// Fuse two labelled composita of the closed system.
    Fuse {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value_t = Rule::Bimodule)]
        rule: Rule,
        /// Print the whole fusion table instead of one product.
        #[arg(long)]
        table: bool,
    },
    /// Compare the group model with explicit tensor products of number fields.
    OracleSweep {
        /// `cyclotomic:N` or `s3_x3m2`; used when no input is given.
        #[arg(long)]
        realization: Option<String>,
        /// Sweep every compositum between subgroup class representatives.
        #[arg(long)]
        lattice: bool,
    },
    /// Run the bundled example fixtures.
    Examples {
        #[arg(long)]
        fixture: Option<String>,
        /// List fixture names and exit.
        #[arg(long)]
        list: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { commands::EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = commands::run(&cli);
    if !out.stdout.is_empty() {
        let _ = writeln!(std::io::stdout().lock(), "{}", out.stdout);
    }
    if let Some(msg) = &out.stderr {
        eprintln!("error: {msg}");
    }
    ExitCode::from(out.code)
}
