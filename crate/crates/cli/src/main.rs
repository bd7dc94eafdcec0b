//! `ordopoly`: strict and extended strict order polynomials from the command line.

/// `println!` that stays quiet when stdout is closed early, e.g. by `head`.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ordopoly_core::{BigRational, EnumOptions, Error};

#[derive(Parser, Debug)]
#[command(name = "ordopoly", version, about)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Maximum number of linear extensions to visit [env: ORDOPOLY_BUDGET, default 10000000].
    #[arg(long, global = true)]
    pub budget: Option<u64>,

    /// Ignore the enumeration budget.
    #[arg(long, global = true)]
    pub force: bool,

    /// Worker threads for the enumeration fold.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

impl GlobalArgs {
    pub fn options(&self) -> EnumOptions {
        let mut opts = EnumOptions::from_env();
        if let Some(b) = self.budget {
            opts = opts.with_budget(Some(b));
        }
        if self.force {
            opts = opts.with_budget(None);
        }
        if let Some(t) = self.threads {
            opts = opts.with_threads(t);
        }
        opts
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct PosetArg {
    /// A poset file (`-` for stdin), or a builtin: chain:p, antichain:p, grid:l,m, fence:m.
    #[arg(long)]
    pub poset: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a poset and report its structure.
    Validate(PosetArg),
    /// List the linear extensions in lexicographic order.
    Extensions {
        #[command(flatten)]
        poset: PosetArg,
        /// Print only the number of extensions.
        #[arg(long)]
        count_only: bool,
    },
    /// Descents and deletable labels of each extension, or of one word.
    Analyze {
        #[command(flatten)]
        poset: PosetArg,
        /// A single word, e.g. `124753689` or `1 2 4 7`.
        #[arg(long)]
        word: Option<String>,
    },
    /// The strict order polynomial, symbolically or at one n.
    Omega {
        #[command(flatten)]
        poset: PosetArg,
        #[arg(long)]
        n: Option<u64>,
        /// Print the polynomial even when --n is given.
        #[arg(long)]
        symbolic: bool,
    },
    /// The extended strict order polynomial and its coefficient table.
    Epoly {
        #[command(flatten)]
        poset: PosetArg,
        #[arg(long)]
        n: Option<u64>,
        /// A rational such as `3`, `-2` or `1/2`.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<BigRational>,
        /// Print the polynomial even when evaluating.
        #[arg(long)]
        symbolic: bool,
    },
    /// Partition the extensions of all induced subposets into classes.
    Classes(PosetArg),
    /// Cross-check against brute-force oracles and closed forms.
    Verify {
        /// Verify one poset instead of the builtin corpus.
        #[arg(long)]
        poset: Option<String>,
        /// Largest n for the subposet-sum comparison.
        #[arg(long, default_value_t = 4)]
        n: u64,
        /// Seed for the random part of the corpus.
        #[arg(long, default_value_t = ordopoly_core::corpus::DEFAULT_SEED)]
        seed: u64,
    },
    /// Time extension enumeration on grids.
    Bench {
        /// Posets to time; defaults to grids 3x3 through 4x5.
        #[arg(long)]
        poset: Vec<String>,
    },
}

/// 1 parse error, 2 invariant violation, 3 verification mismatch, 4 budget exceeded.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } | Error::Json(_) => 1,
        Error::Mismatch(_) => 3,
        Error::BudgetExceeded { .. } => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match cli.command {
        Command::Validate(p) => commands::validate(g, &p.poset),
        Command::Extensions { poset, count_only } => {
            commands::extensions(g, &poset.poset, count_only)
        }
        Command::Analyze { poset, word } => commands::analyze(g, &poset.poset, word.as_deref()),
        Command::Omega { poset, n, symbolic } => commands::omega(g, &poset.poset, n, symbolic),
        Command::Epoly {
            poset,
            n,
            z,
            symbolic,
        } => commands::epoly(g, &poset.poset, n, z, symbolic),
        Command::Classes(p) => commands::classes(g, &p.poset),
        Command::Verify { poset, n, seed } => commands::verify(g, poset.as_deref(), n, seed),
        Command::Bench { poset } => commands::bench(g, &poset),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            if let Error::BudgetExceeded { partial, .. } = &err {
                eprintln!(
                    "partial table over {} extensions; rerun with --force or a larger --budget",
                    partial.total()
                );
            }
            ExitCode::from(exit_code(&err))
        }
    }
}
