//! Command-line grammar. Rational literals are taken as strings and parsed by
//! the dispatcher so a malformed literal still yields a report.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "puiseux",
    version,
    about = "Exact factorization queries on reciprocal-type Puiseux monoids"
)]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[command(flatten)]
    pub descriptor: DescriptorArgs,
    #[command(flatten)]
    pub limits: LimitArgs,
    /// Emit one JSON report instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Structural flags with their justification.
    Classify,
    /// The first generators with their controlling primes.
    Generators {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// Atomic decomposition `q = η + Σ ζᵢaᵢ`.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        q: String,
        /// Every decomposition on indices up to --max-index, by exhaustive search.
        #[arg(long)]
        all: bool,
    },
    /// Membership with a certificate or an obstruction.
    Member {
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Whether `r` divides `q`, that is `q − r` is in the monoid.
    Divides {
        #[arg(allow_hyphen_values = true)]
        r: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// All factorizations up to --max-length and --max-index.
    Factorize {
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// The set of lengths of `q` up to a window.
    Lengths {
        #[arg(allow_hyphen_values = true)]
        q: String,
        /// Largest length examined; defaults to --max-length.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        up_to: Option<u64>,
    },
    /// All factorizations of `q` with exactly the given length.
    Zlength {
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        length: u64,
    },
    /// Atom certificates for the first generators.
    Atoms {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// A certified non-stabilizing divisibility chain, or with --from the
    /// descent measure bounding every chain below an element.
    Chain {
        /// Number of strict steps; defaults to --max-steps.
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..))]
        steps: Option<u64>,
        #[arg(long)]
        from: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct DescriptorArgs {
    /// Builtin family: prime_reciprocal, grams, gap, geometric,
    /// power_reciprocal, mixed_5_2 or custom.
    #[arg(short = 'd', long = "family", global = true, conflicts_with = "file")]
    pub family: Option<String>,
    /// JSON descriptor document.
    #[arg(short = 'f', long, global = true)]
    pub file: Option<PathBuf>,
    #[arg(long, global = true)]
    pub base: Option<u64>,
    #[arg(long, global = true)]
    pub ell: Option<usize>,
    /// Ratio of the geometric family.
    #[arg(long, global = true)]
    pub ratio: Option<String>,
    /// Leave out the unit generator of the geometric family.
    #[arg(long, global = true)]
    pub no_unit: bool,
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Explicit prime prefix, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    /// Positive rational multiplying every generator.
    #[arg(long, global = true)]
    pub scale: Option<String>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub numerators: Option<Vec<u64>>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub denominators: Option<Vec<u64>>,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_length: u64,
    #[arg(long, global = true, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_index: u64,
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_steps: u64,
    /// Largest coefficient a bounded search puts on one generator.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_coeff: u64,
    /// Search nodes before a bounded search reports unknown.
    #[arg(long, global = true, default_value_t = 2_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub node_budget: u64,
}

impl Verb {
    pub fn name(&self) -> &'static str {
        match self {
            Verb::Classify => "classify",
            Verb::Generators { .. } => "generators",
            Verb::Decompose { .. } => "decompose",
            Verb::Member { .. } => "member",
            Verb::Divides { .. } => "divides",
            Verb::Factorize { .. } => "factorize",
            Verb::Lengths { .. } => "lengths",
            Verb::Zlength { .. } => "zlength",
            Verb::Atoms { .. } => "atoms",
            Verb::Chain { .. } => "chain",
        }
    }
}
