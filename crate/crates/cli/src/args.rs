use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "fqlab", version, about = "Finite quotient densities, fp-group quotients and graph witnesses")]
pub struct Cli {
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,

    /// Write a run manifest (CSV of key,value) to this path.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    /// Permutation group catalog used instead of the built-in one.
    #[arg(long, global = true)]
    pub fixtures: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sieve a set up to a limit and report its count.
    Sieve(SetArgs),
    /// Count a set at checkpoints.
    Density(DensityArgs),
    /// Orders of finite quotients of a presentation.
    Fq(FqArgs),
    /// Odd orders of finite quotients of a presentation.
    Oq(FqArgs),
    /// Decide which density class a presentation falls in.
    Classify(ClassifyArgs),
    /// Smooth quotients of a free product of cyclic groups.
    Smooth(SmoothArgs),
    /// Orders of cubic arc-regular coset graphs.
    Census(CensusArgs),
    /// Build witness graphs and report on their symmetry.
    Graphs(GraphsArgs),
    /// Run the lemma sweeps over the fixture catalogs.
    Verify(OutputArgs),
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write CSV here instead of standard output.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetName {
    Np,
    Pp,
    Sp,
    All,
    Even,
    Primes,
    Squarefree,
}

#[derive(Args, Debug, Clone)]
pub struct SetArgs {
    #[arg(long, value_enum, conflicts_with = "predicate")]
    pub set: Option<SetName>,
    /// Predicate in text form, e.g. `np:3` or `sp:6`.
    #[arg(long)]
    pub predicate: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub a: Option<u64>,
    #[arg(long)]
    pub limit: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct DensityArgs {
    #[command(flatten)]
    pub set: SetArgs,
    /// Comma-separated checkpoints; defaults to powers of ten.
    #[arg(long, value_delimiter = ',')]
    pub checkpoints: Vec<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct FqArgs {
    #[arg(long)]
    pub presentation: PathBuf,
    #[arg(long)]
    pub max_index: usize,
    #[arg(long)]
    pub odd_only: bool,
    /// Write each certificate table as CSV into this directory.
    #[arg(long)]
    pub emit_tables: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub presentation: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SmoothArgs {
    /// Orders of the cyclic factors, e.g. `3,2`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub orders: Vec<u64>,
    #[arg(long)]
    pub max_index: usize,
    #[arg(long)]
    pub emit_tables: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct CensusArgs {
    #[arg(long, default_value_t = 120)]
    pub max_index: usize,
    /// Amalgam presentation to use instead of C3 * C2.
    #[arg(long, requires = "stabilizer_order")]
    pub presentation: Option<PathBuf>,
    /// Vertex stabilizer order of the amalgam.
    #[arg(long, requires = "presentation")]
    pub stabilizer_order: Option<usize>,
    #[arg(long)]
    pub emit_tables: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    W,
    Sw,
}

#[derive(Args, Debug, Clone)]
pub struct GraphsArgs {
    /// Build one family member; without it the whole fixture corpus is
    /// reported.
    #[arg(long, value_enum, requires_all = ["k", "r"])]
    pub family: Option<Family>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    /// Write the edge list (`n m` header, then `u v` lines) here.
    #[arg(long, requires = "family")]
    pub edges: Option<PathBuf>,
    /// Report order densities of W(k, r) for k = 1..=K up to --limit instead.
    #[arg(long, conflicts_with = "family", requires = "limit")]
    pub w_density: Option<usize>,
    #[arg(long)]
    pub limit: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}
