use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "unitri",
    version,
    about = "Basic subsets, homogeneous Weyl elements and coadjoint invariants"
)]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Verb {
    /// Render the diagram of D and its extension C(D).
    Diagram(SubsetArgs),
    /// Print w_D and whether it is homogeneous.
    Wd(SubsetArgs),
    /// Factor w_D into reflections over C(D).
    Factor(SubsetArgs),
    /// Compute the invariants F_ξ, ξ ∈ C(D).
    Invariants(SubsetArgs),
    /// Print the minors defining the basic cell.
    Relations {
        #[command(flatten)]
        subset: SubsetArgs,
        #[command(flatten)]
        phi: PhiArgs,
    },
    /// Check invariance and independence on sampled cell points.
    Verify {
        #[command(flatten)]
        subset: SubsetArgs,
        #[command(flatten)]
        phi: PhiArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// List every basic subset of size n.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SubsetArgs {
    /// Board size.
    #[arg(long)]
    pub n: Option<usize>,
    /// Roots of D, as "(i,j),(k,l)".
    #[arg(long, conflicts_with = "d_json")]
    pub d: Option<String>,
    /// D as JSON: {"n": 4, "roots": [[3,1],[4,2]]}.
    #[arg(long)]
    pub d_json: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct PhiArgs {
    /// Values on D, as "(i,j)=v,(k,l)=p/q".
    #[arg(long)]
    pub phi: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}
