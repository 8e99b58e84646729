use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "qsym",
    version,
    about = "Quasisymmetric enumerators of labeled posets and digraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,

    /// Lift the default size guards.
    #[arg(long, global = true)]
    pub force: bool,

    /// Seed for randomized choices.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    #[value(name = "F")]
    F,
    #[value(name = "M")]
    M,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Conjecture {
    /// Tree posets under the all-strict enumerator.
    C2,
    /// Labeled rooted trees under their enumerator.
    C3,
    /// Labeled trees without the rootedness hypothesis.
    C3Unrooted,
    /// Fair trees under their enumerator.
    Fair,
    /// Tree posets under a principal specialization.
    Spec,
    /// Directed trees under the chromatic function.
    Xgt,
    /// Free trees under the multiset of chromatic functions of orientations.
    Multiset,
}

/// A poset given as a file or an inline literal.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct PosetInput {
    /// Poset or digraph file (text or JSON).
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Inline poset such as "3; 1<2 W; 1<3 S".
    #[arg(long)]
    pub poset: Option<String>,
    /// Inline digraph such as "3; 1->2; 3->2"; its reachability order is used
    /// with every cover strict.
    #[arg(long)]
    pub digraph: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct DigraphInput {
    /// Digraph file (text or JSON).
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Inline digraph such as "3; 1->2; 3->2".
    #[arg(long)]
    pub digraph: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The (P, w)-partition enumerator K.
    Kpw {
        #[command(flatten)]
        input: PosetInput,
        #[arg(long, value_enum, default_value_t = BasisArg::F)]
        basis: BasisArg,
        /// Compute with a randomly chosen compatible labeling (uses --seed).
        #[arg(long)]
        random_labeling: bool,
    },
    /// The chromatic quasisymmetric function X_G(x, t).
    Xgt {
        #[command(flatten)]
        input: DigraphInput,
        /// Also evaluate the chromatic polynomial at k.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Principal specialization K(1, q, ..., q^(k-1)).
    Spec {
        #[command(flatten)]
        input: PosetInput,
        #[arg(long)]
        k: usize,
    },
    /// Jump vectors, Greene shape, antichains and other invariants.
    Invariants {
        #[command(flatten)]
        input: PosetInput,
        /// Test for a pointed partition of this weight, e.g. 4,1,4,2.
        #[arg(long, value_delimiter = ',')]
        pointed: Option<Vec<u32>>,
    },
    /// List a tree family, one object per block.
    Enumerate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
        /// Index range a..b into the sorted family.
        #[arg(long)]
        range: Option<String>,
    },
    /// Run a collision scan.
    Verify {
        #[arg(long, value_enum)]
        conjecture: Conjecture,
        #[arg(long)]
        n: usize,
        /// Specialization order for `spec` (defaults to n).
        #[arg(long)]
        k: Option<usize>,
        /// Use the all-weak enumerator for `spec`.
        #[arg(long)]
        weak: bool,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Compare two posets or digraphs up to isomorphism and by enumerator.
    Iso {
        /// Two files.
        #[arg(long, num_args = 1)]
        file: Vec<PathBuf>,
        /// Two inline posets.
        #[arg(long, num_args = 1, conflicts_with_all = ["file", "digraph"])]
        poset: Vec<String>,
        /// Two inline digraphs.
        #[arg(long, num_args = 1, conflicts_with = "file")]
        digraph: Vec<String>,
    },
}
