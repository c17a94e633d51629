use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use superharm::repthy::DEFAULT_SEED;

/// Default safety bounds, lifted by `--unsafe-bounds`.
pub const MAX_M: usize = 4;
pub const MAX_N: usize = 3;
pub const MAX_K: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Sl2,
    Invariance,
    Fischer,
    Structure,
    All,
}

impl Suite {
    /// The concrete suites this selection runs, in order.
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Sl2,
                Suite::Invariance,
                Suite::Fischer,
                Suite::Structure,
            ],
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Sl2 => "sl2",
            Suite::Invariance => "invariance",
            Suite::Fischer => "fischer",
            Suite::Structure => "structure",
            Suite::All => "all",
        }
    }
}

/// Fischer decompositions and osp(m|2n) structure of superspace polynomials.
#[derive(Debug, Parser)]
#[command(name = "superharm", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "SUPERHARM_FORMAT",
        default_value = "text"
    )]
    pub format: Format,

    /// Seed for pseudorandom probe vectors.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Number of random probe vectors in lattice probes.
    #[arg(long, global = true, default_value_t = 8)]
    pub probes: usize,

    /// Allow m, n and degrees beyond the default bounds (m ≤ 4, n ≤ 3, k ≤ 10).
    #[arg(long, global = true)]
    pub unsafe_bounds: bool,

    /// Worker threads for grid commands (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Use a deliberately wrong metric, for negative controls.
    #[arg(long, global = true, hide = true)]
    pub corrupt_metric: bool,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Space {
    /// Number of bosonic variables.
    #[arg(long)]
    pub m: usize,
    /// Half the number of fermionic variables.
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimensions of P_k, H_k, H~_k and H0_k for k ≤ kmax.
    Dims {
        #[command(flatten)]
        space: Space,
        /// Largest degree.
        #[arg(long)]
        kmax: usize,
    },
    /// Split a homogeneous polynomial along the Fischer decomposition.
    Decompose {
        #[command(flatten)]
        space: Space,
        /// Polynomial such as `3*x1^2*theta1*theta2 - 1/2*x2^4`.
        #[arg(required_unless_present = "file", conflicts_with = "file")]
        polynomial: Option<String>,
        /// Read the polynomial from a file instead.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Also print the matrix of this operator on P_k
        /// (laplace, euler, r2, casimir or L<i>,<j>).
        #[arg(long, value_name = "OPERATOR")]
        dump_matrix: Option<String>,
    },
    /// The chains R^{2j} H_l of the decomposition, by source degree.
    Diagram {
        #[command(flatten)]
        space: Space,
        /// Largest degree.
        #[arg(long)]
        kmax: usize,
    },
    /// Run verification suites for every k ≤ kmax.
    Verify {
        #[command(flatten)]
        space: Space,
        /// Largest degree.
        #[arg(long)]
        kmax: usize,
        /// Which checks to run.
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Structure report for H0_k ⊆ H_k ⊆ H~_k in one degree.
    Structure {
        #[command(flatten)]
        space: Space,
        /// Degree.
        #[arg(long)]
        k: usize,
        /// Also print the matrix of this operator on P_k.
        #[arg(long, value_name = "OPERATOR")]
        dump_matrix: Option<String>,
    },
}
