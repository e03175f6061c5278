use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Exact fusion-ring, lattice and code computations for parafermion VOAs.
#[derive(Debug, Parser)]
#[command(name = "paraf", version, about)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct LevelArg {
    /// Level k.
    #[arg(short = 'k', long = "level")]
    pub level: u32,
}

#[derive(Debug, Args)]
pub struct LcArgs {
    /// Use a built-in code (currently only `5B`).
    #[arg(long, conflicts_with = "code")]
    pub builtin: Option<String>,

    /// Directory holding a replacement `code_5b.json`.
    #[arg(long)]
    pub golden_dir: Option<PathBuf>,

    /// Code file `{"p", "d", "generators"}`.
    pub code: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum LcCommand {
    /// Same as `lc-verify`.
    Verify(LcArgs),
}

#[derive(Debug, Args)]
pub struct U5aArgs {
    /// Directory holding replacement reference tables.
    #[arg(long, global = true)]
    pub golden_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: U5aCommand,
}

#[derive(Debug, Subcommand)]
pub enum U5aCommand {
    /// Print the computed module list and the 9×9 fusion table.
    Table,
    /// Recompute everything and compare with the reference tables.
    Verify,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fuse two irreducible modules given as "i,j".
    Fuse {
        #[command(flatten)]
        level: LevelArg,
        left: String,
        right: String,
    },
    /// List every irreducible module with its conformal weight.
    Weights {
        #[command(flatten)]
        level: LevelArg,
    },
    /// Check that the ℤ_k grading is a fusion-ring automorphism.
    ZkCheck {
        #[command(flatten)]
        level: LevelArg,
    },
    /// Derive and print the σ-type orbifold fusion table.
    OrbifoldTable {
        #[command(flatten)]
        level: LevelArg,
    },
    /// Check the σ sign grading and the collapse to the parent fusion ring.
    SigmaCheck {
        #[command(flatten)]
        level: LevelArg,
    },
    /// Invariants of a lattice file or a built-in root lattice.
    LatticeInfo {
        /// Root lattice name such as A2, D4 or E8.
        #[arg(long, conflicts_with = "lattice")]
        builtin: Option<String>,
        /// Lattice file `{"rank", "gram"}`.
        lattice: Option<PathBuf>,
    },
    /// Test whether a sublattice is RSSD and print its involution.
    Rssd {
        /// Sublattice file `{"parent", "basis"}`.
        sublattice: PathBuf,
    },
    /// Invariant factors of L/S, or of N/(1−ν)N for the Coxeter isometry.
    Quotient {
        /// Level k selecting √2A_{k−1} with its Coxeter isometry.
        #[arg(short = 'k', long = "level", conflicts_with = "sublattice")]
        level: Option<u32>,
        /// Sublattice file `{"parent", "basis"}`.
        sublattice: Option<PathBuf>,
    },
    /// Order of the lift of ν and of θ on √2A_{k−1}.
    LiftOrder {
        #[command(flatten)]
        level: LevelArg,
    },
    /// Verify a code and its lattice L_C.
    LcVerify(LcArgs),
    /// Alias namespace for `lc-verify`.
    Lc {
        #[command(subcommand)]
        command: LcCommand,
    },
    /// Representation and fusion data of U_{5A}.
    U5a(U5aArgs),
}
