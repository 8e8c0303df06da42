use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "ample-forge",
    version,
    about = "Sheaf cohomology, regularity and Frobenius amplitude on projective space over F_p"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Emit a JSON report.
    #[arg(long, global = true, conflicts_with = "tsv")]
    pub json: bool,
    /// Emit tab-separated tables where the verb has one.
    #[arg(long, global = true)]
    pub tsv: bool,
    /// Seed for fuzzed inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest filter index examined; each verb has its own default.
    #[arg(long, global = true)]
    pub horizon: Option<usize>,
    /// Half-width of the default twist window `[-w, w]`.
    #[arg(long, global = true, default_value_t = 4)]
    pub window: i64,
    /// Write the report here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Module file.
    #[arg(long, short = 'm', conflicts_with = "bundle")]
    pub module: Option<PathBuf>,
    /// Built-in sheaf: tangent, cotangent, canonical, structure or O(d).
    #[arg(long, short = 'b')]
    pub bundle: Option<String>,
    /// Projective dimension for --bundle.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Characteristic for --bundle.
    #[arg(long, default_value_t = 2)]
    pub p: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    /// `L^n`.
    Line,
    /// `Sym^n E`.
    Sym,
    /// `F^{*n} F`.
    Frob,
    /// `O(a) ⊗ F^{*n} F`, with `a` from --by.
    TwistedFrob,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Sid,
    Chain72,
    Sandwich61,
    Cor42,
    Fujita,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    MonomialIdeal,
    BinomialIdeal,
    Quotient,
    DirectSum,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Table of h^i(M~(d)).
    Cohomology {
        #[command(flatten)]
        src: Source,
        /// Cohomological degrees, `a..b` or `a`.
        #[arg(long = "i", allow_hyphen_values = true)]
        i: Option<String>,
        /// Twists, `a..b` or `a`; defaults to the window.
        #[arg(long = "d", allow_hyphen_values = true)]
        d: Option<String>,
    },
    /// Castelnuovo-Mumford regularity reg_t.
    Regularity {
        #[command(flatten)]
        src: Source,
        /// A single t; all t in [0, n] otherwise.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Least t with reg_t(M) <= t.
    Level {
        #[command(flatten)]
        src: Source,
    },
    /// Graded Betti numbers of the minimal free resolution.
    Betti {
        #[command(flatten)]
        src: Source,
    },
    /// Print a built-in sheaf as a module file.
    Bundle {
        #[command(flatten)]
        src: Source,
    },
    /// M(a).
    Twist {
        #[command(flatten)]
        src: Source,
        #[arg(long, allow_hyphen_values = true)]
        by: i32,
    },
    /// Sym^k M.
    Sym {
        #[command(flatten)]
        src: Source,
        #[arg(long, short = 'k')]
        power: usize,
    },
    /// Iterated Frobenius pullback F^{*k} M.
    Frob {
        #[command(flatten)]
        src: Source,
        #[arg(long, short = 'k', default_value_t = 1)]
        power: u32,
    },
    /// Frobenius pushforward F_* M.
    FrobPush {
        #[command(flatten)]
        src: Source,
    },
    /// Restriction to a hyperplane, the last coordinate one by default.
    Restrict {
        #[command(flatten)]
        src: Source,
        /// Linear form cutting out the hyperplane.
        #[arg(long)]
        form: Option<String>,
    },
    /// Dimension of the locus where M~ is not locally free (-1 if none).
    Nlf {
        #[command(flatten)]
        src: Source,
    },
    /// Whether M~ is generated by global sections.
    Globgen {
        #[command(flatten)]
        src: Source,
    },
    /// t-ampleness of a filter on a finite prefix.
    FilterCheck {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum)]
        kind: FilterArg,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        t: i64,
        /// Twist for the twisted Frobenius filter.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        by: i32,
        /// Test twists `a..b` for O(a); the default ladder otherwise.
        #[arg(long, allow_hyphen_values = true)]
        tests: Option<String>,
    },
    /// Estimated Frobenius amplitude.
    Famp {
        #[command(flatten)]
        src: Source,
        #[arg(long, allow_hyphen_values = true)]
        tests: Option<String>,
    },
    /// Global generation of Frobenius pullbacks twisted by the tests.
    Pamp {
        #[command(flatten)]
        src: Source,
        #[arg(long, allow_hyphen_values = true)]
        tests: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Pairs drawn for the sid suite.
        #[arg(long, default_value_t = 200)]
        fuzz_count: usize,
        /// Projective dimension for the sid suite.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Twist search cap for the fujita suite.
        #[arg(long, default_value_t = 6)]
        cap: i64,
    },
    /// Generate a reproducible stream of random modules.
    Fuzz {
        #[arg(long, value_enum, default_value_t = ShapeArg::Quotient)]
        shape: ShapeArg,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        max_gen_degree: u32,
        #[arg(long, default_value_t = 3)]
        max_gens: usize,
        /// Only this stream index.
        #[arg(long)]
        index: Option<usize>,
        /// Write one file per instance into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}
