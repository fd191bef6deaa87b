use clap::{Parser, Subcommand, ValueEnum};

/// Exact polynomial elimination and CAD projection.
///
/// Polynomial inputs are files holding one polynomial each (`#` starts a
/// comment) or, when no file is given, standard input with polynomials
/// separated by `;`.
#[derive(Parser, Debug)]
#[command(name = "cadproj", version)]
pub struct Cli {
    /// Write a JSON statistics report to stderr.
    #[arg(long, global = true)]
    pub stats: bool,

    /// Variable order, highest first. Defaults to the variables of the
    /// inputs in reverse alphabetical order.
    #[arg(long, global = true, value_delimiter = ',')]
    pub order: Option<Vec<String>>,

    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Resultant for projection: primitive, square-free, common factor removed.
    Res {
        #[arg(long)]
        var: String,
        files: Vec<String>,
    },
    /// Sylvester resultant, unnormalized.
    Rawres {
        #[arg(long)]
        var: String,
        files: Vec<String>,
    },
    /// Discriminant, canonical.
    Disc {
        #[arg(long)]
        var: String,
        files: Vec<String>,
    },
    /// Macaulay resultant of n polynomials in n - 1 variables.
    Multires {
        #[arg(long, value_delimiter = ',', required = true)]
        elim: Vec<String>,
        files: Vec<String>,
    },
    /// Reduced lex Gröbner basis under the variable order.
    Groebner { files: Vec<String> },
    /// Square-free decomposition.
    Sqfree { files: Vec<String> },
    /// Factorization of a univariate polynomial over the integers.
    Factor { files: Vec<String> },
    /// Isolating intervals of the real roots of a univariate polynomial.
    Roots {
        /// Refine every interval to at most this width (e.g. 1/1000).
        #[arg(long)]
        eps: Option<String>,
        files: Vec<String>,
    },
    /// Projection under equational constraints.
    Project {
        #[arg(long, value_enum, default_value_t = StrategyArg::Iterated)]
        strategy: StrategyArg,
        /// The first K inputs are equational constraints.
        #[arg(long, default_value_t = 1)]
        ecs: usize,
        /// Print the full trace as JSON.
        #[arg(long)]
        json: bool,
        files: Vec<String>,
    },
    /// Genuine/spurious split of an iterated resultant by a multivariate one.
    Split {
        #[arg(long)]
        iterated: String,
        #[arg(long)]
        multires: String,
    },
    /// Bézout bound d^k, and classification of the given factors against it.
    Bezout {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        k: u32,
        files: Vec<String>,
    },
    /// Predicted projection degrees per level.
    Predict {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: u32,
        /// Show a single strategy; both are shown by default.
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
        #[arg(long)]
        json: bool,
    },
    /// Clear denominators in a prenex formula.
    Rewrite {
        #[arg(long, value_enum, default_value_t = ModeArg::Product)]
        mode: ModeArg,
        /// Output dialect; defaults to that of the input.
        #[arg(long, value_enum)]
        dialect: Option<DialectArg>,
        file: Option<String>,
    },
    /// Generalized discriminant of two polynomials in two eliminated variables.
    Gendisc {
        #[arg(long, value_delimiter = ',', required = true)]
        elim: Vec<String>,
        files: Vec<String>,
    },
    /// Generalized resultant of three polynomials in two eliminated variables.
    Genres {
        #[arg(long, value_delimiter = ',', required = true)]
        elim: Vec<String>,
        files: Vec<String>,
    },
    /// Rerun a scripted example and compare with the stored results.
    Reproduce {
        /// Section id; omit to list them.
        section: Option<String>,
        /// Allow sections that take hours.
        #[arg(long)]
        long: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyArg {
    Iterated,
    Multires,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Product,
    SignSplit,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DialectArg {
    Smt,
    Native,
}
