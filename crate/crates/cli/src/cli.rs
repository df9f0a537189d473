use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use recurse_ring::growth::DEFAULT_BYTE_CAP;
use recurse_ring::monomial::{DEFAULT_MEMO_CAP, DEFAULT_SEARCH_BUDGET};

#[derive(Debug, Parser)]
#[command(name = "recurse-ring", version, about = "Exact workbench for functionally recursive matrices")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Built-in system (R1, R2, SIGMA, BR) or path to a system file.
    #[arg(long, global = true, default_value = "R2")]
    pub system: String,
    /// Tree level for matrix commands.
    #[arg(long, global = true)]
    pub levels: Option<usize>,
    /// Cap on state-set size and on states visited by one zero test.
    #[arg(long = "cap-states", global = true, default_value_t = DEFAULT_SEARCH_BUDGET)]
    pub cap_states: usize,
    /// Entries kept in the zero-test memo table.
    #[arg(long = "cap-memos", global = true, default_value_t = DEFAULT_MEMO_CAP)]
    pub cap_memos: usize,
    /// Bytes of stored words allowed during enumeration.
    #[arg(long = "cap-bytes", global = true, default_value_t = DEFAULT_BYTE_CAP)]
    pub cap_bytes: usize,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for parallel stages.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Record wall time in reports.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Write tabular results as CSV here (`-` for stdout).
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Enumerate,
    Operators,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a system file; print its normalized form.
    Parse { file: PathBuf },
    /// Level matrix of a polynomial.
    Level { poly: String },
    /// Check `lhs = rhs` at levels 0..=--levels.
    Identity {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Closure of block entries starting from a generator.
    States { generator: char },
    /// Zero test, block form, type and nilpotency degree of monomials.
    Zero {
        #[arg(required = true)]
        words: Vec<String>,
        #[arg(long, default_value_t = 16)]
        nil_cap: usize,
    },
    /// Nilpotency degree of a sum of monomials.
    Nil {
        poly: String,
        #[arg(long, default_value_t = 16)]
        cap: usize,
    },
    /// Check the relators u_1..u_count are zero and minimal.
    Relators {
        #[arg(long, default_value_t = 12)]
        count: usize,
    },
    /// Membership of a word in the left annihilator series.
    Annihilator {
        word: String,
        /// Test membership in this level and strictness against the previous one.
        #[arg(long)]
        level: Option<usize>,
        /// Search for the least level up to this cap.
        #[arg(long, default_value_t = 16)]
        depth_cap: usize,
    },
    /// Check the power sets M(k) and S(w, k).
    PowerSets {
        #[arg(long, default_value_t = 10)]
        cap_len: usize,
        #[arg(long, default_value_t = 4)]
        level_bound: usize,
    },
    /// Growth table f(n), g(n), F(n).
    Growth {
        #[arg(long, default_value_t = 60)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Enumerate)]
        method: Method,
    },
    /// f(a_{n+1} - 2) = 2^{n-2} over a range of n.
    Landmarks {
        #[arg(long, default_value_t = 4)]
        from: usize,
        #[arg(long, default_value_t = 11)]
        to: usize,
    },
    /// Count nonzero words avoiding a factor.
    Avoid {
        factor: String,
        #[arg(long, default_value_t = 40)]
        n: usize,
    },
    /// Growth exponent fit and band check.
    Gk {
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long, default_value_t = 401)]
        window: usize,
    },
    /// Fibonacci type calculus.
    #[command(subcommand)]
    Fib(FibCommand),
    /// Rank of all words up to a length in R1.
    Freeness {
        #[arg(long = "max-len", short = 'L')]
        max_len: usize,
        /// Raise the level from L+2 until full rank or this cap.
        #[arg(long)]
        escalate: Option<usize>,
    },
    /// Linear independence of 1, s, ..., s^d in R1.
    Transcendence {
        #[arg(long)]
        d: usize,
    },
    /// Compare the zero test with level truncation on random words.
    Crosscheck {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum FibCommand {
    /// Sum and product identities on a range of indices.
    Facts {
        #[arg(long, default_value_t = -30, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 30)]
        hi: i64,
    },
    /// (0,1)(κ*)^j against the closed form for j up to a bound.
    Orbit {
        #[arg(long, default_value_t = 25)]
        j: usize,
    },
    /// Δ of a composition, e.g. `--partition 2,1,3`.
    Delta {
        #[arg(long, value_delimiter = ',', required = true)]
        partition: Vec<usize>,
    },
    /// A composition of n with the given Δ.
    Partition {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: String,
    },
    /// Type and length of (t)·op from the closed formulas.
    Length {
        /// i, ii, iii or iv.
        #[arg(long)]
        form: String,
        #[arg(long, value_delimiter = ',', required = true)]
        partition: Vec<usize>,
    },
    /// Boundary words per Fibonacci length range against 2^{n+1}.
    Ranges {
        #[arg(long, default_value_t = 8)]
        n: u32,
    },
    /// Items of the Δ lemma, exhaustively over compositions.
    Lemma {
        #[arg(long, default_value_t = 14)]
        n: usize,
    },
}
