use std::path::PathBuf;

use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Logic {
    Prop,
    PropT,
    PropP,
    Horn,
    K3,
    P3,
    Goedel,
    Ltlx,
    Qint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Evict,
    Receive,
    Compat,
    Postulates,
    Lattice,
    Catalog,
    Audit,
    Probe,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OnIncompatible {
    #[default]
    Error,
    Keep,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Model-oriented belief change: eviction and reception over finite bases.
#[derive(Debug, Parser)]
#[command(name = "bcm", version)]
pub struct Cli {
    pub logic: Logic,
    pub command: Command,

    /// Comma-separated signature.
    #[arg(long, default_value = "p,q")]
    pub atoms: String,

    /// Satisfaction threshold in (0,1], as a fraction or decimal (goedel only).
    #[arg(long)]
    pub theta: Option<String>,

    /// Base file: one formula per line, `#` comments.
    #[arg(long)]
    pub base: Option<PathBuf>,

    /// Inline base formula; may be repeated.
    #[arg(short = 'f', long = "formula")]
    pub formulas: Vec<String>,

    /// Input model set, e.g. `{tt,tf}`, `mod-of: p & q`, `complement {tt}`.
    #[arg(long)]
    pub models: Option<String>,

    /// File of Kripke models (ltlx only).
    #[arg(long)]
    pub models_file: Option<PathBuf>,

    /// Selection among candidates: `lexmin`, `lexmax` or `rank:<set>;<set>;...`.
    #[arg(long, default_value = "lexmin")]
    pub select: String,

    #[arg(long, value_enum, default_value_t)]
    pub on_incompatible: OnIncompatible,

    #[arg(long, value_enum, default_value_t)]
    pub format: Format,

    /// Shorthand for `--format json`.
    #[arg(long)]
    pub json: bool,

    /// Write the lattice as DOT to this file instead of stdout.
    #[arg(long)]
    pub dot: Option<PathBuf>,

    /// Sets whose maximal representable subsets get thick arrows: a model-set
    /// spec, `all` (every non-representable set) or `none`.
    #[arg(long, default_value = "all")]
    pub highlight: String,

    /// Largest universe the lattice export accepts.
    #[arg(long, default_value_t = bcm_core::lattice::DEFAULT_LATTICE_BOUND)]
    pub bound: usize,

    /// Also require `!a | a` on the first atom (goedel only).
    #[arg(long)]
    pub excluded_middle: bool,

    /// Run the sweeps on one thread.
    #[arg(long)]
    pub sequential: bool,
}

impl Cli {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }
}
