use std::path::{Path, PathBuf};

use tradelist::ingest::{generate_synthetic, parse_database, SyntheticSpec};
use tradelist::{Database, RuleQuery, SupportThreshold};

use anyhow::{Context, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    File(PathBuf),
    Synthetic(SyntheticSpec),
}

impl Input {
    pub fn load(&self) -> Result<Database> {
        match self {
            Input::File(path) => read_database(path),
            Input::Synthetic(spec) => {
                generate_synthetic(spec).context("generating synthetic database")
            }
        }
    }
}

pub fn read_database(path: &Path) -> Result<Database> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_database(&text).with_context(|| format!("parsing {}", path.display()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Algo {
    #[default]
    Tradelist,
    Apriori,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Tradelist => "tradelist",
            Algo::Apriori => "apriori",
        }
    }
}

/// Where log files go and how they are named.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutputNaming {
    /// `<dir>/<kind>_<stamp>.log`
    Stamped { dir: PathBuf, stamp: String },
    /// `<dir>/<kind>.log`
    Exact { dir: PathBuf },
}

impl OutputNaming {
    pub fn stamped_now(dir: impl Into<PathBuf>) -> Self {
        OutputNaming::Stamped {
            dir: dir.into(),
            stamp: chrono::Local::now().format("%Y%m%d_%H%M%S").to_string(),
        }
    }

    pub fn path(&self, kind: &str) -> PathBuf {
        match self {
            OutputNaming::Stamped { dir, stamp } => dir.join(format!("{kind}_{stamp}.log")),
            OutputNaming::Exact { dir } => dir.join(format!("{kind}.log")),
        }
    }

    pub fn dir(&self) -> &Path {
        match self {
            OutputNaming::Stamped { dir, .. } | OutputNaming::Exact { dir } => dir,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: Input,
    pub update: Option<PathBuf>,
    pub threshold: Option<SupportThreshold>,
    pub min_confidence: Option<RuleQuery>,
    pub output: OutputNaming,
    pub algo: Algo,
    pub threads: usize,
    pub repeat: usize,
}

impl RunConfig {
    pub fn new(input: Input, output: OutputNaming) -> Self {
        RunConfig {
            input,
            update: None,
            threshold: None,
            min_confidence: None,
            output,
            algo: Algo::Tradelist,
            threads: 1,
            repeat: 1,
        }
    }

    pub fn threshold(&self) -> Result<SupportThreshold> {
        self.threshold
            .context("a support threshold is required (--minsupp or --minsupp-frac)")
    }

    pub fn min_confidence(&self) -> Result<RuleQuery> {
        self.min_confidence
            .context("a minimum confidence is required (--minconf)")
    }
}
