use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use tradelist::ingest::SyntheticSpec;
use tradelist::{RuleQuery, SupportThreshold};
use tradelist_cli::{
    cmd_bench, cmd_mine, cmd_rules, cmd_tradelist, cmd_update, Algo, Input, OutputNaming, RunConfig,
};

/// Frequent itemset and association rule mining over a trade-list index.
#[derive(Parser)]
#[command(name = "trademine", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the trade list and write it as a log.
    Tradelist(RunArgs),
    /// Mine frequent itemsets.
    Mine(RunArgs),
    /// Mine frequent itemsets and derive association rules.
    Rules(RunArgs),
    /// Append transactions to an existing trade list and re-mine.
    Update(RunArgs),
    /// Time the trade-list pipeline against Apriori; CSV on stdout.
    Bench(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Transaction file, one `TID,item,item,...` per line.
    #[arg(long, conflicts_with = "synthetic")]
    input: Option<PathBuf>,

    /// Generate the input instead: `n_tx,n_items,mean_length,seed`.
    #[arg(long, value_name = "SPEC")]
    synthetic: Option<SyntheticSpec>,

    /// Additional transactions for `update`.
    #[arg(long)]
    update: Option<PathBuf>,

    /// Minimum support as a transaction count.
    #[arg(long, conflicts_with = "minsupp_frac")]
    minsupp: Option<usize>,

    /// Minimum support as a fraction of transactions, e.g. 0.05.
    #[arg(long, value_name = "DECIMAL")]
    minsupp_frac: Option<String>,

    /// Minimum confidence, e.g. 0.7 or 70%.
    #[arg(long)]
    minconf: Option<String>,

    #[arg(long, value_enum, default_value_t = Algo::Tradelist)]
    algo: Algo,

    /// Write logs into DIR with fixed names instead of timestamped names in
    /// the working directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Worker threads for the trade-list miner.
    #[arg(long, default_value_t = 1)]
    threads: usize,

    /// Benchmark repetitions.
    #[arg(long, default_value_t = 5)]
    repeat: usize,
}

impl RunArgs {
    fn into_config(self) -> Result<RunConfig> {
        let input = match (self.input, self.synthetic) {
            (Some(path), None) => Input::File(path),
            (None, Some(spec)) => Input::Synthetic(spec),
            _ => bail!("exactly one of --input or --synthetic is required"),
        };
        let output = match self.out {
            Some(dir) => OutputNaming::Exact { dir },
            None => OutputNaming::stamped_now("."),
        };
        let threshold = match (self.minsupp, self.minsupp_frac) {
            (Some(k), _) => Some(SupportThreshold::Absolute(k)),
            (None, Some(f)) => Some(SupportThreshold::fraction_from_str(&f)?),
            (None, None) => None,
        };
        if let Some(t) = threshold {
            // reject 0 or out-of-range fractions before touching any input
            t.resolve(1)?;
        }
        let min_confidence = self.minconf.as_deref().map(RuleQuery::parse).transpose()?;
        Ok(RunConfig {
            input,
            update: self.update,
            threshold,
            min_confidence,
            output,
            algo: self.algo,
            threads: self.threads,
            repeat: self.repeat,
        })
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Tradelist(a) => report(cmd_tradelist(&a.into_config()?, &mut stdout)?),
        Command::Mine(a) => report(cmd_mine(&a.into_config()?, &mut stdout)?),
        Command::Rules(a) => report(cmd_rules(&a.into_config()?, &mut stdout)?),
        Command::Update(a) => report(cmd_update(&a.into_config()?, &mut stdout)?),
        Command::Bench(a) => cmd_bench(&a.into_config()?, &mut stdout).map(drop)?,
    }
    Ok(())
}

fn report(paths: Vec<PathBuf>) {
    for p in paths {
        eprintln!("wrote {}", p.display());
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
