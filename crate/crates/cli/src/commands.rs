use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use tradelist::apriori::mine_apriori;
use tradelist::miner::{mine_with, MineOptions};
use tradelist::rules::generate_rules;
use tradelist::{Dictionary, MineResult, TradeList};

use crate::bench::{run_bench, BenchReport};
use crate::config::{read_database, Algo, RunConfig};
use crate::logs::{freq_log, rule_log};

fn write_log(path: &Path, contents: &str) -> Result<PathBuf> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .with_context(|| format!("creating {}", parent.display()))?;
        }
    }
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path.to_path_buf())
}

fn options(cfg: &RunConfig) -> MineOptions {
    MineOptions {
        threads: cfg.threads,
    }
}

/// Runs the configured miner. Returns the result, the item dictionary to
/// render it with, and the raw passes spent including the index build.
fn run_mining(cfg: &RunConfig) -> Result<(MineResult, Dictionary, usize)> {
    let threshold = cfg.threshold()?;
    let db = cfg.input.load()?;
    match cfg.algo {
        Algo::Tradelist => {
            let tl = TradeList::build(&db);
            let result = mine_with(&tl, threshold, &options(cfg))?;
            let passes = tl.raw_passes() + result.stats.raw_passes;
            Ok((result, tl.items().clone(), passes))
        }
        Algo::Apriori => {
            let result = mine_apriori(&db, threshold)?;
            let passes = result.stats.raw_passes;
            Ok((result, db.items().clone(), passes))
        }
    }
}

fn summarize(
    out: &mut dyn Write,
    algo: Algo,
    result: &MineResult,
    raw_passes: usize,
) -> Result<()> {
    writeln!(out, "algo: {}", algo.name())?;
    writeln!(out, "min_support: {}", result.min_support)?;
    for (k, level) in result.levels.iter().enumerate() {
        writeln!(out, "L{}: {}", k + 1, level.len())?;
    }
    writeln!(out, "frequent_itemsets: {}", result.len())?;
    writeln!(out, "raw_passes: {raw_passes}")?;
    writeln!(out, "work_ops: {}", result.stats.work_ops)?;
    writeln!(
        out,
        "elapsed_ms: {:.3}",
        result.stats.elapsed.as_secs_f64() * 1e3
    )?;
    Ok(())
}

pub fn cmd_tradelist(cfg: &RunConfig, out: &mut dyn Write) -> Result<Vec<PathBuf>> {
    let db = cfg.input.load()?;
    let tl = TradeList::build(&db);
    let path = write_log(&cfg.output.path("tradelist"), &tl.serialize_log())?;
    writeln!(
        out,
        "items: {}\ntransactions: {}\nraw_passes: {}",
        tl.n_items(),
        tl.n_transactions(),
        tl.raw_passes()
    )?;
    Ok(vec![path])
}

pub fn cmd_mine(cfg: &RunConfig, out: &mut dyn Write) -> Result<Vec<PathBuf>> {
    let (result, items, passes) = run_mining(cfg)?;
    let path = write_log(&cfg.output.path("freq"), &freq_log(&result, &items))?;
    summarize(out, cfg.algo, &result, passes)?;
    Ok(vec![path])
}

pub fn cmd_rules(cfg: &RunConfig, out: &mut dyn Write) -> Result<Vec<PathBuf>> {
    let query = cfg.min_confidence()?;
    let (result, items, passes) = run_mining(cfg)?;
    let rules = generate_rules(&result, &query)?;
    let path = write_log(&cfg.output.path("conf"), &rule_log(&rules, &items))?;
    summarize(out, cfg.algo, &result, passes)?;
    writeln!(out, "rules: {}", rules.len())?;
    Ok(vec![path])
}

/// Builds the index from the base input, appends the update file without
/// rescanning the base, re-mines and writes the trade-list, frequent-itemset
/// and (when a minimum confidence is given) rule logs.
pub fn cmd_update(cfg: &RunConfig, out: &mut dyn Write) -> Result<Vec<PathBuf>> {
    let threshold = cfg.threshold()?;
    let update_path = cfg
        .update
        .as_deref()
        .context("an update file is required (--update)")?;
    let base = cfg.input.load()?;
    let mut tl = TradeList::build(&base);
    let update = read_database(update_path)?;
    let added = tl
        .add_database(&update)
        .with_context(|| format!("applying {}", update_path.display()))?;
    ensure!(
        tl.raw_passes() == 1,
        "incremental update rescanned the base database ({} passes)",
        tl.raw_passes()
    );

    let started = Instant::now();
    let result = mine_with(&tl, threshold, &options(cfg))?;
    let mut paths = vec![
        write_log(&cfg.output.path("tradelist"), &tl.serialize_log())?,
        write_log(&cfg.output.path("freq"), &freq_log(&result, tl.items()))?,
    ];
    let rules = match cfg.min_confidence {
        Some(q) => {
            let rules = generate_rules(&result, &q)?;
            paths.push(write_log(
                &cfg.output.path("conf"),
                &rule_log(&rules, tl.items()),
            )?);
            Some(rules.len())
        }
        None => None,
    };

    writeln!(out, "added_transactions: {added}")?;
    writeln!(out, "transactions: {}", tl.n_transactions())?;
    writeln!(out, "base_raw_passes: {} (build only)", tl.raw_passes())?;
    writeln!(out, "remine_raw_passes: {}", result.stats.raw_passes)?;
    writeln!(out, "min_support: {}", result.min_support)?;
    for (k, level) in result.levels.iter().enumerate() {
        writeln!(out, "L{}: {}", k + 1, level.len())?;
    }
    writeln!(out, "frequent_itemsets: {}", result.len())?;
    if let Some(n) = rules {
        writeln!(out, "rules: {n}")?;
    }
    writeln!(
        out,
        "elapsed_ms: {:.3}",
        started.elapsed().as_secs_f64() * 1e3
    )?;
    Ok(paths)
}

pub fn cmd_bench(cfg: &RunConfig, out: &mut dyn Write) -> Result<BenchReport> {
    let threshold = cfg.threshold()?;
    if cfg.repeat == 0 {
        bail!("--repeat must be at least 1");
    }
    let db = cfg.input.load()?;
    let report = run_bench(&db, threshold, cfg.repeat, cfg.threads)?;
    out.write_all(report.to_csv().as_bytes())?;
    Ok(report)
}
