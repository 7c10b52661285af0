//! Side-by-side timing of the trade-list pipeline and Apriori.

use std::time::{Duration, Instant};

use anyhow::{bail, Result};
use tradelist::apriori::mine_apriori;
use tradelist::miner::{mine_with, MineOptions};
use tradelist::{Database, MineResult, SupportThreshold, TradeList};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub algo: &'static str,
    /// Median over repetitions.
    pub elapsed: Duration,
    pub raw_passes: usize,
    pub work_ops: u64,
    pub n_frequent: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

pub const CSV_HEADER: &str = "algo,elapsed_ms,raw_passes,work_ops,n_frequent";

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = format!("{CSV_HEADER}\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{:.3},{},{},{}\n",
                r.algo,
                r.elapsed.as_secs_f64() * 1e3,
                r.raw_passes,
                r.work_ops,
                r.n_frequent
            ));
        }
        out
    }

    pub fn row(&self, algo: &str) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.algo == algo)
    }
}

fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort();
    samples[samples.len() / 2]
}

/// Runs both miners `repeat` times. Fails without reporting timings if the
/// results differ or the pass counters break the single-scan bound.
pub fn run_bench(
    db: &Database,
    threshold: SupportThreshold,
    repeat: usize,
    threads: usize,
) -> Result<BenchReport> {
    assert!(repeat >= 1);
    let opts = MineOptions { threads };

    let mut tl_times = Vec::with_capacity(repeat);
    let mut tl_run: Option<(MineResult, usize)> = None;
    for _ in 0..repeat {
        let start = Instant::now();
        let tl = TradeList::build(db);
        let result = mine_with(&tl, threshold, &opts)?;
        tl_times.push(start.elapsed());
        tl_run = Some((result, tl.raw_passes()));
    }
    let (tl_result, tl_passes) = tl_run.expect("repeat >= 1");

    let mut ap_times = Vec::with_capacity(repeat);
    let mut ap_run = None;
    for _ in 0..repeat {
        let start = Instant::now();
        let result = mine_apriori(db, threshold)?;
        ap_times.push(start.elapsed());
        ap_run = Some(result);
    }
    let ap_result = ap_run.expect("repeat >= 1");

    if tl_result.to_map() != ap_result.to_map() {
        bail!(
            "result mismatch: tradelist found {} frequent itemsets, apriori {}",
            tl_result.len(),
            ap_result.len()
        );
    }
    let tl_total_passes = tl_passes + tl_result.stats.raw_passes;
    if tl_total_passes != 1 {
        bail!("tradelist pipeline made {tl_total_passes} raw passes, expected 1");
    }
    if ap_result.stats.raw_passes < ap_result.max_len() {
        bail!(
            "apriori made {} raw passes for itemsets of size {}",
            ap_result.stats.raw_passes,
            ap_result.max_len()
        );
    }

    Ok(BenchReport {
        rows: vec![
            BenchRow {
                algo: "tradelist",
                elapsed: median(tl_times),
                raw_passes: tl_total_passes,
                work_ops: tl_result.stats.work_ops,
                n_frequent: tl_result.len(),
            },
            BenchRow {
                algo: "apriori",
                elapsed: median(ap_times),
                raw_passes: ap_result.stats.raw_passes,
                work_ops: ap_result.stats.work_ops,
                n_frequent: ap_result.len(),
            },
        ],
    })
}
