//! Level-wise Apriori over the horizontal database.
//!
//! Every level is counted by a full scan of the transactions, and the scans
//! are counted. This is the baseline the trade-list miner is checked and
//! benchmarked against, so it stays deliberately plain.

use std::time::Instant;

use crate::miner::{FrequentItemset, MineResult, MineStats};
use crate::model::{Database, ItemId, Itemset, SupportThreshold};
use crate::Result;

/// Candidate k-itemsets with their running support counters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CandidateSet {
    pub level: usize,
    pub candidates: Vec<Itemset>,
    pub counts: Vec<usize>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

/// Joins frequent k-itemsets sharing their first k-1 items, then drops any
/// joined candidate with an infrequent k-subset.
///
/// `frequent` must be in canonical order and hold itemsets of one size.
pub fn generate_candidates(frequent: &[Itemset]) -> CandidateSet {
    let k = frequent.first().map_or(0, Itemset::len);
    debug_assert!(frequent.iter().all(|s| s.len() == k));
    debug_assert!(frequent.windows(2).all(|w| w[0] < w[1]));

    let mut candidates = Vec::new();
    for (i, a) in frequent.iter().enumerate() {
        let prefix = &a.as_slice()[..k - 1];
        for b in frequent[i + 1..]
            .iter()
            .take_while(|b| &b.as_slice()[..k - 1] == prefix)
        {
            let mut joined = a.as_slice().to_vec();
            joined.push(b.as_slice()[k - 1]);
            let cand = Itemset::from_sorted(joined);
            if all_subsets_frequent(&cand, frequent) {
                candidates.push(cand);
            }
        }
    }
    let counts = vec![0; candidates.len()];
    CandidateSet {
        level: k + 1,
        candidates,
        counts,
    }
}

fn all_subsets_frequent(cand: &Itemset, frequent: &[Itemset]) -> bool {
    let items = cand.as_slice();
    // dropping either of the last two items gives the two join parents
    (0..items.len().saturating_sub(2)).all(|skip| {
        let sub: Vec<ItemId> = items
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, &x)| x)
            .collect();
        frequent
            .binary_search_by(|f| f.as_slice().cmp(&sub))
            .is_ok()
    })
}

/// Apriori state: the database plus pass and work counters.
#[derive(Debug)]
pub struct Apriori<'a> {
    db: &'a Database,
    raw_passes: usize,
    containment_checks: u64,
}

impl<'a> Apriori<'a> {
    pub fn new(db: &'a Database) -> Self {
        Apriori {
            db,
            raw_passes: 0,
            containment_checks: 0,
        }
    }

    pub fn raw_passes(&self) -> usize {
        self.raw_passes
    }

    pub fn containment_checks(&self) -> u64 {
        self.containment_checks
    }

    /// One full pass: sets each candidate's counter to the number of
    /// transactions containing it.
    pub fn count_support(&mut self, cands: &mut CandidateSet) {
        self.raw_passes += 1;
        cands.counts.clear();
        cands.counts.resize(cands.candidates.len(), 0);
        for tx in self.db.transactions() {
            for (cand, count) in cands.candidates.iter().zip(cands.counts.iter_mut()) {
                self.containment_checks += 1;
                if cand.is_subset_of(&tx.items) {
                    *count += 1;
                }
            }
        }
    }

    /// One full pass counting every single item.
    fn count_items(&mut self) -> Vec<usize> {
        self.raw_passes += 1;
        let mut counts = vec![0; self.db.items().len()];
        for tx in self.db.transactions() {
            for item in &tx.items {
                self.containment_checks += 1;
                counts[item.index()] += 1;
            }
        }
        counts
    }
}

pub fn mine_apriori(db: &Database, threshold: SupportThreshold) -> Result<MineResult> {
    let start = Instant::now();
    let min_support = threshold.resolve(db.len())?;
    let mut ap = Apriori::new(db);

    let mut found: Vec<FrequentItemset> = ap
        .count_items()
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c >= min_support)
        .map(|(i, c)| FrequentItemset {
            itemset: Itemset::from_sorted(vec![ItemId(i as u32)]),
            support: c,
        })
        .collect();
    let mut current: Vec<Itemset> = found.iter().map(|f| f.itemset.clone()).collect();

    while !current.is_empty() {
        let mut cands = generate_candidates(&current);
        if cands.is_empty() {
            break;
        }
        ap.count_support(&mut cands);
        let mut next = Vec::new();
        for (cand, count) in cands.candidates.into_iter().zip(cands.counts) {
            if count >= min_support {
                found.push(FrequentItemset {
                    itemset: cand.clone(),
                    support: count,
                });
                next.push(cand);
            }
        }
        current = next;
    }

    let stats = MineStats {
        raw_passes: ap.raw_passes(),
        work_ops: ap.containment_checks(),
        elapsed: start.elapsed(),
    };
    Ok(MineResult::from_itemsets(found, min_support, stats))
}
