//! Depth-first frequent itemset mining over a [`TradeList`].
//!
//! Frequent single items are ordered by ascending support (ties by ordinal).
//! Each prefix is extended only with items that come after it in that order,
//! carrying the prefix tidset and intersecting it with the sibling's tidset.
//! An extension below the threshold is dropped together with all of its
//! supersets. The raw database is never consulted.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::model::{ItemId, Itemset, SupportThreshold};
use crate::tradelist::{TidSet, TradeList};
use crate::Result;

/// Below this size ratio a linear merge beats galloping.
const GALLOP_RATIO: usize = 16;

/// Intersection of two strictly increasing tidsets.
pub fn intersect(a: &TidSet, b: &TidSet) -> TidSet {
    let (small, large) = if a.len() <= b.len() {
        (a.as_slice(), b.as_slice())
    } else {
        (b.as_slice(), a.as_slice())
    };
    let out = if small.is_empty() {
        Vec::new()
    } else if small.len().saturating_mul(GALLOP_RATIO) < large.len() {
        gallop_intersect(small, large)
    } else {
        merge_intersect(small, large)
    };
    TidSet::from_sorted_unchecked(out)
}

pub(crate) fn merge_intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Exponential search of each element of `small` in `large`.
pub(crate) fn gallop_intersect(small: &[u32], large: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(small.len());
    let mut base = 0;
    for &x in small {
        let rest = &large[base..];
        if rest.is_empty() {
            break;
        }
        let mut bound = 1;
        while bound < rest.len() && rest[bound] < x {
            bound *= 2;
        }
        let hi = (bound + 1).min(rest.len());
        let pos = rest[..hi].partition_point(|&v| v < x);
        base += pos;
        if base < large.len() && large[base] == x {
            out.push(x);
            base += 1;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrequentItemset {
    pub itemset: Itemset,
    pub support: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MineStats {
    /// Full scans of the horizontal database made while mining.
    pub raw_passes: usize,
    /// Tidset intersections (trade list) or transaction containment checks
    /// (Apriori).
    pub work_ops: u64,
    /// Wall-clock time; informational only.
    pub elapsed: Duration,
}

/// Frequent itemsets grouped by size. `levels[k - 1]` holds the k-itemsets
/// in canonical order.
#[derive(Debug, Clone, Default)]
pub struct MineResult {
    pub levels: Vec<Vec<FrequentItemset>>,
    pub min_support: usize,
    pub stats: MineStats,
}

impl PartialEq for MineResult {
    /// Compares results, ignoring instrumentation.
    fn eq(&self, other: &Self) -> bool {
        self.levels == other.levels && self.min_support == other.min_support
    }
}

impl MineResult {
    /// Canonicalizes an unordered collection of frequent itemsets.
    pub fn from_itemsets(
        mut found: Vec<FrequentItemset>,
        min_support: usize,
        stats: MineStats,
    ) -> Self {
        found.sort_by(|a, b| {
            a.itemset
                .len()
                .cmp(&b.itemset.len())
                .then_with(|| a.itemset.cmp(&b.itemset))
        });
        let mut levels: Vec<Vec<FrequentItemset>> = Vec::new();
        for f in found {
            let k = f.itemset.len();
            debug_assert!(k >= 1);
            if levels.len() < k {
                levels.resize_with(k, Vec::new);
            }
            levels[k - 1].push(f);
        }
        MineResult {
            levels,
            min_support,
            stats,
        }
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The k-itemsets, `k >= 1`.
    pub fn level(&self, k: usize) -> &[FrequentItemset] {
        k.checked_sub(1)
            .and_then(|i| self.levels.get(i))
            .map_or(&[], Vec::as_slice)
    }

    /// Size of the largest frequent itemset.
    pub fn max_len(&self) -> usize {
        self.levels
            .iter()
            .rposition(|l| !l.is_empty())
            .map_or(0, |i| i + 1)
    }

    /// All itemsets, by level then canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &FrequentItemset> + '_ {
        self.levels.iter().flatten()
    }

    pub fn support_of(&self, itemset: &Itemset) -> Option<usize> {
        let level = self.level(itemset.len());
        level
            .binary_search_by(|f| f.itemset.cmp(itemset))
            .ok()
            .map(|i| level[i].support)
    }

    pub fn to_map(&self) -> BTreeMap<Itemset, usize> {
        self.iter()
            .map(|f| (f.itemset.clone(), f.support))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct MineOptions {
    /// Worker threads for independent prefix subtrees; 0 or 1 runs inline.
    pub threads: usize,
}

pub fn mine(tl: &TradeList, threshold: SupportThreshold) -> Result<MineResult> {
    mine_with(tl, threshold, &MineOptions::default())
}

/// Re-mines an existing index at a new threshold. Same contract as
/// [`mine`]; the index is reused as is, so no raw pass is made.
pub fn remine(tl: &TradeList, threshold: SupportThreshold) -> Result<MineResult> {
    mine(tl, threshold)
}

pub fn mine_with(
    tl: &TradeList,
    threshold: SupportThreshold,
    opts: &MineOptions,
) -> Result<MineResult> {
    let start = Instant::now();
    let min_support = threshold.resolve(tl.n_transactions())?;

    let mut roots: Vec<(ItemId, &TidSet)> =
        tl.iter().filter(|(_, t)| t.len() >= min_support).collect();
    roots.sort_by_key(|(item, t)| (t.len(), *item));

    let singles = roots.iter().map(|(item, t)| FrequentItemset {
        itemset: Itemset::from_sorted(vec![*item]),
        support: t.len(),
    });
    let mut found: Vec<FrequentItemset> = singles.collect();

    let subtree = |i: usize| mine_root(&roots, i, min_support);
    let (subtrees, work_ops): (Vec<Vec<FrequentItemset>>, Vec<u64>) = if opts.threads > 1 {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
        {
            Ok(pool) => pool.install(|| (0..roots.len()).into_par_iter().map(subtree).unzip()),
            Err(_) => (0..roots.len()).map(subtree).unzip(),
        }
    } else {
        (0..roots.len()).map(subtree).unzip()
    };
    found.extend(subtrees.into_iter().flatten());

    let stats = MineStats {
        raw_passes: 0,
        work_ops: work_ops.iter().sum(),
        elapsed: start.elapsed(),
    };
    Ok(MineResult::from_itemsets(found, min_support, stats))
}

/// Mines every itemset whose first item in sibling order is `roots[i]`,
/// excluding the single itemset itself.
fn mine_root(
    roots: &[(ItemId, &TidSet)],
    i: usize,
    min_support: usize,
) -> (Vec<FrequentItemset>, u64) {
    let (item, tids) = roots[i];
    let mut out = Vec::new();
    let mut ops = 0;
    let mut class = Vec::new();
    for &(other, other_tids) in &roots[i + 1..] {
        let t = intersect(tids, other_tids);
        ops += 1;
        if t.len() >= min_support {
            out.push(FrequentItemset {
                itemset: Itemset::new([item, other]),
                support: t.len(),
            });
            class.push((other, t));
        }
    }
    let mut prefix = vec![item];
    ops += expand(&mut prefix, &class, min_support, &mut out);
    (out, ops)
}

/// `class` holds the frequent extensions `prefix + {item}` with their
/// tidsets, in sibling order.
fn expand(
    prefix: &mut Vec<ItemId>,
    class: &[(ItemId, TidSet)],
    min_support: usize,
    out: &mut Vec<FrequentItemset>,
) -> u64 {
    let mut ops = 0;
    for (k, (item, tids)) in class.iter().enumerate() {
        prefix.push(*item);
        let mut child = Vec::new();
        for (other, other_tids) in &class[k + 1..] {
            let t = intersect(tids, other_tids);
            ops += 1;
            if t.len() >= min_support {
                out.push(FrequentItemset {
                    itemset: Itemset::new(prefix.iter().copied().chain([*other])),
                    support: t.len(),
                });
                child.push((*other, t));
            }
        }
        if !child.is_empty() {
            ops += expand(prefix, &child, min_support, out);
        }
        prefix.pop();
    }
    ops
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::parse_database;
    use crate::model::Database;
    use crate::oracle;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    const TABLE1: &str = "T100,I1,I2,I5\nT200,I2,I4\nT300,I2,I3\nT400,I1,I2,I4\nT500,I1,I3\n\
                          T600,I2,I3\nT700,I1,I3\nT800,I1,I2,I3,I5\nT900,I1,I2,I3\n";

    fn ts(v: &[u32]) -> TidSet {
        TidSet::from_sorted(v.to_vec())
    }

    fn named(db: &Database, r: &MineResult, k: usize) -> Vec<Vec<String>> {
        r.level(k)
            .iter()
            .map(|f| {
                f.itemset
                    .as_slice()
                    .iter()
                    .map(|&i| db.item_label(i).to_owned())
                    .collect()
            })
            .collect()
    }

    fn v(rows: &[&[&str]]) -> Vec<Vec<String>> {
        rows.iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    #[test]
    fn intersect_examples() {
        // I1 and I2 in the nine-row store table, as ordinals
        let i1 = ts(&[0, 3, 4, 6, 7, 8]);
        let i2 = ts(&[0, 1, 2, 3, 5, 7, 8]);
        assert_eq!(intersect(&i1, &i2), ts(&[0, 3, 7, 8]));
        assert_eq!(intersect(&ts(&[0, 3, 7, 8]), &i2), ts(&[0, 3, 7, 8]));
        assert_eq!(intersect(&i2, &i2), i2);
        assert_eq!(intersect(&i2, &TidSet::new()), TidSet::new());
        assert_eq!(intersect(&TidSet::new(), &TidSet::new()), TidSet::new());
    }

    #[test]
    fn gallop_path_handles_edges() {
        let large: Vec<u32> = (0..1000).map(|x| x * 3).collect();
        assert_eq!(gallop_intersect(&[0, 2997, 3000], &large), vec![0, 2997]);
        assert_eq!(gallop_intersect(&[1, 2, 4], &large), Vec::<u32>::new());
        assert_eq!(gallop_intersect(&[5000], &large), Vec::<u32>::new());
        assert_eq!(gallop_intersect(&[1500, 1503], &large), vec![1500, 1503]);
    }

    #[test]
    fn mines_store_table_at_two() {
        let db = parse_database(TABLE1).unwrap();
        let r = mine(&TradeList::build(&db), SupportThreshold::Absolute(2)).unwrap();
        assert_eq!(
            named(&db, &r, 1),
            v(&[&["I1"], &["I2"], &["I5"], &["I4"], &["I3"]])
        );
        assert_eq!(
            named(&db, &r, 2),
            v(&[
                &["I1", "I2"],
                &["I1", "I5"],
                &["I1", "I3"],
                &["I2", "I5"],
                &["I2", "I4"],
                &["I2", "I3"],
            ])
        );
        assert_eq!(
            named(&db, &r, 3),
            v(&[&["I1", "I2", "I5"], &["I1", "I2", "I3"]])
        );
        assert_eq!(r.len(), 13);
        assert_eq!(r.max_len(), 3);
        assert_eq!(r.stats.raw_passes, 0);
    }

    #[test]
    fn remine_store_table_at_three() {
        let db = parse_database(TABLE1).unwrap();
        let tl = TradeList::build(&db);
        let r = remine(&tl, SupportThreshold::Absolute(3)).unwrap();
        assert_eq!(named(&db, &r, 1), v(&[&["I1"], &["I2"], &["I3"]]));
        assert_eq!(
            named(&db, &r, 2),
            v(&[&["I1", "I2"], &["I1", "I3"], &["I2", "I3"]])
        );
        assert!(r.level(3).is_empty());
        assert_eq!(r.stats.raw_passes, 0);
        assert_eq!(tl.raw_passes(), 1);
    }

    #[test]
    fn threshold_above_database_size_is_empty() {
        let db = parse_database(TABLE1).unwrap();
        let r = mine(&TradeList::build(&db), SupportThreshold::Absolute(10)).unwrap();
        assert!(r.is_empty());
        assert_eq!(r.max_len(), 0);
        assert_eq!(r.stats.work_ops, 0);
    }

    #[test]
    fn minsupp_one_is_every_subset_of_some_transaction() {
        let db = parse_database(TABLE1).unwrap();
        let r = mine(&TradeList::build(&db), SupportThreshold::Absolute(1)).unwrap();
        let mut expected = BTreeSet::new();
        for tx in db.transactions() {
            let n = tx.items.len();
            for mask in 1u32..(1 << n) {
                expected.insert(Itemset::new(
                    (0..n).filter(|b| mask & (1 << b) != 0).map(|b| tx.items[b]),
                ));
            }
        }
        let got: BTreeSet<Itemset> = r.iter().map(|f| f.itemset.clone()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn singles_charge_no_intersections() {
        let db = parse_database("T1,A\nT2,B\n").unwrap();
        let r = mine(&TradeList::build(&db), SupportThreshold::Absolute(1)).unwrap();
        assert_eq!(r.len(), 2);
        // one pair attempted, found infrequent
        assert_eq!(r.stats.work_ops, 1);
    }

    #[test]
    fn fractional_threshold_on_empty_index_errors() {
        let tl = TradeList::build(&Database::new());
        let f = SupportThreshold::fraction_from_str("0.5").unwrap();
        assert!(mine(&tl, f).is_err());
        assert!(mine(&tl, SupportThreshold::Absolute(1)).unwrap().is_empty());
    }

    #[test]
    fn support_lookup() {
        let db = parse_database(TABLE1).unwrap();
        let r = mine(&TradeList::build(&db), SupportThreshold::Absolute(2)).unwrap();
        let i1 = ItemId(db.items().lookup("I1").unwrap());
        let i2 = ItemId(db.items().lookup("I2").unwrap());
        let i4 = ItemId(db.items().lookup("I4").unwrap());
        assert_eq!(r.support_of(&Itemset::new([i1, i2])), Some(4));
        assert_eq!(r.support_of(&Itemset::new([i1, i4])), None);
    }

    proptest! {
        #[test]
        fn intersect_matches_set_semantics(
            a in proptest::collection::btree_set(0u32..400, 0..60),
            b in proptest::collection::btree_set(0u32..400, 0..300),
        ) {
            let expected: Vec<u32> = a.intersection(&b).copied().collect();
            let (ta, tb) = (ts(&a.iter().copied().collect::<Vec<_>>()), ts(&b.iter().copied().collect::<Vec<_>>()));
            let got = intersect(&ta, &tb);
            prop_assert_eq!(got.as_slice(), expected.as_slice());
            prop_assert_eq!(intersect(&tb, &ta), got.clone());
            prop_assert!(got.len() <= ta.len().min(tb.len()));
            let av: Vec<u32> = a.iter().copied().collect();
            let bv: Vec<u32> = b.iter().copied().collect();
            prop_assert_eq!(gallop_intersect(&av, &bv), expected.clone());
            prop_assert_eq!(merge_intersect(&av, &bv), expected);
        }

        #[test]
        fn mine_matches_exhaustive_oracle(db in oracle::arb_database(10, 8), k in 1usize..=4) {
            let tl = TradeList::build(&db);
            let r = mine(&tl, SupportThreshold::Absolute(k)).unwrap();
            prop_assert_eq!(r.to_map(), oracle::enumerate_frequent(&db, k));
            prop_assert_eq!(remine(&tl, SupportThreshold::Absolute(k)).unwrap(), r);
        }

        #[test]
        fn parallel_schedule_is_deterministic(db in oracle::arb_database(10, 8), k in 1usize..=3) {
            let tl = TradeList::build(&db);
            let seq = mine(&tl, SupportThreshold::Absolute(k)).unwrap();
            let par = mine_with(&tl, SupportThreshold::Absolute(k), &MineOptions { threads: 4 }).unwrap();
            prop_assert_eq!(&seq, &par);
            prop_assert_eq!(seq.stats.work_ops, par.stats.work_ops);
        }

        #[test]
        fn mined_results_are_closed_and_monotone(db in oracle::arb_database(10, 8), k in 1usize..=4) {
            let tl = TradeList::build(&db);
            let r = mine(&tl, SupportThreshold::Absolute(k)).unwrap();
            for (j, level) in r.levels.iter().enumerate() {
                prop_assert!(level.iter().all(|f| f.itemset.len() == j + 1));
                prop_assert!(level.windows(2).all(|w| w[0].itemset < w[1].itemset));
            }
            for f in r.iter() {
                prop_assert!(f.support >= k);
                let items = f.itemset.as_slice();
                let min_single = items.iter().map(|&i| tl.item_support(i).unwrap()).min().unwrap();
                prop_assert!(f.support <= min_single);
                for drop in 0..items.len() {
                    if items.len() == 1 { break; }
                    let sub = Itemset::new(items.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, &x)| x));
                    let s = r.support_of(&sub);
                    prop_assert!(s.is_some_and(|s| s >= f.support));
                }
            }
            let higher = mine(&tl, SupportThreshold::Absolute(k + 1)).unwrap().to_map();
            let lower = r.to_map();
            prop_assert!(higher.iter().all(|(s, sup)| lower.get(s) == Some(sup)));
        }
    }
}
