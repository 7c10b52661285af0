//! Brute-force reference implementations for tests.
//!
//! Nothing here touches the trade list or the miners: supports are counted
//! by scanning every transaction, and the candidate space is every subset
//! of the item universe. Only usable on desk-sized databases.

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::Rng;

use crate::model::{Database, ItemId, Itemset};

/// Transactions of `db` containing every item of `s`, by linear scan.
pub fn brute_support(db: &Database, s: &Itemset) -> usize {
    db.transactions()
        .iter()
        .filter(|t| s.as_slice().iter().all(|i| t.items.contains(i)))
        .count()
}

/// Every non-empty itemset over items `0..n_items` with at most `max_len`
/// members.
pub fn all_itemsets(n_items: usize, max_len: usize) -> Vec<Itemset> {
    assert!(n_items <= 20, "exhaustive enumeration over {n_items} items");
    (1u32..(1u32 << n_items))
        .filter(|mask| (mask.count_ones() as usize) <= max_len)
        .map(|mask| {
            Itemset::new(
                (0..n_items as u32)
                    .filter(|b| mask & (1 << b) != 0)
                    .map(ItemId),
            )
        })
        .collect()
}

/// All itemsets with support at least `min_support`, found by counting every
/// subset of the item universe.
pub fn enumerate_frequent(db: &Database, min_support: usize) -> BTreeMap<Itemset, usize> {
    all_itemsets(db.items().len(), usize::MAX)
        .into_iter()
        .filter_map(|s| {
            let support = brute_support(db, &s);
            (support >= min_support.max(1)).then_some((s, support))
        })
        .collect()
}

/// A brute-force association rule: antecedent, consequent, support of the
/// union, and confidence as an unreduced `(numerator, denominator)` pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BruteRule {
    pub antecedent: Itemset,
    pub consequent: Itemset,
    pub support: usize,
    pub conf_num: usize,
    pub conf_den: usize,
}

/// Every rule `X => Z \ X` over frequent `Z` whose confidence is at least
/// `min_conf_num / min_conf_den`. Supports are recounted by scanning.
pub fn brute_rules(
    db: &Database,
    min_support: usize,
    min_conf_num: u64,
    min_conf_den: u64,
) -> Vec<BruteRule> {
    let mut out = Vec::new();
    for (z, support) in enumerate_frequent(db, min_support) {
        let items = z.as_slice();
        if items.len() < 2 {
            continue;
        }
        for mask in 1u32..((1u32 << items.len()) - 1) {
            let (ante, cons): (Vec<_>, Vec<_>) = items
                .iter()
                .enumerate()
                .partition(|(b, _)| mask & (1 << b) != 0);
            let ante = Itemset::new(ante.into_iter().map(|(_, &i)| i));
            let cons = Itemset::new(cons.into_iter().map(|(_, &i)| i));
            let ante_support = brute_support(db, &ante);
            if (support as u128) * u128::from(min_conf_den)
                >= u128::from(min_conf_num) * ante_support as u128
            {
                out.push(BruteRule {
                    antecedent: ante,
                    consequent: cons,
                    support,
                    conf_num: support,
                    conf_den: ante_support,
                });
            }
        }
    }
    out.sort();
    out
}

/// Splits `db` after its first `cut` transactions, preserving labels.
pub fn split_database(db: &Database, cut: usize) -> (Database, Database) {
    let mut head = Database::new();
    let mut tail = Database::new();
    for (i, tx) in db.transactions().iter().enumerate() {
        let target = if i < cut { &mut head } else { &mut tail };
        target
            .push_transaction(
                db.tid_label(tx.tid),
                tx.items.iter().map(|&it| db.item_label(it)),
            )
            .expect("labels from a valid database");
    }
    (head, tail)
}

fn database_from_rows(rows: &[Vec<u8>]) -> Database {
    let mut db = Database::new();
    for (t, row) in rows.iter().enumerate() {
        let labels: Vec<String> = row.iter().map(|i| format!("I{i}")).collect();
        db.push_transaction(&format!("T{t}"), &labels)
            .expect("generated rows are non-empty");
    }
    db
}

/// Up to `max_tx` transactions over at most `max_items` distinct items.
pub fn arb_database(max_tx: usize, max_items: u8) -> impl Strategy<Value = Database> {
    proptest::collection::vec(
        proptest::collection::vec(0..max_items, 1..=max_items as usize),
        0..=max_tx,
    )
    .prop_map(|rows| database_from_rows(&rows))
}

/// Same distribution as [`arb_database`], driven by a plain RNG.
pub fn random_database<R: Rng>(rng: &mut R, max_tx: usize, max_items: u8) -> Database {
    let n_tx = rng.gen_range(0..=max_tx);
    let n_items = rng.gen_range(1..=max_items);
    let density: f64 = rng.gen_range(0.15..0.8);
    let rows: Vec<Vec<u8>> = (0..n_tx)
        .map(|_| {
            let mut row: Vec<u8> = (0..n_items).filter(|_| rng.gen_bool(density)).collect();
            if row.is_empty() {
                row.push(rng.gen_range(0..n_items));
            }
            row
        })
        .collect();
    database_from_rows(&rows)
}
