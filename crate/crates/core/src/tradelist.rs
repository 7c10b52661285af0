//! The vertical "trade list" index: for every item, the strictly increasing
//! list of transactions containing it.
//!
//! The index is built from a single scan of a [`Database`] and afterwards
//! answers every support question by tidset intersection. New transactions
//! can be appended without touching the original data.

use crate::miner::intersect;
use crate::model::{Database, Dictionary, ItemId, Itemset, Tid};
use crate::{Error, Result};

/// Strictly increasing transaction ordinals.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TidSet(Vec<u32>);

impl TidSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Panics if `ordinals` is not strictly increasing.
    pub fn from_sorted(ordinals: Vec<u32>) -> Self {
        assert!(
            ordinals.windows(2).all(|w| w[0] < w[1]),
            "tidset must be strictly increasing"
        );
        TidSet(ordinals)
    }

    pub(crate) fn from_sorted_unchecked(ordinals: Vec<u32>) -> Self {
        debug_assert!(ordinals.windows(2).all(|w| w[0] < w[1]));
        TidSet(ordinals)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, tid: Tid) -> bool {
        self.0.binary_search(&tid.0).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Tid> + '_ {
        self.0.iter().map(|&t| Tid(t))
    }

    fn push(&mut self, tid: Tid) {
        debug_assert!(self.0.last().is_none_or(|&last| last < tid.0));
        self.0.push(tid.0);
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TradeList {
    items: Dictionary,
    tids: Dictionary,
    /// Indexed by item ordinal.
    tidsets: Vec<TidSet>,
    raw_passes: usize,
}

impl TradeList {
    /// Scans `db` once, appending each transaction's ordinal to the tidset
    /// of every item it contains.
    pub fn build(db: &Database) -> Self {
        let mut tidsets = vec![TidSet::new(); db.items().len()];
        for tx in db.transactions() {
            for item in &tx.items {
                tidsets[item.index()].push(tx.tid);
            }
        }
        TradeList {
            items: db.items().clone(),
            tids: db.tids().clone(),
            tidsets,
            raw_passes: 1,
        }
    }

    /// Appends one transaction. Unseen item labels extend the dictionary.
    /// The index is unchanged on error.
    pub fn add_transaction<I, S>(&mut self, tid: &str, items: I) -> Result<Tid>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let labels: Vec<S> = items.into_iter().collect();
        self.check_addition(tid, labels.iter().map(AsRef::as_ref))?;

        let mut ids = Vec::with_capacity(labels.len());
        for label in &labels {
            let id = self.items.intern(label.as_ref())?;
            if id as usize == self.tidsets.len() {
                self.tidsets.push(TidSet::new());
            }
            ids.push(id);
        }
        ids.sort_unstable();
        ids.dedup();
        let tid = Tid(self.tids.intern(tid)?);
        for id in ids {
            self.tidsets[id as usize].push(tid);
        }
        Ok(tid)
    }

    /// Appends every transaction of `update` in order. Either all are
    /// added or none.
    pub fn add_database(&mut self, update: &Database) -> Result<usize> {
        for tx in update.transactions() {
            let label = update.tid_label(tx.tid);
            if self.tids.contains(label) {
                return Err(Error::DuplicateTid(label.to_owned()));
            }
        }
        for tx in update.transactions() {
            self.add_transaction(
                update.tid_label(tx.tid),
                tx.items.iter().map(|&i| update.item_label(i)),
            )?;
        }
        Ok(update.len())
    }

    fn check_addition<'a>(
        &self,
        tid: &str,
        mut labels: impl ExactSizeIterator<Item = &'a str>,
    ) -> Result<()> {
        let tid = tid.trim();
        if tid.is_empty() {
            return Err(Error::EmptyLabel);
        }
        if self.tids.contains(tid) {
            return Err(Error::DuplicateTid(tid.to_owned()));
        }
        if labels.len() == 0 {
            return Err(Error::EmptyTransaction(tid.to_owned()));
        }
        if labels.any(|l| l.trim().is_empty()) {
            return Err(Error::EmptyLabel);
        }
        Ok(())
    }

    pub fn item_support(&self, item: ItemId) -> Result<usize> {
        self.tidset(item).map(TidSet::len)
    }

    pub fn tidset(&self, item: ItemId) -> Result<&TidSet> {
        self.tidsets
            .get(item.index())
            .ok_or(Error::UnknownItem(item.0))
    }

    /// Transactions containing every item of `itemset`. Member tidsets are
    /// intersected smallest first. The empty itemset is contained in every
    /// transaction.
    pub fn tidset_of(&self, itemset: &Itemset) -> Result<TidSet> {
        let mut sets = itemset
            .as_slice()
            .iter()
            .map(|&i| self.tidset(i))
            .collect::<Result<Vec<_>>>()?;
        if sets.is_empty() {
            return Ok(TidSet::from_sorted_unchecked(
                (0..self.n_transactions() as u32).collect(),
            ));
        }
        sets.sort_by_key(|s| s.len());
        let mut acc = sets[0].clone();
        for s in &sets[1..] {
            if acc.is_empty() {
                break;
            }
            acc = intersect(&acc, s);
        }
        Ok(acc)
    }

    pub fn support_of(&self, itemset: &Itemset) -> Result<usize> {
        self.tidset_of(itemset).map(|t| t.len())
    }

    pub fn n_transactions(&self) -> usize {
        self.tids.len()
    }

    /// Full scans of a horizontal database performed to create this index.
    pub fn raw_passes(&self) -> usize {
        self.raw_passes
    }

    pub fn n_items(&self) -> usize {
        self.tidsets.len()
    }

    pub fn items(&self) -> &Dictionary {
        &self.items
    }

    pub fn tids(&self) -> &Dictionary {
        &self.tids
    }

    /// `(item, tidset)` pairs in first-appearance order.
    pub fn iter(&self) -> impl Iterator<Item = (ItemId, &TidSet)> + '_ {
        self.tidsets
            .iter()
            .enumerate()
            .map(|(i, t)| (ItemId(i as u32), t))
    }

    pub fn item_label(&self, item: ItemId) -> &str {
        self.items.label(item.0).unwrap_or("?")
    }

    /// Sum of all tidset lengths, equal to the total transaction length.
    pub fn total_entries(&self) -> usize {
        self.tidsets.iter().map(TidSet::len).sum()
    }

    /// Renders the index as `<item> = <tid>, <tid>, ...` lines.
    pub fn serialize_log(&self) -> String {
        let mut out = String::new();
        for (item, tidset) in self.iter() {
            out.push_str(self.item_label(item));
            out.push_str(" =");
            for (i, tid) in tidset.iter().enumerate() {
                out.push_str(if i == 0 { " " } else { ", " });
                out.push_str(self.tids.label(tid.0).unwrap_or("?"));
            }
            out.push('\n');
        }
        out
    }
}

/// Reads a trade-list log back into `(item, [tid])` rows.
pub fn read_log(text: &str) -> Result<Vec<(String, Vec<String>)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(idx, line)| {
            let (item, tids) = line.split_once(" =").ok_or_else(|| Error::Parse {
                line: idx + 1,
                message: "missing ` = `".into(),
            })?;
            let tids = tids
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(str::to_owned)
                .collect();
            Ok((item.trim().to_owned(), tids))
        })
        .collect()
}
