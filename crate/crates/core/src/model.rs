//! Domain types shared by every miner: interned items and transaction ids,
//! transactions, the horizontal database, itemsets and support thresholds.

use std::fmt;

use indexmap::IndexSet;
use num_rational::Ratio;

use crate::{Error, Result};

/// Dense ordinal of an item label, assigned in order of first appearance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemId(pub u32);

/// Dense ordinal of a transaction, i.e. its position in transaction order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tid(pub u32);

impl ItemId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl Tid {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Bijection between labels and contiguous ordinals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dictionary {
    labels: IndexSet<String>,
}

impl Dictionary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the ordinal for `label`, assigning the next free one if the
    /// label has not been seen. Surrounding whitespace is ignored.
    pub fn intern(&mut self, label: &str) -> Result<u32> {
        let label = label.trim();
        if label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        if let Some(idx) = self.labels.get_index_of(label) {
            return Ok(idx as u32);
        }
        let (idx, _) = self.labels.insert_full(label.to_owned());
        Ok(idx as u32)
    }

    pub fn lookup(&self, label: &str) -> Option<u32> {
        self.labels.get_index_of(label.trim()).map(|i| i as u32)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.lookup(label).is_some()
    }

    pub fn label(&self, ordinal: u32) -> Option<&str> {
        self.labels.get_index(ordinal as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Labels in ordinal order.
    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.labels.iter().map(String::as_str)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    pub tid: Tid,
    /// Strictly increasing, never empty.
    pub items: Vec<ItemId>,
}

/// Horizontal transaction database.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Database {
    transactions: Vec<Transaction>,
    items: Dictionary,
    tids: Dictionary,
}

impl Database {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern_item(&mut self, label: &str) -> Result<ItemId> {
        self.items.intern(label).map(ItemId)
    }

    /// Appends a transaction. Duplicate item labels are collapsed; the
    /// database is left untouched on error.
    pub fn push_transaction<I, S>(&mut self, tid: &str, items: I) -> Result<Tid>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let tid_label = tid.trim();
        if tid_label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        if self.tids.contains(tid_label) {
            return Err(Error::DuplicateTid(tid_label.to_owned()));
        }
        let labels: Vec<S> = items.into_iter().collect();
        if labels.is_empty() {
            return Err(Error::EmptyTransaction(tid_label.to_owned()));
        }
        if labels.iter().any(|l| l.as_ref().trim().is_empty()) {
            return Err(Error::EmptyLabel);
        }

        let mut ids = labels
            .iter()
            .map(|l| self.intern_item(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        ids.sort_unstable();
        ids.dedup();
        let tid = Tid(self.tids.intern(tid_label)?);
        debug_assert_eq!(tid.index(), self.transactions.len());
        self.transactions.push(Transaction { tid, items: ids });
        Ok(tid)
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn items(&self) -> &Dictionary {
        &self.items
    }

    pub fn tids(&self) -> &Dictionary {
        &self.tids
    }

    pub fn item_label(&self, item: ItemId) -> &str {
        self.items
            .label(item.0)
            .expect("item ordinal from this database")
    }

    pub fn tid_label(&self, tid: Tid) -> &str {
        self.tids
            .label(tid.0)
            .expect("tid ordinal from this database")
    }
}

/// A set of items held as a strictly increasing ordinal sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Itemset(Vec<ItemId>);

impl Itemset {
    /// Builds the canonical form of an arbitrary item collection.
    pub fn new(items: impl IntoIterator<Item = ItemId>) -> Self {
        let mut v: Vec<ItemId> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Itemset(v)
    }

    /// Wraps an already canonical sequence.
    ///
    /// Panics if `items` is not strictly increasing.
    pub fn from_sorted(items: Vec<ItemId>) -> Self {
        assert!(
            items.windows(2).all(|w| w[0] < w[1]),
            "itemset must be strictly increasing: {items:?}"
        );
        Itemset(items)
    }

    pub fn as_slice(&self) -> &[ItemId] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<ItemId> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.0.binary_search(&item).is_ok()
    }

    /// Sorted-merge subset test against another strictly increasing slice.
    pub fn is_subset_of(&self, other: &[ItemId]) -> bool {
        is_sorted_subset(&self.0, other)
    }

    /// Items of `self` not in `other`.
    pub fn difference(&self, other: &Itemset) -> Itemset {
        Itemset(
            self.0
                .iter()
                .copied()
                .filter(|i| !other.contains(*i))
                .collect(),
        )
    }

    pub fn display<'a>(&'a self, dict: &'a Dictionary) -> impl fmt::Display + 'a {
        LabelList {
            items: &self.0,
            dict,
        }
    }
}

impl From<Vec<ItemId>> for Itemset {
    fn from(items: Vec<ItemId>) -> Self {
        Itemset::new(items)
    }
}

struct LabelList<'a> {
    items: &'a [ItemId],
    dict: &'a Dictionary,
}

impl fmt::Display for LabelList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(self.dict.label(item.0).unwrap_or("?"))?;
        }
        Ok(())
    }
}

pub(crate) fn is_sorted_subset<T: Ord>(needle: &[T], haystack: &[T]) -> bool {
    if needle.len() > haystack.len() {
        return false;
    }
    let mut hay = haystack.iter();
    'outer: for n in needle {
        for h in hay.by_ref() {
            match h.cmp(n) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// Minimum support, either as a transaction count or as a fraction of the
/// database.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportThreshold {
    Absolute(usize),
    Fraction(Ratio<u64>),
}

impl SupportThreshold {
    /// Parses a decimal fraction such as `0.05` exactly.
    pub fn fraction_from_str(s: &str) -> Result<Self> {
        let r = parse_decimal(s)
            .ok_or_else(|| Error::InvalidThreshold(format!("not a decimal: `{s}`")))?;
        Ok(SupportThreshold::Fraction(r))
    }

    /// Absolute count an itemset must reach in a database of `n`
    /// transactions to be frequent.
    pub fn resolve(&self, n: usize) -> Result<usize> {
        match *self {
            SupportThreshold::Absolute(0) => Err(Error::InvalidThreshold(
                "absolute support must be at least 1".into(),
            )),
            SupportThreshold::Absolute(k) => Ok(k),
            SupportThreshold::Fraction(f) => {
                if f <= Ratio::from_integer(0) || f > Ratio::from_integer(1) {
                    return Err(Error::InvalidThreshold(format!(
                        "fraction {f} outside (0, 1]"
                    )));
                }
                if n == 0 {
                    return Err(Error::EmptyDatabase);
                }
                let num = u128::from(*f.numer()) * n as u128;
                let den = u128::from(*f.denom());
                let ceil = num.div_ceil(den);
                Ok((ceil as usize).max(1))
            }
        }
    }
}

impl fmt::Display for SupportThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportThreshold::Absolute(k) => write!(f, "{k}"),
            SupportThreshold::Fraction(r) => write!(f, "{r}"),
        }
    }
}

/// Parses a non-negative decimal literal (`0.7`, `1`, `.25`) into an exact
/// reduced fraction.
pub fn parse_decimal(s: &str) -> Option<Ratio<u64>> {
    let s = s.trim();
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
        || frac_part.len() > 18
    {
        return None;
    }
    let den = 10u64.checked_pow(frac_part.len() as u32)?;
    let int: u64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().ok()?
    };
    let frac: u64 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().ok()?
    };
    let num = int.checked_mul(den)?.checked_add(frac)?;
    Some(Ratio::new(num, den))
}
