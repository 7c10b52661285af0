//! Frequent itemset and association rule mining over a vertical
//! transaction index (the "trade list").
//!
//! The pipeline is:
//!
//! 1. [`ingest::parse_database`] reads a horizontal transaction file.
//! 2. [`TradeList::build`] scans it once and records, for every item, the
//!    sorted list of transactions that contain it.
//! 3. [`miner::mine`] finds every frequent itemset by intersecting those
//!    lists depth-first. No further pass over the raw data is needed, so
//!    re-mining at a new threshold or after [`TradeList::add_transaction`]
//!    is cheap.
//! 4. [`rules::generate_rules`] turns the frequent itemsets into
//!    confidence-filtered association rules.
//!
//! [`apriori`] contains a classic level-wise miner over the raw database,
//! instrumented with a pass counter, used as a baseline and cross-check.
//!
//! ```
//! use tradelist::{ingest, miner, SupportThreshold, TradeList};
//!
//! let db = ingest::parse_database("T1,milk,bread\nT2,milk\nT3,bread,milk\n").unwrap();
//! let tl = TradeList::build(&db);
//! let result = miner::mine(&tl, SupportThreshold::Absolute(2)).unwrap();
//! assert_eq!(result.len(), 3);
//! assert_eq!(result.stats.raw_passes, 0);
//! ```

pub mod apriori;
mod error;
pub mod ingest;
pub mod miner;
pub mod model;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod rules;
pub mod tradelist;

pub use error::{Error, Result};
pub use miner::{FrequentItemset, MineResult, MineStats};
pub use model::{Database, Dictionary, ItemId, Itemset, SupportThreshold, Tid, Transaction};
pub use rules::{Confidence, Rule, RuleQuery};
pub use tradelist::{TidSet, TradeList};
