//! Text layouts of the frequent-itemset and rule logs. The trade-list log
//! is produced by [`tradelist::TradeList::serialize_log`].
//!
//! Frequent itemsets: `<n>-<item>, <item>, ...`, numbered from 1, ordered by
//! size then canonical order. Rules: `<items>-><items> = <percent>`.

use std::fmt::Write;

use tradelist::rules::format_percent;
use tradelist::{Dictionary, MineResult, Rule};

pub fn freq_log(result: &MineResult, items: &Dictionary) -> String {
    let mut out = String::new();
    for (n, f) in result.iter().enumerate() {
        write!(out, "{}-", n + 1).unwrap();
        for (i, item) in f.itemset.as_slice().iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(items.label(item.0).unwrap_or("?"));
        }
        out.push('\n');
    }
    out
}

pub fn rule_log(rules: &[Rule], items: &Dictionary) -> String {
    let mut out = String::new();
    for r in rules {
        writeln!(
            out,
            "{}->{} = {}",
            r.antecedent.display(items),
            r.consequent.display(items),
            format_percent(r.confidence)
        )
        .unwrap();
    }
    out
}
