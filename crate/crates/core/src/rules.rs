//! Association rules from frequent itemsets.
//!
//! Confidence is kept as an exact fraction `support(X ∪ Y) / support(X)` and
//! compared against the minimum by cross-multiplication, so thresholds such
//! as 2/3 behave the same on every platform.

use num_rational::Ratio;

use crate::miner::MineResult;
use crate::model::{parse_decimal, Itemset};
use crate::{Error, Result};

pub type Confidence = Ratio<u64>;

pub fn confidence(supp_xy: usize, supp_x: usize) -> Result<Confidence> {
    if supp_x == 0 {
        return Err(Error::InvalidConfidence(
            "antecedent support is zero".into(),
        ));
    }
    if supp_xy > supp_x {
        return Err(Error::Inconsistent(format!(
            "joint support {supp_xy} exceeds antecedent support {supp_x}"
        )));
    }
    Ok(Ratio::new(supp_xy as u64, supp_x as u64))
}

/// `antecedent => consequent`, with the support of their union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub antecedent: Itemset,
    pub consequent: Itemset,
    pub support: usize,
    pub confidence: Confidence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleQuery {
    pub min_confidence: Confidence,
}

impl RuleQuery {
    pub fn new(min_confidence: Confidence) -> Result<Self> {
        if min_confidence <= Ratio::from_integer(0) || min_confidence > Ratio::from_integer(1) {
            return Err(Error::InvalidConfidence(format!(
                "{min_confidence} outside (0, 1]"
            )));
        }
        Ok(RuleQuery { min_confidence })
    }

    /// Accepts a decimal (`0.7`) or a percentage (`70%`, `62.5%`).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let value = match s.strip_suffix('%') {
            Some(pct) => parse_decimal(pct).map(|r| r / 100),
            None => parse_decimal(s),
        };
        let value = value.ok_or_else(|| Error::InvalidConfidence(format!("`{s}`")))?;
        Self::new(value)
    }

    pub fn accepts(&self, c: Confidence) -> bool {
        // c >= min, cross-multiplied to stay in integers
        u128::from(*c.numer()) * u128::from(*self.min_confidence.denom())
            >= u128::from(*self.min_confidence.numer()) * u128::from(*c.denom())
    }
}

/// Every rule `X => Z \ X` with `Z` frequent, `|Z| >= 2`, `X` a non-empty
/// proper subset of `Z`, and confidence at least the query minimum.
///
/// Ordered by `Z` (as in `frequents`), then by antecedent size, then by
/// canonical antecedent order. `frequents` must be downward closed.
pub fn generate_rules(frequents: &MineResult, q: &RuleQuery) -> Result<Vec<Rule>> {
    let mut rules = Vec::new();
    for z in frequents.iter().filter(|f| f.itemset.len() >= 2) {
        let items = z.itemset.as_slice();
        let n = items.len();
        if n >= 64 {
            return Err(Error::Inconsistent(format!("itemset of size {n}")));
        }
        let mut antecedents: Vec<Itemset> = (1u64..(1u64 << n) - 1)
            .map(|mask| {
                Itemset::from_sorted(
                    (0..n)
                        .filter(|b| mask & (1 << b) != 0)
                        .map(|b| items[b])
                        .collect(),
                )
            })
            .collect();
        antecedents.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

        for x in antecedents {
            let supp_x = frequents.support_of(&x).ok_or_else(|| {
                Error::Inconsistent(format!("subset {:?} of a frequent itemset is missing", x))
            })?;
            let c = confidence(z.support, supp_x)?;
            if q.accepts(c) {
                rules.push(Rule {
                    consequent: z.itemset.difference(&x),
                    antecedent: x,
                    support: z.support,
                    confidence: c,
                });
            }
        }
    }
    Ok(rules)
}

/// `c` as a percentage rounded half away from zero to two decimals, with
/// trailing zeros dropped: `7/9` gives `77.78%`, `5/8` gives `62.5%`.
pub fn format_percent(c: Confidence) -> String {
    let num = u128::from(*c.numer());
    let den = u128::from(*c.denom());
    let hundredths = (2 * num * 10_000 + den) / (2 * den);
    let (whole, frac) = (hundredths / 100, hundredths % 100);
    if frac == 0 {
        format!("{whole}%")
    } else if frac % 10 == 0 {
        format!("{whole}.{}%", frac / 10)
    } else {
        format!("{whole}.{frac:02}%")
    }
}
