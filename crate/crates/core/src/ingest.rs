//! Plain-text transaction files and synthetic workloads.
//!
//! One transaction per line, `TID,item,item,...`. Fields are trimmed;
//! blank lines and lines starting with `#` are skipped.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::model::Database;
use crate::{Error, Result};

pub fn parse_database(text: &str) -> Result<Database> {
    let mut db = Database::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split(',').map(str::trim);
        let tid = fields.next().unwrap_or_default();
        let items: Vec<&str> = fields.collect();
        if tid.is_empty() || items.iter().any(|f| f.is_empty()) {
            return Err(Error::Parse {
                line: line_no,
                message: "empty field".into(),
            });
        }
        db.push_transaction(tid, &items).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
    }
    Ok(db)
}

/// Renders `db` so that [`parse_database`] reproduces it exactly.
pub fn write_database(db: &Database) -> String {
    let mut out = String::new();
    for tx in db.transactions() {
        out.push_str(db.tid_label(tx.tid));
        for &item in &tx.items {
            out.push(',');
            out.push_str(db.item_label(item));
        }
        out.push('\n');
    }
    out
}

/// Parameters of a synthetic market-basket database.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticSpec {
    pub n_transactions: usize,
    pub n_items: usize,
    pub mean_length: f64,
    pub seed: u64,
}

impl SyntheticSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_transactions == 0 {
            return Err(Error::InvalidSpec(
                "n_transactions must be at least 1".into(),
            ));
        }
        if self.n_items == 0 {
            return Err(Error::InvalidSpec("n_items must be at least 1".into()));
        }
        if !(self.mean_length.is_finite() && self.mean_length > 0.0) {
            return Err(Error::InvalidSpec("mean_length must be positive".into()));
        }
        if self.mean_length > self.n_items as f64 {
            return Err(Error::InvalidSpec("mean_length exceeds n_items".into()));
        }
        Ok(())
    }
}

impl std::str::FromStr for SyntheticSpec {
    type Err = Error;

    /// `n_tx,n_items,mean,seed`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::InvalidSpec(format!("expected n_tx,n_items,mean,seed, got `{s}`"));
        if parts.len() != 4 {
            return Err(bad());
        }
        let spec = SyntheticSpec {
            n_transactions: parts[0].parse().map_err(|_| bad())?,
            n_items: parts[1].parse().map_err(|_| bad())?,
            mean_length: parts[2].parse().map_err(|_| bad())?,
            seed: parts[3].parse().map_err(|_| bad())?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Generates a database whose transaction lengths are Poisson distributed
/// around `mean_length` (clamped to `[1, n_items]`) and whose items follow
/// a Zipf popularity law with exponent 1. Item `I<r>` has weight `1/r`.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<Database> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let lengths = Poisson::new(spec.mean_length).map_err(|e| Error::InvalidSpec(e.to_string()))?;
    let ranked: Vec<(String, f64)> = (1..=spec.n_items)
        .map(|r| (format!("I{r}"), 1.0 / r as f64))
        .collect();

    let mut db = Database::new();
    for t in 1..=spec.n_transactions {
        let len = (lengths.sample(&mut rng) as usize).clamp(1, spec.n_items);
        let picked: Vec<&str> = ranked
            .choose_multiple_weighted(&mut rng, len, |(_, w)| *w)
            .map_err(|e| Error::InvalidSpec(e.to_string()))?
            .map(|(label, _)| label.as_str())
            .collect();
        db.push_transaction(&format!("T{t}"), picked)?;
    }
    Ok(db)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ItemId;

    #[test]
    fn parses_table_rows() {
        let db = parse_database("T100,I1,I2,I5\nT200,I2,I4").unwrap();
        assert_eq!(db.len(), 2);
        assert_eq!(db.items().len(), 4);
        assert_eq!(db.tid_label(db.transactions()[1].tid), "T200");
    }

    #[test]
    fn empty_document_is_empty_database() {
        assert!(parse_database("").unwrap().is_empty());
        assert!(parse_database("\n  \n# comment only\n").unwrap().is_empty());
    }

    #[test]
    fn duplicate_items_collapse() {
        let db = parse_database("T1,A,A,B").unwrap();
        assert_eq!(db.transactions()[0].items, vec![ItemId(0), ItemId(1)]);
        assert_eq!(db.items().len(), 2);
    }

    #[test]
    fn whitespace_and_comments_tolerated() {
        let db = parse_database("# header\n\n  T1 , A ,B  \n").unwrap();
        assert_eq!(db.tid_label(db.transactions()[0].tid), "T1");
        assert_eq!(db.items().iter().collect::<Vec<_>>(), vec!["A", "B"]);
    }

    #[test]
    fn rejects_duplicate_tid_with_line_and_label() {
        let err = parse_database("T1,A\n\nT1,B\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(err.to_string().contains("T1"), "{err}");
    }

    #[test]
    fn rejects_line_without_items() {
        let err = parse_database("T1,A\nT2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn rejects_empty_fields() {
        for doc in ["T1,A,,B", ",A", "T1,A,", "T1, ,A"] {
            let err = parse_database(doc).unwrap_err();
            assert_eq!(
                err,
                Error::Parse {
                    line: 1,
                    message: "empty field".into()
                },
                "{doc:?}"
            );
        }
    }

    #[test]
    fn write_renders_lines_in_order() {
        let text = "T100,I1,I2,I5\nT200,I2,I4\n";
        let db = parse_database(text).unwrap();
        assert_eq!(write_database(&db), text);
        assert_eq!(write_database(&Database::new()), "");
    }

    #[test]
    fn synthetic_is_deterministic_and_clamped() {
        let spec = SyntheticSpec {
            n_transactions: 5,
            n_items: 3,
            mean_length: 3.0,
            seed: 7,
        };
        let a = generate_synthetic(&spec).unwrap();
        let b = generate_synthetic(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        assert!(a
            .transactions()
            .iter()
            .all(|t| (1..=3).contains(&t.items.len())));
    }

    #[test]
    fn synthetic_mean_length_tracks_spec() {
        let spec = SyntheticSpec {
            n_transactions: 1000,
            n_items: 50,
            mean_length: 8.0,
            seed: 42,
        };
        let db = generate_synthetic(&spec).unwrap();
        let total: usize = db.transactions().iter().map(|t| t.items.len()).sum();
        let mean = total as f64 / db.len() as f64;
        assert!((mean - 8.0).abs() <= 0.5, "mean length {mean}");
    }

    #[test]
    fn synthetic_spec_validation() {
        let ok = SyntheticSpec {
            n_transactions: 1,
            n_items: 1,
            mean_length: 1.0,
            seed: 0,
        };
        assert!(ok.validate().is_ok());
        for bad in [
            SyntheticSpec {
                n_transactions: 0,
                ..ok
            },
            SyntheticSpec { n_items: 0, ..ok },
            SyntheticSpec {
                mean_length: 0.0,
                ..ok
            },
            SyntheticSpec {
                mean_length: 2.0,
                ..ok
            },
            SyntheticSpec {
                mean_length: f64::NAN,
                ..ok
            },
        ] {
            assert!(generate_synthetic(&bad).is_err(), "{bad:?}");
        }
        assert_eq!("1000,50,8,42".parse::<SyntheticSpec>().unwrap().n_items, 50);
        assert!("1000,50,8".parse::<SyntheticSpec>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_document() -> impl Strategy<Value = String> {
            proptest::collection::vec(proptest::collection::vec(0u8..8, 1..6), 0..12).prop_map(
                |rows| {
                    rows.iter()
                        .enumerate()
                        .map(|(t, items)| {
                            let labels: Vec<String> =
                                items.iter().map(|i| format!("I{i}")).collect();
                            format!("T{t},{}\n", labels.join(","))
                        })
                        .collect()
                },
            )
        }

        proptest! {
            #[test]
            fn parse_write_round_trip(doc in arb_document()) {
                let db = parse_database(&doc).unwrap();
                let written = write_database(&db);
                prop_assert_eq!(parse_database(&written).unwrap(), db);
            }

            #[test]
            fn synthetic_is_pure(seed in any::<u64>(), n in 1usize..30, items in 1usize..10) {
                let spec = SyntheticSpec { n_transactions: n, n_items: items, mean_length: 1.0, seed };
                prop_assert_eq!(generate_synthetic(&spec).unwrap(), generate_synthetic(&spec).unwrap());
            }
        }
    }
}
