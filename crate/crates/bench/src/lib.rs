//! Fixed synthetic workloads shared by the criterion benches.

use tradelist::ingest::{generate_synthetic, SyntheticSpec};
use tradelist::{Database, SupportThreshold};

pub struct Workload {
    pub name: &'static str,
    pub spec: SyntheticSpec,
    pub threshold: SupportThreshold,
}

impl Workload {
    pub fn database(&self) -> Database {
        generate_synthetic(&self.spec).expect("workload specs are valid")
    }
}

pub fn workloads() -> Vec<Workload> {
    let frac = |s: &str| SupportThreshold::fraction_from_str(s).unwrap();
    vec![
        Workload {
            name: "1k_tx_50_items",
            spec: SyntheticSpec {
                n_transactions: 1_000,
                n_items: 50,
                mean_length: 8.0,
                seed: 42,
            },
            threshold: frac("0.05"),
        },
        Workload {
            name: "10k_tx_200_items",
            spec: SyntheticSpec {
                n_transactions: 10_000,
                n_items: 200,
                mean_length: 10.0,
                seed: 7,
            },
            threshold: frac("0.02"),
        },
    ]
}
