//! Command implementations behind the `trademine` binary.
//!
//! Each `cmd_*` function takes a validated [`RunConfig`], writes its log
//! files, prints a summary to the supplied writer and returns the paths it
//! wrote. The binary only parses flags and maps errors to exit codes.

pub mod bench;
pub mod commands;
pub mod config;
pub mod logs;

pub use bench::{BenchReport, BenchRow};
pub use commands::{cmd_bench, cmd_mine, cmd_rules, cmd_tradelist, cmd_update};
pub use config::{Algo, Input, OutputNaming, RunConfig};
