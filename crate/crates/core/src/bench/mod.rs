//! Experiment driver behind the `dqs-bench` binary.
//!
//! Each `cmd_*` function is a pure function of its [`BenchConfig`]: it
//! returns rows whose CSV rendering is reproducible bit for bit. When
//! `out_dir` is set the rows (and any circuit files) are also written there.

mod commands;
mod config;
mod states;

pub use commands::{
    cmd_compile, cmd_fidelity, cmd_noisy, cmd_order, CompileReport, CompileRow, FidelityReport,
    FidelityRow, NoisyReport, NoisyRow, OrderReport, OrderRow, SummaryRow,
};
pub use config::BenchConfig;
pub use states::InitialState;
