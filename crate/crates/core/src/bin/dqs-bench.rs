//! Thin command-line front end over `dqs::bench`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dqs::bench::{self, BenchConfig};

#[derive(Parser)]
#[command(name = "dqs-bench", version, about = "Order, compile and simulate Pauli-sum evolution circuits")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Term orderings, clique stats and predicted CNOT counts.
    Order(Common),
    /// Assemble and cancel circuits; gate-count CSV plus circuit files.
    Compile(Common),
    /// Process fidelity over a time grid and its normalized average.
    Fidelity(Common),
    /// Shot-sampled runs under depolarizing noise; Hellinger CSV.
    Noisy(Common),
}

#[derive(Args)]
struct Common {
    /// Flat key = value config file.
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Hamiltonian files or directories (overrides the config).
    #[arg(value_name = "HAM")]
    hamiltonians: Vec<PathBuf>,
    /// Comma-separated strategies.
    #[arg(short, long)]
    strategies: Option<String>,
    /// Directory for CSV and circuit output; stdout otherwise.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Extra `key=value` overrides, repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl Common {
    fn config(&self) -> dqs::Result<BenchConfig> {
        let mut cfg = match &self.config {
            Some(p) => BenchConfig::load(p)?,
            None => BenchConfig::default(),
        };
        if !self.hamiltonians.is_empty() {
            cfg.hamiltonians = self.hamiltonians.clone();
        }
        if let Some(s) = &self.strategies {
            cfg.set("strategies", s)?;
        }
        for kv in &self.set {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| dqs::Error::Config(format!("override \"{kv}\" is not key=value")))?;
            cfg.set(k.trim(), v)?;
        }
        if self.out.is_some() {
            cfg.out_dir = self.out.clone();
        }
        Ok(cfg)
    }
}

fn run(cli: Cli) -> dqs::Result<()> {
    let print = |cfg: &BenchConfig, body: String| {
        if cfg.out_dir.is_none() {
            print!("{body}");
        }
    };
    match cli.cmd {
        Cmd::Order(c) => {
            let cfg = c.config()?;
            let rep = bench::cmd_order(&cfg)?;
            print(&cfg, rep.to_csv());
        }
        Cmd::Compile(c) => {
            let cfg = c.config()?;
            let rep = bench::cmd_compile(&cfg)?;
            print(&cfg, rep.to_csv());
        }
        Cmd::Fidelity(c) => {
            let cfg = c.config()?;
            let rep = bench::cmd_fidelity(&cfg)?;
            print(&cfg, rep.summary_csv());
        }
        Cmd::Noisy(c) => {
            let cfg = c.config()?;
            let rep = bench::cmd_noisy(&cfg)?;
            print(&cfg, rep.to_csv());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error kind={} message={msg:?}", e.kind());
            ExitCode::FAILURE
        }
    }
}
