// Score every clique order of the synthetic LiH model by normalized
// fidelity and compare with the heuristic's pick.
//
// cargo run --release --example clique_permutations

use dqs::bench::{cmd_fidelity, BenchConfig};

pub fn run_example() -> dqs::Result<()> {
    let mut cfg = BenchConfig::default();
    cfg.hamiltonians = vec![concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/lih_synthetic.ham").into()];
    cfg.set("strategies", "max_commute_tsp")?;
    cfg.set("t_stop", "0.5")?;
    cfg.set("t_step", "0.05")?;
    cfg.set("r", "2")?;
    cfg.enumerate_permutations = true;

    let rep = cmd_fidelity(&cfg)?;
    let mut rows: Vec<_> = rep.summary.iter().collect();
    rows.sort_by(|a, b| b.normalized_fidelity.total_cmp(&a.normalized_fidelity));
    let mean = rows.iter().map(|r| r.normalized_fidelity).sum::<f64>() / rows.len() as f64;
    for r in rows.iter().take(5) {
        println!("{:28} {:.8}", r.strategy, r.normalized_fidelity);
    }
    println!("... {} orders, mean {mean:.8}", rows.len());
    let heuristic = rows.iter().position(|r| !r.strategy.starts_with("perm")).unwrap_or(0);
    println!("heuristic ranks {} of {}", heuristic + 1, rows.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> dqs::Result<()> {
    run_example()
}
