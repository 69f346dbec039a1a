// Hellinger infidelity of shot-sampled H2 circuits as the CNOT
// depolarizing rate rises, for each initial state.
//
// cargo run --release --example noisy_hellinger

use dqs::bench::{cmd_noisy, BenchConfig, InitialState};

pub fn run_example() -> dqs::Result<()> {
    let mut cfg = BenchConfig::default();
    cfg.hamiltonians = vec![concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/h2.ham").into()];
    cfg.set("strategies", "lex, max_commute_tsp")?;
    cfg.set("p", "0, 0.001, 0.005, 0.01")?;
    cfg.set("r", "2")?;
    cfg.set("shots", "500")?;
    cfg.set("seeds", "1, 2")?;

    for state in InitialState::ALL {
        cfg.initial_state = state;
        let rep = cmd_noisy(&cfg)?;
        println!("{state}");
        for s in ["lexicographic", "max_commute_tsp(exact)"] {
            let row: Vec<String> = cfg
                .noise_p
                .iter()
                .map(|&p| format!("{:.4}", rep.mean_infidelity("h2", s, p).unwrap_or(f64::NAN)))
                .collect();
            println!("  {s:24} {}", row.join("  "));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> dqs::Result<()> {
    run_example()
}
