// Compile the deuteron model with four Trotter steps and print the
// circuit text, first for the ladder layout, then star+ancilla after
// cancellation.
//
// cargo run --example compile_circuit

use dqs::circuit::{assemble, cancel_gates, cnot_count, parse_circuit, Architecture};
use dqs::ordering::order_unordered;
use dqs::pauli::load_hamiltonian;

pub fn run_example() -> dqs::Result<()> {
    let h = load_hamiltonian(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/deuteron.ham"))?;
    let plan = order_unordered(&h);

    let ladder = assemble(&plan, &h, 1.0, 4, Architecture::Ladder)?;
    let one_step = ladder.gates.len() / 4;
    println!("# first of four identical steps");
    for g in &ladder.gates[..one_step] {
        println!("{g}");
    }

    let raw = assemble(&plan, &h, 1.0, 4, Architecture::StarAncilla)?;
    let opt = cancel_gates(&raw);
    println!("\nstar_ancilla: {} -> {} CNOTs", cnot_count(&raw), cnot_count(&opt));

    // The text form round-trips.
    let text = opt.to_string();
    assert_eq!(parse_circuit(&text)?, opt);
    print!("{}", text.lines().take(12).collect::<Vec<_>>().join("\n"));
    println!("\n...");
    Ok(())
}

#[allow(dead_code)]
fn main() -> dqs::Result<()> {
    run_example()
}
