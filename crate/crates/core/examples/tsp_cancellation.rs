// CNOT counts before and after cancellation for lexicographic and
// path-optimal term orders.
//
// cargo run --example tsp_cancellation

use dqs::circuit::{assemble, cancel_gates, cnot_count, Architecture};
use dqs::ordering::{order_lexicographic, OrderingPlan, Strategy};
use dqs::pauli::{load_hamiltonian, PauliString};
use dqs::tsp::{build_distance_matrix, path_total_cnots, solve_path_approx, solve_path_exact};

pub fn run_example() -> dqs::Result<()> {
    for name in ["hpqrs8", "annotated9"] {
        let path = format!("{}/fixtures/{name}.ham", env!("CARGO_MANIFEST_DIR"));
        let h = load_hamiltonian(path)?;
        let strings: Vec<PauliString> = h.strings().cloned().collect();
        let m = build_distance_matrix(&strings)?;
        if name == "hpqrs8" {
            print!("{m}");
        }

        let lex = order_lexicographic(&h);
        let exact = solve_path_exact(&m)?;
        let approx = solve_path_approx(&m);
        // Build the real circuit for the exact route and count what survives.
        let route = OrderingPlan {
            strategy: Strategy::Unordered,
            term_order: exact.order.clone(),
            clique_boundaries: None,
        };
        let raw = assemble(&route, &h, 1.0, 1, Architecture::StarAncilla)?;
        let opt = cancel_gates(&raw);

        println!("{name}:");
        println!("  no cancellation  {}", cnot_count(&raw));
        println!("  lexicographic    {}", path_total_cnots(&lex.term_order, &strings)?);
        println!("  exact path       {} (circuit: {})", exact.total_cnots, cnot_count(&opt));
        println!("  approximate path {}", approx.total_cnots);
        let route: Vec<String> = exact.order.iter().map(|&i| strings[i].to_string()).collect();
        println!("  route {}", route.join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> dqs::Result<()> {
    run_example()
}
