// Group H2's fourteen terms into mutually commuting cliques and pick a
// clique order.
//
// cargo run --example clique_cover

use dqs::clique::{build_graph, min_clique_cover, permutation_heuristic, CoverMode};
use dqs::pauli::load_hamiltonian;

pub fn run_example() -> dqs::Result<()> {
    let h = load_hamiltonian(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/h2.ham"))?;
    let g = build_graph(&h);
    println!("{} terms, {} commuting pairs", h.len(), g.edge_count());

    for mode in [CoverMode::Exact, CoverMode::Greedy] {
        let cover = min_clique_cover(&g, mode)?;
        println!("\n{mode:?} cover: {} cliques", cover.len());
        print!("{}", cover.report(&h));
    }

    let cover = min_clique_cover(&g, CoverMode::Exact)?;
    let perm = permutation_heuristic(&h, &cover);
    print!("\n{}", perm.report());
    Ok(())
}

#[allow(dead_code)]
fn main() -> dqs::Result<()> {
    run_example()
}
