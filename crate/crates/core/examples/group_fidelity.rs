// Process fidelity of a one-step circuit for H = IZ + ZI + ZZ + XX + YY
// when terms are grouped by commuting family versus interleaved.
//
// cargo run --example group_fidelity

use dqs::circuit::{assemble, Architecture};
use dqs::ordering::{plan, OrderingContext, OrderingPlan, Strategy, TspMode};
use dqs::clique::CoverMode;
use dqs::pauli::load_hamiltonian;
use dqs::sim::{circuit_unitary, exact_unitary, normalized_fidelity, process_fidelity};

pub fn run_example() -> dqs::Result<()> {
    let h = load_hamiltonian(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/hc.ham"))?;
    let ctx = OrderingContext::new(&h, CoverMode::Exact)?;
    let grouped = plan(&h, Strategy::MaxCommuteTsp(TspMode::Exact), &ctx);
    // XX, ZI, YY, IZ, ZZ
    let mixed = OrderingPlan {
        strategy: Strategy::Unordered,
        term_order: vec![3, 1, 4, 0, 2],
        clique_boundaries: None,
    };

    let mut curves = [Vec::new(), Vec::new()];
    println!("    t   grouped     mixed");
    for i in 0..=50 {
        let t = i as f64 * 0.1;
        let exact = exact_unitary(&h, t)?;
        for (curve, p) in curves.iter_mut().zip([&grouped, &mixed]) {
            let c = assemble(p, &h, t, 1, Architecture::Ladder)?;
            curve.push((t, process_fidelity(&exact, &circuit_unitary(&c)?)?));
        }
        if i % 5 == 0 {
            println!("{t:5.1}  {:8.6}  {:8.6}", curves[0][i].1, curves[1][i].1);
        }
    }
    println!(
        "normalized: grouped {:.6}, mixed {:.6}",
        normalized_fidelity(&curves[0], 5.0)?,
        normalized_fidelity(&curves[1], 5.0)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> dqs::Result<()> {
    run_example()
}
