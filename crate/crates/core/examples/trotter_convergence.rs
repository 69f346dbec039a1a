// First-order Trotter error shrinks like 1/r.
//
// cargo run --example trotter_convergence

use dqs::circuit::{assemble, Architecture};
use dqs::ordering::order_unordered;
use dqs::pauli::parse_hamiltonian;
use dqs::sim::{circuit_unitary, exact_unitary};

pub fn run_example() -> dqs::Result<()> {
    let h = parse_hamiltonian("0.9 XZI\n-0.4 ZYX\n0.7 IXY\n0.3 YIZ")?;
    let t = 1.0;
    let exact = exact_unitary(&h, t)?;
    let mut prev: Option<f64> = None;
    println!("   r   ||U_r - U||     ratio");
    for r in [4, 8, 16, 32, 64] {
        let c = assemble(&order_unordered(&h), &h, t, r, Architecture::Ladder)?;
        let err = circuit_unitary(&c)?.operator_norm_diff(&exact);
        match prev {
            Some(p) => println!("{r:4}   {err:.6e}   {:.3}", p / err),
            None => println!("{r:4}   {err:.6e}"),
        }
        prev = Some(err);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> dqs::Result<()> {
    run_example()
}
