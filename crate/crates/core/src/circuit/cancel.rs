//! Commutation-aware cancellation of adjacent inverse pairs.
//!
//! A gate is slid forward past every later gate it provably commutes with;
//! if the first gate it cannot pass is its inverse, both are dropped. The
//! commutation table is a whitelist:
//!
//! * diagonal gates (`Rz`, `S`, `S†`) commute with each other and with a
//!   CNOT control;
//! * `X` commutes with `X` and with a CNOT target;
//! * CNOTs commute unless one's control is the other's target;
//! * `H` commutes only with `H`.
//!
//! Passes repeat to a fixed point, so `S H H S†` collapses in two rounds.

use super::{Circuit, Gate};

fn is_diagonal(g: &Gate) -> bool {
    matches!(g, Gate::Rz { .. } | Gate::S(_) | Gate::Sdg(_))
}

/// True when the two gates' product is the identity.
pub fn is_inverse(a: &Gate, b: &Gate) -> bool {
    match (*a, *b) {
        (Gate::H(p), Gate::H(q)) | (Gate::X(p), Gate::X(q)) => p == q,
        (Gate::S(p), Gate::Sdg(q)) | (Gate::Sdg(p), Gate::S(q)) => p == q,
        (
            Gate::Cnot {
                control: c1,
                target: t1,
            },
            Gate::Cnot {
                control: c2,
                target: t2,
            },
        ) => c1 == c2 && t1 == t2,
        _ => false,
    }
}

fn single_vs_cnot(g: &Gate, q: usize, control: usize, target: usize) -> bool {
    if q == control {
        is_diagonal(g)
    } else if q == target {
        matches!(g, Gate::X(_))
    } else {
        true
    }
}

/// Conservative commutation test: `true` only when the gates provably
/// commute.
pub fn commute(a: &Gate, b: &Gate) -> bool {
    match (a, b) {
        (
            Gate::Cnot {
                control: c1,
                target: t1,
            },
            Gate::Cnot {
                control: c2,
                target: t2,
            },
        ) => c1 != t2 && t1 != c2,
        (Gate::Cnot { control, target }, single) | (single, Gate::Cnot { control, target }) => {
            let (qs, _) = single.qubits();
            single_vs_cnot(single, qs[0], *control, *target)
        }
        _ => {
            let (qa, _) = a.qubits();
            let (qb, _) = b.qubits();
            if qa[0] != qb[0] {
                return true;
            }
            (is_diagonal(a) && is_diagonal(b))
                || matches!((a, b), (Gate::X(_), Gate::X(_)) | (Gate::H(_), Gate::H(_)))
        }
    }
}

/// One sweep; returns the surviving gates and how many were removed.
fn sweep(gates: &[Gate], width: usize) -> (Vec<Gate>, usize) {
    // Gate indices per wire, ascending.
    let mut wires: Vec<Vec<usize>> = vec![Vec::new(); width];
    for (i, g) in gates.iter().enumerate() {
        let (qs, n) = g.qubits();
        for &q in &qs[..n] {
            wires[q].push(i);
        }
    }
    let mut alive = vec![true; gates.len()];
    let mut removed = 0;
    for i in 0..gates.len() {
        if !alive[i] {
            continue;
        }
        let g = gates[i];
        let (qs, n) = g.qubits();
        // Merge the later entries of this gate's wires in circuit order.
        let mut cursors: Vec<(&[usize], usize)> = qs[..n]
            .iter()
            .map(|&q| {
                let w = &wires[q][..];
                (w, w.partition_point(|&j| j <= i))
            })
            .collect();
        loop {
            let next = cursors
                .iter()
                .filter_map(|(w, pos)| w.get(*pos).copied())
                .min();
            let Some(j) = next else { break };
            for (w, pos) in cursors.iter_mut() {
                if w.get(*pos) == Some(&j) {
                    *pos += 1;
                }
            }
            if !alive[j] {
                continue;
            }
            if is_inverse(&g, &gates[j]) {
                alive[i] = false;
                alive[j] = false;
                removed += 2;
                break;
            }
            if !commute(&g, &gates[j]) {
                break;
            }
        }
    }
    let kept = gates
        .iter()
        .zip(&alive)
        .filter_map(|(g, &a)| a.then_some(*g))
        .collect();
    (kept, removed)
}

/// Applies the cancellation rules until nothing changes. The unitary of
/// the circuit is preserved exactly.
pub fn cancel_gates(c: &Circuit) -> Circuit {
    let mut gates = c.gates.clone();
    loop {
        let (next, removed) = sweep(&gates, c.width);
        gates = next;
        if removed == 0 {
            break;
        }
    }
    c.with_gates(gates)
}
