//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary
//! (`harness = false`) so the lines are always printed; exits non-zero if
//! any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use dqs::bench::{cmd_noisy, BenchConfig, InitialState};
use dqs::circuit::{assemble, cancel_gates, cnot_count, Architecture};
use dqs::clique::{build_graph, min_clique_cover, permutation_heuristic, permutation_score, CoverMode};
use dqs::ordering::{
    order_lexicographic, order_within_clique, plan, IntraOrder, OrderingContext, OrderingPlan,
    Strategy, TspMode,
};
use dqs::pauli::{load_hamiltonian, Hamiltonian, PauliString};
use dqs::sim::{
    born_distribution, circuit_full_unitary, circuit_unitary, exact_unitary, expm_hermitian,
    process_fidelity, run_noisy, total_variation, DenseUnitary, NoiseConfig,
};
use dqs::tsp::{build_distance_matrix, cnot_distance, path_total_cnots, solve_path_exact};
use rand::Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, ok: String, bad: String) -> Outcome {
    if cond {
        Ok(ok)
    } else {
        Err(bad)
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn fixed(order: Vec<usize>) -> OrderingPlan {
    OrderingPlan {
        strategy: Strategy::Unordered,
        term_order: order,
        clique_boundaries: None,
    }
}

fn strings(h: &Hamiltonian) -> Vec<PauliString> {
    h.strings().cloned().collect()
}

// 1
fn h2_two_cliques() -> Outcome {
    let start = Instant::now();
    let h = load_hamiltonian(fixture("h2.ham")).map_err(err)?;
    let cover = min_clique_cover(&build_graph(&h), CoverMode::Exact).map_err(err)?;
    let elapsed = start.elapsed();
    let family = |c: &Vec<usize>| -> Vec<String> {
        let mut v: Vec<String> = c.iter().map(|&i| h.term(i).string.to_string()).collect();
        v.sort();
        v
    };
    let mut fams: Vec<Vec<String>> = cover.cliques().iter().map(family).collect();
    fams.sort_by_key(|f| f.len());
    let z_only = |s: &String| s.chars().all(|c| c == 'Z' || c == 'I');
    let xy_only = |s: &String| s.chars().all(|c| c == 'X' || c == 'Y');
    let shape = fams.len() == 2
        && fams[0].len() == 4
        && fams[0].iter().all(xy_only)
        && fams[1].len() == 10
        && fams[1].iter().all(z_only);
    check(
        shape && elapsed < Duration::from_secs(1),
        format!("2 cliques (10 Z-family, 4 XY-family) in {elapsed:.2?}"),
        format!("cover {fams:?} in {elapsed:.2?}"),
    )
}

// 2
fn perfect_group_fidelity() -> Outcome {
    let start = Instant::now();
    let h = load_hamiltonian(fixture("hc.ham")).map_err(err)?;
    let ctx = OrderingContext::new(&h, CoverMode::Exact).map_err(err)?;
    let grouped = plan(&h, Strategy::MaxCommuteTsp(TspMode::Exact), &ctx);
    // XX, ZI, YY, IZ, ZZ in fixture indices.
    let random = fixed(vec![3, 1, 4, 0, 2]);
    let (mut worst_group, mut worst_random) = (1.0f64, 1.0f64);
    for i in 0..=100 {
        let t = 5.0 * i as f64 / 100.0;
        let exact = exact_unitary(&h, t).map_err(err)?;
        for (p, worst) in [(&grouped, &mut worst_group), (&random, &mut worst_random)] {
            let c = assemble(p, &h, t, 1, Architecture::StarAncilla).map_err(err)?;
            let f = process_fidelity(&exact, &circuit_unitary(&c).map_err(err)?).map_err(err)?;
            *worst = worst.min(f);
        }
    }
    let elapsed = start.elapsed();
    check(
        worst_group >= 1.0 - 1e-9 && worst_random < 0.99 && elapsed < Duration::from_secs(10),
        format!("grouped min F = {worst_group:.12}, random min F = {worst_random:.4}, {elapsed:.2?}"),
        format!("grouped min {worst_group}, random min {worst_random}, {elapsed:.2?}"),
    )
}

// 3
fn paper_counts() -> Outcome {
    let start = Instant::now();
    let mut got = Vec::new();
    for name in ["hpqrs8.ham", "annotated9.ham"] {
        let h = load_hamiltonian(fixture(name)).map_err(err)?;
        let s = strings(&h);
        let raw = assemble(&order_lexicographic(&h), &h, 1.0, 1, Architecture::StarAncilla).map_err(err)?;
        let lex = cnot_count(&cancel_gates(&raw));
        let sol = solve_path_exact(&build_distance_matrix(&s).map_err(err)?).map_err(err)?;
        let best = assemble(&fixed(sol.order.clone()), &h, 1.0, 1, Architecture::StarAncilla).map_err(err)?;
        let tsp = cnot_count(&cancel_gates(&best));
        // Counts from the circuits and from the cost model must agree.
        if lex as u32 != path_total_cnots(&order_lexicographic(&h).term_order, &s).map_err(err)?
            || tsp as u32 != sol.total_cnots
        {
            return Err(format!("{name}: circuit and cost model disagree"));
        }
        got.push((cnot_count(&raw), lex, tsp));
    }
    let elapsed = start.elapsed();
    check(
        got == [(64, 40, 36), (180, 112, 62)] && elapsed < Duration::from_secs(5),
        format!("{:?} / {:?} in {elapsed:.2?}", got[0], got[1]),
        format!("{got:?} in {elapsed:.2?}"),
    )
}

struct Case {
    h: Hamiltonian,
    order: Vec<usize>,
}

fn random_cases() -> Vec<Case> {
    let mut r = rng(4);
    (0..200)
        .map(|_| {
            let n = r.random_range(1..=4);
            let k = r.random_range(1..=8);
            let h = random_hamiltonian(&mut r, n, k);
            let order = shuffled(&mut r, h.len());
            Case { h, order }
        })
        .collect()
}

// 4
fn cost_model_oracle(cases: &[Case]) -> Outcome {
    let mut bad = 0;
    for c in cases {
        let circ = assemble(&fixed(c.order.clone()), &c.h, 0.7, 1, Architecture::StarAncilla).map_err(err)?;
        let counted = cnot_count(&cancel_gates(&circ)) as u32;
        if counted != path_total_cnots(&c.order, &strings(&c.h)).map_err(err)? {
            bad += 1;
        }
    }
    check(
        bad == 0,
        format!("{} cases, post-cancellation count == path_total_cnots", cases.len()),
        format!("{bad} of {} cases disagree", cases.len()),
    )
}

// 5
fn cancellation_soundness(cases: &[Case]) -> Outcome {
    let mut worst = 0.0f64;
    for c in cases {
        let circ = assemble(&fixed(c.order.clone()), &c.h, 0.7, 1, Architecture::StarAncilla).map_err(err)?;
        let before = circuit_full_unitary(&circ).map_err(err)?;
        let after = circuit_full_unitary(&cancel_gates(&circ)).map_err(err)?;
        worst = worst.max(before.max_abs_diff_up_to_phase(&after));
    }
    check(
        worst <= 1e-10,
        format!("{} cases, max deviation {worst:.2e}", cases.len()),
        format!("max deviation {worst:.2e}"),
    )
}

// 6
fn metric_axioms() -> Outcome {
    let mut r = rng(6);
    let mut violations = 0;
    for _ in 0..10_000 {
        let n = r.random_range(1..=8);
        let (a, b, c) = (any_string(&mut r, n), any_string(&mut r, n), any_string(&mut r, n));
        let d = |x: &PauliString, y: &PauliString| cnot_distance(x, y).unwrap();
        if d(&a, &b) != d(&b, &a) {
            violations += 1;
        }
        if (d(&a, &b) == 0) != (a == b) || d(&a, &a) != 0 {
            violations += 1;
        }
        if d(&a, &c) > d(&a, &b) + d(&b, &c) {
            violations += 1;
        }
    }
    check(
        violations == 0,
        "10000 triples, zero violations".into(),
        format!("{violations} violations"),
    )
}

// 7
fn trotter_convergence() -> Outcome {
    let mut r = rng(7);
    let mut ratios = Vec::new();
    for _ in 0..20 {
        let k = r.random_range(3..=6);
        let h = noncommuting_hamiltonian(&mut r, 3, k);
        let exact = exact_unitary(&h, 1.0).map_err(err)?;
        let order = fixed((0..h.len()).collect());
        let e = |steps: usize| -> Result<f64, String> {
            let c = assemble(&order, &h, 1.0, steps, Architecture::Ladder).map_err(err)?;
            Ok(circuit_unitary(&c).map_err(err)?.operator_norm_diff(&exact))
        };
        let errs = [e(8)?, e(16)?, e(32)?, e(64)?];
        let mean = (errs[0] / errs[1] + errs[1] / errs[2] + errs[2] / errs[3]) / 3.0;
        ratios.push(mean);
    }
    let (lo, hi) = ratios
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(l, h), &x| (l.min(x), h.max(x)));
    check(
        lo >= 1.6 && hi <= 2.4,
        format!("20 Hamiltonians, mean err(r)/err(2r) in [{lo:.3}, {hi:.3}]"),
        format!("ratios {ratios:?}"),
    )
}

// 8
fn appendix_identities() -> Outcome {
    let mut r = rng(8);
    let mut worst_exp = 0.0f64;
    for _ in 0..100 {
        let n = r.random_range(1..=3);
        let clique = random_clique(&mut r, n, 4);
        let mut a = nalgebra::DMatrix::zeros(1 << n, 1 << n);
        let mut b = a.clone();
        for t in clique.terms() {
            let p = dqs::sim::pauli_matrix(&t.string);
            a += &p * num_complex::Complex64::new(r.random_range(-1.0..1.0), 0.0);
            b += &p * num_complex::Complex64::new(r.random_range(-1.0..1.0), 0.0);
        }
        let sum = expm_hermitian(&(&a + &b), 1.0);
        let prod = DenseUnitary::from_matrix(expm_hermitian(&a, 1.0).matrix() * expm_hermitian(&b, 1.0).matrix());
        worst_exp = worst_exp.max(sum.max_abs_diff(&prod));
    }
    let mut worst_reorder = 0.0f64;
    for _ in 0..100 {
        let n = r.random_range(1..=4);
        let k = r.random_range(2..=6);
        let h = random_clique(&mut r, n, k);
        let t = r.random_range(0.1..3.0);
        let u1 = circuit_unitary(&assemble(&fixed(shuffled(&mut r, h.len())), &h, t, 1, Architecture::StarAncilla).map_err(err)?)
            .map_err(err)?;
        let u2 = circuit_unitary(&assemble(&fixed(shuffled(&mut r, h.len())), &h, t, 1, Architecture::Ladder).map_err(err)?)
            .map_err(err)?;
        worst_reorder = worst_reorder.max(u1.max_abs_diff(&u2));
        // A single clique is integrated exactly.
        let exact = exact_unitary(&h, t).map_err(err)?;
        worst_reorder = worst_reorder.max(u1.max_abs_diff(&exact));
    }
    check(
        worst_exp <= 1e-9 && worst_reorder <= 1e-10,
        format!("commuting exp max dev {worst_exp:.2e}; intra-clique reorder max dev {worst_reorder:.2e}"),
        format!("exp {worst_exp:.2e}, reorder {worst_reorder:.2e}"),
    )
}

// 9
fn noisy_limits() -> Outcome {
    let shots = 10_000;
    let mut detail = Vec::new();
    for name in ["h2.ham", "deuteron.ham", "hc.ham", "lih_synthetic.ham"] {
        let h = load_hamiltonian(fixture(name)).map_err(err)?;
        let ctx = OrderingContext::new(&h, CoverMode::Exact).map_err(err)?;
        let p = plan(&h, Strategy::MaxCommuteTsp(TspMode::Exact), &ctx);
        let circ = cancel_gates(&assemble(&p, &h, 1.0, 4, Architecture::StarAncilla).map_err(err)?);
        let init = InitialState::EntangledPair.state(h.width()).map_err(err)?;
        let born = born_distribution(&circ, &init).map_err(err)?;
        let dist = run_noisy(&circ, &init, &NoiseConfig::new(0.0, shots, 9).map_err(err)?).map_err(err)?;
        let tv = total_variation(&born, &dist.probabilities()).map_err(err)?;
        let bound = 5.0 * ((1u64 << h.width()) as f64 / shots as f64).sqrt();
        if tv >= bound {
            return Err(format!("{name}: TV {tv:.4} >= {bound:.4}"));
        }
        detail.push(format!("{name} TV {tv:.4}<{bound:.3}"));
    }

    let mut cfg = BenchConfig::default();
    cfg.hamiltonians = vec![fixture("h2.ham")];
    cfg.set("strategies", "max_commute_tsp").map_err(err)?;
    cfg.set("p", "0.001, 0.005, 0.01, 0.02").map_err(err)?;
    cfg.set("seeds", "0, 1, 2, 3").map_err(err)?;
    cfg.initial_state = InitialState::EntangledPair;
    let rep = cmd_noisy(&cfg).map_err(err)?;
    let strategy = Strategy::MaxCommuteTsp(TspMode::Exact).to_string();
    let means: Vec<f64> = cfg
        .noise_p
        .iter()
        .map(|&p| rep.mean_infidelity("h2", &strategy, p).unwrap_or(f64::NAN))
        .collect();
    let monotone = means.windows(2).all(|w| w[1] >= w[0]);
    let shown: Vec<String> = means.iter().map(|m| format!("{m:.4}")).collect();
    check(
        monotone,
        format!("{}; infidelity over p sweep {}", detail.join(", "), shown.join(" <= ")),
        format!("infidelity not monotone: {}", shown.join(", ")),
    )
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

// 10
fn heuristic_quality() -> Outcome {
    let h = load_hamiltonian(fixture("lih_synthetic.ham")).map_err(err)?;
    let cover = min_clique_cover(&build_graph(&h), CoverMode::Exact).map_err(err)?;
    if cover.len() != 4 {
        return Err(format!("expected 4 cliques, got {}", cover.len()));
    }
    let chosen = permutation_heuristic(&h, &cover);
    let all = permutations(&[0, 1, 2, 3]);
    let mean = all.iter().map(|o| permutation_score(&h, &cover, o)).sum::<f64>() / all.len() as f64;
    if chosen.score > mean {
        return Err(format!("heuristic score {} > mean {mean}", chosen.score));
    }

    let s = strings(&h);
    let mut checked = 0usize;
    for members in cover.cliques().iter().filter(|c| c.len() <= 8) {
        // The solver's objective: Σ d over consecutive terms.
        let transition = |o: &[usize]| -> u32 {
            o.windows(2).map(|w| cnot_distance(&s[w[0]], &s[w[1]]).unwrap()).sum()
        };
        let best = order_within_clique(&h, members, IntraOrder::TspExact);
        let best_cost = transition(&best);
        for o in permutations(members) {
            checked += 1;
            if transition(&o) < best_cost {
                return Err(format!("order {o:?} beats exact solver"));
            }
        }
    }
    Ok(format!(
        "heuristic score {:.5} <= mean {mean:.5}; exact path optimal over {checked} intra-clique orders",
        chosen.score
    ))
}

fn main() -> ExitCode {
    let cases = random_cases();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("H2 clique cover", Box::new(h2_two_cliques)),
        ("perfect group fidelity", Box::new(perfect_group_fidelity)),
        ("CNOT counts 64/40/36 and 180/112/62", Box::new(paper_counts)),
        ("cost model equals circuit count", Box::new(|| cost_model_oracle(&cases))),
        ("cancellation soundness", Box::new(|| cancellation_soundness(&cases))),
        ("distance metric axioms", Box::new(metric_axioms)),
        ("first-order Trotter convergence", Box::new(trotter_convergence)),
        ("commuting exponentials and reorder invariance", Box::new(appendix_identities)),
        ("noisy limits", Box::new(noisy_limits)),
        ("permutation heuristic and exact path quality", Box::new(heuristic_quality)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("criterion {:2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
