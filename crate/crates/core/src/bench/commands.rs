use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::config::BenchConfig;
use crate::circuit::{assemble, cancel_gates, cnot_count, Circuit};
use crate::clique::{permutation_score, CliquePermutation};
use crate::error::{Error, Result};
use crate::ordering::{order_max_commute, plan, IntraOrder, OrderingContext, OrderingPlan, RNG_NAME};
use crate::pauli::{load_hamiltonian, Hamiltonian, PauliString};
use crate::sim::{
    circuit_unitary, exact_unitary, hellinger, normalized_fidelity, process_fidelity, run_noisy,
    DenseUnitary, NoiseConfig, SimReport,
};
use crate::tsp::{build_distance_matrix, path_total_cnots};

/// Clique permutations are enumerated only up to this many.
const MAX_ENUMERATED: usize = 720;

struct Loaded {
    name: String,
    h: Hamiltonian,
    ctx: OrderingContext,
}

fn load_all(cfg: &BenchConfig) -> Result<Vec<Loaded>> {
    cfg.validate()?;
    cfg.hamiltonian_files()?
        .into_iter()
        .map(|path| {
            let h = load_hamiltonian(&path)?;
            let ctx = OrderingContext::new(&h, cfg.cover)?;
            Ok(Loaded {
                name: stem(&path),
                h,
                ctx,
            })
        })
        .collect()
}

fn stem(p: &Path) -> String {
    p.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| p.display().to_string())
}

fn join(v: &[usize]) -> String {
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

/// Filesystem-safe strategy label.
fn file_label(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
        .collect::<String>()
        .trim_end_matches('_')
        .to_string()
}

fn write_file(dir: &Path, name: &str, body: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let path = dir.join(name);
    std::fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

// ---- order -------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct OrderRow {
    pub hamiltonian: String,
    pub strategy: String,
    pub terms: usize,
    pub cliques: usize,
    pub clique_order: Vec<usize>,
    pub permutation: Vec<usize>,
    /// `2 · Σ weights · r`, the count with no cancellation at all.
    pub bound_cnots: u64,
    /// Star+ancilla count after cancellation for the whole `r`-step circuit.
    pub predicted_cnots: u64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct OrderReport {
    pub rows: Vec<OrderRow>,
    /// Distance-matrix dumps keyed by Hamiltonian name, if requested.
    pub distance_dumps: Vec<(String, String)>,
}

impl OrderReport {
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("hamiltonian,strategy,terms,cliques,clique_order,permutation,bound_cnots,predicted_cnots\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.hamiltonian,
                r.strategy,
                r.terms,
                r.cliques,
                join(&r.clique_order),
                join(&r.permutation),
                r.bound_cnots,
                r.predicted_cnots
            );
        }
        out
    }
}

fn predicted(order: &[usize], strings: &[PauliString], r: usize) -> Result<u64> {
    let repeated: Vec<usize> = order.iter().copied().cycle().take(order.len() * r).collect();
    Ok(path_total_cnots(&repeated, strings)? as u64)
}

/// Orderings, clique statistics and predicted CNOT counts.
pub fn cmd_order(cfg: &BenchConfig) -> Result<OrderReport> {
    let mut report = OrderReport::default();
    for l in load_all(cfg)? {
        let strings: Vec<PauliString> = l.h.strings().cloned().collect();
        let bound = 2 * strings.iter().map(|s| s.hamming_weight() as u64).sum::<u64>() * cfg.trotter as u64;
        for &s in &cfg.strategies {
            let p = plan(&l.h, s, &l.ctx);
            let clique_order = if s.is_max_commute() {
                l.ctx.permutation.order.clone()
            } else {
                Vec::new()
            };
            report.rows.push(OrderRow {
                hamiltonian: l.name.clone(),
                strategy: s.to_string(),
                terms: l.h.len(),
                cliques: l.ctx.cover.len(),
                clique_order,
                bound_cnots: bound,
                predicted_cnots: predicted(&p.term_order, &strings, cfg.trotter)?,
                permutation: p.term_order,
            });
        }
        if cfg.dump_tsp {
            let m = build_distance_matrix(&strings)?;
            report.distance_dumps.push((l.name.clone(), m.to_string()));
        }
    }
    if let Some(dir) = &cfg.out_dir {
        write_file(dir, "order.csv", &report.to_csv())?;
        for (name, dump) in &report.distance_dumps {
            write_file(dir, &format!("{name}.dist"), dump)?;
        }
    }
    Ok(report)
}

// ---- compile -----------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct CompileRow {
    pub hamiltonian: String,
    pub strategy: String,
    pub arch: String,
    pub r: usize,
    pub cnots_pre: usize,
    pub cnots_post: usize,
}

impl CompileRow {
    pub fn reduction_pct(&self) -> f64 {
        if self.cnots_pre == 0 {
            0.0
        } else {
            100.0 * (self.cnots_pre - self.cnots_post) as f64 / self.cnots_pre as f64
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CompileReport {
    pub rows: Vec<CompileRow>,
    /// Cancelled circuits in the same order as `rows`.
    pub circuits: Vec<Circuit>,
}

impl CompileReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("hamiltonian,strategy,arch,r,cnots_pre,cnots_post,reduction_pct\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{:.2}",
                r.hamiltonian,
                r.strategy,
                r.arch,
                r.r,
                r.cnots_pre,
                r.cnots_post,
                r.reduction_pct()
            );
        }
        out
    }
}

/// Assembles and cancels every (Hamiltonian, strategy) pair at
/// `cfg.time` with `cfg.trotter` steps.
pub fn cmd_compile(cfg: &BenchConfig) -> Result<CompileReport> {
    let mut report = CompileReport::default();
    for l in load_all(cfg)? {
        for &s in &cfg.strategies {
            let p = plan(&l.h, s, &l.ctx);
            let raw = assemble(&p, &l.h, cfg.time, cfg.trotter, cfg.arch)?;
            let opt = cancel_gates(&raw);
            report.rows.push(CompileRow {
                hamiltonian: l.name.clone(),
                strategy: s.to_string(),
                arch: cfg.arch.to_string(),
                r: cfg.trotter,
                cnots_pre: cnot_count(&raw),
                cnots_post: cnot_count(&opt),
            });
            report.circuits.push(opt);
        }
    }
    if let Some(dir) = &cfg.out_dir {
        write_file(dir, "compile.csv", &report.to_csv())?;
        for (row, c) in report.rows.iter().zip(&report.circuits) {
            let name = format!("{}.{}.circ", row.hamiltonian, file_label(&row.strategy));
            write_file(dir, &name, &c.to_string())?;
        }
    }
    Ok(report)
}

// ---- fidelity ----------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct FidelityRow {
    pub hamiltonian: String,
    pub strategy: String,
    pub t: f64,
    pub fidelity: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub hamiltonian: String,
    pub strategy: String,
    pub t_prime: f64,
    pub normalized_fidelity: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FidelityReport {
    pub series: Vec<FidelityRow>,
    pub summary: Vec<SummaryRow>,
}

impl FidelityReport {
    pub fn series_csv(&self) -> String {
        let mut out = String::from("hamiltonian,strategy,t,fidelity\n");
        for r in &self.series {
            let _ = writeln!(out, "{},{},{},{:.12}", r.hamiltonian, r.strategy, r.t, r.fidelity);
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from("hamiltonian,strategy,t_prime,normalized_fidelity\n");
        for r in &self.summary {
            let _ = writeln!(
                out,
                "{},{},{},{:.12}",
                r.hamiltonian, r.strategy, r.t_prime, r.normalized_fidelity
            );
        }
        out
    }

    /// Summary rows for one Hamiltonian.
    pub fn summary_for<'a>(&'a self, hamiltonian: &'a str) -> impl Iterator<Item = &'a SummaryRow> {
        self.summary.iter().filter(move |r| r.hamiltonian == hamiltonian)
    }
}

/// `U^r` for the circuit of one Trotter step.
fn trotter_unitary(p: &OrderingPlan, h: &Hamiltonian, t: f64, cfg: &BenchConfig) -> Result<DenseUnitary> {
    let r = cfg.trotter;
    let step = circuit_unitary(&assemble(p, h, t / r as f64, 1, cfg.arch)?)?;
    let mut u = step.matrix().clone();
    for _ in 1..r {
        u = step.matrix() * u;
    }
    Ok(DenseUnitary::from_matrix(u))
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(m), &mut vec![false; m], &mut out);
    out
}

fn factorial_at_most(m: usize, limit: usize) -> bool {
    let mut f = 1usize;
    for i in 2..=m {
        f = f.saturating_mul(i);
        if f > limit {
            return false;
        }
    }
    true
}

/// Process fidelity against exact evolution over the time grid, plus the
/// normalized fidelity per strategy. With `enumerate_permutations`, every
/// clique ordering (intra-clique TSP) is added as `perm(…)`.
pub fn cmd_fidelity(cfg: &BenchConfig) -> Result<FidelityReport> {
    let grid = cfg.t_grid();
    let t_prime = cfg.t_prime.unwrap_or(*grid.last().expect("non-empty grid"));
    let mut report = FidelityReport::default();
    for l in load_all(cfg)? {
        let exact: Vec<DenseUnitary> = grid
            .iter()
            .map(|&t| exact_unitary(&l.h, t))
            .collect::<Result<_>>()?;
        let mut plans: Vec<(String, OrderingPlan)> = cfg
            .strategies
            .iter()
            .map(|&s| (s.to_string(), plan(&l.h, s, &l.ctx)))
            .collect();
        let m = l.ctx.cover.len();
        if cfg.enumerate_permutations && factorial_at_most(m, MAX_ENUMERATED) {
            for order in permutations(m) {
                let perm = CliquePermutation {
                    score: permutation_score(&l.h, &l.ctx.cover, &order),
                    order,
                    candidates: 1,
                };
                let p = order_max_commute(&l.h, &l.ctx.cover, &perm, IntraOrder::TspExact);
                plans.push((format!("perm({})", join(&perm.order)), p));
            }
        }
        for (label, p) in &plans {
            let mut samples = Vec::with_capacity(grid.len());
            for (&t, ue) in grid.iter().zip(&exact) {
                let f = process_fidelity(ue, &trotter_unitary(p, &l.h, t, cfg)?)?;
                samples.push((t, f));
                report.series.push(FidelityRow {
                    hamiltonian: l.name.clone(),
                    strategy: label.clone(),
                    t,
                    fidelity: f,
                });
            }
            report.summary.push(SummaryRow {
                hamiltonian: l.name.clone(),
                strategy: label.clone(),
                t_prime,
                normalized_fidelity: normalized_fidelity(&samples, t_prime)?,
            });
        }
    }
    if let Some(dir) = &cfg.out_dir {
        write_file(dir, "fidelity.csv", &report.series_csv())?;
        write_file(dir, "fidelity_summary.csv", &report.summary_csv())?;
    }
    Ok(report)
}

// ---- noisy -------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct NoisyRow {
    pub hamiltonian: String,
    pub initial_state: String,
    pub p: f64,
    pub shots: usize,
    pub report: SimReport,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct NoisyReport {
    pub rows: Vec<NoisyRow>,
}

impl NoisyReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "hamiltonian,strategy,initial_state,p,shots,seed,rng,cnots_pre,cnots_post,process_fidelity,hellinger_distance,hellinger_infidelity\n",
        );
        for r in &self.rows {
            let s = &r.report;
            let h = s.hellinger.expect("noisy rows carry Hellinger metrics");
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{:.12},{:.12},{:.12}",
                r.hamiltonian,
                s.strategy,
                r.initial_state,
                r.p,
                r.shots,
                s.seed.unwrap_or(0),
                s.rng,
                s.cnots_pre,
                s.cnots_post,
                s.process_fidelity.unwrap_or(f64::NAN),
                h.distance,
                h.infidelity
            );
        }
        out
    }

    /// Mean Hellinger infidelity over seeds for one cell.
    pub fn mean_infidelity(&self, hamiltonian: &str, strategy: &str, p: f64) -> Option<f64> {
        let vals: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| r.hamiltonian == hamiltonian && r.report.strategy == strategy && r.p == p)
            .filter_map(|r| r.report.hellinger.map(|h| h.infidelity))
            .collect();
        (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
    }
}

/// Shot-sampled cancelled circuits under depolarizing noise, compared with
/// exact evolution of the initial state at `cfg.time`.
pub fn cmd_noisy(cfg: &BenchConfig) -> Result<NoisyReport> {
    let mut report = NoisyReport::default();
    for l in load_all(cfg)? {
        let n = l.h.width();
        let init = cfg.initial_state.state(n)?;
        let ideal = exact_unitary(&l.h, cfg.time)?.apply(&init)?.probabilities();
        let exact = exact_unitary(&l.h, cfg.time)?;
        for &s in &cfg.strategies {
            let p = plan(&l.h, s, &l.ctx);
            let raw = assemble(&p, &l.h, cfg.time, cfg.trotter, cfg.arch)?;
            let circ = cancel_gates(&raw);
            let fid = process_fidelity(&exact, &circuit_unitary(&circ)?)?;
            for &noise_p in &cfg.noise_p {
                for &seed in &cfg.seeds {
                    let noise = NoiseConfig::new(noise_p, cfg.shots, seed)?;
                    let dist = run_noisy(&circ, &init, &noise)?;
                    report.rows.push(NoisyRow {
                        hamiltonian: l.name.clone(),
                        initial_state: cfg.initial_state.to_string(),
                        p: noise_p,
                        shots: cfg.shots,
                        report: SimReport {
                            strategy: s.to_string(),
                            process_fidelity: Some(fid),
                            normalized_fidelity: None,
                            cnots_pre: cnot_count(&raw),
                            cnots_post: cnot_count(&circ),
                            hellinger: Some(hellinger(&ideal, &dist.probabilities())?),
                            seed: Some(seed),
                            rng: RNG_NAME,
                        },
                    });
                }
            }
        }
    }
    if let Some(dir) = &cfg.out_dir {
        write_file(dir, "noisy.csv", &report.to_csv())?;
    }
    Ok(report)
}
