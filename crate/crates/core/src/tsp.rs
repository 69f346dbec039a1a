//! CNOT-distance metric and shortest Hamiltonian path solvers.
//!
//! Under the star+ancilla architecture every non-identity character of a
//! term controls one CNOT onto the shared ancilla on each side of the
//! central rotation. Between two consecutive terms a CNOT pair cancels on
//! qubit `i` exactly when both terms carry the same non-identity character
//! there, so the surviving CNOTs in that transition are
//!
//! ```text
//! Σ_i [a_i ≠ b_i] · (1 + [a_i ≠ I and b_i ≠ I])
//! ```
//!
//! which is a metric. The full post-cancellation count of an ordering adds
//! the Hamming weights of the first and last term.

use std::fmt;

use log::info;

use crate::error::{Error, Result};
use crate::pauli::{check_width, PauliString};

/// Default largest instance handed to Held-Karp.
pub const EXACT_CEILING: usize = 16;

/// Post-cancellation CNOTs in the transition from `a` to `b`.
pub fn cnot_distance(a: &PauliString, b: &PauliString) -> Result<u32> {
    check_width(a, b)?;
    Ok(cnot_distance_unchecked(a, b))
}

pub(crate) fn cnot_distance_unchecked(a: &PauliString, b: &PauliString) -> u32 {
    a.chars()
        .iter()
        .zip(b.chars())
        .map(|(x, y)| match (x == y, x.is_identity() || y.is_identity()) {
            (true, _) => 0,
            (false, true) => 1,
            (false, false) => 2,
        })
        .sum()
}

/// CNOT count of the star+ancilla circuit for `order` after cancellation.
pub fn path_total_cnots(order: &[usize], strings: &[PauliString]) -> Result<u32> {
    let (Some(&first), Some(&last)) = (order.first(), order.last()) else {
        return Ok(0);
    };
    let mut total = (strings[first].hamming_weight() + strings[last].hamming_weight()) as u32;
    for w in order.windows(2) {
        total += cnot_distance(&strings[w[0]], &strings[w[1]])?;
    }
    Ok(total)
}

/// Symmetric matrix of pairwise CNOT distances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    size: usize,
    entries: Vec<u32>,
    /// Hamming weight of each string; zero for matrices built from raw data.
    weights: Vec<u32>,
}

/// Triples checked exhaustively up to this size; sampled beyond.
const TRIANGLE_EXHAUSTIVE: usize = 64;

impl DistanceMatrix {
    pub fn from_strings(strings: &[PauliString]) -> Result<Self> {
        let Some(first) = strings.first() else {
            return Err(Error::InvalidArgument("distance matrix needs at least one string".into()));
        };
        for s in strings {
            check_width(first, s)?;
        }
        let k = strings.len();
        let mut entries = vec![0u32; k * k];
        for i in 0..k {
            for j in (i + 1)..k {
                let d = cnot_distance_unchecked(&strings[i], &strings[j]);
                entries[i * k + j] = d;
                entries[j * k + i] = d;
            }
        }
        let m = DistanceMatrix {
            size: k,
            entries,
            weights: strings.iter().map(|s| s.hamming_weight() as u32).collect(),
        };
        debug_assert!(m.check_metric().is_ok());
        if k <= TRIANGLE_EXHAUSTIVE {
            m.check_metric()?;
        }
        Ok(m)
    }

    /// Builds a matrix from raw rows; rows must be square, symmetric and
    /// zero on the diagonal.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::InvalidArgument("distance matrix needs at least one row".into()));
        }
        let mut entries = Vec::with_capacity(k * k);
        for row in &rows {
            if row.len() != k {
                return Err(Error::InvalidArgument("distance matrix must be square".into()));
            }
            entries.extend_from_slice(row);
        }
        let m = DistanceMatrix {
            size: k,
            entries,
            weights: vec![0; k],
        };
        for i in 0..k {
            if m.get(i, i) != 0 {
                return Err(Error::InvalidArgument(format!("d[{i}][{i}] must be zero")));
            }
            for j in 0..k {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::InvalidArgument(format!("d[{i}][{j}] != d[{j}][{i}]")));
                }
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.size + j]
    }

    pub fn max_entry(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    /// Checks symmetry, zero diagonal and the triangle inequality (all
    /// triples up to 64 rows, a deterministic sample beyond).
    pub fn check_metric(&self) -> Result<()> {
        let k = self.size;
        let violation = |i: usize, j: usize, l: usize| {
            Err(Error::InvalidArgument(format!(
                "triangle inequality violated at ({i}, {j}, {l})"
            )))
        };
        for i in 0..k {
            if self.get(i, i) != 0 {
                return Err(Error::InvalidArgument(format!("d[{i}][{i}] != 0")));
            }
            for j in 0..k {
                if self.get(i, j) != self.get(j, i) {
                    return Err(Error::InvalidArgument(format!("asymmetric at ({i}, {j})")));
                }
            }
        }
        if k <= TRIANGLE_EXHAUSTIVE {
            for i in 0..k {
                for j in 0..k {
                    for l in 0..k {
                        if self.get(i, j) + self.get(j, l) < self.get(i, l) {
                            return violation(i, j, l);
                        }
                    }
                }
            }
        } else {
            // Multiplicative-congruential walk over triples.
            let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
            for _ in 0..(TRIANGLE_EXHAUSTIVE.pow(3)) {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let i = (state >> 33) as usize % k;
                let j = (state >> 17) as usize % k;
                let l = (state >> 5) as usize % k;
                if self.get(i, j) + self.get(j, l) < self.get(i, l) {
                    return violation(i, j, l);
                }
            }
        }
        Ok(())
    }

    pub fn path_cost(&self, order: &[usize]) -> u32 {
        order.windows(2).map(|w| self.get(w[0], w[1])).sum()
    }

    fn solution(&self, order: Vec<usize>) -> PathSolution {
        let transition_cost = self.path_cost(&order);
        let ends = match (order.first(), order.last()) {
            (Some(&a), Some(&b)) => self.weights[a] + self.weights[b],
            _ => 0,
        };
        PathSolution {
            transition_cost,
            total_cnots: transition_cost + ends,
            order,
        }
    }
}

impl fmt::Display for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# distance matrix {0}x{0}", self.size)?;
        for i in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

pub fn build_distance_matrix(strings: &[PauliString]) -> Result<DistanceMatrix> {
    DistanceMatrix::from_strings(strings)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSolution {
    pub order: Vec<usize>,
    pub transition_cost: u32,
    /// `transition_cost` plus the Hamming weights of the end terms.
    pub total_cnots: u32,
}

impl fmt::Display for PathSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<String> = self.order.iter().map(|i| i.to_string()).collect();
        writeln!(f, "order {}", order.join(" "))?;
        writeln!(f, "transition_cost {}", self.transition_cost)?;
        writeln!(f, "total_cnots {}", self.total_cnots)
    }
}

/// Held-Karp shortest Hamiltonian path. Equivalent to an exact tour over
/// the matrix augmented with a virtual node joined to every vertex at cost
/// zero, cut at the virtual node.
pub fn solve_path_exact(m: &DistanceMatrix) -> Result<PathSolution> {
    solve_path_exact_with_ceiling(m, EXACT_CEILING)
}

pub fn solve_path_exact_with_ceiling(m: &DistanceMatrix, ceiling: usize) -> Result<PathSolution> {
    let k = m.size();
    if k > ceiling || k >= usize::BITS as usize {
        return Err(Error::CeilingExceeded {
            what: "exact path solver",
            got: k,
            limit: ceiling,
        });
    }
    if k == 1 {
        return Ok(m.solution(vec![0]));
    }
    const INF: u32 = u32::MAX;
    let full = (1usize << k) - 1;
    // cost[mask * k + j]: cheapest path covering `mask` and ending at `j`.
    let mut cost = vec![INF; (full + 1) * k];
    let mut parent = vec![u8::MAX; (full + 1) * k];
    for j in 0..k {
        cost[(1 << j) * k + j] = 0;
    }
    for mask in 1..=full {
        for j in 0..k {
            let here = cost[mask * k + j];
            if here == INF || mask & (1 << j) == 0 {
                continue;
            }
            for next in 0..k {
                if mask & (1 << next) != 0 {
                    continue;
                }
                let nmask = mask | (1 << next);
                let cand = here + m.get(j, next);
                let slot = nmask * k + next;
                // Strict improvement keeps the lowest predecessor on ties.
                if cand < cost[slot] {
                    cost[slot] = cand;
                    parent[slot] = j as u8;
                }
            }
        }
    }
    let mut best_end = 0;
    for j in 1..k {
        if cost[full * k + j] < cost[full * k + best_end] {
            best_end = j;
        }
    }
    let mut order = Vec::with_capacity(k);
    let mut mask = full;
    let mut cur = best_end;
    loop {
        order.push(cur);
        let p = parent[mask * k + cur];
        mask &= !(1 << cur);
        if p == u8::MAX {
            break;
        }
        cur = p as usize;
    }
    order.reverse();
    // A path and its reverse cost the same; report the one starting lower.
    if order.last() < order.first() {
        order.reverse();
    }
    Ok(m.solution(order))
}

/// Cycle heuristic used by [`solve_path_approx`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ApproxMethod {
    /// Nearest-neighbour tour from every start, each improved by 2-opt.
    #[default]
    NearestNeighbor2Opt,
    /// Christofides: MST plus a minimum-weight perfect matching on the odd
    /// vertices, Eulerian tour, shortcutting.
    Christofides,
}

pub fn solve_path_approx(m: &DistanceMatrix) -> PathSolution {
    solve_path_approx_with(m, ApproxMethod::default())
}

/// Approximates a tour, then deletes its most expensive edge.
pub fn solve_path_approx_with(m: &DistanceMatrix, method: ApproxMethod) -> PathSolution {
    let k = m.size();
    if k <= 3 {
        return solve_path_exact(m).expect("k <= 3 is below every ceiling");
    }
    let tour = match method {
        ApproxMethod::NearestNeighbor2Opt => (0..k)
            .map(|start| {
                let mut t = nearest_neighbor_tour(m, start);
                two_opt(m, &mut t);
                t
            })
            .min_by_key(|t| (tour_cost(m, t), t.clone()))
            .expect("k > 0"),
        ApproxMethod::Christofides => christofides_tour(m),
    };
    m.solution(cut_most_expensive_edge(m, &tour))
}

/// Exact below the ceiling, approximate (with a logged notice) above it.
pub fn solve_path(m: &DistanceMatrix, ceiling: usize) -> PathSolution {
    match solve_path_exact_with_ceiling(m, ceiling) {
        Ok(s) => s,
        Err(_) => {
            info!(
                "{} strings exceed the exact ceiling of {ceiling}; using the approximate solver",
                m.size()
            );
            solve_path_approx(m)
        }
    }
}

pub fn tour_cost(m: &DistanceMatrix, tour: &[usize]) -> u32 {
    let n = tour.len();
    (0..n).map(|i| m.get(tour[i], tour[(i + 1) % n])).sum()
}

fn nearest_neighbor_tour(m: &DistanceMatrix, start: usize) -> Vec<usize> {
    let k = m.size();
    let mut visited = vec![false; k];
    let mut tour = Vec::with_capacity(k);
    let mut cur = start;
    visited[cur] = true;
    tour.push(cur);
    for _ in 1..k {
        let next = (0..k)
            .filter(|&j| !visited[j])
            .min_by_key(|&j| (m.get(cur, j), j))
            .expect("unvisited vertex remains");
        visited[next] = true;
        tour.push(next);
        cur = next;
    }
    tour
}

/// First-improvement 2-opt until no reversal shortens the tour.
fn two_opt(m: &DistanceMatrix, tour: &mut [usize]) {
    let n = tour.len();
    if n < 4 {
        return;
    }
    let mut improved = true;
    while improved {
        improved = false;
        for i in 0..n - 1 {
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (tour[i], tour[i + 1]);
                let (c, d) = (tour[j], tour[(j + 1) % n]);
                let before = m.get(a, b) + m.get(c, d);
                let after = m.get(a, c) + m.get(b, d);
                if after < before {
                    tour[i + 1..=j].reverse();
                    improved = true;
                }
            }
        }
    }
}

fn cut_most_expensive_edge(m: &DistanceMatrix, tour: &[usize]) -> Vec<usize> {
    let n = tour.len();
    // Edge i joins tour[i] and tour[i + 1]; first maximum wins.
    let mut cut = 0;
    for i in 1..n {
        if m.get(tour[i], tour[(i + 1) % n]) > m.get(tour[cut], tour[(cut + 1) % n]) {
            cut = i;
        }
    }
    let mut path: Vec<usize> = (0..n).map(|s| tour[(cut + 1 + s) % n]).collect();
    if path.last() < path.first() {
        path.reverse();
    }
    path
}

/// Odd-vertex sets up to this size get an exact matching.
const EXACT_MATCHING_LIMIT: usize = 20;

fn christofides_tour(m: &DistanceMatrix) -> Vec<usize> {
    let k = m.size();
    let mst = prim_mst(m);
    let mut degree = vec![0usize; k];
    let mut edges = mst.clone();
    for &(a, b) in &mst {
        degree[a] += 1;
        degree[b] += 1;
    }
    let odd: Vec<usize> = (0..k).filter(|&v| degree[v] % 2 == 1).collect();
    edges.extend(min_weight_matching(m, &odd));
    let circuit = euler_circuit(k, &edges);
    let mut seen = vec![false; k];
    circuit
        .into_iter()
        .filter(|&v| !std::mem::replace(&mut seen[v], true))
        .collect()
}

fn prim_mst(m: &DistanceMatrix) -> Vec<(usize, usize)> {
    let k = m.size();
    let mut in_tree = vec![false; k];
    let mut best = vec![(u32::MAX, 0usize); k];
    let mut edges = Vec::with_capacity(k.saturating_sub(1));
    in_tree[0] = true;
    for (v, b) in best.iter_mut().enumerate().skip(1) {
        *b = (m.get(0, v), 0);
    }
    for _ in 1..k {
        let v = (0..k)
            .filter(|&v| !in_tree[v])
            .min_by_key(|&v| (best[v].0, v))
            .expect("vertex outside tree");
        in_tree[v] = true;
        edges.push((best[v].1, v));
        for u in 0..k {
            if !in_tree[u] && m.get(v, u) < best[u].0 {
                best[u] = (m.get(v, u), v);
            }
        }
    }
    edges
}

/// Minimum-weight perfect matching on `vertices` (even count). Exact
/// bitmask DP up to [`EXACT_MATCHING_LIMIT`] vertices, greedy beyond.
fn min_weight_matching(m: &DistanceMatrix, vertices: &[usize]) -> Vec<(usize, usize)> {
    let n = vertices.len();
    if n == 0 {
        return Vec::new();
    }
    if n > EXACT_MATCHING_LIMIT {
        let mut pairs: Vec<(u32, usize, usize)> = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                pairs.push((m.get(vertices[i], vertices[j]), i, j));
            }
        }
        pairs.sort();
        let mut used = vec![false; n];
        let mut out = Vec::new();
        for (_, i, j) in pairs {
            if !used[i] && !used[j] {
                used[i] = true;
                used[j] = true;
                out.push((vertices[i], vertices[j]));
            }
        }
        return out;
    }
    let full = (1usize << n) - 1;
    let mut dp = vec![u32::MAX; full + 1];
    let mut choice = vec![0usize; full + 1];
    dp[0] = 0;
    for mask in 0..full {
        if dp[mask] == u32::MAX {
            continue;
        }
        let i = (!mask).trailing_zeros() as usize;
        for j in (i + 1)..n {
            if mask & (1 << j) != 0 {
                continue;
            }
            let nmask = mask | (1 << i) | (1 << j);
            let cand = dp[mask] + m.get(vertices[i], vertices[j]);
            if cand < dp[nmask] {
                dp[nmask] = cand;
                choice[nmask] = j;
            }
        }
    }
    let mut out = Vec::with_capacity(n / 2);
    let mut mask = full;
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        let j = choice[mask];
        out.push((vertices[i], vertices[j]));
        mask &= !((1 << i) | (1 << j));
    }
    out
}

/// Hierholzer's algorithm on a connected multigraph with even degrees.
fn euler_circuit(k: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
    for (id, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, id));
        adj[b].push((a, id));
    }
    let mut used = vec![false; edges.len()];
    let mut ptr = vec![0usize; k];
    let mut stack = vec![0usize];
    let mut circuit = Vec::with_capacity(edges.len() + 1);
    while let Some(&v) = stack.last() {
        while ptr[v] < adj[v].len() && used[adj[v][ptr[v]].1] {
            ptr[v] += 1;
        }
        if ptr[v] == adj[v].len() {
            circuit.push(v);
            stack.pop();
        } else {
            let (u, id) = adj[v][ptr[v]];
            used[id] = true;
            stack.push(u);
        }
    }
    circuit.reverse();
    circuit
}
