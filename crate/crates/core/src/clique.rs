//! Commutation graph, minimum clique cover and clique ordering.
//!
//! Terms are vertices; an edge joins two terms whose Pauli strings commute.
//! A clique cover partitions the terms into mutually commuting families.

use std::cmp::Ordering;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use log::warn;

use crate::error::{Error, Result};
use crate::pauli::Hamiltonian;

/// Default term-count ceiling for [`CoverMode::Exact`].
pub const EXACT_COVER_CEILING: usize = 30;

/// Recursion budget for one maximal-clique enumeration in greedy mode.
const GREEDY_ENUMERATION_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationGraph {
    adjacency: Vec<FixedBitSet>,
}

impl CommutationGraph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        CommutationGraph {
            adjacency: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adjacency[a].insert(b);
            self.adjacency[b].insert(a);
        }
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adjacency[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|n| n.count_ones(..)).sum::<usize>() / 2
    }

    pub fn is_clique(&self, members: &[usize]) -> bool {
        members
            .iter()
            .enumerate()
            .all(|(i, &a)| members[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    fn full_set(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert_range(..);
        s
    }
}

/// Builds the commutation graph; coefficients play no role.
pub fn build_graph(h: &Hamiltonian) -> CommutationGraph {
    let terms = h.terms();
    let mut g = CommutationGraph::empty(terms.len());
    for i in 0..terms.len() {
        for j in (i + 1)..terms.len() {
            if terms[i].string.anticommuting_positions(&terms[j].string).is_multiple_of(2) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CoverMode {
    /// Minimum-cardinality cover via branch and bound.
    #[default]
    Exact,
    /// Repeatedly extract the largest maximal clique.
    Greedy,
}

/// Disjoint cliques covering every vertex. Each clique is sorted ascending
/// and cliques are listed in discovery order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueCover {
    cliques: Vec<Vec<usize>>,
}

impl CliqueCover {
    /// Validates disjointness, coverage of `0..g.len()` and the clique
    /// property of every member list.
    pub fn new(g: &CommutationGraph, mut cliques: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; g.len()];
        for c in &mut cliques {
            if c.is_empty() {
                return Err(Error::InvalidArgument("empty clique in cover".into()));
            }
            c.sort_unstable();
            for &v in c.iter() {
                if v >= g.len() || std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidArgument(format!(
                        "vertex {v} out of range or covered twice"
                    )));
                }
            }
            if !g.is_clique(c) {
                return Err(Error::InvalidArgument(format!("{c:?} is not a commuting clique")));
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidArgument(format!("vertex {v} not covered")));
        }
        Ok(CliqueCover { cliques })
    }

    pub fn cliques(&self) -> &[Vec<usize>] {
        &self.cliques
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Clique index of every term.
    pub fn membership(&self) -> Vec<usize> {
        let n = self.cliques.iter().map(Vec::len).sum();
        let mut out = vec![0; n];
        for (ci, c) in self.cliques.iter().enumerate() {
            for &v in c {
                out[v] = ci;
            }
        }
        out
    }

    /// Human-readable membership listing.
    pub fn report(&self, h: &Hamiltonian) -> String {
        let mut out = format!("# cliques {}\n", self.len());
        for (ci, c) in self.cliques.iter().enumerate() {
            let members: Vec<String> = c.iter().map(|&v| h.term(v).string.to_string()).collect();
            let _ = writeln!(out, "clique {ci} size {}: {}", c.len(), members.join(" "));
        }
        out
    }
}

pub fn min_clique_cover(g: &CommutationGraph, mode: CoverMode) -> Result<CliqueCover> {
    min_clique_cover_with_ceiling(g, mode, EXACT_COVER_CEILING)
}

pub fn min_clique_cover_with_ceiling(
    g: &CommutationGraph,
    mode: CoverMode,
    ceiling: usize,
) -> Result<CliqueCover> {
    let cliques = match mode {
        CoverMode::Greedy => greedy_cover(g),
        CoverMode::Exact => {
            if g.len() > ceiling {
                return Err(Error::CeilingExceeded {
                    what: "exact clique cover",
                    got: g.len(),
                    limit: ceiling,
                });
            }
            exact_cover(g)
        }
    };
    CliqueCover::new(g, cliques)
}

/// Orders cliques by size (descending), then by member list.
fn clique_preference(a: &[usize], b: &[usize]) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| a.cmp(b))
}

/// Bron-Kerbosch with Tomita pivoting over bitsets. `visit` is called with
/// each maximal clique of the subgraph induced by `candidates ∪ clique`;
/// returns `false` once the recursion budget is spent.
fn bron_kerbosch(
    g: &CommutationGraph,
    clique: &mut Vec<usize>,
    mut candidates: FixedBitSet,
    mut excluded: FixedBitSet,
    budget: &mut usize,
    visit: &mut dyn FnMut(&[usize]),
) -> bool {
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    if candidates.is_clear() {
        if excluded.is_clear() {
            visit(clique);
        }
        return true;
    }
    let pivot = candidates
        .ones()
        .chain(excluded.ones())
        .max_by_key(|&u| {
            let mut n = g.neighbors(u).clone();
            n.intersect_with(&candidates);
            (n.count_ones(..), std::cmp::Reverse(u))
        })
        .expect("candidates non-empty");
    let mut branch = candidates.clone();
    branch.difference_with(g.neighbors(pivot));
    for v in branch.ones().collect::<Vec<_>>() {
        let mut next_candidates = candidates.clone();
        next_candidates.intersect_with(g.neighbors(v));
        let mut next_excluded = excluded.clone();
        next_excluded.intersect_with(g.neighbors(v));
        clique.push(v);
        let ok = bron_kerbosch(g, clique, next_candidates, next_excluded, budget, visit);
        clique.pop();
        if !ok {
            return false;
        }
        candidates.remove(v);
        excluded.insert(v);
    }
    true
}

/// All maximal cliques of the subgraph induced by `within`, each sorted.
pub fn maximal_cliques(g: &CommutationGraph, within: &FixedBitSet) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut budget = usize::MAX;
    bron_kerbosch(
        g,
        &mut Vec::new(),
        within.clone(),
        FixedBitSet::with_capacity(g.len()),
        &mut budget,
        &mut |c| {
            let mut c = c.to_vec();
            c.sort_unstable();
            out.push(c);
        },
    );
    out.sort();
    out
}

fn greedy_cover(g: &CommutationGraph) -> Vec<Vec<usize>> {
    let mut remaining = g.full_set();
    let mut cover = Vec::new();
    while !remaining.is_clear() {
        let mut best: Option<Vec<usize>> = None;
        let mut budget = GREEDY_ENUMERATION_BUDGET;
        let finished = bron_kerbosch(
            g,
            &mut Vec::new(),
            remaining.clone(),
            FixedBitSet::with_capacity(g.len()),
            &mut budget,
            &mut |c| {
                let mut c = c.to_vec();
                c.sort_unstable();
                if best
                    .as_ref()
                    .is_none_or(|b| clique_preference(&c, b) == Ordering::Less)
                {
                    best = Some(c);
                }
            },
        );
        if !finished {
            warn!("maximal clique enumeration budget exhausted; using best clique found so far");
        }
        let clique = best.unwrap_or_else(|| {
            // Budget ran out before any leaf: grow a clique from the lowest vertex.
            let mut c = Vec::new();
            for v in remaining.ones() {
                if c.iter().all(|&u| g.has_edge(u, v)) {
                    c.push(v);
                }
            }
            c
        });
        for &v in &clique {
            remaining.remove(v);
        }
        cover.push(clique);
    }
    cover
}

/// Size of a greedily built independent set inside `within`: a lower bound
/// on the number of cliques needed to cover it.
fn independent_lower_bound(g: &CommutationGraph, within: &FixedBitSet) -> usize {
    let mut free = within.clone();
    let mut count = 0;
    while let Some(v) = free
        .ones()
        .min_by_key(|&v| {
            let mut n = g.neighbors(v).clone();
            n.intersect_with(&free);
            (n.count_ones(..), v)
        })
    {
        count += 1;
        free.remove(v);
        free.difference_with(g.neighbors(v));
    }
    count
}

fn exact_cover(g: &CommutationGraph) -> Vec<Vec<usize>> {
    struct Search<'a> {
        g: &'a CommutationGraph,
        best: Vec<Vec<usize>>,
        current: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        fn run(&mut self, uncovered: FixedBitSet) {
            let Some(v) = uncovered.ones().next() else {
                if self.current.len() < self.best.len() {
                    self.best = self.current.clone();
                }
                return;
            };
            if self.current.len() + independent_lower_bound(self.g, &uncovered) >= self.best.len() {
                return;
            }
            // Some optimal cover uses a maximal clique of the uncovered
            // subgraph for the lowest uncovered vertex.
            let mut around = self.g.neighbors(v).clone();
            around.intersect_with(&uncovered);
            let mut options: Vec<Vec<usize>> = maximal_cliques(self.g, &around)
                .into_iter()
                .map(|mut c| {
                    c.push(v);
                    c.sort_unstable();
                    c
                })
                .collect();
            if options.is_empty() {
                options.push(vec![v]);
            }
            options.sort_by(|a, b| clique_preference(a, b));
            for clique in options {
                let mut rest = uncovered.clone();
                for &u in &clique {
                    rest.remove(u);
                }
                self.current.push(clique);
                self.run(rest);
                self.current.pop();
            }
        }
    }

    let greedy = greedy_cover(g);
    let mut search = Search {
        g,
        best: greedy,
        current: Vec::new(),
    };
    search.run(g.full_set());
    search.best
}

/// A clique ordering and its commutator-magnitude proxy score.
#[derive(Clone, Debug, PartialEq)]
pub struct CliquePermutation {
    pub order: Vec<usize>,
    pub score: f64,
    /// Distinct candidate orderings that were scored.
    pub candidates: usize,
}

/// Pairwise proxy weights between cliques.
struct CliqueWeights {
    /// `Σ |a_i b_j|` over non-commuting cross pairs.
    magnitude: Vec<Vec<f64>>,
    /// Number of commuting cross pairs (inter-clique graph edges).
    edges: Vec<Vec<usize>>,
}

impl CliqueWeights {
    fn new(h: &Hamiltonian, cover: &CliqueCover) -> Self {
        let m = cover.len();
        let mut magnitude = vec![vec![0.0; m]; m];
        let mut edges = vec![vec![0usize; m]; m];
        let cliques = cover.cliques();
        for a in 0..m {
            for b in (a + 1)..m {
                let (mut mag, mut count) = (0.0, 0);
                for &i in &cliques[a] {
                    for &j in &cliques[b] {
                        let ti = h.term(i);
                        let tj = h.term(j);
                        if ti.string.anticommuting_positions(&tj.string).is_multiple_of(2) {
                            count += 1;
                        } else {
                            mag += (ti.coefficient * tj.coefficient).abs();
                        }
                    }
                }
                magnitude[a][b] = mag;
                magnitude[b][a] = mag;
                edges[a][b] = count;
                edges[b][a] = count;
            }
        }
        CliqueWeights { magnitude, edges }
    }

    fn score(&self, order: &[usize]) -> f64 {
        order.windows(2).map(|w| self.magnitude[w[0]][w[1]]).sum()
    }
}

/// Sum over consecutive cliques of `|a_i b_j|` for every cross pair of
/// terms that does not commute.
pub fn permutation_score(h: &Hamiltonian, cover: &CliqueCover, order: &[usize]) -> f64 {
    CliqueWeights::new(h, cover).score(order)
}

const SCORE_TIE: f64 = 1e-12;

/// Tree-growth clique ordering heuristic.
///
/// For every root clique and every possible second clique, the remaining
/// path is grown greedily by choosing the unvisited clique sharing the most
/// commutation-graph edges with the current one (lowest index on ties).
/// Each root-to-leaf path is a candidate ordering; the cover's own order is
/// scored as well. The candidate with the smallest [`permutation_score`]
/// wins, ties going to the lexicographically smallest ordering.
pub fn permutation_heuristic(h: &Hamiltonian, cover: &CliqueCover) -> CliquePermutation {
    let m = cover.len();
    let weights = CliqueWeights::new(h, cover);
    let mut candidates: Vec<Vec<usize>> = vec![(0..m).collect()];
    for root in 0..m {
        for second in (0..m).filter(|&c| c != root) {
            let mut path = vec![root, second];
            let mut visited = vec![false; m];
            visited[root] = true;
            visited[second] = true;
            while path.len() < m {
                let cur = *path.last().expect("non-empty path");
                let next = (0..m)
                    .filter(|&c| !visited[c])
                    .max_by_key(|&c| (weights.edges[cur][c], std::cmp::Reverse(c)))
                    .expect("unvisited clique remains");
                visited[next] = true;
                path.push(next);
            }
            candidates.push(path);
        }
    }
    candidates.sort();
    candidates.dedup();
    let count = candidates.len();
    let mut best: Option<(f64, Vec<usize>)> = None;
    for cand in candidates {
        let s = weights.score(&cand);
        let better = match &best {
            None => true,
            Some((bs, border)) => {
                s < bs - SCORE_TIE * bs.abs().max(1.0)
                    || ((s - bs).abs() <= SCORE_TIE * bs.abs().max(1.0) && cand < *border)
            }
        };
        if better {
            best = Some((s, cand));
        }
    }
    let (score, order) = best.unwrap_or((0.0, Vec::new()));
    CliquePermutation {
        order,
        score,
        candidates: count,
    }
}

impl CliquePermutation {
    pub fn report(&self) -> String {
        let order: Vec<String> = self.order.iter().map(|c| c.to_string()).collect();
        format!(
            "clique_order {}\nscore {:.10}\ncandidates {}\n",
            order.join(" "),
            self.score,
            self.candidates
        )
    }
}
