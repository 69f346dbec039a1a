//! Term-ordering strategies.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::clique::{
    build_graph, min_clique_cover, permutation_heuristic, CliqueCover, CliquePermutation,
    CoverMode,
};
use crate::error::{Error, Result};
use crate::pauli::Hamiltonian;
use crate::tsp::{self, DistanceMatrix, EXACT_CEILING};

/// Name of the seeded generator behind every random choice in this crate.
pub const RNG_NAME: &str = "ChaCha8";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TspMode {
    Exact,
    Approx,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Unordered,
    Lexicographic,
    Magnitude,
    Random { seed: u64 },
    DepleteGroups,
    MaxCommuteLex,
    MaxCommuteTsp(TspMode),
}

impl Strategy {
    pub fn is_max_commute(self) -> bool {
        matches!(self, Strategy::MaxCommuteLex | Strategy::MaxCommuteTsp(_))
    }

    pub fn needs_cover(self) -> bool {
        self.is_max_commute() || self == Strategy::DepleteGroups
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Unordered => write!(f, "unordered"),
            Strategy::Lexicographic => write!(f, "lexicographic"),
            Strategy::Magnitude => write!(f, "magnitude"),
            Strategy::Random { seed } => write!(f, "random({seed})"),
            Strategy::DepleteGroups => write!(f, "deplete_groups"),
            Strategy::MaxCommuteLex => write!(f, "max_commute_lex"),
            Strategy::MaxCommuteTsp(TspMode::Exact) => write!(f, "max_commute_tsp(exact)"),
            Strategy::MaxCommuteTsp(TspMode::Approx) => write!(f, "max_commute_tsp(approx)"),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    /// Accepts the display tags plus a few short aliases (`lex`, `tsp`,
    /// `mctsp`, `random` with seed 0).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(seed) = s.strip_prefix("random(").and_then(|r| r.strip_suffix(')')) {
            let seed = seed
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad random seed in \"{s}\"")))?;
            return Ok(Strategy::Random { seed });
        }
        Ok(match s {
            "unordered" => Strategy::Unordered,
            "lexicographic" | "lex" => Strategy::Lexicographic,
            "magnitude" | "mag" => Strategy::Magnitude,
            "random" => Strategy::Random { seed: 0 },
            "deplete_groups" | "deplete" => Strategy::DepleteGroups,
            "max_commute_lex" | "mclex" => Strategy::MaxCommuteLex,
            "max_commute_tsp" | "max_commute_tsp(exact)" | "mctsp" | "tsp" => {
                Strategy::MaxCommuteTsp(TspMode::Exact)
            }
            "max_commute_tsp(approx)" | "mctsp_approx" | "tsp_approx" => {
                Strategy::MaxCommuteTsp(TspMode::Approx)
            }
            other => return Err(Error::InvalidArgument(format!("unknown strategy \"{other}\""))),
        })
    }
}

/// A term permutation plus, for max-commute strategies, the offsets at
/// which each clique starts (with the term count appended).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingPlan {
    pub strategy: Strategy,
    pub term_order: Vec<usize>,
    pub clique_boundaries: Option<Vec<usize>>,
}

impl OrderingPlan {
    /// Checks that `term_order` is a bijection on `0..k`.
    pub fn validate(&self, k: usize) -> Result<()> {
        if self.term_order.len() != k {
            return Err(Error::InvalidArgument(format!(
                "plan has {} entries for {k} terms",
                self.term_order.len()
            )));
        }
        let mut seen = vec![false; k];
        for &i in &self.term_order {
            if i >= k || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument(format!("plan is not a permutation at {i}")));
            }
        }
        Ok(())
    }

    /// Term indices of each clique segment, in plan order.
    pub fn segments(&self) -> Vec<&[usize]> {
        match &self.clique_boundaries {
            Some(b) => b.windows(2).map(|w| &self.term_order[w[0]..w[1]]).collect(),
            None => vec![&self.term_order[..]],
        }
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
        let mut out = format!("strategy {}\norder {}\n", self.strategy, join(&self.term_order));
        if let Some(b) = &self.clique_boundaries {
            out.push_str(&format!("boundaries {}\n", join(b)));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut strategy = None;
        let mut order = None;
        let mut boundaries = None;
        let nums = |rest: &str| -> Result<Vec<usize>> {
            rest.split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::InvalidArgument(format!("bad index \"{t}\""))))
                .collect()
        };
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            match key {
                "strategy" => strategy = Some(rest.parse()?),
                "order" => order = Some(nums(rest)?),
                "boundaries" => boundaries = Some(nums(rest)?),
                other => return Err(Error::InvalidArgument(format!("unknown plan key \"{other}\""))),
            }
        }
        match (strategy, order) {
            (Some(strategy), Some(term_order)) => Ok(OrderingPlan {
                strategy,
                term_order,
                clique_boundaries: boundaries,
            }),
            _ => Err(Error::InvalidArgument("plan needs 'strategy' and 'order' lines".into())),
        }
    }
}

pub fn order_unordered(h: &Hamiltonian) -> OrderingPlan {
    OrderingPlan {
        strategy: Strategy::Unordered,
        term_order: (0..h.len()).collect(),
        clique_boundaries: None,
    }
}

fn lex_sort(h: &Hamiltonian, idx: &mut [usize]) {
    idx.sort_by(|&a, &b| h.term(a).string.cmp(&h.term(b).string));
}

/// Sorts strings position by position under `X < Y < Z < I`.
pub fn order_lexicographic(h: &Hamiltonian) -> OrderingPlan {
    let mut idx: Vec<usize> = (0..h.len()).collect();
    lex_sort(h, &mut idx);
    OrderingPlan {
        strategy: Strategy::Lexicographic,
        term_order: idx,
        clique_boundaries: None,
    }
}

fn magnitude_sort(h: &Hamiltonian, idx: &mut [usize]) {
    idx.sort_by(|&a, &b| {
        let (ta, tb) = (h.term(a), h.term(b));
        tb.coefficient
            .abs()
            .total_cmp(&ta.coefficient.abs())
            .then_with(|| ta.string.cmp(&tb.string))
    });
}

/// Descending `|coefficient|`, ties broken lexicographically.
pub fn order_magnitude(h: &Hamiltonian) -> OrderingPlan {
    let mut idx: Vec<usize> = (0..h.len()).collect();
    magnitude_sort(h, &mut idx);
    OrderingPlan {
        strategy: Strategy::Magnitude,
        term_order: idx,
        clique_boundaries: None,
    }
}

/// Uniform random permutation from a [`RNG_NAME`] generator seeded with `seed`.
pub fn order_random(h: &Hamiltonian, seed: u64) -> OrderingPlan {
    let mut idx: Vec<usize> = (0..h.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    idx.shuffle(&mut rng);
    OrderingPlan {
        strategy: Strategy::Random { seed },
        term_order: idx,
        clique_boundaries: None,
    }
}

/// Round-robin over cliques: every round takes the largest remaining term
/// of each non-empty clique; a round's picks are emitted by descending
/// magnitude, ties by clique index.
pub fn order_deplete_groups(h: &Hamiltonian, cover: &CliqueCover) -> OrderingPlan {
    let mut queues: Vec<Vec<usize>> = cover
        .cliques()
        .iter()
        .map(|c| {
            let mut c = c.clone();
            magnitude_sort(h, &mut c);
            c.reverse();
            c
        })
        .collect();
    let mut order = Vec::with_capacity(h.len());
    loop {
        let mut round: Vec<(usize, usize)> = queues
            .iter_mut()
            .enumerate()
            .filter_map(|(ci, q)| q.pop().map(|t| (ci, t)))
            .collect();
        if round.is_empty() {
            break;
        }
        round.sort_by(|&(ca, ta), &(cb, tb)| {
            h.term(tb)
                .coefficient
                .abs()
                .total_cmp(&h.term(ta).coefficient.abs())
                .then(ca.cmp(&cb))
        });
        order.extend(round.into_iter().map(|(_, t)| t));
    }
    OrderingPlan {
        strategy: Strategy::DepleteGroups,
        term_order: order,
        clique_boundaries: None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntraOrder {
    TspExact,
    TspApprox,
    Lex,
}

/// Orders one clique's terms. Exact TSP falls back to the approximate
/// solver above [`EXACT_CEILING`].
pub fn order_within_clique(h: &Hamiltonian, members: &[usize], intra: IntraOrder) -> Vec<usize> {
    let mut members = members.to_vec();
    lex_sort(h, &mut members);
    if intra == IntraOrder::Lex || members.len() <= 1 {
        return members;
    }
    let strings: Vec<_> = members.iter().map(|&i| h.term(i).string.clone()).collect();
    let m = DistanceMatrix::from_strings(&strings).expect("hamiltonian strings share a width");
    let sol = match intra {
        IntraOrder::TspExact => tsp::solve_path(&m, EXACT_CEILING),
        _ => tsp::solve_path_approx(&m),
    };
    sol.order.into_iter().map(|i| members[i]).collect()
}

/// Lays cliques out in `perm.order`, ordering terms inside each clique with
/// `intra`.
pub fn order_max_commute(
    h: &Hamiltonian,
    cover: &CliqueCover,
    perm: &CliquePermutation,
    intra: IntraOrder,
) -> OrderingPlan {
    let strategy = match intra {
        IntraOrder::Lex => Strategy::MaxCommuteLex,
        IntraOrder::TspExact => Strategy::MaxCommuteTsp(TspMode::Exact),
        IntraOrder::TspApprox => Strategy::MaxCommuteTsp(TspMode::Approx),
    };
    let mut order = Vec::with_capacity(h.len());
    let mut boundaries = vec![0];
    for &ci in &perm.order {
        order.extend(order_within_clique(h, &cover.cliques()[ci], intra));
        boundaries.push(order.len());
    }
    OrderingPlan {
        strategy,
        term_order: order,
        clique_boundaries: Some(boundaries),
    }
}

/// Everything a strategy may need beyond the Hamiltonian.
#[derive(Clone, Debug)]
pub struct OrderingContext {
    pub cover: CliqueCover,
    pub permutation: CliquePermutation,
}

impl OrderingContext {
    pub fn new(h: &Hamiltonian, mode: CoverMode) -> Result<Self> {
        let g = build_graph(h);
        let cover = min_clique_cover(&g, mode)?;
        let permutation = permutation_heuristic(h, &cover);
        Ok(OrderingContext { cover, permutation })
    }
}

/// Dispatches on `strategy`.
pub fn plan(h: &Hamiltonian, strategy: Strategy, ctx: &OrderingContext) -> OrderingPlan {
    match strategy {
        Strategy::Unordered => order_unordered(h),
        Strategy::Lexicographic => order_lexicographic(h),
        Strategy::Magnitude => order_magnitude(h),
        Strategy::Random { seed } => order_random(h, seed),
        Strategy::DepleteGroups => order_deplete_groups(h, &ctx.cover),
        Strategy::MaxCommuteLex => order_max_commute(h, &ctx.cover, &ctx.permutation, IntraOrder::Lex),
        Strategy::MaxCommuteTsp(TspMode::Exact) => {
            order_max_commute(h, &ctx.cover, &ctx.permutation, IntraOrder::TspExact)
        }
        Strategy::MaxCommuteTsp(TspMode::Approx) => {
            order_max_commute(h, &ctx.cover, &ctx.permutation, IntraOrder::TspApprox)
        }
    }
}
