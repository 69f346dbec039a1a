//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use dqs::pauli::{Hamiltonian, PauliChar, PauliString, WeightedPauliTerm};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CHARS: [PauliChar; 4] = [PauliChar::X, PauliChar::Y, PauliChar::Z, PauliChar::I];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn random_string(rng: &mut ChaCha8Rng, width: usize) -> PauliString {
    loop {
        let chars: Vec<PauliChar> = (0..width).map(|_| CHARS[rng.random_range(0..4)]).collect();
        let p = PauliString::new(chars).unwrap();
        if !p.is_identity() {
            return p;
        }
    }
}

/// Possibly-identity string; used for metric checks.
pub fn any_string(rng: &mut ChaCha8Rng, width: usize) -> PauliString {
    PauliString::new((0..width).map(|_| CHARS[rng.random_range(0..4)]).collect()).unwrap()
}

fn coefficient(rng: &mut ChaCha8Rng) -> f64 {
    let c: f64 = rng.random_range(0.05..1.0);
    if rng.random_bool(0.5) { -c } else { c }
}

/// `k` distinct non-identity terms on `width` qubits.
pub fn random_hamiltonian(rng: &mut ChaCha8Rng, width: usize, k: usize) -> Hamiltonian {
    let mut strings: Vec<PauliString> = Vec::new();
    let max = 4usize.pow(width as u32) - 1;
    while strings.len() < k.min(max) {
        let s = random_string(rng, width);
        if !strings.contains(&s) {
            strings.push(s);
        }
    }
    Hamiltonian::from_terms(strings.into_iter().map(|s| WeightedPauliTerm::new(coefficient(rng), s))).unwrap()
}

/// A Hamiltonian with at least one anticommuting pair.
pub fn noncommuting_hamiltonian(rng: &mut ChaCha8Rng, width: usize, k: usize) -> Hamiltonian {
    loop {
        let h = random_hamiltonian(rng, width, k);
        let t = h.terms();
        let clash = t.iter().enumerate().any(|(i, a)| {
            t[i + 1..].iter().any(|b| !a.string.commutes_with(&b.string).unwrap())
        });
        if clash {
            return h;
        }
    }
}

/// Up to `k` mutually commuting distinct terms, grown greedily.
pub fn random_clique(rng: &mut ChaCha8Rng, width: usize, k: usize) -> Hamiltonian {
    let mut strings: Vec<PauliString> = Vec::new();
    for _ in 0..200 {
        if strings.len() == k {
            break;
        }
        let s = random_string(rng, width);
        if !strings.contains(&s) && strings.iter().all(|o| o.commutes_with(&s).unwrap()) {
            strings.push(s);
        }
    }
    Hamiltonian::from_terms(strings.into_iter().map(|s| WeightedPauliTerm::new(coefficient(rng), s))).unwrap()
}

pub fn shuffled(rng: &mut ChaCha8Rng, k: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..k).collect();
    v.shuffle(rng);
    v
}

// ---- proptest strategies ----------------------------------------------

pub fn pauli_char() -> impl Strategy<Value = PauliChar> {
    prop::sample::select(CHARS.to_vec())
}

pub fn pauli_string(width: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = PauliString> {
    prop::collection::vec(pauli_char(), width).prop_map(|c| PauliString::new(c).unwrap())
}

/// Seed-driven Hamiltonians; shrinking acts on the seed and sizes.
pub fn hamiltonian(max_width: usize, max_terms: usize) -> impl Strategy<Value = Hamiltonian> {
    (any::<u64>(), 1..=max_width, 1..=max_terms)
        .prop_map(|(seed, n, k)| random_hamiltonian(&mut rng(seed), n, k))
}
