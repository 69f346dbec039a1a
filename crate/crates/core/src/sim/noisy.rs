//! Shot-based simulation under two-qubit depolarizing noise.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::state::StateVector;
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::PauliChar;

const PAULIS: [PauliChar; 4] = [PauliChar::I, PauliChar::X, PauliChar::Y, PauliChar::Z];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseConfig {
    /// Probability of a depolarizing event after each CNOT.
    pub p: f64,
    pub shots: usize,
    pub seed: u64,
}

impl NoiseConfig {
    pub fn new(p: f64, shots: usize, seed: u64) -> Result<Self> {
        let c = NoiseConfig { p, shots, seed };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidArgument(format!("noise p = {} not in [0, 1]", self.p)));
        }
        if self.shots == 0 {
            return Err(Error::InvalidArgument("shots must be positive".into()));
        }
        Ok(())
    }
}

/// Empirical outcome counts over the data qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    qubits: usize,
    counts: Vec<u64>,
}

impl Distribution {
    pub fn from_counts(qubits: usize, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != 1 << qubits {
            return Err(Error::DimensionMismatch {
                left: 1 << qubits,
                right: counts.len(),
            });
        }
        Ok(Distribution { qubits, counts })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn shots(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        let n = self.shots() as f64;
        self.counts.iter().map(|&c| c as f64 / n).collect()
    }

    /// Outcome label with qubit `N-1` first, matching Pauli string order.
    pub fn bitstring(&self, index: usize) -> String {
        (0..self.qubits)
            .rev()
            .map(|q| if index >> q & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for Distribution {
    /// CSV with header `bitstring,count,probability`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bitstring,count,probability")?;
        let n = self.shots() as f64;
        for (i, &c) in self.counts.iter().enumerate() {
            writeln!(f, "{},{c},{}", self.bitstring(i), c as f64 / n)?;
        }
        Ok(())
    }
}

fn sample(probs: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    // Rounding left u above the total; take the last outcome with weight.
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}

fn prepare(c: &Circuit, initial: &StateVector) -> Result<StateVector> {
    if initial.qubits() != c.data_qubits {
        return Err(Error::WidthMismatch {
            left: c.data_qubits,
            right: initial.qubits(),
        });
    }
    Ok(initial.extended(c.width - c.data_qubits))
}

/// Monte Carlo over `noise.shots` trajectories. Shot `i` draws from
/// ChaCha8 seeded with `seed + i`; after every CNOT a uniformly random
/// two-qubit Pauli hits control and target with probability `p`.
pub fn run_noisy(c: &Circuit, initial: &StateVector, noise: &NoiseConfig) -> Result<Distribution> {
    noise.validate()?;
    let start = prepare(c, initial)?;
    let mut counts = vec![0u64; 1 << c.data_qubits];
    // Without noise every trajectory is the same state.
    let noiseless = (noise.p == 0.0).then(|| {
        let mut s = start.clone();
        s.apply_all(&c.gates);
        s.marginal_probabilities(c.data_qubits)
    });
    for shot in 0..noise.shots {
        let mut rng = ChaCha8Rng::seed_from_u64(noise.seed.wrapping_add(shot as u64));
        let outcome = match &noiseless {
            Some(probs) => sample(probs, &mut rng),
            None => {
                let mut s = start.clone();
                for g in &c.gates {
                    s.apply(g);
                    if let Gate::Cnot { control, target } = *g {
                        if rng.random::<f64>() < noise.p {
                            let k = rng.random_range(0..16);
                            s.apply_pauli(PAULIS[k % 4], control);
                            s.apply_pauli(PAULIS[k / 4], target);
                        }
                    }
                }
                sample(&s.marginal_probabilities(c.data_qubits), &mut rng)
            }
        };
        counts[outcome] += 1;
    }
    Distribution::from_counts(c.data_qubits, counts)
}

/// Exact Born probabilities of `c` applied to `initial`, ancilla summed out.
pub fn born_distribution(c: &Circuit, initial: &StateVector) -> Result<Vec<f64>> {
    let mut s = prepare(c, initial)?;
    s.apply_all(&c.gates);
    Ok(s.marginal_probabilities(c.data_qubits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell() -> Circuit {
        let mut c = Circuit::new(2, false);
        c.push(Gate::H(0)).push(Gate::cnot(0, 1));
        c
    }

    #[test]
    fn noiseless_bell() {
        let d = run_noisy(&bell(), &StateVector::zero(2), &NoiseConfig::new(0.0, 4000, 7).unwrap()).unwrap();
        assert_eq!(d.counts()[1] + d.counts()[2], 0);
        let p = d.probabilities()[0];
        assert!((p - 0.5).abs() < 5.0 * (0.25f64 / 4000.0).sqrt());
    }

    #[test]
    fn same_seed_same_counts() {
        let cfg = NoiseConfig::new(0.3, 500, 11).unwrap();
        let a = run_noisy(&bell(), &StateVector::zero(2), &cfg).unwrap();
        let b = run_noisy(&bell(), &StateVector::zero(2), &cfg).unwrap();
        assert_eq!(a, b);
        let c = run_noisy(&bell(), &StateVector::zero(2), &NoiseConfig { seed: 12, ..cfg }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn full_noise_populates_odd_parity() {
        let d = run_noisy(&bell(), &StateVector::zero(2), &NoiseConfig::new(1.0, 4000, 3).unwrap()).unwrap();
        // X or Y on exactly one qubit flips parity: 8 of 16 Paulis.
        let odd = (d.counts()[1] + d.counts()[2]) as f64 / 4000.0;
        assert!((odd - 0.5).abs() < 0.05, "{odd}");
    }

    #[test]
    fn csv_layout() {
        let d = Distribution::from_counts(2, vec![3, 0, 1, 0]).unwrap();
        assert_eq!(
            d.to_string(),
            "bitstring,count,probability\n00,3,0.75\n01,0,0\n10,1,0.25\n11,0,0\n"
        );
    }

    #[test]
    fn invalid_noise() {
        assert!(NoiseConfig::new(1.5, 10, 0).is_err());
        assert!(NoiseConfig::new(0.1, 0, 0).is_err());
    }
}
