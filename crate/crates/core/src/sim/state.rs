use num_complex::Complex64;

use crate::circuit::Gate;
use crate::error::{Error, Result};
use crate::pauli::PauliChar;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Dense statevector; bit `q` of a basis index is the value of qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `qubits` qubits.
    pub fn zero(qubits: usize) -> Self {
        Self::basis(qubits, 0)
    }

    pub fn basis(qubits: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector { qubits, amps }
    }

    /// Wraps amplitudes, checking the length is a power of two and the norm
    /// is one to 1e-9.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() || !amps.len().is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "{} amplitudes is not a power of two",
                amps.len()
            )));
        }
        let s = StateVector {
            qubits: amps.len().trailing_zeros() as usize,
            amps,
        };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::Normalization { total: norm });
        }
        Ok(s)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Appends `extra` qubits in `|0⟩` above the existing ones.
    pub fn extended(&self, extra: usize) -> StateVector {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << (self.qubits + extra)];
        amps[..self.amps.len()].copy_from_slice(&self.amps);
        StateVector {
            qubits: self.qubits + extra,
            amps,
        }
    }

    /// Born probabilities over the lowest `keep` qubits, summing out the rest.
    pub fn marginal_probabilities(&self, keep: usize) -> Vec<f64> {
        let mask = (1usize << keep) - 1;
        let mut out = vec![0.0; 1 << keep];
        for (i, a) in self.amps.iter().enumerate() {
            out[i & mask] += a.norm_sqr();
        }
        out
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn apply(&mut self, g: &Gate) {
        match *g {
            Gate::H(q) => self.hadamard(q),
            Gate::S(q) => self.phase_on_one(q, Complex64::new(0.0, 1.0)),
            Gate::Sdg(q) => self.phase_on_one(q, Complex64::new(0.0, -1.0)),
            Gate::X(q) => self.pauli_x(q),
            Gate::Rz { theta, qubit } => {
                let lo = Complex64::from_polar(1.0, -theta / 2.0);
                let hi = Complex64::from_polar(1.0, theta / 2.0);
                let bit = 1 << qubit;
                for (i, a) in self.amps.iter_mut().enumerate() {
                    *a *= if i & bit == 0 { lo } else { hi };
                }
            }
            Gate::Cnot { control, target } => {
                let (c, t) = (1 << control, 1 << target);
                for i in 0..self.amps.len() {
                    if i & c != 0 && i & t == 0 {
                        self.amps.swap(i, i | t);
                    }
                }
            }
        }
    }

    pub fn apply_all<'a>(&mut self, gates: impl IntoIterator<Item = &'a Gate>) {
        for g in gates {
            self.apply(g);
        }
    }

    pub fn apply_pauli(&mut self, p: PauliChar, q: usize) {
        match p {
            PauliChar::I => {}
            PauliChar::X => self.pauli_x(q),
            PauliChar::Z => self.phase_on_one(q, Complex64::new(-1.0, 0.0)),
            PauliChar::Y => {
                // Y = i X Z
                self.phase_on_one(q, Complex64::new(-1.0, 0.0));
                self.pauli_x(q);
                for a in &mut self.amps {
                    *a *= Complex64::new(0.0, 1.0);
                }
            }
        }
    }

    fn hadamard(&mut self, q: usize) {
        let bit = 1 << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a, b) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = (a + b) * FRAC_1_SQRT_2;
                self.amps[i | bit] = (a - b) * FRAC_1_SQRT_2;
            }
        }
    }

    fn pauli_x(&mut self, q: usize) {
        let bit = 1 << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                self.amps.swap(i, i | bit);
            }
        }
    }

    fn phase_on_one(&mut self, q: usize, phase: Complex64) {
        let bit = 1 << q;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & bit != 0 {
                *a *= phase;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn bell_state() {
        let mut s = StateVector::zero(2);
        s.apply_all(&[Gate::H(0), Gate::cnot(0, 1)]);
        let p = s.probabilities();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[3] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn y_matches_definition() {
        let mut s = StateVector::zero(1);
        s.apply_pauli(PauliChar::Y, 0);
        assert!(close(s.amplitudes()[1], Complex64::new(0.0, 1.0)));
        let mut s = StateVector::basis(1, 1);
        s.apply_pauli(PauliChar::Y, 0);
        assert!(close(s.amplitudes()[0], Complex64::new(0.0, -1.0)));
    }

    #[test]
    fn marginal_sums_out_high_qubits() {
        let mut s = StateVector::zero(2);
        s.apply(&Gate::H(1));
        assert_eq!(s.marginal_probabilities(1).len(), 2);
        assert!((s.marginal_probabilities(1)[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn from_amplitudes_checks() {
        assert!(StateVector::from_amplitudes(vec![Complex64::new(1.0, 0.0); 3]).is_err());
        assert!(StateVector::from_amplitudes(vec![Complex64::new(1.0, 0.0); 2]).is_err());
        assert!(StateVector::from_amplitudes(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).is_ok());
    }
}
