//! Dense unitaries: exact evolution, circuit products and fidelities.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::state::StateVector;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::pauli::{Hamiltonian, PauliChar, PauliString};

/// Largest data-qubit count handled densely.
pub const DENSE_CEILING: usize = 11;

const UNITARY_TOL: f64 = 1e-9;

/// Square complex matrix of dimension `2^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseUnitary(DMatrix<Complex64>);

impl DenseUnitary {
    pub fn identity(qubits: usize) -> Self {
        DenseUnitary(DMatrix::identity(1 << qubits, 1 << qubits))
    }

    pub fn from_matrix(m: DMatrix<Complex64>) -> Self {
        DenseUnitary(m)
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    /// `max |(U†U − I)_ij|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let prod = self.0.adjoint() * &self.0;
        let id = DMatrix::<Complex64>::identity(self.dim(), self.dim());
        max_abs(&(prod - id))
    }

    pub fn max_abs_diff(&self, other: &DenseUnitary) -> f64 {
        max_abs(&(&self.0 - &other.0))
    }

    /// Max entrywise difference after removing the relative global phase.
    pub fn max_abs_diff_up_to_phase(&self, other: &DenseUnitary) -> f64 {
        let tr: Complex64 = self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        let phase = if tr.norm() > 0.0 { tr / tr.norm() } else { Complex64::new(1.0, 0.0) };
        max_abs(&(&self.0 * phase - &other.0))
    }

    /// Spectral norm of `self − other`.
    pub fn operator_norm_diff(&self, other: &DenseUnitary) -> f64 {
        (&self.0 - &other.0)
            .singular_values()
            .iter()
            .copied()
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, s: &StateVector) -> Result<StateVector> {
        if s.amplitudes().len() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: s.amplitudes().len(),
            });
        }
        let v = nalgebra::DVector::from_column_slice(s.amplitudes());
        StateVector::from_amplitudes((&self.0 * v).as_slice().to_vec())
    }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check_ceiling(qubits: usize) -> Result<()> {
    if qubits > DENSE_CEILING {
        return Err(Error::CeilingExceeded {
            what: "dense simulation qubits",
            got: qubits,
            limit: DENSE_CEILING,
        });
    }
    Ok(())
}

/// Adds `coefficient · P` into `m`.
fn add_pauli(m: &mut DMatrix<Complex64>, p: &PauliString, coefficient: f64) {
    let (mut xmask, mut zmask, mut ny) = (0usize, 0usize, 0u32);
    for q in 0..p.width() {
        match p.on_qubit(q) {
            PauliChar::I => {}
            PauliChar::X => xmask |= 1 << q,
            PauliChar::Z => zmask |= 1 << q,
            PauliChar::Y => {
                xmask |= 1 << q;
                zmask |= 1 << q;
                ny += 1;
            }
        }
    }
    let iy = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ][(ny % 4) as usize];
    for b in 0..m.ncols() {
        let sign = if (b & zmask).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        m[(b ^ xmask, b)] += iy * (sign * coefficient);
    }
}

pub fn pauli_matrix(p: &PauliString) -> DMatrix<Complex64> {
    let dim = 1 << p.width();
    let mut m = DMatrix::zeros(dim, dim);
    add_pauli(&mut m, p, 1.0);
    m
}

pub fn hamiltonian_matrix(h: &Hamiltonian) -> Result<DMatrix<Complex64>> {
    check_ceiling(h.width())?;
    let dim = 1 << h.width();
    let mut m = DMatrix::zeros(dim, dim);
    for t in h.terms() {
        add_pauli(&mut m, &t.string, t.coefficient);
    }
    Ok(m)
}

/// `exp(-i t H)` for a Hermitian matrix via its eigendecomposition.
pub fn expm_hermitian(h: &DMatrix<Complex64>, t: f64) -> DenseUnitary {
    let eig = SymmetricEigen::new(h.clone());
    let phases = eig
        .eigenvalues
        .map(|lambda| Complex64::from_polar(1.0, -lambda * t));
    let v = &eig.eigenvectors;
    let scaled = DMatrix::from_fn(v.nrows(), v.ncols(), |i, j| v[(i, j)] * phases[j]);
    DenseUnitary(scaled * v.adjoint())
}

/// `exp(-i H t)` with ħ = 1.
pub fn exact_unitary(h: &Hamiltonian, t: f64) -> Result<DenseUnitary> {
    Ok(expm_hermitian(&hamiltonian_matrix(h)?, t))
}

fn evolve_columns(c: &Circuit, inputs: usize, keep: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(keep, inputs);
    for b in 0..inputs {
        let mut s = StateVector::basis(c.width, b);
        s.apply_all(&c.gates);
        for (row, a) in s.amplitudes()[..keep].iter().enumerate() {
            m[(row, b)] = *a;
        }
    }
    m
}

/// Data-qubit action of `c`. With an ancilla, the block with the ancilla
/// in `|0⟩` at input and output is returned and must itself be unitary.
pub fn circuit_unitary(c: &Circuit) -> Result<DenseUnitary> {
    check_ceiling(c.data_qubits)?;
    let dim = 1 << c.data_qubits;
    let u = DenseUnitary(evolve_columns(c, dim, dim));
    if c.ancilla.is_some() {
        let deviation = u.unitarity_deviation();
        if deviation > UNITARY_TOL {
            return Err(Error::AncillaLeak { deviation });
        }
    }
    Ok(u)
}

/// Unitary of the whole register, ancilla included.
pub fn circuit_full_unitary(c: &Circuit) -> Result<DenseUnitary> {
    check_ceiling(c.width.saturating_sub(1).max(c.data_qubits))?;
    let dim = 1 << c.width;
    Ok(DenseUnitary(evolve_columns(c, dim, dim)))
}

/// `|Tr(U_exact U_approx†)| / dim`.
pub fn process_fidelity(exact: &DenseUnitary, approx: &DenseUnitary) -> Result<f64> {
    if exact.dim() != approx.dim() {
        return Err(Error::DimensionMismatch {
            left: exact.dim(),
            right: approx.dim(),
        });
    }
    let tr: Complex64 = exact
        .0
        .iter()
        .zip(approx.0.iter())
        .map(|(a, b)| a * b.conj())
        .sum();
    Ok((tr.norm() / exact.dim() as f64).min(1.0))
}

/// Time-averaged fidelity `∫₀^{t'} F dt / t'` by the trapezoid rule over
/// `samples`, which must be sorted by time and start at the lower limit.
/// The curve is interpolated linearly at `t'`.
pub fn normalized_fidelity(samples: &[(f64, f64)], t_prime: f64) -> Result<f64> {
    let Some(&(t0, f0)) = samples.first() else {
        return Err(Error::InvalidArgument("no fidelity samples".into()));
    };
    let t_last = samples.last().expect("non-empty").0;
    if samples.windows(2).any(|w| w[1].0 < w[0].0) {
        return Err(Error::InvalidArgument("samples must be sorted by time".into()));
    }
    if t_prime > t_last || t_prime < t0 {
        return Err(Error::InvalidArgument(format!(
            "t' = {t_prime} outside sampled range [{t0}, {t_last}]"
        )));
    }
    if t_prime == t0 {
        return Ok(f0);
    }
    let mut area = 0.0;
    for w in samples.windows(2) {
        let ((ta, fa), (tb, fb)) = (w[0], w[1]);
        if ta >= t_prime {
            break;
        }
        let (end, fend) = if tb > t_prime {
            (t_prime, fa + (fb - fa) * (t_prime - ta) / (tb - ta))
        } else {
            (tb, fb)
        };
        area += 0.5 * (fa + fend) * (end - ta);
    }
    Ok(area / (t_prime - t0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{assemble, Architecture, Gate};
    use crate::ordering::order_unordered;
    use crate::pauli::parse_hamiltonian;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn t_zero_is_identity() {
        let h = parse_hamiltonian("0.3 XY\n-1.2 ZZ").unwrap();
        let u = exact_unitary(&h, 0.0).unwrap();
        assert!(u.max_abs_diff(&DenseUnitary::identity(2)) < 1e-12);
    }

    #[test]
    fn single_z_diagonal() {
        let h = parse_hamiltonian("1 Z").unwrap();
        let t = 0.7;
        let u = exact_unitary(&h, t).unwrap();
        let m = u.matrix();
        assert!((m[(0, 0)] - Complex64::from_polar(1.0, -t)).norm() < 1e-12);
        assert!((m[(1, 1)] - Complex64::from_polar(1.0, t)).norm() < 1e-12);
        assert!(m[(0, 1)].norm() < 1e-12);
    }

    #[test]
    fn pauli_matrices() {
        let y = pauli_matrix(&"Y".parse().unwrap());
        assert_eq!(y[(0, 1)], c(0.0, -1.0));
        assert_eq!(y[(1, 0)], c(0.0, 1.0));
        // "ZI": Z on qubit 1 (the high bit).
        let zi = pauli_matrix(&"ZI".parse().unwrap());
        assert_eq!(zi[(1, 1)], c(1.0, 0.0));
        assert_eq!(zi[(2, 2)], c(-1.0, 0.0));
    }

    #[test]
    fn zz_circuit_matches_exponential() {
        let h = parse_hamiltonian("1 ZZ").unwrap();
        let t = 0.37;
        let circ = assemble(&order_unordered(&h), &h, t, 1, Architecture::Ladder).unwrap();
        let u = circuit_unitary(&circ).unwrap();
        assert!(u.max_abs_diff(&exact_unitary(&h, t).unwrap()) < 1e-12);
    }

    #[test]
    fn empty_circuit_is_identity() {
        let circ = Circuit::new(3, false);
        assert!(circuit_unitary(&circ).unwrap().max_abs_diff(&DenseUnitary::identity(3)) < 1e-15);
    }

    #[test]
    fn leaky_ancilla_detected() {
        let mut circ = Circuit::new(1, true);
        circ.push(Gate::H(1));
        assert!(matches!(circuit_unitary(&circ), Err(Error::AncillaLeak { .. })));
    }

    #[test]
    fn fidelity_basics() {
        let id = DenseUnitary::identity(2);
        assert!((process_fidelity(&id, &id).unwrap() - 1.0).abs() < 1e-15);
        let phased = DenseUnitary::from_matrix(id.matrix() * c(0.0, 1.0));
        assert!((process_fidelity(&id, &phased).unwrap() - 1.0).abs() < 1e-15);
        assert!(process_fidelity(&id, &DenseUnitary::identity(1)).is_err());
    }

    #[test]
    fn normalized_fidelity_examples() {
        let grid: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
        let ones: Vec<(f64, f64)> = grid.iter().map(|&t| (t, 1.0)).collect();
        assert!((normalized_fidelity(&ones, 1.0).unwrap() - 1.0).abs() < 1e-12);
        let consts: Vec<(f64, f64)> = grid.iter().map(|&t| (t, 0.83)).collect();
        assert!((normalized_fidelity(&consts, 0.5).unwrap() - 0.83).abs() < 1e-12);
        let linear: Vec<(f64, f64)> = grid.iter().map(|&t| (t, t)).collect();
        assert!((normalized_fidelity(&linear, 1.0).unwrap() - 0.5).abs() < 1e-12);
        // Interpolated endpoint: mean of t on [0, 0.555] is 0.2775.
        assert!((normalized_fidelity(&linear, 0.555).unwrap() - 0.2775).abs() < 1e-12);
        assert!(normalized_fidelity(&[], 1.0).is_err());
        assert!(normalized_fidelity(&linear, 1.5).is_err());
    }

    #[test]
    fn dense_ceiling() {
        let s = "Z".repeat(DENSE_CEILING + 1);
        let h = parse_hamiltonian(&format!("1 {s}")).unwrap();
        assert!(matches!(exact_unitary(&h, 1.0), Err(Error::CeilingExceeded { .. })));
    }
}
