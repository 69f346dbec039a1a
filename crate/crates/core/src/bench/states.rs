use std::fmt;
use std::str::FromStr;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::sim::StateVector;

/// Named initial states for noisy runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum InitialState {
    /// `(|0…01…1⟩ + |1…10…0⟩)/√2` with the split at `N/2`.
    #[default]
    EntangledPair,
    EqualSuperposition,
    /// The entangled pair followed by `H` on qubit `N/2` and `S` on `N-1`.
    Complex,
}

impl InitialState {
    pub const ALL: [InitialState; 3] = [
        InitialState::EntangledPair,
        InitialState::EqualSuperposition,
        InitialState::Complex,
    ];

    /// Preparation circuit from `|0…0⟩`.
    pub fn builder(self, n: usize) -> Result<Circuit> {
        let mut c = Circuit::new(n, false);
        match self {
            InitialState::EqualSuperposition => {
                for q in 0..n {
                    c.push(Gate::H(q));
                }
            }
            InitialState::EntangledPair | InitialState::Complex => {
                if n < 2 {
                    return Err(Error::InvalidArgument(format!("{self} needs at least 2 qubits")));
                }
                let half = n / 2;
                c.push(Gate::H(0));
                for q in 1..half {
                    c.push(Gate::cnot(0, q));
                }
                for q in half..n {
                    c.push(Gate::X(q));
                }
                for q in half..n {
                    c.push(Gate::cnot(0, q));
                }
                if self == InitialState::Complex {
                    c.push(Gate::H(half)).push(Gate::S(n - 1));
                }
            }
        }
        Ok(c)
    }

    pub fn state(self, n: usize) -> Result<StateVector> {
        let mut s = StateVector::zero(n);
        s.apply_all(&self.builder(n)?.gates);
        Ok(s)
    }
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InitialState::EntangledPair => "entangled_pair",
            InitialState::EqualSuperposition => "equal_superposition",
            InitialState::Complex => "complex",
        })
    }
}

impl FromStr for InitialState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InitialState::ALL
            .into_iter()
            .find(|st| st.to_string() == s.trim())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown initial state \"{s}\"")))
    }
}
