//! Gate IR, per-term synthesis and first-order Trotter assembly.
//!
//! `exp(-i c Δt P)` is built as basis changes on the support of `P`, a CNOT
//! parity network, `Rz(2 c Δt)` and the mirror image. With
//! `Rz(θ) = diag(e^{-iθ/2}, e^{iθ/2})` the sub-circuit equals the target
//! exponential exactly, with no global phase.

mod cancel;
mod format;

pub use cancel::{cancel_gates, commute, is_inverse};
pub use format::{format_sig, parse_circuit};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ordering::OrderingPlan;
use crate::pauli::{Hamiltonian, PauliChar, WeightedPauliTerm};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Rz { theta: f64, qubit: usize },
    Cnot { control: usize, target: usize },
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn rz(theta: f64, qubit: usize) -> Self {
        Gate::Rz { theta, qubit }
    }

    /// Qubits touched, control first for CNOT.
    pub fn qubits(&self) -> ([usize; 2], usize) {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::X(q) | Gate::Rz { qubit: q, .. } => {
                ([q, q], 1)
            }
            Gate::Cnot { control, target } => ([control, target], 2),
        }
    }

    pub fn acts_on(&self, q: usize) -> bool {
        let (qs, n) = self.qubits();
        qs[..n].contains(&q)
    }

    pub fn is_cnot(&self) -> bool {
        matches!(self, Gate::Cnot { .. })
    }

    fn max_qubit(&self) -> usize {
        let (qs, n) = self.qubits();
        qs[..n].iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "H {q}"),
            Gate::S(q) => write!(f, "S {q}"),
            Gate::Sdg(q) => write!(f, "SDG {q}"),
            Gate::X(q) => write!(f, "X {q}"),
            Gate::Rz { theta, qubit } => write!(f, "RZ {} {qubit}", format_sig(theta)),
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
        }
    }
}

/// CNOT entangler layout for one Pauli exponential.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Architecture {
    /// CNOT chain between successive support qubits; rotation on the last.
    Ladder,
    /// Every CNOT targets the highest support qubit.
    Star,
    /// Every CNOT targets one shared ancilla, which carries the rotation.
    #[default]
    StarAncilla,
}

impl fmt::Display for Architecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Architecture::Ladder => "ladder",
            Architecture::Star => "star",
            Architecture::StarAncilla => "star_ancilla",
        })
    }
}

impl FromStr for Architecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "ladder" => Ok(Architecture::Ladder),
            "star" => Ok(Architecture::Star),
            "star_ancilla" | "star+ancilla" => Ok(Architecture::StarAncilla),
            other => Err(Error::InvalidArgument(format!("unknown architecture \"{other}\""))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    /// Total qubit count, ancilla included.
    pub width: usize,
    /// Data qubits are `0..data_qubits`; the ancilla, if any, follows.
    pub data_qubits: usize,
    pub ancilla: Option<usize>,
    pub gates: Vec<Gate>,
    pub trotter_number: usize,
    pub time: f64,
}

impl Circuit {
    pub fn new(data_qubits: usize, with_ancilla: bool) -> Self {
        Circuit {
            width: data_qubits + usize::from(with_ancilla),
            data_qubits,
            ancilla: with_ancilla.then_some(data_qubits),
            gates: Vec::new(),
            trotter_number: 1,
            time: 0.0,
        }
    }

    pub fn push(&mut self, g: Gate) -> &mut Self {
        self.gates.push(g);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trotter_number == 0 {
            return Err(Error::InvalidArgument("trotter number must be >= 1".into()));
        }
        for g in &self.gates {
            if g.max_qubit() >= self.width {
                return Err(Error::InvalidArgument(format!("{g} exceeds width {}", self.width)));
            }
            match *g {
                Gate::Cnot { control, target } if control == target => {
                    return Err(Error::InvalidArgument(format!("{g}: control equals target")))
                }
                Gate::Rz { theta, .. } if !theta.is_finite() => {
                    return Err(Error::InvalidArgument(format!("{g}: non-finite angle")))
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn with_gates(&self, gates: Vec<Gate>) -> Circuit {
        Circuit {
            gates,
            ..self.clone()
        }
    }
}

pub fn cnot_count(c: &Circuit) -> usize {
    c.gates.iter().filter(|g| g.is_cnot()).count()
}

fn basis_in(ch: PauliChar, q: usize, out: &mut Vec<Gate>) {
    match ch {
        PauliChar::X => out.push(Gate::H(q)),
        PauliChar::Y => out.extend([Gate::Sdg(q), Gate::H(q)]),
        PauliChar::Z | PauliChar::I => {}
    }
}

fn basis_out(ch: PauliChar, q: usize, out: &mut Vec<Gate>) {
    match ch {
        PauliChar::X => out.push(Gate::H(q)),
        PauliChar::Y => out.extend([Gate::H(q), Gate::S(q)]),
        PauliChar::Z | PauliChar::I => {}
    }
}

/// Gate list for `exp(-i · coefficient · dt · P)`. The star+ancilla form
/// uses qubit `P.width()` as the ancilla.
pub fn synthesize_term(term: &WeightedPauliTerm, dt: f64, arch: Architecture) -> Result<Vec<Gate>> {
    let p = &term.string;
    let support = p.support();
    let Some(&last) = support.last() else {
        return Err(Error::InvalidArgument("cannot synthesize the identity term".into()));
    };
    let theta = 2.0 * term.coefficient * dt;
    let entanglers: Vec<Gate> = match arch {
        Architecture::Ladder => support.windows(2).map(|w| Gate::cnot(w[0], w[1])).collect(),
        Architecture::Star => support[..support.len() - 1]
            .iter()
            .map(|&q| Gate::cnot(q, last))
            .collect(),
        Architecture::StarAncilla => support.iter().map(|&q| Gate::cnot(q, p.width())).collect(),
    };
    let rot_qubit = match arch {
        Architecture::StarAncilla => p.width(),
        _ => last,
    };
    let mut out = Vec::with_capacity(2 * entanglers.len() + 4 * support.len() + 1);
    for &q in &support {
        basis_in(p.on_qubit(q), q, &mut out);
    }
    out.extend(entanglers.iter().copied());
    out.push(Gate::rz(theta, rot_qubit));
    out.extend(entanglers.iter().rev().copied());
    for &q in &support {
        basis_out(p.on_qubit(q), q, &mut out);
    }
    Ok(out)
}

/// First-order product formula: the plan's term sub-circuits with
/// `Δt = t / r`, repeated `r` times.
pub fn assemble(
    plan: &OrderingPlan,
    h: &Hamiltonian,
    t: f64,
    r: usize,
    arch: Architecture,
) -> Result<Circuit> {
    if r == 0 {
        return Err(Error::InvalidArgument("trotter number must be >= 1".into()));
    }
    plan.validate(h.len())?;
    let dt = t / r as f64;
    let mut step = Vec::new();
    for &i in &plan.term_order {
        step.extend(synthesize_term(h.term(i), dt, arch)?);
    }
    let mut c = Circuit::new(h.width(), arch == Architecture::StarAncilla);
    c.trotter_number = r;
    c.time = t;
    c.gates.reserve(step.len() * r);
    for _ in 0..r {
        c.gates.extend_from_slice(&step);
    }
    Ok(c)
}
