//! Line-oriented circuit text format.
//!
//! ```text
//! WIDTH 5
//! ANCILLA 4
//! TROTTER 1
//! TIME 0.5
//! H 0
//! CNOT 0 4
//! RZ 0.4366 4
//! ```
//!
//! `ANCILLA` is `none` for circuits without one. Angles and times carry ten
//! significant digits with trailing zeros trimmed.

use std::fmt;

use super::{Circuit, Gate};
use crate::error::{Error, Result};

const SIG_DIGITS: usize = 10;

/// Formats `x` like C's `%.10g`.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= SIG_DIGITS as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "WIDTH {}", self.width)?;
        match self.ancilla {
            Some(a) => writeln!(f, "ANCILLA {a}")?,
            None => writeln!(f, "ANCILLA none")?,
        }
        writeln!(f, "TROTTER {}", self.trotter_number)?;
        writeln!(f, "TIME {}", format_sig(self.time))?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut width = None;
    let mut ancilla = None;
    let mut trotter = 1;
    let mut time = 0.0;
    let mut gates = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: &str| Error::Parse {
            line: n + 1,
            message: format!("{message}: \"{line}\""),
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let idx = |i: usize| -> Result<usize> {
            fields
                .get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| err("expected qubit index"))
        };
        let real = |i: usize| -> Result<f64> {
            fields
                .get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| err("expected number"))
        };
        let arity = match fields[0] {
            "WIDTH" => {
                width = Some(idx(1)?);
                2
            }
            "ANCILLA" => {
                ancilla = match fields.get(1) {
                    Some(&"none") => None,
                    _ => Some(idx(1)?),
                };
                2
            }
            "TROTTER" => {
                trotter = idx(1)?;
                2
            }
            "TIME" => {
                time = real(1)?;
                2
            }
            "H" => {
                gates.push(Gate::H(idx(1)?));
                2
            }
            "S" => {
                gates.push(Gate::S(idx(1)?));
                2
            }
            "SDG" => {
                gates.push(Gate::Sdg(idx(1)?));
                2
            }
            "X" => {
                gates.push(Gate::X(idx(1)?));
                2
            }
            "RZ" => {
                gates.push(Gate::rz(real(1)?, idx(2)?));
                3
            }
            "CNOT" => {
                gates.push(Gate::cnot(idx(1)?, idx(2)?));
                3
            }
            _ => return Err(err("unknown instruction")),
        };
        if fields.len() != arity {
            return Err(err("wrong number of fields"));
        }
    }
    let width = width.ok_or(Error::Parse {
        line: 0,
        message: "missing WIDTH header".into(),
    })?;
    let c = Circuit {
        width,
        data_qubits: ancilla.unwrap_or(width),
        ancilla,
        gates,
        trotter_number: trotter,
        time,
    };
    c.validate()?;
    Ok(c)
}
