//! Pauli strings, weighted terms and Hamiltonian text files.
//!
//! A string of width `N` is written most-significant qubit first: the
//! character at position `j` acts on qubit `N - 1 - j`, so `ZZI` acts on
//! qubits 2 and 1. The same order is used for measured bitstrings.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Single-qubit Pauli operator.
///
/// The derived `Ord` is the lexicographic order used for term sorting:
/// `X < Y < Z < I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliChar {
    X,
    Y,
    Z,
    I,
}

impl PauliChar {
    pub const ALL: [PauliChar; 4] = [PauliChar::I, PauliChar::X, PauliChar::Y, PauliChar::Z];

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliChar::I),
            'X' => Some(PauliChar::X),
            'Y' => Some(PauliChar::Y),
            'Z' => Some(PauliChar::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliChar::I => 'I',
            PauliChar::X => 'X',
            PauliChar::Y => 'Y',
            PauliChar::Z => 'Z',
        }
    }

    #[inline]
    pub fn is_identity(self) -> bool {
        self == PauliChar::I
    }
}

impl fmt::Display for PauliChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Tensor product of single-qubit Paulis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    chars: Vec<PauliChar>,
}

impl PauliString {
    pub fn new(chars: Vec<PauliChar>) -> Result<Self> {
        if chars.is_empty() {
            return Err(Error::InvalidArgument("pauli string must have width >= 1".into()));
        }
        Ok(PauliString { chars })
    }

    pub fn identity(width: usize) -> Result<Self> {
        Self::new(vec![PauliChar::I; width])
    }

    pub fn width(&self) -> usize {
        self.chars.len()
    }

    pub fn chars(&self) -> &[PauliChar] {
        &self.chars
    }

    /// Operator acting on qubit `q`.
    pub fn on_qubit(&self, q: usize) -> PauliChar {
        self.chars[self.chars.len() - 1 - q]
    }

    /// Qubits with a non-identity operator, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.width())
            .filter(|&q| !self.on_qubit(q).is_identity())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.chars.iter().all(|c| c.is_identity())
    }

    /// Number of non-identity positions.
    pub fn hamming_weight(&self) -> usize {
        self.chars.iter().filter(|c| !c.is_identity()).count()
    }

    /// Two Pauli strings commute iff they anticommute on an even number of
    /// positions (both non-identity and different).
    pub fn commutes_with(&self, other: &PauliString) -> Result<bool> {
        check_width(self, other)?;
        Ok(self.anticommuting_positions(other).is_multiple_of(2))
    }

    pub(crate) fn anticommuting_positions(&self, other: &PauliString) -> usize {
        self.chars
            .iter()
            .zip(&other.chars)
            .filter(|(a, b)| !a.is_identity() && !b.is_identity() && a != b)
            .count()
    }
}

pub(crate) fn check_width(a: &PauliString, b: &PauliString) -> Result<()> {
    if a.width() != b.width() {
        return Err(Error::WidthMismatch {
            left: a.width(),
            right: b.width(),
        });
    }
    Ok(())
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars = s
            .chars()
            .map(|c| {
                PauliChar::from_char(c).ok_or_else(|| {
                    Error::InvalidArgument(format!("illegal pauli character '{c}' in \"{s}\""))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PauliString::new(chars)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.chars {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `commutes(a, b)` as a free function.
pub fn commutes(a: &PauliString, b: &PauliString) -> Result<bool> {
    a.commutes_with(b)
}

pub fn hamming_weight(p: &PauliString) -> usize {
    p.hamming_weight()
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedPauliTerm {
    pub coefficient: f64,
    pub string: PauliString,
}

impl WeightedPauliTerm {
    pub fn new(coefficient: f64, string: PauliString) -> Self {
        WeightedPauliTerm {
            coefficient,
            string,
        }
    }
}

impl fmt::Display for WeightedPauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.coefficient, self.string)
    }
}

/// Real-weighted sum of distinct, non-identity Pauli strings of one width.
#[derive(Clone, Debug, PartialEq)]
pub struct Hamiltonian {
    terms: Vec<WeightedPauliTerm>,
    width: usize,
}

impl Hamiltonian {
    /// Builds a Hamiltonian, merging duplicate strings by coefficient
    /// addition and dropping terms whose merged coefficient is zero.
    /// First-appearance order is preserved.
    pub fn from_terms(terms: impl IntoIterator<Item = WeightedPauliTerm>) -> Result<Self> {
        let mut merged: Vec<WeightedPauliTerm> = Vec::new();
        let mut index: HashMap<PauliString, usize> = HashMap::new();
        let mut width = None;
        for term in terms {
            if !term.coefficient.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "non-finite coefficient for {}",
                    term.string
                )));
            }
            if term.coefficient == 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "zero coefficient for {}",
                    term.string
                )));
            }
            if term.string.is_identity() {
                return Err(Error::InvalidArgument(
                    "identity term excluded (global phase only)".into(),
                ));
            }
            match width {
                None => width = Some(term.string.width()),
                Some(w) if w != term.string.width() => {
                    return Err(Error::WidthMismatch {
                        left: w,
                        right: term.string.width(),
                    })
                }
                _ => {}
            }
            match index.get(&term.string) {
                Some(&i) => merged[i].coefficient += term.coefficient,
                None => {
                    index.insert(term.string.clone(), merged.len());
                    merged.push(term);
                }
            }
        }
        let width = width.ok_or(Error::EmptyHamiltonian)?;
        merged.retain(|t| t.coefficient != 0.0);
        if merged.is_empty() {
            return Err(Error::EmptyHamiltonian);
        }
        Ok(Hamiltonian {
            terms: merged,
            width,
        })
    }

    pub fn terms(&self) -> &[WeightedPauliTerm] {
        &self.terms
    }

    pub fn term(&self, i: usize) -> &WeightedPauliTerm {
        &self.terms[i]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn strings(&self) -> impl Iterator<Item = &PauliString> {
        self.terms.iter().map(|t| &t.string)
    }

    /// Serializes to the text format accepted by [`parse_hamiltonian`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.terms {
            out.push_str(&t.to_string());
            out.push('\n');
        }
        out
    }
}

/// Parses `<coefficient> <pauli-string>` lines. Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_hamiltonian(text: &str) -> Result<Hamiltonian> {
    let mut terms = Vec::new();
    let mut width: Option<(usize, usize)> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let mut fields = line.split_whitespace();
        let (Some(coef), Some(pauli), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(perr(format!(
                "expected '<coefficient> <pauli-string>', got \"{line}\""
            )));
        };
        if coef.contains('j') {
            return Err(perr(format!("complex coefficient not supported: \"{coef}\"")));
        }
        let coefficient: f64 = coef
            .parse()
            .map_err(|_| perr(format!("malformed coefficient \"{coef}\"")))?;
        if !coefficient.is_finite() {
            return Err(perr(format!("non-finite coefficient \"{coef}\"")));
        }
        if coefficient == 0.0 {
            return Err(perr("zero coefficient".into()));
        }
        let string: PauliString = pauli.parse().map_err(|e: Error| perr(e.to_string()))?;
        match width {
            None => width = Some((string.width(), line_no)),
            Some((w, first)) if w != string.width() => {
                return Err(perr(format!(
                    "width {} differs from width {w} on line {first}",
                    string.width()
                )))
            }
            _ => {}
        }
        if string.is_identity() {
            return Err(perr("identity term excluded (global phase only)".into()));
        }
        terms.push(WeightedPauliTerm::new(coefficient, string));
    }
    if terms.is_empty() {
        return Err(Error::EmptyHamiltonian);
    }
    Hamiltonian::from_terms(terms)
}

pub fn load_hamiltonian(path: impl AsRef<Path>) -> Result<Hamiltonian> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_hamiltonian(&text).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

/// Loads every `.ham` file in `dir`, sorted by file name.
pub fn load_hamiltonian_dir(dir: impl AsRef<Path>) -> Result<Vec<(PathBuf, Hamiltonian)>> {
    let dir = dir.as_ref();
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "ham"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| load_hamiltonian(&p).map(|h| (p, h)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn parses_paper_h2_prefix() {
        let h = parse_hamiltonian("0.0871 IIIZ\n-0.0243 IIZI").unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h.width(), 4);
        assert_eq!(h.term(1).coefficient, -0.0243);
    }

    #[test]
    fn rejects_identity_term() {
        assert!(parse_hamiltonian("1.0 IIII").is_err());
    }

    #[test]
    fn merges_duplicates() {
        let h = parse_hamiltonian("0.5 XZ\n0.5 XZ").unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.term(0).coefficient, 1.0);
    }

    #[test]
    fn merged_zero_drops_term() {
        let h = parse_hamiltonian("0.5 XZ\n1 ZZ\n-0.5 XZ").unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.term(0).string, ps("ZZ"));
        assert!(matches!(
            parse_hamiltonian("0.5 XZ\n-0.5 XZ"),
            Err(Error::EmptyHamiltonian)
        ));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_hamiltonian(""), Err(Error::EmptyHamiltonian)));
        assert!(matches!(
            parse_hamiltonian("# only a comment\n\n"),
            Err(Error::EmptyHamiltonian)
        ));
        assert!(matches!(
            parse_hamiltonian("abc XX"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_hamiltonian("1.0 XQ"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_hamiltonian("1.0 XX\n2.0 XXX"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_hamiltonian("1+2j XX").is_err());
        assert!(parse_hamiltonian("nan XX").is_err());
        assert!(parse_hamiltonian("1.0 XX extra").is_err());
    }

    #[test]
    fn whitespace_and_comments() {
        let h = parse_hamiltonian("# header\n   0.25\t XY  \n\n# trailing\n").unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.term(0).string, ps("XY"));
    }

    #[test]
    fn lexicographic_char_order() {
        assert!(PauliChar::X < PauliChar::Y);
        assert!(PauliChar::Y < PauliChar::Z);
        assert!(PauliChar::Z < PauliChar::I);
    }

    #[test]
    fn commutation_examples() {
        assert!(commutes(&ps("XX"), &ps("YY")).unwrap());
        assert!(commutes(&ps("XZ"), &ps("ZZ")).is_ok_and(|c| !c));
        assert!(!commutes(&ps("X"), &ps("Z")).unwrap());
        assert!(commutes(&ps("XZY"), &ps("XZY")).unwrap());
        assert!(matches!(
            commutes(&ps("X"), &ps("XX")),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn hamming_weights() {
        assert_eq!(hamming_weight(&ps("XXXX")), 4);
        assert_eq!(hamming_weight(&ps("IIII")), 0);
        assert_eq!(hamming_weight(&ps("ZXIY")), 3);
    }

    #[test]
    fn qubit_order_is_msb_first() {
        let p = ps("ZXI");
        assert_eq!(p.on_qubit(0), PauliChar::I);
        assert_eq!(p.on_qubit(1), PauliChar::X);
        assert_eq!(p.on_qubit(2), PauliChar::Z);
        assert_eq!(p.support(), vec![1, 2]);
    }
}
