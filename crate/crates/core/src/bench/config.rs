//! Flat `key = value` configuration.
//!
//! ```text
//! # comments start with '#'
//! hamiltonians = fixtures/h2.ham, fixtures/hc.ham
//! strategies = lexicographic, max_commute_tsp
//! t_stop = 5
//! r = 1
//! ```
//!
//! Directories listed under `hamiltonians` expand to their `.ham` files.
//! Every key can also be overridden with [`BenchConfig::set`].

use std::path::{Path, PathBuf};

use super::InitialState;
use crate::circuit::Architecture;
use crate::clique::CoverMode;
use crate::error::{Error, Result};
use crate::ordering::Strategy;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub hamiltonians: Vec<PathBuf>,
    pub strategies: Vec<Strategy>,
    pub t_start: f64,
    pub t_stop: f64,
    pub t_step: f64,
    /// Upper limit of the normalized-fidelity integral; `t_stop` if unset.
    pub t_prime: Option<f64>,
    /// Evolution time for `compile` and `noisy`.
    pub time: f64,
    pub trotter: usize,
    pub arch: Architecture,
    pub cover: CoverMode,
    pub noise_p: Vec<f64>,
    pub shots: usize,
    pub seeds: Vec<u64>,
    pub initial_state: InitialState,
    /// Score every clique permutation when there are at most 720.
    pub enumerate_permutations: bool,
    pub dump_tsp: bool,
    pub out_dir: Option<PathBuf>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            hamiltonians: Vec::new(),
            strategies: vec![
                Strategy::Unordered,
                Strategy::Lexicographic,
                Strategy::Magnitude,
                Strategy::DepleteGroups,
                Strategy::MaxCommuteLex,
                Strategy::MaxCommuteTsp(crate::ordering::TspMode::Exact),
            ],
            t_start: 0.0,
            t_stop: 2.5,
            t_step: 0.025,
            t_prime: None,
            time: 1.0,
            trotter: 10,
            arch: Architecture::StarAncilla,
            cover: CoverMode::Exact,
            noise_p: vec![0.001, 0.005, 0.01, 0.02],
            shots: 1000,
            seeds: vec![0],
            initial_state: InitialState::EntangledPair,
            enumerate_permutations: false,
            dump_tsp: false,
            out_dir: None,
        }
    }
}

fn list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: cannot parse \"{value}\"")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(Error::Config(format!("{key}: expected a boolean, got \"{other}\""))),
    }
}

impl BenchConfig {
    /// Parses a config file body. Relative Hamiltonian paths resolve against
    /// `base`.
    pub fn from_text(text: &str, base: &Path) -> Result<Self> {
        let mut cfg = BenchConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            let key = key.trim();
            if key == "hamiltonians" {
                cfg.hamiltonians = list(value).map(|p| base.join(p)).collect();
            } else {
                cfg.set(key, value)?;
            }
        }
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text, path.parent().unwrap_or(Path::new(".")))
    }

    /// Sets one key; the same names as in the file.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "hamiltonians" => self.hamiltonians = list(value).map(PathBuf::from).collect(),
            "strategies" => {
                self.strategies = list(value)
                    .map(|s| s.parse().map_err(|e: Error| Error::Config(e.to_string())))
                    .collect::<Result<_>>()?
            }
            "t_start" => self.t_start = parse_num(key, value)?,
            "t_stop" => self.t_stop = parse_num(key, value)?,
            "t_step" => self.t_step = parse_num(key, value)?,
            "t_prime" => self.t_prime = Some(parse_num(key, value)?),
            "time" => self.time = parse_num(key, value)?,
            "r" | "trotter" => self.trotter = parse_num(key, value)?,
            "arch" => self.arch = value.trim().parse().map_err(|e: Error| Error::Config(e.to_string()))?,
            "cover" => {
                self.cover = match value.trim() {
                    "exact" => CoverMode::Exact,
                    "greedy" => CoverMode::Greedy,
                    other => return Err(Error::Config(format!("cover: unknown mode \"{other}\""))),
                }
            }
            "p" | "noise_p" => {
                self.noise_p = list(value).map(|v| parse_num(key, v)).collect::<Result<_>>()?
            }
            "shots" => self.shots = parse_num(key, value)?,
            "seed" | "seeds" => {
                self.seeds = list(value).map(|v| parse_num(key, v)).collect::<Result<_>>()?
            }
            "initial_state" => {
                self.initial_state = value.trim().parse().map_err(|e: Error| Error::Config(e.to_string()))?
            }
            "enumerate_permutations" => self.enumerate_permutations = parse_bool(key, value)?,
            "dump_tsp" => self.dump_tsp = parse_bool(key, value)?,
            "out_dir" => self.out_dir = Some(PathBuf::from(value.trim())),
            other => return Err(Error::Config(format!("unknown key \"{other}\""))),
        }
        Ok(())
    }

    /// Sampling times `t_start, t_start + t_step, …` up to `t_stop`
    /// inclusive (within half a step).
    pub fn t_grid(&self) -> Vec<f64> {
        let n = ((self.t_stop - self.t_start) / self.t_step + 0.5).floor() as usize;
        (0..=n).map(|i| self.t_start + i as f64 * self.t_step).collect()
    }

    /// Hamiltonian files with directories expanded, sorted within each
    /// directory.
    pub fn hamiltonian_files(&self) -> Result<Vec<PathBuf>> {
        let mut out = Vec::new();
        for p in &self.hamiltonians {
            if p.is_dir() {
                let mut found: Vec<PathBuf> = std::fs::read_dir(p)
                    .map_err(|e| Error::io(p, e))?
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|f| f.extension().is_some_and(|x| x == "ham"))
                    .collect();
                found.sort();
                out.extend(found);
            } else {
                out.push(p.clone());
            }
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        if self.hamiltonians.is_empty() {
            return Err(Error::Config("no hamiltonians given".into()));
        }
        for p in &self.hamiltonians {
            if !p.exists() {
                return Err(Error::Config(format!("{} does not exist", p.display())));
            }
        }
        if self.strategies.is_empty() {
            return Err(Error::Config("strategy list is empty".into()));
        }
        if self.trotter == 0 {
            return Err(Error::Config("r must be >= 1".into()));
        }
        if self.t_step <= 0.0 || self.t_step.is_nan() || self.t_stop < self.t_start {
            return Err(Error::Config("time grid is empty".into()));
        }
        if self.shots == 0 || self.seeds.is_empty() {
            return Err(Error::Config("need at least one shot and one seed".into()));
        }
        if self.noise_p.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::Config("noise p must lie in [0, 1]".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = BenchConfig::default();
        let grid = c.t_grid();
        assert_eq!(grid.len(), 101);
        assert!((grid[100] - 2.5).abs() < 1e-12);
        assert_eq!(c.trotter, 10);
        assert_eq!(c.shots, 1000);
    }

    #[test]
    fn parse_and_override() {
        let text = "# demo\nhamiltonians = a.ham, b.ham\nstrategies = lex, tsp\nr = 4 # inline\np = 0.01,0.02\n";
        let mut c = BenchConfig::from_text(text, Path::new("/x")).unwrap();
        assert_eq!(c.hamiltonians, vec![PathBuf::from("/x/a.ham"), PathBuf::from("/x/b.ham")]);
        assert_eq!(c.strategies.len(), 2);
        assert_eq!(c.trotter, 4);
        assert_eq!(c.noise_p, vec![0.01, 0.02]);
        c.set("r", "2").unwrap();
        assert_eq!(c.trotter, 2);
        assert!(c.set("bogus", "1").is_err());
        assert!(c.set("r", "two").is_err());
        assert!(BenchConfig::from_text("novalue\n", Path::new(".")).is_err());
    }

    #[test]
    fn validation() {
        let mut c = BenchConfig::default();
        assert!(c.validate().is_err());
        c.hamiltonians = vec![PathBuf::from("/definitely/missing.ham")];
        assert!(c.validate().is_err());
    }
}
