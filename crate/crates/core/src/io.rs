//! File formats: state JSON, isometry matrices, and state tokens.

use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::random_state;
use crate::hermite::HermiteState;
use crate::multilinear::Isometry;

/// On-disk state: `{"n_modes": N, "coeffs": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n_modes: usize,
    pub coeffs: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(s: &HermiteState<f64>) -> Self {
        Self { n_modes: s.n_modes(), coeffs: s.coeffs().iter().map(|c| [c.re, c.im]).collect() }
    }

    pub fn into_state(self) -> Result<HermiteState<f64>> {
        if self.coeffs.len() != self.n_modes {
            return Err(Error::Parse(format!(
                "n_modes is {} but {} coefficients were given",
                self.n_modes,
                self.coeffs.len()
            )));
        }
        if self.n_modes == 0 {
            return Err(Error::Parse("a state needs at least one mode".into()));
        }
        if self.coeffs.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Parse("coefficients must be finite".into()));
        }
        Ok(HermiteState::new(self.coeffs.into_iter().map(|[re, im]| Complex::new(re, im)).collect()))
    }
}

pub fn state_to_json(s: &HermiteState<f64>) -> String {
    serde_json::to_string(&StateFile::from_state(s)).expect("state serialises")
}

pub fn state_from_json(text: &str) -> Result<HermiteState<f64>> {
    let f: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("state file: {e}")))?;
    f.into_state()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_state(path: &Path) -> Result<HermiteState<f64>> {
    state_from_json(&read(path)?).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn write_state(path: &Path, s: &HermiteState<f64>) -> Result<()> {
    std::fs::write(path, state_to_json(s)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Resolves `phiK`, `zero`, `random:SEED`, or a path to a state file.
/// Tokens produce states on `n_modes` modes (more for `phiK` with K ≥ n_modes).
pub fn resolve_state(token: &str, n_modes: usize) -> Result<HermiteState<f64>> {
    if token == "zero" {
        return Ok(HermiteState::zeros(n_modes.max(1)));
    }
    if let Some(k) = token.strip_prefix("phi") {
        if let Ok(k) = k.parse::<usize>() {
            return Ok(HermiteState::basis(k, n_modes));
        }
    }
    if let Some(seed) = token.strip_prefix("random:") {
        let seed = seed.parse::<u64>().map_err(|_| Error::Parse(format!("bad seed in `{token}`")))?;
        return Ok(random_state(seed, n_modes.max(1)));
    }
    read_state(Path::new(token))
}

/// Parses a JSON array of rows into an isometry.
pub fn matrix_from_json(text: &str) -> Result<Isometry<f64>> {
    let rows: Vec<Vec<f64>> = serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix file: {e}")))?;
    if rows.is_empty() {
        return Err(Error::Parse("matrix file: empty matrix".into()));
    }
    Isometry::new(rows, None)
}

pub fn read_matrix(path: &Path) -> Result<Isometry<f64>> {
    matrix_from_json(&read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_round_trip() {
        let s = random_state(3, 5);
        let back = state_from_json(&state_to_json(&s)).unwrap();
        assert_eq!(back, s);
        assert!(state_to_json(&HermiteState::basis(0, 1)).starts_with("{\"n_modes\":1,\"coeffs\":[[1.0,0.0]]"));
    }

    #[test]
    fn malformed_states() {
        assert!(state_from_json("{\"n_modes\":2,\"coeffs\":[[1,0]]}").is_err());
        assert!(state_from_json("{\"n_modes\":0,\"coeffs\":[]}").is_err());
        assert!(state_from_json("{\"coeffs\":[[1,0]]}").is_err());
        assert!(state_from_json("[1,2]").is_err());
    }

    #[test]
    fn tokens() {
        assert_eq!(resolve_state("phi2", 4).unwrap(), HermiteState::basis(2, 4));
        assert_eq!(resolve_state("phi7", 4).unwrap().n_modes(), 8);
        assert_eq!(resolve_state("zero", 3).unwrap().mass(), 0.0);
        assert_eq!(resolve_state("random:9", 6).unwrap(), random_state(9, 6));
        assert!(resolve_state("random:x", 6).is_err());
        assert!(matches!(resolve_state("/nonexistent/state.json", 3), Err(Error::Io(_))));
    }

    #[test]
    fn matrices() {
        let m = matrix_from_json("[[0,1,0],[0,0,1],[1,0,0]]").unwrap();
        assert_eq!(m.dim(), 3);
        assert!(matches!(matrix_from_json("[[1,1],[0,1]]"), Err(Error::NotIsometry { .. })));
        assert!(matrix_from_json("[]").is_err());
        assert!(matrix_from_json("{}").is_err());
    }
}
