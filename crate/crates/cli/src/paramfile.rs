//! JSON parameter files.
//!
//! ```json
//! { "dim": 2, "xi1": [-0.2, -0.2], "xi2": [[0.1, 0.0], [0.0, 0.2]] }
//! { "dim": 1, "mu": [0.5], "sigma": [[2.0]], "basis": [[0.5]], "shift": [0.25] }
//! ```
//!
//! Matrices may be nested rows or a flat row-major array. Exactly one of the
//! natural block (`xi1`, `xi2`) and the moment block (`mu`, `sigma`) is allowed.

use std::path::Path;

use latnorm::{Family, Lattice, MomentParam, NaturalParam, OrdinaryParam, TruncationSpec};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixInput {
    Rows(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

impl MatrixInput {
    fn to_matrix(&self, dim: usize, name: &str) -> Result<DMatrix<f64>, CliError> {
        let flat: Vec<f64> = match self {
            MatrixInput::Rows(rows) => {
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(CliError::usage(format!("{name} must be {dim}x{dim}")));
                }
                rows.iter().flatten().copied().collect()
            }
            MatrixInput::Flat(v) => {
                if v.len() != dim * dim {
                    return Err(CliError::usage(format!(
                        "{name} must have {} row-major entries, got {}",
                        dim * dim,
                        v.len()
                    )));
                }
                v.clone()
            }
        };
        Ok(DMatrix::from_row_slice(dim, dim, &flat))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi1: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi2: Option<MatrixInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<MatrixInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<MatrixInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<f64>>,
}

/// A validated parameter file.
#[derive(Debug, Clone)]
pub enum Block {
    Natural(NaturalParam),
    Moment(OrdinaryParam),
}

#[derive(Debug, Clone)]
pub struct Loaded {
    pub raw: ParamFile,
    pub lattice: Lattice,
    pub block: Block,
}

fn vector(v: &[f64], dim: usize, name: &str) -> Result<DVector<f64>, CliError> {
    if v.len() != dim {
        return Err(CliError::usage(format!("{name} must have {dim} entries, got {}", v.len())));
    }
    Ok(DVector::from_column_slice(v))
}

impl ParamFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("{}: invalid JSON: {e}", path.display())))?;
        serde_json::from_value(value).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
    }

    pub fn validate(self) -> Result<Loaded, CliError> {
        let d = self.dim;
        if d == 0 {
            return Err(CliError::usage("dim must be at least 1"));
        }
        let natural = self.xi1.is_some() || self.xi2.is_some();
        let moment = self.mu.is_some() || self.sigma.is_some();
        let block = match (natural, moment) {
            (true, true) => {
                return Err(CliError::usage("give either xi1/xi2 or mu/sigma, not both"));
            }
            (false, false) => return Err(CliError::usage("missing xi1/xi2 or mu/sigma")),
            (true, false) => {
                let (Some(x1), Some(x2)) = (&self.xi1, &self.xi2) else {
                    return Err(CliError::usage("natural block needs both xi1 and xi2"));
                };
                Block::Natural(NaturalParam::new(vector(x1, d, "xi1")?, x2.to_matrix(d, "xi2")?)?)
            }
            (false, true) => {
                let (Some(m), Some(s)) = (&self.mu, &self.sigma) else {
                    return Err(CliError::usage("moment block needs both mu and sigma"));
                };
                Block::Moment(OrdinaryParam::new(vector(m, d, "mu")?, s.to_matrix(d, "sigma")?)?)
            }
        };
        let basis = match &self.basis {
            Some(b) => b.to_matrix(d, "basis")?,
            None => DMatrix::identity(d, d),
        };
        let shift = match &self.shift {
            Some(s) => vector(s, d, "shift")?,
            None => DVector::zeros(d),
        };
        let lattice = Lattice::new(basis, shift)?;
        Ok(Loaded {
            raw: self,
            lattice,
            block,
        })
    }

    pub fn load(path: &Path) -> Result<Loaded, CliError> {
        Self::read(path)?.validate()
    }
}

impl Loaded {
    pub fn family(&self, eps: f64) -> Family {
        Family::new(self.lattice.clone(), TruncationSpec::with_eps(eps))
    }
}

pub fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

pub fn natural_json(xi: &NaturalParam) -> Value {
    serde_json::json!({
        "dim": xi.dim(),
        "xi1": xi.xi1().as_slice(),
        "xi2": matrix_rows(xi.xi2()),
    })
}

pub fn moment_json(eta: &MomentParam) -> Value {
    serde_json::json!({
        "dim": eta.dim(),
        "eta1": eta.eta1().as_slice(),
        "eta2": matrix_rows(eta.eta2()),
        "mu": eta.mean().as_slice(),
        "sigma": matrix_rows(&eta.covariance()),
    })
}
