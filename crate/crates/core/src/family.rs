use crate::error::Result;
use crate::lattice::{Lattice, TruncationSpec};
use crate::params::NaturalParam;
use crate::theta::{theta, ThetaResult};

/// The discrete normal family on a fixed lattice, with its truncation settings.
#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    pub lattice: Lattice,
    pub spec: TruncationSpec,
}

impl Family {
    pub fn new(lattice: Lattice, spec: TruncationSpec) -> Self {
        Self { lattice, spec }
    }

    /// `Z^d` with default truncation.
    pub fn integer(dim: usize) -> Self {
        Self::new(Lattice::integer(dim), TruncationSpec::default())
    }

    pub fn with_spec(&self, spec: TruncationSpec) -> Self {
        Self {
            lattice: self.lattice.clone(),
            spec,
        }
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn theta(&self, xi: &NaturalParam) -> Result<ThetaResult> {
        theta(xi, &self.lattice, &self.spec)
    }

    pub fn log_theta(&self, xi: &NaturalParam) -> Result<f64> {
        self.theta(xi).map(|t| t.log_value)
    }
}
