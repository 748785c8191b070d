use super::Form;
use crate::error::{Error, Result};
use crate::groebner::{hilbert_values, krull_dimension, ComputeBudget, Ideal};
use crate::ring::Polynomial;

/// The ideal of all first partial derivatives.
pub fn singular_locus(f: &Form) -> Result<Ideal> {
    let gens = (0..f.n()).map(|i| f.poly().partial_derivative(i)).collect::<Result<Vec<Polynomial>>>()?;
    Ideal::new(f.ring(), gens)
}

/// Invariants of the Jacobian ideal under linear changes of variables:
/// dimension of its affine zero set (`None` when empty) and Hilbert values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct SingularInvariants {
    pub dim: Option<usize>,
    pub hilbert: Vec<u64>,
}

pub fn singular_invariants(f: &Form, hilbert_cutoff: u32, budget: &ComputeBudget) -> Result<SingularInvariants> {
    let j = singular_locus(f)?;
    let dim = match krull_dimension(&j, budget) {
        Ok(d) => Some(d),
        Err(Error::TrivialIdeal) => None,
        Err(e) => return Err(e),
    };
    let hilbert = hilbert_values(&j, hilbert_cutoff, budget)?;
    Ok(SingularInvariants { dim, hilbert })
}
