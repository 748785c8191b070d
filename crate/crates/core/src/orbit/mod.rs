//! Orbit and orbit-closure containment for forms under linear substitution.

mod decide;
mod degeneration;
mod graph;
mod plan;
mod singular;
mod stabilizer;

use std::fmt;
use std::sync::Arc;

pub use decide::{
    closure_cache_key, closure_ideal, elim_sub_ideal, in_orbit, in_orbit_closure, in_orbit_closure_cached, orbit_ideal,
    sub_elim_sub, sub_elim_sub_ideal, OrbitClosureIdeal, OrbitMode, Verdict, VerdictKind,
};
pub use graph::{build_graph_ideal, coefficient_name, monomial_basis, AnsatzEntry, GraphIdeal, GroupAnsatz};
pub use degeneration::{examine_degeneration, verify_degeneration, DegenerationCheck, DegenerationFamily, Laurent};
pub use plan::EliminationPlan;
pub use singular::{singular_invariants, singular_locus, SingularInvariants};
pub use stabilizer::{dimension_pretest, stabilizer_ideal, stabilizer_orbit_dimension};

use crate::error::{Error, Result};
use crate::ring::{parse_poly, PolyRing, Polynomial, VarClass};

/// A nonzero homogeneous polynomial in `n` variables, all of class `Main`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    poly: Polynomial,
    degree: u32,
}

impl Form {
    pub fn new(poly: Polynomial) -> Result<Form> {
        if poly.is_zero() {
            return Err(Error::InvalidForm("the zero polynomial is not a form".into()));
        }
        if poly.ring().classes().iter().any(|c| *c != VarClass::Main) {
            return Err(Error::InvalidForm("forms live in a ring of main variables only".into()));
        }
        let degree = poly
            .homogeneous_degree_in(&(0..poly.ring().arity()).collect::<Vec<_>>())
            .ok_or_else(|| Error::InvalidForm(format!("`{poly}` is not homogeneous")))?;
        Ok(Form { poly, degree })
    }

    /// Parses `text` as a form in `x1..xn`.
    pub fn parse(text: &str, n: usize) -> Result<Form> {
        Form::new(parse_poly(text, &PolyRing::forms(n))?)
    }

    /// Parses `text` as a form in the given variables.
    pub fn parse_in(text: &str, vars: &[&str]) -> Result<Form> {
        Form::new(parse_poly(text, &PolyRing::rational(vars)?)?)
    }

    pub fn n(&self) -> usize {
        self.poly.ring().arity()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.poly.ring()
    }

    /// The same form with its variables renamed to `x1..xn`.
    pub fn standardized(&self) -> Result<Form> {
        let target = PolyRing::forms(self.n()).with_domain(self.ring().domain().clone())?;
        if self.ring().names() == target.names() {
            return Ok(self.clone());
        }
        let images: Vec<Polynomial> = (0..self.n()).map(|i| Polynomial::var_at(&target, i)).collect();
        Form::new(self.poly.map_into(&target, &images)?)
    }

    pub fn scaled(&self, q: &num_rational::BigRational) -> Result<Form> {
        Form::new(self.poly.scale(&crate::ring::Scalar::from_rational(q.clone())))
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}
