use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::Form;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::ring::{determinant, Monomial, PolyRing, Polynomial, Scalar, VarClass};

/// One entry of a group-matrix ansatz.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnsatzEntry {
    Free,
    Fixed(BigRational),
}

/// Shape of the matrix `g` acting by `x_i ↦ Σ_j g_ij x_j`. Free entries
/// become parameter variables named `g{i}{j}` (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAnsatz {
    entries: Vec<Vec<AnsatzEntry>>,
}

impl GroupAnsatz {
    pub fn generic(n: usize) -> Self {
        GroupAnsatz { entries: vec![vec![AnsatzEntry::Free; n]; n] }
    }

    pub fn new(entries: Vec<Vec<AnsatzEntry>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("ansatz must be a nonempty square matrix".into()));
        }
        Ok(GroupAnsatz { entries })
    }

    /// Generic matrix whose row `i` may only use the columns in `support[i]` (0-based).
    pub fn with_row_support(n: usize, support: &[Vec<usize>]) -> Result<Self> {
        if support.len() != n {
            return Err(Error::DimensionMismatch(format!("{} row supports for n = {n}", support.len())));
        }
        let entries = support
            .iter()
            .map(|cols| {
                (0..n)
                    .map(|j| if cols.contains(&j) { AnsatzEntry::Free } else { AnsatzEntry::Fixed(BigRational::zero()) })
                    .collect()
            })
            .collect();
        GroupAnsatz::new(entries)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<AnsatzEntry>] {
        &self.entries
    }

    pub fn free_count(&self) -> usize {
        self.entries.iter().flatten().filter(|e| **e == AnsatzEntry::Free).count()
    }

    /// Names of the free entries in row-major order.
    pub fn free_names(&self) -> Vec<String> {
        let n = self.size();
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if *e == AnsatzEntry::Free {
                    out.push(g_name(n, i, j));
                }
            }
        }
        out
    }
}

pub(crate) fn g_name(n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("g{}{}", i + 1, j + 1)
    } else {
        format!("g{}_{}", i + 1, j + 1)
    }
}

/// All exponent vectors of degree `d` in `n` variables, lexicographically descending.
pub fn monomial_basis(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Name of the coefficient variable of a monomial: `c` followed by its exponents.
pub fn coefficient_name(exps: &[u32]) -> String {
    if exps.iter().all(|&e| e < 10) {
        let digits: String = exps.iter().map(|e| e.to_string()).collect();
        format!("c{digits}")
    } else {
        let parts: Vec<String> = exps.iter().map(|e| e.to_string()).collect();
        format!("c_{}", parts.join("_"))
    }
}

/// The graph ideal of `v` together with the bookkeeping needed to specialise it.
#[derive(Clone, Debug)]
pub struct GraphIdeal {
    pub ideal: Ideal,
    /// Coefficient variables, one per degree-`d` monomial, in `monomial_basis` order.
    pub c_vars: Vec<String>,
    pub g_vars: Vec<String>,
    pub monomials: Vec<Vec<u32>>,
}

/// Image of `v` under the ansatz matrix, in `ring` (which must contain the
/// form variables as its first `n` variables and every free g-variable).
pub(crate) fn act_generic(v: &Form, ansatz: &GroupAnsatz, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let n = v.n();
    let mut images = Vec::with_capacity(n);
    for (i, row) in ansatz.entries().iter().enumerate() {
        let mut img = Polynomial::zero(ring);
        for (j, e) in row.iter().enumerate() {
            let xj = Polynomial::var_at(ring, j);
            let coeff = match e {
                AnsatzEntry::Free => Polynomial::var(ring, &g_name(n, i, j))?,
                AnsatzEntry::Fixed(q) if q.is_zero() => continue,
                AnsatzEntry::Fixed(q) => Polynomial::from_rational(ring, q.clone()),
            };
            img = &img + &(&coeff * &xj);
        }
        images.push(img);
    }
    let lifted = v.poly().embed_into(ring)?;
    let mut all: Vec<Polynomial> = (0..ring.arity()).map(|k| Polynomial::var_at(ring, k)).collect();
    all[..n].clone_from_slice(&images);
    lifted.map_into(ring, &all)
}

pub(crate) fn matrix_in(ansatz: &GroupAnsatz, ring: &Arc<PolyRing>) -> Result<Vec<Vec<Polynomial>>> {
    let n = ansatz.size();
    ansatz
        .entries()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, e)| match e {
                    AnsatzEntry::Free => Polynomial::var(ring, &g_name(n, i, j)),
                    AnsatzEntry::Fixed(q) => Ok(Polynomial::from_rational(ring, q.clone())),
                })
                .collect()
        })
        .collect()
}

/// Coefficient system of `Σ c_m·m − v∘g` with respect to the form variables,
/// in the ring of parameters `c…, g…`; with `det_slice` also `det g − 1`.
pub fn build_graph_ideal(v: &Form, ansatz: &GroupAnsatz, det_slice: bool) -> Result<GraphIdeal> {
    let n = v.n();
    if ansatz.size() != n {
        return Err(Error::DimensionMismatch(format!("{}x{} ansatz for a form in {n} variables", ansatz.size(), ansatz.size())));
    }
    let monomials = monomial_basis(n, v.degree());
    let c_vars: Vec<String> = monomials.iter().map(|e| coefficient_name(e)).collect();
    let g_vars = ansatz.free_names();
    let xs = (0..n).map(|i| (format!("x{}", i + 1), VarClass::Main));
    let params = c_vars.iter().chain(g_vars.iter()).map(|s| (s.clone(), VarClass::Parameter));
    let full = PolyRing::new(xs.chain(params), v.poly().ring().domain().clone())?;
    let form_in_x = v.standardized()?;
    let image = act_generic(&form_in_x, ansatz, &full)?;
    let mut general = Polynomial::zero(&full);
    for (exps, name) in monomials.iter().zip(&c_vars) {
        let mut e = vec![0u32; full.arity()];
        e[..n].copy_from_slice(exps);
        let c = Polynomial::var(&full, name)?;
        general = &general + &c.mul_term(&Scalar::one(), &Monomial::from_exponents(e));
    }
    let diff = &general - &image;
    let main: Vec<usize> = (0..n).collect();
    let params_ring = full.parameter_subring();
    let mut gens = diff
        .coefficient_system(&main)
        .into_iter()
        .map(|(_, p)| p.embed_into(&params_ring))
        .collect::<Result<Vec<_>>>()?;
    if det_slice {
        let det = determinant(&matrix_in(ansatz, &params_ring)?)?;
        gens.push(&det - &Polynomial::one(&params_ring));
    }
    Ok(GraphIdeal { ideal: Ideal::new(&params_ring, gens)?, c_vars, g_vars, monomials })
}

impl GraphIdeal {
    /// Values of the coefficient variables for the form `w`.
    pub fn coefficient_values(&self, w: &Form) -> Result<Vec<(String, BigRational)>> {
        let w = w.standardized()?;
        self.monomials
            .iter()
            .zip(&self.c_vars)
            .map(|(e, name)| {
                let c = w.poly().coefficient(&Monomial::from_exponents(e.clone()));
                let q = c.as_rational().ok_or_else(|| Error::InvalidForm("coefficients must be rational".into()))?;
                Ok((name.clone(), q))
            })
            .collect()
    }
}
