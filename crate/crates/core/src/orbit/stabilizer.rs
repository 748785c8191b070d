use super::graph::{act_generic, GroupAnsatz};
use super::{Form, VerdictKind};
use crate::error::Result;
use crate::groebner::{krull_dimension, ComputeBudget, Ideal};
use crate::ring::{PolyRing, VarClass};

/// Ideal in the `n²` entries of a generic matrix `g` cut out by `f∘g = f`.
pub fn stabilizer_ideal(f: &Form) -> Result<Ideal> {
    let f = f.standardized()?;
    let n = f.n();
    let ansatz = GroupAnsatz::generic(n);
    let g_vars = ansatz.free_names();
    let xs = (0..n).map(|i| (format!("x{}", i + 1), VarClass::Main));
    let gs = g_vars.iter().map(|s| (s.clone(), VarClass::Parameter));
    let full = PolyRing::new(xs.chain(gs), f.ring().domain().clone())?;
    let moved = act_generic(&f, &ansatz, &full)?;
    let diff = &f.poly().embed_into(&full)? - &moved;
    let params = full.parameter_subring();
    let gens = diff
        .coefficient_system(&(0..n).collect::<Vec<_>>())
        .into_iter()
        .map(|(_, p)| p.embed_into(&params))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&params, gens)
}

/// Orbit dimension as the codimension of the stabilizer in matrix space.
pub fn stabilizer_orbit_dimension(f: &Form, budget: &ComputeBudget) -> Result<usize> {
    let ideal = stabilizer_ideal(f)?;
    let n2 = ideal.ring().arity();
    Ok(n2 - krull_dimension(&ideal, budget)?)
}

/// If `dim_v ≤ dim_w` for distinct orbits, `w` cannot lie in the closure of the orbit of `v`.
pub fn dimension_pretest(dim_v: usize, dim_w: usize, same_orbit: bool) -> Option<VerdictKind> {
    (!same_orbit && dim_v <= dim_w).then_some(VerdictKind::NotInClosure)
}
