use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use super::graph::{build_graph_ideal, GraphIdeal, GroupAnsatz};
use super::plan::EliminationPlan;
use super::Form;
use crate::error::{BudgetStats, Error, Result};
use crate::groebner::cache::{generators_hash, sha256_hex, CacheDir, CacheEntry};
use crate::groebner::{eliminate, eliminate_named, is_trivial, ComputeBudget, Ideal};
use crate::ring::{PolyRing, Polynomial, TermOrder, VarClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum VerdictKind {
    InOrbit,
    NotInOrbit,
    InClosure,
    NotInClosure,
    /// One-sided certificate from a sub-elim-sub plan; implies `InClosure`.
    ContainmentProven,
    /// A one-sided test failed; says nothing about containment.
    Inconclusive,
    BudgetExceeded,
}

impl VerdictKind {
    /// Whether the verdict settles the question (either way).
    pub fn is_decided(&self) -> bool {
        !matches!(self, VerdictKind::Inconclusive | VerdictKind::BudgetExceeded)
    }

    /// `Some(true)` for containment, `Some(false)` for non-containment.
    pub fn containment(&self) -> Option<bool> {
        match self {
            VerdictKind::InOrbit | VerdictKind::InClosure | VerdictKind::ContainmentProven => Some(true),
            VerdictKind::NotInOrbit | VerdictKind::NotInClosure => Some(false),
            VerdictKind::Inconclusive | VerdictKind::BudgetExceeded => None,
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A decision together with the procedure and limits that produced it.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub procedure: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<ComputeBudget>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<BudgetStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Verdict {
    pub fn new(kind: VerdictKind, procedure: impl Into<String>) -> Verdict {
        Verdict { kind, procedure: procedure.into(), budget: None, stats: None, detail: None }
    }

    pub fn with_budget(mut self, budget: &ComputeBudget) -> Verdict {
        self.budget = Some(budget.clone());
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Verdict {
        self.detail = Some(detail.into());
        self
    }

    fn from_budget_error(procedure: &str, budget: &ComputeBudget, stats: BudgetStats) -> Verdict {
        Verdict {
            kind: VerdictKind::BudgetExceeded,
            procedure: procedure.to_string(),
            budget: Some(budget.clone()),
            stats: Some(stats),
            detail: None,
        }
    }
}

/// `strict` imposes `det g = 1`; `projective` asks for `v∘g = λw` with `λ ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitMode {
    Strict,
    Projective,
}

fn check_shapes(v: &Form, w: &Form) -> Result<()> {
    if v.n() != w.n() || v.degree() != w.degree() {
        return Err(Error::DimensionMismatch(format!(
            "source has (n, d) = ({}, {}), target ({}, {})",
            v.n(),
            v.degree(),
            w.n(),
            w.degree()
        )));
    }
    Ok(())
}

fn rat_poly(ring: &Arc<PolyRing>, q: &BigRational) -> Polynomial {
    Polynomial::from_rational(ring, q.clone())
}

/// Ideal of the g-variables (and `lam`, `y` in projective mode) whose zeros
/// are the matrices with `det g = 1` carrying `v` to `w` (resp. to a multiple of `w`).
pub fn orbit_ideal(v: &Form, w: &Form, mode: OrbitMode) -> Result<Ideal> {
    check_shapes(v, w)?;
    let gi = build_graph_ideal(v, &GroupAnsatz::generic(v.n()), true)?;
    let values = gi.coefficient_values(w)?;
    let base = gi.ideal.ring();
    match mode {
        OrbitMode::Strict => {
            let assignment: Vec<(&str, Polynomial)> =
                values.iter().map(|(n, q)| (n.as_str(), rat_poly(base, q))).collect();
            let k = gi.ideal.substitute_named(&assignment)?;
            let g_ring = g_subring(base, &gi);
            k.embed_into(&g_ring)
        }
        OrbitMode::Projective => {
            let ext = base.extended([("lam", VarClass::Parameter), ("y", VarClass::Parameter)])?;
            let lam = Polynomial::var(&ext, "lam")?;
            let assignment: Vec<(&str, Polynomial)> = values
                .iter()
                .map(|(n, q)| (n.as_str(), lam.scale(&crate::ring::Scalar::from_rational(q.clone()))))
                .collect();
            let lifted = gi.ideal.embed_into(&ext)?;
            let mut gens = lifted.substitute_named(&assignment)?.generators().to_vec();
            let y = Polynomial::var(&ext, "y")?;
            gens.push(&(&lam * &y) - &Polynomial::one(&ext));
            let mut keep: Vec<usize> = gi.g_vars.iter().map(|n| ext.var_index(n)).collect::<Result<_>>()?;
            keep.push(ext.var_index("lam")?);
            keep.push(ext.var_index("y")?);
            Ideal::new(&ext, gens)?.embed_into(&ext.subring(&keep))
        }
    }
}

fn g_subring(base: &Arc<PolyRing>, gi: &GraphIdeal) -> Arc<PolyRing> {
    let keep: Vec<usize> = gi.g_vars.iter().filter_map(|n| base.index_of(n)).collect();
    base.subring(&keep)
}

/// Orbit containment: is `w` in the orbit of `v`?
pub fn in_orbit(v: &Form, w: &Form, mode: OrbitMode, budget: &ComputeBudget) -> Result<Verdict> {
    let procedure = match mode {
        OrbitMode::Strict => "in_orbit(strict)",
        OrbitMode::Projective => "in_orbit(projective)",
    };
    let ideal = orbit_ideal(v, w, mode)?;
    match is_trivial(&ideal, budget) {
        Ok(true) => Ok(Verdict::new(VerdictKind::NotInOrbit, procedure).with_budget(budget)),
        Ok(false) => Ok(Verdict::new(VerdictKind::InOrbit, procedure).with_budget(budget)),
        Err(Error::BudgetExceeded(s)) => Ok(Verdict::from_budget_error(procedure, budget, s)),
        Err(e) => Err(e),
    }
}

/// The eliminated graph ideal of a source form: its zero set is the closure
/// of the orbit (restricted to the ansatz) in coefficient space.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitClosureIdeal {
    pub source: Form,
    pub ansatz: GroupAnsatz,
    pub ideal: Ideal,
    pub c_vars: Vec<String>,
    pub monomials: Vec<Vec<u32>>,
    pub from_cache: bool,
    pub stats: Option<BudgetStats>,
}

impl OrbitClosureIdeal {
    /// Specialises `J` at the coefficients of `w`.
    pub fn specialize(&self, w: &Form) -> Result<Ideal> {
        check_shapes(&self.source, w)?;
        let gi = GraphIdeal {
            ideal: self.ideal.clone(),
            c_vars: self.c_vars.clone(),
            g_vars: Vec::new(),
            monomials: self.monomials.clone(),
        };
        let values = gi.coefficient_values(w)?;
        let vals: Vec<(&str, BigRational)> = values.iter().map(|(n, q)| (n.as_str(), q.clone())).collect();
        self.ideal.specialize(&vals)
    }

    pub fn contains(&self, w: &Form) -> Result<bool> {
        Ok(self.specialize(w)?.is_zero())
    }
}

fn ansatz_text(a: &GroupAnsatz) -> String {
    a.entries()
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| match e {
                    super::graph::AnsatzEntry::Free => "free".to_string(),
                    super::graph::AnsatzEntry::Fixed(q) => q.to_string(),
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Cache key of a closure ideal: hash of the source form and the ansatz.
pub fn closure_cache_key(v: &Form, ansatz: &GroupAnsatz) -> Result<String> {
    let s = v.standardized()?;
    Ok(sha256_hex(&format!("closure\nn={}\nd={}\nform={}\nansatz={}", s.n(), s.degree(), s, ansatz_text(ansatz))))
}

/// Target-independent half of closure testing: build the graph ideal
/// without the determinant and eliminate the g-variables.
pub fn closure_ideal(
    v: &Form,
    ansatz: &GroupAnsatz,
    budget: &ComputeBudget,
    cache: Option<&CacheDir>,
) -> Result<OrbitClosureIdeal> {
    let gi = build_graph_ideal(v, ansatz, false)?;
    let key = closure_cache_key(v, ansatz)?;
    let c_ring = gi.ideal.ring().subring(
        &gi.c_vars.iter().map(|n| gi.ideal.ring().var_index(n)).collect::<Result<Vec<_>>>()?,
    );
    let gen_hash = generators_hash(gi.ideal.ring(), gi.ideal.generators());
    if let Some(dir) = cache {
        if let Some(entry) = dir.load(&key)? {
            if entry.generators_sha256 == gen_hash
                && entry.metadata.get("status").map(String::as_str) == Some("complete")
                && *entry.ring == *c_ring
            {
                return Ok(OrbitClosureIdeal {
                    source: v.clone(),
                    ansatz: ansatz.clone(),
                    ideal: Ideal::new(&c_ring, entry.basis)?,
                    c_vars: gi.c_vars,
                    monomials: gi.monomials,
                    from_cache: true,
                    stats: None,
                });
            }
        }
    }
    let names: Vec<&str> = gi.g_vars.iter().map(String::as_str).collect();
    let mut meta = BTreeMap::new();
    meta.insert("kind".to_string(), "orbit-closure".to_string());
    meta.insert("source".to_string(), v.standardized()?.to_string());
    meta.insert("ansatz".to_string(), ansatz_text(ansatz));
    let result = eliminate_named(&gi.ideal, &names, budget);
    let entry_for = |status: &str, basis: Vec<Polynomial>, stats: &BudgetStats| {
        let mut metadata = meta.clone();
        metadata.insert("status".to_string(), status.to_string());
        metadata.insert("pairs".to_string(), stats.pairs_processed.to_string());
        metadata.insert("elapsed-ms".to_string(), stats.elapsed_ms.to_string());
        CacheEntry {
            ring: c_ring.clone(),
            order: TermOrder::GrevLex,
            generators_sha256: gen_hash.clone(),
            metadata,
            basis,
        }
    };
    match result {
        Ok(j) => {
            let j = j.embed_into(&c_ring)?;
            if let Some(dir) = cache {
                dir.store(&key, &entry_for("complete", j.generators().to_vec(), &BudgetStats::default()))?;
            }
            Ok(OrbitClosureIdeal {
                source: v.clone(),
                ansatz: ansatz.clone(),
                ideal: j,
                c_vars: gi.c_vars,
                monomials: gi.monomials,
                from_cache: false,
                stats: None,
            })
        }
        Err(Error::BudgetExceeded(stats)) => {
            if let Some(dir) = cache {
                dir.store(&key, &entry_for("budget-exceeded", Vec::new(), &stats))?;
            }
            Err(Error::BudgetExceeded(stats))
        }
        Err(e) => Err(e),
    }
}

/// Orbit-closure containment: is `w` in the closure of the orbit of `v`?
pub fn in_orbit_closure(v: &Form, w: &Form, budget: &ComputeBudget) -> Result<Verdict> {
    in_orbit_closure_cached(v, w, budget, None)
}

pub fn in_orbit_closure_cached(v: &Form, w: &Form, budget: &ComputeBudget, cache: Option<&CacheDir>) -> Result<Verdict> {
    check_shapes(v, w)?;
    let procedure = "in_orbit_closure";
    match closure_ideal(v, &GroupAnsatz::generic(v.n()), budget, cache) {
        Ok(j) => {
            let kind = if j.contains(w)? { VerdictKind::InClosure } else { VerdictKind::NotInClosure };
            let mut verdict = Verdict::new(kind, procedure).with_budget(budget);
            if j.from_cache {
                verdict = verdict.with_detail("closure ideal read from cache");
            }
            Ok(verdict)
        }
        Err(Error::BudgetExceeded(s)) => Ok(Verdict::from_budget_error(procedure, budget, s)),
        Err(e) => Err(e),
    }
}

/// One-sided containment certificate: substitute the plan's `pre` values,
/// eliminate the free g-entries, substitute `post`. A zero result proves
/// `w` is in the closure of the orbit of `v`; anything else is inconclusive.
pub fn sub_elim_sub(v: &Form, w: &Form, plan: &EliminationPlan, budget: &ComputeBudget) -> Result<Verdict> {
    check_shapes(v, w)?;
    let procedure = "sub_elim_sub";
    let gi = build_graph_ideal(v, &plan.ansatz, false)?;
    plan.validate(&gi, w)?;
    let ring = gi.ideal.ring().clone();
    let pre: Vec<(&str, BigRational)> = plan.pre.iter().map(|(k, q)| (k.as_str(), q.clone())).collect();
    let post: Vec<(&str, BigRational)> = plan.post.iter().map(|(k, q)| (k.as_str(), q.clone())).collect();
    let elim: Vec<&str> = gi.g_vars.iter().map(String::as_str).collect();
    let after_pre = gi.ideal.specialize(&pre)?;
    let keep: Vec<usize> = (0..ring.arity()).filter(|&i| !plan.pre.contains_key(&ring.names()[i])).collect();
    let smaller = after_pre.embed_into(&ring.subring(&keep))?;
    match sub_elim_sub_ideal(&smaller, &[], &elim, &post, budget) {
        Ok(m) => {
            let kind = if m.is_zero() { VerdictKind::ContainmentProven } else { VerdictKind::Inconclusive };
            Ok(Verdict::new(kind, procedure).with_budget(budget))
        }
        Err(Error::BudgetExceeded(s)) => Ok(Verdict::from_budget_error(procedure, budget, s)),
        Err(e) => Err(e),
    }
}

/// The ideal `M` of the sub-elim-sub schedule on an arbitrary ideal:
/// substitute `pre`, eliminate `elim`, substitute `post`.
pub fn sub_elim_sub_ideal(
    ideal: &Ideal,
    pre: &[(&str, BigRational)],
    elim: &[&str],
    post: &[(&str, BigRational)],
    budget: &ComputeBudget,
) -> Result<Ideal> {
    let after_pre = ideal.specialize(pre)?;
    let idx = elim.iter().map(|n| ideal.ring().var_index(n)).collect::<Result<Vec<_>>>()?;
    let eliminated = eliminate(&after_pre, &idx, budget)?;
    eliminated.specialize(post)
}

/// The ideal `K` obtained by eliminating first and substituting afterwards.
pub fn elim_sub_ideal(
    ideal: &Ideal,
    elim: &[&str],
    subs: &[(&str, BigRational)],
    budget: &ComputeBudget,
) -> Result<Ideal> {
    eliminate_named(ideal, elim, budget)?.specialize(subs)
}
