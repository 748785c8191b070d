//! Gröbner bases over the rationals: Buchberger completion, normal forms,
//! elimination, and the dimension counts built on leading-term ideals.

pub mod cache;
mod dimension;
mod engine;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

pub use dimension::{hilbert_values, krull_dimension};
use engine::{make_primitive, Completion, Engine, Layout, Term};

use crate::error::{BudgetStats, Error, Result};
use crate::ring::{Monomial, PolyRing, Polynomial, Scalar, TermOrder};

/// Limits for a single basis computation. Exceeding any of them aborts with
/// `Error::BudgetExceeded`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ComputeBudget {
    pub max_pairs: u64,
    pub max_total_degree: u32,
    pub max_wall_seconds: u64,
}

impl Default for ComputeBudget {
    fn default() -> Self {
        ComputeBudget { max_pairs: 10_000_000, max_total_degree: 1_000, max_wall_seconds: 300 }
    }
}

impl ComputeBudget {
    pub fn seconds(secs: u64) -> Self {
        ComputeBudget { max_wall_seconds: secs, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing>, generators: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut gens = Vec::new();
        for g in generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Ideal { ring: ring.clone(), generators: gens })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal { ring: ring.clone(), generators: Vec::new() }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// True iff every generator is zero.
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn substitute(&self, assignment: &[(usize, Polynomial)]) -> Result<Ideal> {
        let gens = self.generators.iter().map(|g| g.substitute(assignment)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    pub fn substitute_named(&self, assignment: &[(&str, Polynomial)]) -> Result<Ideal> {
        let gens = self.generators.iter().map(|g| g.substitute_named(assignment)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// Sets the named variables to rational values.
    pub fn specialize(&self, values: &[(&str, BigRational)]) -> Result<Ideal> {
        let assignment: Vec<(&str, Polynomial)> = values
            .iter()
            .map(|(n, q)| (*n, Polynomial::from_rational(&self.ring, q.clone())))
            .collect();
        self.substitute_named(&assignment)
    }

    /// Moves the generators into `target`, matching variables by name.
    pub fn embed_into(&self, target: &Arc<PolyRing>) -> Result<Ideal> {
        let gens = self.generators.iter().map(|g| g.embed_into(target)).collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }

    pub fn groebner(&self, order: TermOrder, budget: &ComputeBudget) -> Result<GroebnerBasis> {
        buchberger(self, order, budget)
    }
}

/// A reduced Gröbner basis. Elements are monic and sorted by leading monomial, smallest first.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    order: TermOrder,
    basis: Vec<Polynomial>,
    internal: Vec<Vec<Term>>,
    stats: BudgetStats,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.order == other.order && self.basis == other.basis
    }
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    /// Always true: only reduced bases are produced.
    pub fn is_reduced(&self) -> bool {
        true
    }

    /// Progress counters of the computation that produced this basis.
    pub fn stats(&self) -> &BudgetStats {
        &self.stats
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal { ring: self.ring.clone(), generators: self.basis.clone() }
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|p| p.leading_term(self.order).expect("basis elements are nonzero").1.clone())
            .collect()
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() || self.is_unit() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let lay = Layout::new(self.order, self.ring.arity());
        let (terms, den, content) = to_internal(f, &lay)?;
        let budget = ComputeBudget { max_wall_seconds: u64::MAX, ..Default::default() };
        let mut eng = Engine::new(lay, &budget);
        let reducers = Engine::reducers(self.internal.clone());
        let mut scale = (den, content);
        let (r, _) = eng.reduce(terms, 0, &reducers, None, Some(&mut scale))?;
        let factor = BigRational::new(scale.1, scale.0);
        Ok(from_internal(&self.ring, &r, &lay, Some(&factor)))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Checks that every S-polynomial of basis pairs reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> Result<bool> {
        let lay = Layout::new(self.order, self.ring.arity());
        let budget = ComputeBudget { max_wall_seconds: u64::MAX, ..Default::default() };
        let mut eng = Engine::new(lay, &budget);
        let reducers = Engine::reducers(self.internal.clone());
        for i in 0..self.internal.len() {
            for j in i + 1..self.internal.len() {
                let s = eng.s_polynomial(&self.internal[i], &self.internal[j]);
                let (r, _) = eng.reduce(s, 0, &reducers, None, None)?;
                if !r.is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Clears denominators; returns the primitive integer terms sorted by the
/// layout plus the multiplier and content so that `terms = f * den / content`.
fn to_internal(f: &Polynomial, lay: &Layout) -> Result<(Vec<Term>, BigInt, BigInt)> {
    if !f.ring().domain().is_rational() {
        return Err(Error::InvalidRing("Gröbner bases are computed over QQ only".into()));
    }
    let mut den = BigInt::one();
    let rats: Vec<(BigRational, &Monomial)> = f
        .terms()
        .iter()
        .map(|(c, m)| (c.as_rational().expect("rational domain"), m))
        .collect();
    for (q, _) in &rats {
        den = den.lcm(q.denom());
    }
    let mut terms: Vec<Term> = rats
        .iter()
        .map(|(q, m)| ((q * BigRational::from_integer(den.clone())).to_integer(), lay.exp(m.exponents())))
        .collect();
    terms.sort_by(|a, b| lay.cmp(&b.1, &a.1));
    let content = make_primitive(&mut terms);
    Ok((terms, den, content))
}

/// Converts back to a ring polynomial, either monic or scaled by `factor`.
fn from_internal(ring: &Arc<PolyRing>, terms: &[Term], lay: &Layout, factor: Option<&BigRational>) -> Polynomial {
    let Some(lead) = terms.first() else { return Polynomial::zero(ring) };
    let mult = match factor {
        Some(f) => f.clone(),
        None => BigRational::new(BigInt::one(), lead.0.clone()),
    };
    Polynomial::from_terms(
        ring,
        terms.iter().map(|(c, e)| {
            let q = BigRational::from_integer(c.clone()) * &mult;
            (Scalar::from_rational(q), Monomial::from_exponents(lay.exps(e).to_vec()))
        }),
    )
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn buchberger(ideal: &Ideal, order: TermOrder, budget: &ComputeBudget) -> Result<GroebnerBasis> {
    let ring = ideal.ring();
    let lay = Layout::new(order, ring.arity());
    let input = ideal
        .generators()
        .iter()
        .map(|g| to_internal(g, &lay).map(|t| t.0))
        .collect::<Result<Vec<_>>>()?;
    let mut eng = Engine::new(lay, budget);
    let internal = match eng.complete(input)? {
        Completion::Unit => {
            let one = lay.exp(&vec![0; ring.arity()]);
            vec![vec![(BigInt::one(), one)]]
        }
        Completion::Basis(b) => b,
    };
    let mut internal = internal;
    internal.sort_by(|a, b| lay.cmp(&a[0].1, &b[0].1));
    let basis = internal.iter().map(|t| from_internal(ring, t, &lay, None)).collect();
    Ok(GroebnerBasis { ring: ring.clone(), order, basis, internal, stats: eng.stats("completed") })
}

/// S-polynomial of two nonzero polynomials under `order`, scaled to be primitive over the integers.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: TermOrder) -> Result<Polynomial> {
    if f.ring() != g.ring() {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() || g.is_zero() {
        return Ok(Polynomial::zero(f.ring()));
    }
    let lay = Layout::new(order, f.ring().arity());
    let budget = ComputeBudget::default();
    let eng = Engine::new(lay, &budget);
    let s = eng.s_polynomial(&to_internal(f, &lay)?.0, &to_internal(g, &lay)?.0);
    Ok(from_internal(f.ring(), &s, &lay, Some(&BigRational::one())))
}

/// How `eliminate` orders the ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EliminationOrder {
    /// Graded reverse lexicographic blocks, eliminated variables first.
    Block,
    /// Pure lexicographic order with the eliminated variables first.
    Lex,
}

/// `I ∩ k[kept variables]`, returned as an ideal of the subring on the kept
/// variables (in their original order). The generators form a Gröbner basis.
pub fn eliminate(ideal: &Ideal, elim: &[usize], budget: &ComputeBudget) -> Result<Ideal> {
    eliminate_with(ideal, elim, EliminationOrder::Block, budget)
}

pub fn eliminate_with(ideal: &Ideal, elim: &[usize], how: EliminationOrder, budget: &ComputeBudget) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.arity();
    if let Some(&bad) = elim.iter().find(|&&i| i >= n) {
        return Err(Error::UnknownVariable(format!("#{bad}")));
    }
    let mut elim: Vec<usize> = elim.to_vec();
    elim.sort_unstable();
    elim.dedup();
    let kept: Vec<usize> = (0..n).filter(|i| !elim.contains(i)).collect();
    let perm: Vec<usize> = elim.iter().chain(kept.iter()).copied().collect();
    let permuted = ring.subring(&perm);
    let sub = ring.subring(&kept);
    let order = match how {
        EliminationOrder::Block => TermOrder::Block(elim.len()),
        EliminationOrder::Lex => TermOrder::Lex,
    };
    let gb = buchberger(&ideal.embed_into(&permuted)?, order, budget)?;
    let k = elim.len();
    let gens = gb
        .basis()
        .iter()
        .filter(|p| p.terms().iter().all(|(_, m)| m.exponents()[..k].iter().all(|&e| e == 0)))
        .map(|p| p.embed_into(&sub))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&sub, gens)
}

/// Eliminates variables given by name.
pub fn eliminate_named(ideal: &Ideal, elim: &[&str], budget: &ComputeBudget) -> Result<Ideal> {
    let idx = elim.iter().map(|n| ideal.ring().var_index(n)).collect::<Result<Vec<_>>>()?;
    eliminate(ideal, &idx, budget)
}

/// True iff `1 ∈ I`.
pub fn is_trivial(ideal: &Ideal, budget: &ComputeBudget) -> Result<bool> {
    if ideal.is_zero() {
        return Ok(false);
    }
    if ideal.generators().iter().any(|g| g.is_constant()) {
        return Ok(true);
    }
    Ok(buchberger(ideal, TermOrder::GrevLex, budget)?.is_unit())
}

pub fn is_zero(ideal: &Ideal) -> bool {
    ideal.is_zero()
}

/// True iff the two ideals (same ring) are equal, by comparing reduced bases.
pub fn same_ideal(a: &Ideal, b: &Ideal, budget: &ComputeBudget) -> Result<bool> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    let ga = buchberger(a, TermOrder::GrevLex, budget)?;
    let gb = buchberger(b, TermOrder::GrevLex, budget)?;
    Ok(ga.basis() == gb.basis())
}
