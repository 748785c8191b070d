use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;

use super::monomial::{Monomial, TermOrder};
use super::scalar::Scalar;
use super::PolyRing;
use crate::error::{Error, Result};

/// Sparse polynomial. Terms are kept sorted by graded reverse lexicographic
/// order, largest first, with no zero coefficients; this makes structural
/// equality coincide with polynomial equality.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Scalar, Monomial)>,
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

const CANONICAL: TermOrder = TermOrder::GrevLex;

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(c, Monomial::one(ring.arity()))] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Polynomial::constant(ring, Scalar::one())
    }

    pub fn from_rational(ring: &Arc<PolyRing>, q: BigRational) -> Self {
        Polynomial::constant(ring, Scalar::from_rational(q))
    }

    pub fn from_int(ring: &Arc<PolyRing>, i: i64) -> Self {
        Polynomial::constant(ring, Scalar::from_int(i))
    }

    pub fn var_at(ring: &Arc<PolyRing>, index: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Scalar::one(), Monomial::var(ring.arity(), index, 1))],
        }
    }

    pub fn var(ring: &Arc<PolyRing>, name: &str) -> Result<Self> {
        Ok(Polynomial::var_at(ring, ring.var_index(name)?))
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Scalar, Monomial)>) -> Self {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (c, m) in terms {
            debug_assert_eq!(m.arity(), ring.arity());
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(e) => *e = e.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Polynomial::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<PolyRing>, acc: HashMap<Monomial, Scalar>) -> Self {
        let mut terms: Vec<(Scalar, Monomial)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (c, m)).collect();
        terms.sort_by(|a, b| CANONICAL.cmp(&b.1, &a.1));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Scalar, Monomial)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Scalar, Monomial)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, m)| m.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero()),
            [(c, m)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(_, m)| m.degree()).max()
    }

    /// Degree if every term has the same total degree in the variables `vars`.
    pub fn homogeneous_degree_in(&self, vars: &[usize]) -> Option<u32> {
        let mut deg = None;
        for (_, m) in &self.terms {
            let d: u32 = vars.iter().map(|&i| m.exponents()[i]).sum();
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn is_homogeneous(&self) -> bool {
        let all: Vec<usize> = (0..self.ring.arity()).collect();
        self.is_zero() || self.homogeneous_degree_in(&all).is_some()
    }

    pub fn uses_variable(&self, index: usize) -> bool {
        self.terms.iter().any(|(_, m)| m.exponents()[index] > 0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.iter().find(|(_, t)| t == m).map(|(c, _)| c.clone()).unwrap_or_default()
    }

    pub fn leading_term(&self, order: TermOrder) -> Option<&(Scalar, Monomial)> {
        if order == CANONICAL {
            return self.terms.first();
        }
        self.terms.iter().max_by(|a, b| order.cmp(&a.1, &b.1))
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let flip = |c: &Scalar| if negate { c.neg() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match CANONICAL.cmp(&a[i].1, &b[j].1) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((flip(&b[j].0), b[j].1.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { a[i].0.sub(&b[j].0) } else { a[i].0.add(&b[j].0) };
                    if !c.is_zero() {
                        out.push((c, a[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(c, m)| (flip(c), m.clone())));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let dom = self.ring.domain();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.len() * other.len());
        for (c1, m1) in &self.terms {
            for (c2, m2) in &other.terms {
                let c = dom.mul(c1, c2);
                let m = m1.mul(m2);
                match acc.get_mut(&m) {
                    Some(e) => *e = e.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let dom = self.ring.domain();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, m)| (dom.mul(a, c), m.clone())).collect(),
        }
    }

    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Polynomial {
        let mut p = self.scale(c);
        for t in &mut p.terms {
            t.1 = t.1.mul(m);
        }
        p
    }

    pub fn pow(&self, mut k: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.product(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.product(&base);
            }
        }
        acc
    }

    /// Applies the ring homomorphism sending variable `i` to `images[i]`.
    /// All images must live in `target`; coefficients must be valid there.
    pub fn map_into(&self, target: &Arc<PolyRing>, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.arity() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.arity()
            )));
        }
        if images.iter().any(|p| !same_ring(p.ring(), target)) {
            return Err(Error::RingMismatch);
        }
        if !self.ring.domain().is_rational() && self.ring.domain() != target.domain() {
            return Err(Error::RingMismatch);
        }
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(target);
        for (c, m) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((i, e)).or_insert_with(|| images[i].pow(e));
                term = term.product(p);
            }
            acc = acc.merge(&term, false);
        }
        Ok(acc)
    }

    /// Substitutes the listed variables, leaving the others fixed.
    pub fn substitute(&self, assignment: &[(usize, Polynomial)]) -> Result<Polynomial> {
        let mut images: Vec<Polynomial> = (0..self.ring.arity()).map(|i| Polynomial::var_at(&self.ring, i)).collect();
        for (i, p) in assignment {
            if *i >= images.len() {
                return Err(Error::DimensionMismatch(format!("no variable with index {i}")));
            }
            images[*i] = p.clone();
        }
        self.map_into(&self.ring, &images)
    }

    /// Substitutes variables given by name.
    pub fn substitute_named(&self, assignment: &[(&str, Polynomial)]) -> Result<Polynomial> {
        let idx = assignment
            .iter()
            .map(|(n, p)| Ok((self.ring.var_index(n)?, p.clone())))
            .collect::<Result<Vec<_>>>()?;
        self.substitute(&idx)
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    /// Fails with `UnknownVariable` if a used variable is missing there.
    pub fn embed_into(&self, target: &Arc<PolyRing>) -> Result<Polynomial> {
        if !self.ring.domain().is_rational() && self.ring.domain() != target.domain() {
            return Err(Error::RingMismatch);
        }
        let map: Vec<Option<usize>> = self.ring.names().iter().map(|n| target.index_of(n)).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            let mut exps = vec![0u32; target.arity()];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] += e,
                    None => return Err(Error::UnknownVariable(self.ring.names()[i].clone())),
                }
            }
            terms.push((c.clone(), Monomial::from_exponents(exps)));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Polynomial> {
        if var >= self.ring.arity() {
            return Err(Error::UnknownVariable(format!("#{var}")));
        }
        let terms = self.terms.iter().filter_map(|(c, m)| {
            let e = m.exponents()[var];
            if e == 0 {
                return None;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            let q = BigRational::from_integer(e.into());
            Some((c.scale(&q), Monomial::from_exponents(exps)))
        });
        Ok(Polynomial::from_terms(&self.ring, terms.collect::<Vec<_>>()))
    }

    pub fn partial_derivative_named(&self, var: &str) -> Result<Polynomial> {
        self.partial_derivative(self.ring.var_index(var)?)
    }

    /// Splits `self = Σ coeff_k · mono_k` where `mono_k` are monomials in the
    /// variables `wrt` and the coefficients are free of them. Zero
    /// coefficients are omitted; entries are ordered by `mono_k`, largest first.
    pub fn coefficient_system(&self, wrt: &[usize]) -> Vec<(Monomial, Polynomial)> {
        let arity = self.ring.arity();
        let mut groups: HashMap<Monomial, Vec<(Scalar, Monomial)>> = HashMap::new();
        for (c, m) in &self.terms {
            let mut outer = vec![0u32; arity];
            let mut inner = m.exponents().to_vec();
            for &i in wrt {
                outer[i] = inner[i];
                inner[i] = 0;
            }
            groups
                .entry(Monomial::from_exponents(outer))
                .or_default()
                .push((c.clone(), Monomial::from_exponents(inner)));
        }
        let mut out: Vec<(Monomial, Polynomial)> = groups
            .into_iter()
            .map(|(m, ts)| (m, Polynomial::from_terms(&self.ring, ts)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        out.sort_by(|a, b| CANONICAL.cmp(&b.0, &a.0));
        out
    }

    /// Coefficient system with respect to all `Main` variables.
    pub fn coefficients_in_main(&self) -> Vec<(Monomial, Polynomial)> {
        self.coefficient_system(&self.ring.indices_of_class(super::VarClass::Main))
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::format_poly(self))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

// Operator forms panic on ring mismatch; use the `checked_*` methods when the
// rings are not known to agree.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(c, m)| (c.neg(), m.clone())).collect(),
        }
    }
}
