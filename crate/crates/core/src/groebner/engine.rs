//! Fraction-free Buchberger kernel.
//!
//! Polynomials are held as integer-primitive term lists sorted by the active
//! order. Exponent vectors carry two header slots with the degrees of the two
//! order blocks so that multiplication and divisibility stay elementwise.

use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ComputeBudget;
use crate::error::{BudgetStats, Error, Result};
use crate::ring::TermOrder;

pub(crate) type Exp = Box<[u32]>;
pub(crate) type Term = (BigInt, Exp);

const HEAD: usize = 2;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Layout {
    lex: bool,
    k: usize,
    n: usize,
}

impl Layout {
    pub fn new(order: TermOrder, n: usize) -> Self {
        match order {
            TermOrder::Lex => Layout { lex: true, k: n, n },
            TermOrder::GrevLex => Layout { lex: false, k: n, n },
            TermOrder::Block(k) => Layout { lex: false, k: k.min(n), n },
        }
    }

    pub fn exp(&self, exps: &[u32]) -> Exp {
        debug_assert_eq!(exps.len(), self.n);
        let mut v = Vec::with_capacity(HEAD + self.n);
        v.push(exps[..self.k].iter().sum());
        v.push(exps[self.k..].iter().sum());
        v.extend_from_slice(exps);
        v.into_boxed_slice()
    }

    pub fn exps<'a>(&self, e: &'a Exp) -> &'a [u32] {
        &e[HEAD..]
    }

    pub fn degree(&self, e: &Exp) -> u32 {
        e[0] + e[1]
    }

    pub fn cmp(&self, a: &Exp, b: &Exp) -> Ordering {
        if self.lex {
            return a[HEAD..].cmp(&b[HEAD..]);
        }
        let split = HEAD + self.k;
        a[0].cmp(&b[0])
            .then_with(|| revcmp(&a[HEAD..split], &b[HEAD..split]))
            .then_with(|| a[1].cmp(&b[1]))
            .then_with(|| revcmp(&a[split..], &b[split..]))
    }

    fn lcm(&self, a: &Exp, b: &Exp) -> Exp {
        let e: Vec<u32> = a[HEAD..].iter().zip(&b[HEAD..]).map(|(x, y)| *x.max(y)).collect();
        self.exp(&e)
    }
}

fn revcmp(a: &[u32], b: &[u32]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn mul_exp(a: &Exp, b: &Exp) -> Exp {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

fn divides(a: &Exp, b: &Exp) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

fn quotient(b: &Exp, a: &Exp) -> Exp {
    b.iter().zip(a.iter()).map(|(x, y)| x - y).collect()
}

fn coprime(a: &Exp, b: &Exp) -> bool {
    a[HEAD..].iter().zip(&b[HEAD..]).all(|(x, y)| *x == 0 || *y == 0)
}

fn mask(e: &Exp) -> u64 {
    e[HEAD..]
        .iter()
        .enumerate()
        .filter(|(_, x)| **x > 0)
        .fold(0, |m, (i, _)| m | 1u64 << (i % 64))
}

/// Divides out the content and makes the leading coefficient positive.
/// Returns the factor the polynomial was divided by (signed).
pub(crate) fn make_primitive(f: &mut [Term]) -> BigInt {
    let Some(first) = f.first() else { return BigInt::one() };
    let mut g = BigInt::zero();
    for (c, _) in f.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if first.0.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (c, _) in f.iter_mut() {
            *c /= &g;
        }
    }
    g
}

/// `a*f - b*(q*g)`, both inputs sorted descending.
fn combine(lay: &Layout, a: &BigInt, f: &[Term], b: &BigInt, q: Option<&Exp>, g: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let shifted = |t: &Term| -> Exp {
        match q {
            Some(q) => mul_exp(&t.1, q),
            None => t.1.clone(),
        }
    };
    let mut gj = g.first().map(shifted);
    while i < f.len() || j < g.len() {
        let ord = match (f.get(i), gj.as_ref()) {
            (Some(ft), Some(ge)) => lay.cmp(&ft.1, ge),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push((a * &f[i].0, f[i].1.clone()));
                i += 1;
            }
            Ordering::Less => {
                out.push((-(b * &g[j].0), gj.take().expect("pending term")));
                j += 1;
                gj = g.get(j).map(shifted);
            }
            Ordering::Equal => {
                let c = a * &f[i].0 - b * &g[j].0;
                if !c.is_zero() {
                    out.push((c, f[i].1.clone()));
                }
                i += 1;
                j += 1;
                gj = g.get(j).map(shifted);
            }
        }
    }
    out
}

pub(crate) struct Elem {
    pub poly: Vec<Term>,
    lm_mask: u64,
    sugar: u32,
    redundant: bool,
}

impl Elem {
    fn new(poly: Vec<Term>, sugar: u32) -> Self {
        let lm_mask = mask(&poly[0].1);
        Elem { poly, lm_mask, sugar, redundant: false }
    }

    fn lm(&self) -> &Exp {
        &self.poly[0].1
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exp,
    sugar: u32,
}

/// Tracks budgets and progress for one computation.
pub(crate) struct Engine<'a> {
    pub lay: Layout,
    budget: &'a ComputeBudget,
    start: Instant,
    ticks: u64,
    pub pairs_processed: u64,
    pairs_pending: u64,
    basis_size: usize,
    max_degree: u32,
}

/// Result of a completion: either the unit ideal or a reduced, primitive basis.
pub(crate) enum Completion {
    Unit,
    Basis(Vec<Vec<Term>>),
}

impl<'a> Engine<'a> {
    pub fn new(lay: Layout, budget: &'a ComputeBudget) -> Self {
        Engine {
            lay,
            budget,
            start: Instant::now(),
            ticks: 0,
            pairs_processed: 0,
            pairs_pending: 0,
            basis_size: 0,
            max_degree: 0,
        }
    }

    pub fn stats(&self, reason: &str) -> BudgetStats {
        BudgetStats {
            reason: reason.to_string(),
            pairs_processed: self.pairs_processed,
            pairs_pending: self.pairs_pending,
            basis_size: self.basis_size,
            max_degree: self.max_degree,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        }
    }

    fn abort(&self, reason: &str) -> Error {
        Error::BudgetExceeded(self.stats(reason))
    }

    fn tick(&mut self) -> Result<()> {
        self.ticks += 1;
        if self.ticks % 64 == 0 && self.start.elapsed().as_secs_f64() > self.budget.max_wall_seconds as f64 {
            return Err(self.abort("wall-clock"));
        }
        Ok(())
    }

    fn find_reducer<'e>(&self, m: &Exp, elems: &'e [Elem], skip: Option<usize>) -> Option<&'e Elem> {
        let mm = mask(m);
        let mut best: Option<&Elem> = None;
        for (idx, e) in elems.iter().enumerate() {
            if e.redundant || Some(idx) == skip || e.lm_mask & !mm != 0 || !divides(e.lm(), m) {
                continue;
            }
            if best.map_or(true, |b| e.poly.len() < b.poly.len()) {
                best = Some(e);
            }
        }
        best
    }

    /// Full reduction of `f` by the active elements. Returns the primitive
    /// remainder and its sugar. When `scale` is given it is multiplied by the
    /// factor `s` with `remainder = s * (f - ideal element)`.
    pub fn reduce(
        &mut self,
        f: Vec<Term>,
        mut sugar: u32,
        elems: &[Elem],
        skip: Option<usize>,
        mut scale: Option<&mut (BigInt, BigInt)>,
    ) -> Result<(Vec<Term>, u32)> {
        let mut f = f;
        let mut head = 0usize;
        let mut out: Vec<Term> = Vec::new();
        let mut since_content = 0u32;
        while head < f.len() {
            self.tick()?;
            let reducer = self.find_reducer(&f[head].1, elems, skip);
            let Some(g) = reducer else {
                out.push(f[head].clone());
                head += 1;
                continue;
            };
            let q = quotient(&f[head].1, g.lm());
            let lc_g = &g.poly[0].0;
            let lc_f = &f[head].0;
            let d = lc_f.gcd(lc_g);
            let (a, b) = (lc_g / &d, lc_f / &d);
            let deg_q = self.lay.degree(&q);
            sugar = sugar.max(g.sugar + deg_q);
            let q = if deg_q == 0 { None } else { Some(&q) };
            let new_f = combine(&self.lay, &a, &f[head + 1..], &b, q, &g.poly[1..]);
            if !a.is_one() {
                for (c, _) in out.iter_mut() {
                    *c *= &a;
                }
                if let Some(s) = scale.as_deref_mut() {
                    s.0 *= &a;
                }
            }
            f = new_f;
            head = 0;
            since_content += 1;
            if since_content >= 8 {
                since_content = 0;
                let mut g = BigInt::zero();
                for (c, _) in out.iter().chain(f.iter()) {
                    g = g.gcd(c);
                    if g.is_one() {
                        break;
                    }
                }
                if !g.is_zero() && !g.is_one() {
                    for (c, _) in out.iter_mut().chain(f.iter_mut()) {
                        *c /= &g;
                    }
                    if let Some(s) = scale.as_deref_mut() {
                        s.1 *= &g;
                    }
                }
            }
        }
        let g = make_primitive(&mut out);
        if let Some(s) = scale {
            s.1 *= g;
        }
        Ok((out, sugar))
    }

    fn spoly(&self, p: &Pair, elems: &[Elem]) -> Vec<Term> {
        let (fi, fj) = (&elems[p.i], &elems[p.j]);
        let (ci, cj) = (&fi.poly[0].0, &fj.poly[0].0);
        let d = ci.gcd(cj);
        let qi = quotient(&p.lcm, fi.lm());
        let qj = quotient(&p.lcm, fj.lm());
        let a = cj / &d;
        let b = ci / &d;
        let left: Vec<Term> = fi.poly[1..].iter().map(|(c, e)| (c.clone(), mul_exp(e, &qi))).collect();
        combine(&self.lay, &a, &left, &b, Some(&qj), &fj.poly[1..])
    }

    fn pair_sugar(&self, elems: &[Elem], i: usize, j: usize, lcm: &Exp) -> u32 {
        let d = self.lay.degree(lcm);
        let si = elems[i].sugar + d - self.lay.degree(elems[i].lm());
        let sj = elems[j].sugar + d - self.lay.degree(elems[j].lm());
        si.max(sj)
    }

    /// Gebauer–Möller installation of a new element.
    fn update(&self, elems: &mut Vec<Elem>, pairs: &mut Vec<Pair>, h: Elem) {
        let hi = elems.len();
        let lm_h = h.lm().clone();
        elems.push(h);
        let mut cands: Vec<(usize, Exp, bool)> = (0..hi)
            .filter(|&g| !elems[g].redundant)
            .map(|g| (g, self.lay.lcm(&lm_h, elems[g].lm()), coprime(&lm_h, elems[g].lm())))
            .collect();
        // a pair whose lcm is properly divisible by another new pair's lcm is superfluous
        let keep: Vec<bool> = cands
            .iter()
            .map(|(_, l, _)| !cands.iter().any(|(_, l2, _)| l2 != l && divides(l2, l)))
            .collect();
        let mut filtered: Vec<(usize, Exp, bool)> = Vec::new();
        for (c, k) in cands.drain(..).zip(keep) {
            if k {
                filtered.push(c);
            }
        }
        // among equal lcms keep one, dropping the whole class if any member is coprime
        filtered.sort_by(|a, b| self.lay.cmp(&a.1, &b.1).then(a.0.cmp(&b.0)));
        let mut new_pairs = Vec::new();
        let mut idx = 0;
        while idx < filtered.len() {
            let mut end = idx + 1;
            while end < filtered.len() && filtered[end].1 == filtered[idx].1 {
                end += 1;
            }
            if !filtered[idx..end].iter().any(|c| c.2) {
                let (g, lcm, _) = filtered[idx].clone();
                let sugar = self.pair_sugar(elems, g, hi, &lcm);
                new_pairs.push(Pair { i: g, j: hi, lcm, sugar });
            }
            idx = end;
        }
        pairs.retain(|p| {
            if !divides(&lm_h, &p.lcm) {
                return true;
            }
            let li = self.lay.lcm(elems[p.i].lm(), &lm_h);
            let lj = self.lay.lcm(elems[p.j].lm(), &lm_h);
            li == p.lcm || lj == p.lcm
        });
        pairs.extend(new_pairs);
        for g in 0..hi {
            if !elems[g].redundant && divides(&lm_h, elems[g].lm()) {
                elems[g].redundant = true;
            }
        }
    }

    fn select(&self, pairs: &mut Vec<Pair>) -> Option<Pair> {
        if pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for (k, p) in pairs.iter().enumerate().skip(1) {
            let b = &pairs[best];
            let ord = p
                .sugar
                .cmp(&b.sugar)
                .then_with(|| self.lay.cmp(&p.lcm, &b.lcm))
                .then_with(|| (p.j, p.i).cmp(&(b.j, b.i)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        Some(pairs.swap_remove(best))
    }

    fn is_constant(&self, f: &[Term]) -> bool {
        f.len() == 1 && self.lay.degree(&f[0].1) == 0
    }

    /// Buchberger completion followed by interreduction.
    pub fn complete(&mut self, mut input: Vec<Vec<Term>>) -> Result<Completion> {
        input.retain(|f| !f.is_empty());
        input.sort_by(|a, b| self.lay.cmp(&a[0].1, &b[0].1).then(a.len().cmp(&b.len())));
        let mut elems: Vec<Elem> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        for f in input {
            let sugar = f.iter().map(|t| self.lay.degree(&t.1)).max().unwrap_or(0);
            let (r, sugar) = self.reduce(f, sugar, &elems, None, None)?;
            if r.is_empty() {
                continue;
            }
            if self.is_constant(&r) {
                return Ok(Completion::Unit);
            }
            self.update(&mut elems, &mut pairs, Elem::new(r, sugar));
        }
        while let Some(p) = self.select(&mut pairs) {
            self.pairs_pending = pairs.len() as u64;
            self.basis_size = elems.iter().filter(|e| !e.redundant).count();
            let deg = self.lay.degree(&p.lcm);
            self.max_degree = self.max_degree.max(deg);
            if self.pairs_processed >= self.budget.max_pairs {
                return Err(self.abort("pair limit"));
            }
            if deg > self.budget.max_total_degree {
                return Err(self.abort("degree limit"));
            }
            self.pairs_processed += 1;
            let s = self.spoly(&p, &elems);
            if s.is_empty() {
                continue;
            }
            let (r, sugar) = self.reduce(s, p.sugar, &elems, None, None)?;
            if r.is_empty() {
                continue;
            }
            if self.is_constant(&r) {
                return Ok(Completion::Unit);
            }
            self.update(&mut elems, &mut pairs, Elem::new(r, sugar));
        }
        self.pairs_pending = 0;
        self.interreduce(elems).map(Completion::Basis)
    }

    fn interreduce(&mut self, elems: Vec<Elem>) -> Result<Vec<Vec<Term>>> {
        let mut active: Vec<Elem> = elems.into_iter().filter(|e| !e.redundant).collect();
        active.sort_by(|a, b| self.lay.cmp(a.lm(), b.lm()));
        let mut out = Vec::with_capacity(active.len());
        for idx in 0..active.len() {
            let f = active[idx].poly.clone();
            let (r, _) = self.reduce(f, 0, &active, Some(idx), None)?;
            out.push(r);
        }
        self.basis_size = out.len();
        Ok(out)
    }

    /// Wraps an already reduced basis so it can serve as a reducer set.
    pub fn reducers(basis: Vec<Vec<Term>>) -> Vec<Elem> {
        basis.into_iter().filter(|f| !f.is_empty()).map(|f| Elem::new(f, 0)).collect()
    }

    /// S-polynomial of two primitive polynomials, for criterion checks.
    pub fn s_polynomial(&self, f: &[Term], g: &[Term]) -> Vec<Term> {
        let elems = vec![Elem::new(f.to_vec(), 0), Elem::new(g.to_vec(), 0)];
        let lcm = self.lay.lcm(elems[0].lm(), elems[1].lm());
        let mut s = self.spoly(&Pair { i: 0, j: 1, lcm, sugar: 0 }, &elems);
        make_primitive(&mut s);
        s
    }
}
