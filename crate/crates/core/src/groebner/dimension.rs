use crate::error::{Error, Result};
use crate::ring::{Monomial, TermOrder};

use super::{buchberger, ComputeBudget, Ideal};

/// Dimension of the affine variety of a proper ideal: the size of a largest
/// set of variables that contains the support of no leading monomial of a
/// graded reverse lexicographic basis.
pub fn krull_dimension(ideal: &Ideal, budget: &ComputeBudget) -> Result<usize> {
    let n = ideal.ring().arity();
    if n > 64 {
        return Err(Error::InvalidRing("dimension needs at most 64 variables".into()));
    }
    if ideal.is_zero() {
        return Ok(n);
    }
    let gb = buchberger(ideal, TermOrder::GrevLex, budget)?;
    if gb.is_unit() {
        return Err(Error::TrivialIdeal);
    }
    let supports: Vec<u64> = gb.leading_monomials().iter().map(Monomial::support_mask).collect();
    Ok(n - min_hitting_set(&supports, n))
}

/// Smallest number of variables meeting every support set.
fn min_hitting_set(sets: &[u64], n: usize) -> usize {
    let mut sets: Vec<u64> = sets.to_vec();
    sets.sort_by_key(|s| s.count_ones());
    sets.dedup();
    // drop supersets: hitting the smaller set suffices
    let minimal: Vec<u64> = sets
        .iter()
        .copied()
        .filter(|&s| !sets.iter().any(|&t| t != s && t & s == t))
        .collect();
    let mut best = n;
    search(&minimal, 0, 0, &mut best);
    best
}

fn search(sets: &[u64], chosen: u64, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    let unhit = sets.iter().filter(|&&s| s & chosen == 0).min_by_key(|s| s.count_ones());
    let Some(&s) = unhit else {
        *best = size;
        return;
    };
    let mut bits = s;
    while bits != 0 {
        let b = bits & bits.wrapping_neg();
        search(sets, chosen | b, size + 1, best);
        bits &= bits - 1;
    }
}

/// Hilbert function of `R/I` in degrees `0..=up_to` for a homogeneous ideal.
pub fn hilbert_values(ideal: &Ideal, up_to: u32, budget: &ComputeBudget) -> Result<Vec<u64>> {
    if ideal.generators().iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::NonHomogeneous);
    }
    let n = ideal.ring().arity();
    let lms = if ideal.is_zero() {
        Vec::new()
    } else {
        let gb = buchberger(ideal, TermOrder::GrevLex, budget)?;
        if gb.is_unit() {
            return Ok(vec![0; up_to as usize + 1]);
        }
        gb.leading_monomials()
    };
    let lms: Vec<Vec<u32>> = lms.iter().map(|m| m.exponents().to_vec()).collect();
    let mut out = Vec::with_capacity(up_to as usize + 1);
    let mut exps = vec![0u32; n];
    for d in 0..=up_to {
        out.push(count_standard(&lms, &mut exps, 0, d));
    }
    Ok(out)
}

fn count_standard(lms: &[Vec<u32>], exps: &mut [u32], var: usize, remaining: u32) -> u64 {
    let n = exps.len();
    if n == 0 {
        return u64::from(remaining == 0);
    }
    if var == n - 1 {
        exps[var] = remaining;
        let divisible = lms.iter().any(|m| m.iter().zip(exps.iter()).all(|(a, b)| a <= b));
        exps[var] = 0;
        return u64::from(!divisible);
    }
    let mut total = 0;
    for e in 0..=remaining {
        exps[var] = e;
        total += count_standard(lms, exps, var + 1, remaining - e);
    }
    exps[var] = 0;
    total
}
