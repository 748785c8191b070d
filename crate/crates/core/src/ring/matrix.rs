use std::collections::HashMap;

use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Determinant of a square polynomial matrix by Laplace expansion along rows,
/// memoised on the set of columns still available.
pub fn determinant(rows: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::NonSquare { rows: 0, cols: 0 });
    }
    for r in rows {
        if r.len() != n {
            return Err(Error::NonSquare { rows: n, cols: r.len() });
        }
    }
    if n > 20 {
        return Err(Error::NonSquare { rows: n, cols: n });
    }
    let ring = rows[0][0].ring().clone();
    for r in rows {
        for e in r {
            if !super::poly::same_ring(e.ring(), &ring) {
                return Err(Error::RingMismatch);
            }
        }
    }
    // minors[mask] = determinant of the bottom |mask| rows restricted to the columns in mask
    let mut minors: HashMap<u32, Polynomial> = HashMap::new();
    minors.insert(0, Polynomial::one(&ring));
    for size in 1..=n {
        let row = n - size;
        let masks: Vec<u32> = (0u32..(1 << n)).filter(|m| m.count_ones() as usize == size).collect();
        for mask in masks {
            let mut acc = Polynomial::zero(&ring);
            let mut sign_pos = true;
            for col in 0..n {
                if mask & (1 << col) == 0 {
                    continue;
                }
                let entry = &rows[row][col];
                if !entry.is_zero() {
                    let minor = &minors[&(mask & !(1 << col))];
                    if !minor.is_zero() {
                        let prod = entry * minor;
                        acc = if sign_pos { &acc + &prod } else { &acc - &prod };
                    }
                }
                sign_pos = !sign_pos;
            }
            minors.insert(mask, acc);
        }
        minors.retain(|m, _| m.count_ones() as usize >= size);
    }
    Ok(minors.remove(&((1u32 << n) - 1)).expect("full minor"))
}
