#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use orbitkit::orbit::Form;
use orbitkit::ring::{Monomial, PolyRing, Polynomial, Scalar};

pub fn q(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

/// Evaluates a rational polynomial at a rational point, term by term.
pub fn eval(p: &Polynomial, point: &[BigRational]) -> BigRational {
    let mut total = BigRational::zero();
    for (c, m) in p.terms() {
        let mut v = c.as_rational().expect("rational coefficient");
        for (x, &e) in point.iter().zip(m.exponents()) {
            for _ in 0..e {
                v *= x;
            }
        }
        total += v;
    }
    total
}

pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for k in c..cols {
                    let delta = &f * &rows[r][k];
                    rows[i][k] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

/// Dimension of the span of `x_j·∂_i f`: the tangent space to the orbit at `f`.
pub fn tangent_rank(f: &Form) -> usize {
    let ring = f.ring();
    let n = f.n();
    let mut vectors: Vec<Polynomial> = Vec::new();
    for i in 0..n {
        let d = f.poly().partial_derivative(i).unwrap();
        for j in 0..n {
            vectors.push(&d * &Polynomial::var_at(ring, j));
        }
    }
    let mut monos: Vec<Monomial> = vectors.iter().flat_map(|p| p.terms().iter().map(|(_, m)| m.clone())).collect();
    monos.sort_by(|a, b| a.exponents().cmp(b.exponents()));
    monos.dedup();
    let rows = vectors
        .iter()
        .map(|p| monos.iter().map(|m| p.coefficient(m).as_rational().unwrap()).collect())
        .collect();
    rank(rows)
}

pub fn leibniz_det(m: &[Vec<Polynomial>], ring: &Arc<PolyRing>) -> Polynomial {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Polynomial::zero(ring);
    let mut c = vec![0usize; n];
    let mut sign = 1i64;
    let add = |perm: &[usize], sign: i64, total: &mut Polynomial| {
        let mut t = Polynomial::from_int(ring, sign);
        for (i, &j) in perm.iter().enumerate() {
            t = &t * &m[i][j];
        }
        *total = &*total + &t;
    };
    add(&perm, sign, &mut total);
    // Heap's algorithm; every swap flips the sign
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            add(&perm, sign, &mut total);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

/// Invertible integer matrix as a product of unitriangular factors.
pub fn unimodular(n: usize, lower: &[i64], upper: &[i64]) -> Vec<Vec<i64>> {
    let mut l = vec![vec![0i64; n]; n];
    let mut u = vec![vec![0i64; n]; n];
    let mut k = 0;
    for i in 0..n {
        l[i][i] = 1;
        u[i][i] = 1;
        for j in 0..i {
            l[i][j] = lower[k % lower.len()];
            u[j][i] = upper[k % upper.len()];
            k += 1;
        }
    }
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| l[i][k] * u[k][j]).sum()).collect()).collect()
}

/// `x_i ↦ Σ_j g_ij x_j`.
pub fn act(p: &Polynomial, g: &[Vec<i64>]) -> Polynomial {
    let ring = p.ring();
    let images: Vec<(usize, Polynomial)> = g
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut img = Polynomial::zero(ring);
            for (j, &c) in row.iter().enumerate() {
                img = &img + &Polynomial::var_at(ring, j).scale(&Scalar::from_int(c));
            }
            (i, img)
        })
        .collect();
    p.substitute(&images).unwrap()
}
