//! Coefficient domains: the rationals and simple extensions `Q[z]/(m(z))`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Monic univariate polynomial with integer coefficients, stored lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinimalPolynomial {
    coeffs: Vec<BigInt>,
}

impl MinimalPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::InvalidRing(
                "minimal polynomial must have degree at least 1".into(),
            ));
        }
        if !coeffs.last().unwrap().is_one() {
            return Err(Error::InvalidRing("minimal polynomial must be monic".into()));
        }
        Ok(MinimalPolynomial { coeffs })
    }

    /// `z^2 + 1`, housing `i`.
    pub fn gaussian() -> Self {
        MinimalPolynomial::new(vec![BigInt::one(), BigInt::zero(), BigInt::one()]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Parses text such as `z^4 + 1`.
    pub fn parse(text: &str) -> Result<Self> {
        let terms = super::parse::parse_univariate(text, "z")?;
        let mut coeffs = Vec::new();
        for (k, c) in terms {
            if !c.is_integer() {
                return Err(Error::InvalidRing(
                    "minimal polynomial must have integer coefficients".into(),
                ));
            }
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] += c.to_integer();
        }
        MinimalPolynomial::new(coeffs)
    }
}

impl fmt::Display for MinimalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rats: Vec<BigRational> = self.coeffs.iter().cloned().map(BigRational::from).collect();
        f.write_str(&format_univariate(&rats, "z"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum CoefficientDomain {
    #[default]
    Rational,
    Extension(MinimalPolynomial),
}

impl CoefficientDomain {
    pub fn is_rational(&self) -> bool {
        matches!(self, CoefficientDomain::Rational)
    }

    pub fn minimal_polynomial(&self) -> Option<&MinimalPolynomial> {
        match self {
            CoefficientDomain::Rational => None,
            CoefficientDomain::Extension(m) => Some(m),
        }
    }

    /// The extension generator `z`.
    pub fn generator(&self) -> Result<Scalar> {
        match self {
            CoefficientDomain::Rational => Err(Error::WrongDomainConstant),
            CoefficientDomain::Extension(_) => {
                Ok(self.reduce(vec![BigRational::zero(), BigRational::one()]))
            }
        }
    }

    /// Reduces a residue vector modulo the minimal polynomial.
    pub fn reduce(&self, mut c: Vec<BigRational>) -> Scalar {
        if let CoefficientDomain::Extension(m) = self {
            let d = m.degree();
            while c.len() > d {
                let top = c.pop().unwrap();
                if top.is_zero() {
                    continue;
                }
                let base = c.len() - d;
                for (i, mi) in m.coeffs[..d].iter().enumerate() {
                    c[base + i] -= &top * BigRational::from(mi.clone());
                }
            }
        }
        Scalar::from_vec(c)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return Scalar::zero();
        }
        if a.0.len() == 1 {
            return b.scale(&a.0[0]);
        }
        if b.0.len() == 1 {
            return a.scale(&b.0[0]);
        }
        let mut out = vec![BigRational::zero(); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            for (j, y) in b.0.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }

    pub fn pow(&self, a: &Scalar, mut k: u32) -> Scalar {
        let mut base = a.clone();
        let mut acc = Scalar::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Multiplicative inverse; fails for zero or when the modulus is reducible
    /// and `a` shares a factor with it.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = a.as_rational() {
            return Ok(Scalar::from_rational(q.recip()));
        }
        let m = self.minimal_polynomial().ok_or(Error::WrongDomainConstant)?;
        let modulus: Vec<BigRational> = m.coeffs.iter().cloned().map(BigRational::from).collect();
        // extended Euclid: track s with s*a = r (mod m)
        let (mut r0, mut r1) = (modulus, a.0.clone());
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (vec![], vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = uni_divrem(&r0, &r1);
            let s2 = uni_sub(&s0, &uni_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return Err(Error::InvalidRing(
                "element is not invertible modulo the minimal polynomial".into(),
            ));
        }
        let c = r0[0].recip();
        Ok(self.reduce(s0.into_iter().map(|x| x * &c).collect()))
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn format(&self, a: &Scalar) -> String {
        format_univariate(&a.0, "z")
    }
}

/// Element of a coefficient domain: residue coefficients of `1, z, z^2, ...`
/// with trailing zeros removed. The zero scalar is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar(Vec<BigRational>);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Vec::new())
    }

    pub fn one() -> Self {
        Scalar(vec![BigRational::one()])
    }

    pub fn from_vec(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Scalar(c)
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar::from_vec(vec![q])
    }

    pub fn from_int(i: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(i)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// `Some(q)` when the scalar lies in the prime field.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.0.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    pub fn residues(&self) -> &[BigRational] {
        &self.0
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i);
            let b = other.0.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Scalar::from_vec(out)
    }

    pub fn neg(&self) -> Scalar {
        Scalar(self.0.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &BigRational) -> Scalar {
        if q.is_zero() {
            return Scalar::zero();
        }
        Scalar(self.0.iter().map(|x| x * q).collect())
    }
}

pub(crate) fn format_univariate(c: &[BigRational], var: &str) -> String {
    let mut out = String::new();
    for k in (0..c.len()).rev() {
        let q = &c[k];
        if q.is_zero() {
            continue;
        }
        let neg = q.is_negative();
        let abs = q.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let pow = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if k == 0 {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&pow);
        } else {
            out.push_str(&format!("{abs}*{pow}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn uni_trim(mut a: Vec<BigRational>) -> Vec<BigRational> {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

fn uni_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    uni_trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn uni_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    uni_trim(out)
}

fn uni_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = uni_trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
        r = uni_trim(r);
    }
    (uni_trim(q), r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn gaussian_arithmetic() {
        let dom = CoefficientDomain::Extension(MinimalPolynomial::gaussian());
        let i = dom.generator().unwrap();
        assert_eq!(dom.mul(&i, &i), Scalar::from_int(-1));
        let inv = dom.inv(&i).unwrap();
        assert_eq!(inv, i.neg());
    }

    #[test]
    fn inverse_in_quartic_extension() {
        let dom = CoefficientDomain::Extension(MinimalPolynomial::parse("z^4 + 1").unwrap());
        let a = Scalar::from_vec(vec![q(1, 2), q(-3, 1), q(0, 1), q(2, 5)]);
        let inv = dom.inv(&a).unwrap();
        assert!(dom.mul(&a, &inv).is_one());
    }

    #[test]
    fn sqrt_two_from_eighth_root_of_unity() {
        let dom = CoefficientDomain::Extension(MinimalPolynomial::parse("z^4+1").unwrap());
        let z = dom.generator().unwrap();
        let root2 = z.sub(&dom.pow(&z, 3));
        assert_eq!(dom.mul(&root2, &root2), Scalar::from_int(2));
    }

    #[test]
    fn minimal_polynomial_must_be_monic() {
        assert!(MinimalPolynomial::parse("2*z^2 + 1").is_err());
        assert!(MinimalPolynomial::parse("3").is_err());
        assert!(MinimalPolynomial::parse("z^2 + 1/2").is_err());
        assert_eq!(MinimalPolynomial::parse("z^2+1").unwrap().to_string(), "z^2 + 1");
    }

    #[test]
    fn non_invertible_in_reducible_modulus() {
        let dom = CoefficientDomain::Extension(MinimalPolynomial::parse("z^2 - 1").unwrap());
        let a = Scalar::from_vec(vec![q(1, 1), q(1, 1)]);
        assert!(dom.inv(&a).is_err());
    }
}
