//! Text form of polynomials.
//!
//! Canonical output follows `term = [sign] [rational] {"*" variable ["^" int]}`
//! with terms joined by ` + ` / ` - `. The reader accepts that grammar and a
//! little more: factors in any order, `/` by a constant, and parenthesised
//! groups (optionally raised to a small power).

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::scalar::Scalar;
use super::PolyRing;
use crate::error::{Error, Result};

const MAX_GROUP_POWER: u32 = 64;
const MAX_NESTING: usize = 32;
const MAX_VAR_POWER: u32 = 1 << 20;

/// Parses `text` into a canonical polynomial of `ring`.
pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, ring, depth: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(Error::MalformedTerm("empty input".into()));
    }
    let out = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.malformed("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a univariate rational polynomial in `var`, returning `(power, coefficient)` pairs.
pub(crate) fn parse_univariate(text: &str, var: &str) -> Result<Vec<(usize, BigRational)>> {
    let ring = PolyRing::rational(&[var])?;
    let p = parse_poly(text, &ring)?;
    Ok(p
        .terms()
        .iter()
        .map(|(c, m)| (m.exponents()[0] as usize, c.as_rational().expect("rational ring")))
        .collect())
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
    depth: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn malformed(&self, what: &str) -> Error {
        Error::MalformedTerm(format!("{what} at offset {}", self.pos))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut first = true;
        loop {
            self.skip_ws();
            let mut negative = false;
            match self.peek() {
                Some(b'+') => self.pos += 1,
                Some(b'-') => {
                    negative = true;
                    self.pos += 1;
                }
                _ if !first => break,
                _ => {}
            }
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            first = false;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    let c = f.constant_value().ok_or_else(|| self.malformed("division by a non-constant"))?;
                    let inv = self
                        .ring
                        .domain()
                        .inv(&c)
                        .map_err(|_| self.malformed("division by zero"))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Polynomial::from_rational(self.ring, BigRational::from_integer(n)))
            }
            Some(b'(') => {
                if self.depth >= MAX_NESTING {
                    return Err(self.malformed("nesting too deep"));
                }
                self.pos += 1;
                self.depth += 1;
                let inner = self.expr()?;
                self.depth -= 1;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.malformed("expected `)`"));
                }
                self.pos += 1;
                let k = self.exponent(MAX_GROUP_POWER)?;
                Ok(inner.pow(k))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii identifier");
                let k = self.exponent(MAX_VAR_POWER)?;
                if let Some(i) = self.ring.index_of(name) {
                    return Ok(Polynomial::from_terms(
                        self.ring,
                        [(Scalar::one(), Monomial::var(self.ring.arity(), i, k))],
                    ));
                }
                if name == "z" {
                    let dom = self.ring.domain();
                    let z = dom.generator()?;
                    return Ok(Polynomial::constant(self.ring, dom.pow(&z, k)));
                }
                Err(Error::UnknownVariable(name.to_string()))
            }
            Some(_) => Err(self.malformed("unexpected character")),
            None => Err(self.malformed("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.malformed("expected digits"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        digits.parse::<BigInt>().map_err(|_| self.malformed("bad integer"))
    }

    fn exponent(&mut self, cap: u32) -> Result<u32> {
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let n = self.integer()?;
        u32::try_from(&n)
            .ok()
            .filter(|&k| k <= cap)
            .ok_or_else(|| self.malformed("exponent out of range"))
    }
}

/// Canonical text: graded reverse lexicographic order, largest term first.
/// Extension scalars are expanded into one term per power of `z`.
pub(crate) fn format_poly(p: &Polynomial) -> String {
    let ring = p.ring();
    let mut pieces: Vec<(BigRational, String)> = Vec::new();
    for (c, m) in p.terms() {
        let mono = format_monomial(m, ring.names());
        match c.as_rational() {
            Some(q) => pieces.push((q, mono)),
            None => {
                for (k, q) in c.residues().iter().enumerate().rev() {
                    if q.is_zero() {
                        continue;
                    }
                    let zpart = if k == 1 { "z".to_string() } else { format!("z^{k}") };
                    let full = if k == 0 {
                        mono.clone()
                    } else if mono.is_empty() {
                        zpart
                    } else {
                        format!("{zpart}*{mono}")
                    };
                    pieces.push((q.clone(), full));
                }
            }
        }
    }
    if pieces.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (q, mono)) in pieces.iter().enumerate() {
        let neg = q.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = q.abs();
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    out
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{e}", names[i])),
        }
    }
    parts.join("*")
}
