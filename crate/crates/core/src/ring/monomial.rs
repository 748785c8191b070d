use std::cmp::Ordering;
use std::fmt;

/// Exponent vector over the variables of a ring, with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial { deg: 0, exps: vec![0; arity].into_boxed_slice() }
    }

    pub fn var(arity: usize, index: usize, power: u32) -> Self {
        let mut exps = vec![0; arity];
        exps[index] = power;
        Monomial { deg: power, exps: exps.into_boxed_slice() }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        let deg = exps.iter().sum();
        Monomial { deg, exps: exps.into_boxed_slice() }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Box<[u32]> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial { deg: self.deg + other.deg, exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps: Box<[u32]> = other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect();
        Monomial { deg: other.deg - self.deg, exps }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect();
        Monomial::from_exponents(exps)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` set when variable `i % 64` occurs; a fast non-divisibility filter.
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
    }

    /// Degree restricted to the variables `range`.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().sum()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.exps)
    }
}

/// Monomial orders. `Block(k)` compares the first `k` variables by graded
/// reverse lexicographic order and breaks ties on the remaining variables the
/// same way; it is an elimination order for the first `k` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum TermOrder {
    Lex,
    GrevLex,
    Block(usize),
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            TermOrder::Lex => a.exps.cmp(&b.exps),
            TermOrder::GrevLex => grevlex(&a.exps, a.deg, &b.exps, b.deg),
            TermOrder::Block(k) => {
                let k = k.min(a.exps.len());
                let (da, db) = (a.partial_degree(0..k), b.partial_degree(0..k));
                grevlex(&a.exps[..k], da, &b.exps[..k], db).then_with(|| {
                    grevlex(&a.exps[k..], a.deg - da, &b.exps[k..], b.deg - db)
                })
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            TermOrder::Lex => "lex".into(),
            TermOrder::GrevLex => "grevlex".into(),
            TermOrder::Block(k) => format!("block({k})"),
        }
    }

    pub fn parse(s: &str) -> Option<TermOrder> {
        let s = s.trim();
        match s {
            "lex" => Some(TermOrder::Lex),
            "grevlex" => Some(TermOrder::GrevLex),
            _ => s
                .strip_prefix("block(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|k| k.parse().ok())
                .map(TermOrder::Block),
        }
    }
}

fn grevlex(a: &[u32], da: u32, b: &[u32], db: u32) -> Ordering {
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}
