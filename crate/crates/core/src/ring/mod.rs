//! Exact sparse multivariate polynomials over `Q` and simple extensions of `Q`.

mod matrix;
mod monomial;
pub(crate) mod parse;
mod poly;
mod scalar;

use std::fmt;
use std::sync::Arc;

pub use matrix::determinant;
pub use monomial::{Monomial, TermOrder};
pub use parse::parse_poly;
pub use poly::Polynomial;
pub use scalar::{CoefficientDomain, MinimalPolynomial, Scalar};

use crate::error::{Error, Result};

/// Role of a ring variable: the form variables `x1..xn` are `Main`, the
/// coefficient and group-matrix unknowns are `Parameter`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum VarClass {
    Main,
    Parameter,
}

/// A flat polynomial ring: ordered variable names with class tags over a coefficient domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    classes: Vec<VarClass>,
    domain: CoefficientDomain,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = (S, VarClass)>,
        domain: CoefficientDomain,
    ) -> Result<Arc<PolyRing>> {
        let (names, classes): (Vec<String>, Vec<VarClass>) =
            vars.into_iter().map(|(n, c)| (n.into(), c)).unzip();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidRing(format!("`{n}` is not a valid variable name")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable `{n}`")));
            }
            if n == "z" && !domain.is_rational() {
                return Err(Error::InvalidRing(
                    "`z` names the extension generator and cannot be a variable".into(),
                ));
            }
        }
        Ok(Arc::new(PolyRing { names, classes, domain }))
    }

    /// Rational ring whose variables are all `Main`.
    pub fn rational<S: AsRef<str>>(names: &[S]) -> Result<Arc<PolyRing>> {
        PolyRing::new(names.iter().map(|n| (n.as_ref().to_string(), VarClass::Main)), CoefficientDomain::Rational)
    }

    /// `Q[x1..xn]` with every variable `Main`.
    pub fn forms(n: usize) -> Arc<PolyRing> {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        PolyRing::rational(&names).expect("x-variables are valid names")
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn classes(&self) -> &[VarClass] {
        &self.classes
    }

    pub fn domain(&self) -> &CoefficientDomain {
        &self.domain
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn indices_of_class(&self, class: VarClass) -> Vec<usize> {
        (0..self.arity()).filter(|&i| self.classes[i] == class).collect()
    }

    /// Ring on the listed variables (in the given order), same domain and tags.
    pub fn subring(&self, keep: &[usize]) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
            classes: keep.iter().map(|&i| self.classes[i]).collect(),
            domain: self.domain.clone(),
        })
    }

    pub fn parameter_subring(&self) -> Arc<PolyRing> {
        self.subring(&self.indices_of_class(VarClass::Parameter))
    }

    /// Same variables over another coefficient domain.
    pub fn with_domain(&self, domain: CoefficientDomain) -> Result<Arc<PolyRing>> {
        PolyRing::new(self.names.iter().cloned().zip(self.classes.iter().copied()), domain)
    }

    /// Appends variables after the existing ones.
    pub fn extended<S: Into<String>>(&self, extra: impl IntoIterator<Item = (S, VarClass)>) -> Result<Arc<PolyRing>> {
        let vars = self
            .names
            .iter()
            .cloned()
            .zip(self.classes.iter().copied())
            .chain(extra.into_iter().map(|(n, c)| (n.into(), c)));
        PolyRing::new(vars, self.domain.clone())
    }

    /// Parses the text produced by `Display`, e.g.
    /// `vars x1:main, c30:param; domain QQ[z]/(z^2 + 1)`.
    pub fn parse_declaration(text: &str) -> Result<Arc<PolyRing>> {
        let text = text.trim();
        let body = text
            .strip_prefix("vars")
            .ok_or_else(|| Error::Format("ring declaration must start with `vars`".into()))?;
        let (vars, domain) = match body.split_once(';') {
            Some((v, d)) => (v, d.trim()),
            None => (body, "domain QQ"),
        };
        let domain = domain
            .strip_prefix("domain")
            .ok_or_else(|| Error::Format("expected `domain`".into()))?
            .trim();
        let domain = if domain == "QQ" {
            CoefficientDomain::Rational
        } else {
            let inner = domain
                .strip_prefix("QQ[z]/(")
                .and_then(|d| d.strip_suffix(')'))
                .ok_or_else(|| Error::Format(format!("bad domain `{domain}`")))?;
            CoefficientDomain::Extension(MinimalPolynomial::parse(inner)?)
        };
        let mut parsed = Vec::new();
        for item in vars.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, class) = item
                .split_once(':')
                .ok_or_else(|| Error::Format(format!("variable `{item}` lacks a class tag")))?;
            let class = match class.trim() {
                "main" => VarClass::Main,
                "param" => VarClass::Parameter,
                other => return Err(Error::Format(format!("unknown class `{other}`"))),
            };
            parsed.push((name.trim().to_string(), class));
        }
        PolyRing::new(parsed, domain)
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("vars ")?;
        for (i, (n, c)) in self.names.iter().zip(&self.classes).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let tag = match c {
                VarClass::Main => "main",
                VarClass::Parameter => "param",
            };
            write!(f, "{n}:{tag}")?;
        }
        match &self.domain {
            CoefficientDomain::Rational => f.write_str("; domain QQ"),
            CoefficientDomain::Extension(m) => write!(f, "; domain QQ[z]/({m})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn declaration_round_trip() {
        let r = PolyRing::new(
            [("x1", VarClass::Main), ("c30", VarClass::Parameter)],
            CoefficientDomain::Extension(MinimalPolynomial::gaussian()),
        )
        .unwrap();
        let text = r.to_string();
        assert_eq!(text, "vars x1:main, c30:param; domain QQ[z]/(z^2 + 1)");
        assert_eq!(*PolyRing::parse_declaration(&text).unwrap(), *r);
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(PolyRing::rational(&["x", "x"]).is_err());
        assert!(PolyRing::rational(&["1x"]).is_err());
        assert!(PolyRing::new(
            [("z", VarClass::Main)],
            CoefficientDomain::Extension(MinimalPolynomial::gaussian())
        )
        .is_err());
        // over Q a variable may be called z
        assert!(PolyRing::rational(&["x", "y", "z"]).is_ok());
    }
}
