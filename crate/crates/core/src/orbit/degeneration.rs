//! Parametric families `g(t)` certifying limits `v∘g(t) → w`.
//!
//! Fixture JSON:
//! ```json
//! {"domain": null, "source_label": "3A", "target_label": "1A",
//!  "matrix": [[{"0": "1"}, {}], [{"0": "1"}, {"1": "1"}]], "note": "…"}
//! ```
//! `domain` is the minimal polynomial of `z` or `null` for the rationals.
//! Each matrix entry maps integer exponents of `t` to scalars; row `i` is the
//! image of `x_i`. `source_label` names the form being degenerated and `target_label`
//! its limit; optional `source_form` / `target_form` override the catalog forms.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{Map, Value};

use super::Form;
use crate::error::{Error, Result};
use crate::ring::{parse_poly, CoefficientDomain, MinimalPolynomial, Monomial, PolyRing, Polynomial, Scalar, VarClass};

/// Exponent of `t` mapped to its coefficient.
pub type Laurent = BTreeMap<i32, Scalar>;

#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationFamily {
    pub domain: CoefficientDomain,
    pub matrix: Vec<Vec<Laurent>>,
    pub source_label: String,
    pub target_label: String,
    pub source_form: Option<String>,
    pub target_form: Option<String>,
    pub note: String,
}

const MAX_T_EXPONENT: i32 = 64;

pub(crate) fn parse_scalar(text: &str, domain: &CoefficientDomain) -> Result<Scalar> {
    let ring = PolyRing::new(Vec::<(String, VarClass)>::new(), domain.clone())?;
    parse_poly(text, &ring)?
        .constant_value()
        .ok_or_else(|| Error::Format(format!("`{text}` is not a constant")))
}

fn string_field(obj: &Map<String, Value>, key: &str) -> Result<String> {
    obj.get(key)
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or_else(|| Error::Format(format!("missing string field `{key}`")))
}

fn optional_string(obj: &Map<String, Value>, key: &str) -> Result<Option<String>> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(_) => Err(Error::Format(format!("`{key}` must be a string"))),
    }
}

impl DegenerationFamily {
    pub fn from_json(text: &str) -> Result<DegenerationFamily> {
        let v: Value = serde_json::from_str(text)?;
        let obj = v.as_object().ok_or_else(|| Error::Format("fixture must be a JSON object".into()))?;
        for key in obj.keys() {
            if !matches!(
                key.as_str(),
                "domain" | "matrix" | "source_label" | "target_label" | "source_form" | "target_form" | "note"
            ) {
                return Err(Error::Format(format!("unknown fixture field `{key}`")));
            }
        }
        let domain = match obj.get("domain") {
            None | Some(Value::Null) => CoefficientDomain::Rational,
            Some(Value::String(s)) => CoefficientDomain::Extension(MinimalPolynomial::parse(s)?),
            Some(_) => return Err(Error::Format("`domain` must be a string or null".into())),
        };
        let rows = obj
            .get("matrix")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Format("`matrix` must be an array of rows".into()))?;
        let mut matrix = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| Error::Format("matrix rows must be arrays".into()))?;
            let mut out_row = Vec::with_capacity(row.len());
            for entry in row {
                let entry = entry
                    .as_object()
                    .ok_or_else(|| Error::Format("matrix entries must be objects {exponent: scalar}".into()))?;
                let mut laurent = Laurent::new();
                for (k, s) in entry {
                    let exp: i32 = k
                        .trim()
                        .parse()
                        .ok()
                        .filter(|e: &i32| e.abs() <= MAX_T_EXPONENT)
                        .ok_or_else(|| Error::Format(format!("bad t-exponent `{k}`")))?;
                    let text = s.as_str().ok_or_else(|| Error::Format("scalars must be strings".into()))?;
                    let c = parse_scalar(text, &domain)?;
                    if !c.is_zero() {
                        laurent.insert(exp, c);
                    }
                }
                out_row.push(laurent);
            }
            matrix.push(out_row);
        }
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("fixture matrix must be a nonempty square".into()));
        }
        Ok(DegenerationFamily {
            domain,
            matrix,
            source_label: string_field(obj, "source_label")?,
            target_label: string_field(obj, "target_label")?,
            source_form: optional_string(obj, "source_form")?,
            target_form: optional_string(obj, "target_form")?,
            note: obj.get("note").and_then(Value::as_str).unwrap_or_default().to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut obj = Map::new();
        obj.insert(
            "domain".into(),
            match &self.domain {
                CoefficientDomain::Rational => Value::Null,
                CoefficientDomain::Extension(m) => Value::String(m.to_string()),
            },
        );
        obj.insert("source_label".into(), Value::String(self.source_label.clone()));
        obj.insert("target_label".into(), Value::String(self.target_label.clone()));
        if let Some(s) = &self.source_form {
            obj.insert("source_form".into(), Value::String(s.clone()));
        }
        if let Some(s) = &self.target_form {
            obj.insert("target_form".into(), Value::String(s.clone()));
        }
        let rows: Vec<Value> = self
            .matrix
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|l| {
                            Value::Object(l.iter().map(|(e, c)| (e.to_string(), Value::String(self.domain.format(c)))).collect())
                        })
                        .collect(),
                )
            })
            .collect();
        obj.insert("matrix".into(), Value::Array(rows));
        obj.insert("note".into(), Value::String(self.note.clone()));
        serde_json::to_string_pretty(&Value::Object(obj)).expect("fixture serializes")
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }
}

/// What the lowest-order term of `v∘g(t)` turned out to be.
#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationCheck {
    /// Lowest power of `t` with a nonzero coefficient.
    pub order: i64,
    /// The coefficient of `t^order`, a form in `x1..xn`.
    pub limit: Polynomial,
    /// `λ` with `limit = λ·w`, when it exists.
    pub lambda: Option<Scalar>,
}

impl DegenerationCheck {
    pub fn holds(&self) -> bool {
        self.lambda.is_some()
    }
}

/// Expands `v∘g(t)` over the family's domain and compares its lowest-order
/// coefficient with `w` up to a nonzero scalar.
pub fn examine_degeneration(fam: &DegenerationFamily, v: &Form, w: &Form) -> Result<DegenerationCheck> {
    let n = fam.size();
    if v.n() != n || w.n() != n || v.degree() != w.degree() {
        return Err(Error::DimensionMismatch(format!(
            "{n}x{n} family for forms in {} and {} variables",
            v.n(),
            w.n()
        )));
    }
    let shift = fam.matrix.iter().flatten().flat_map(|l| l.keys()).map(|&e| (-e).max(0)).max().unwrap_or(0);
    let names: Vec<(String, VarClass)> = (1..=n)
        .map(|i| (format!("x{i}"), VarClass::Main))
        .chain(std::iter::once(("t".to_string(), VarClass::Parameter)))
        .collect();
    let ring: Arc<PolyRing> = PolyRing::new(names, fam.domain.clone())?;
    let mut images = Vec::with_capacity(n + 1);
    for row in &fam.matrix {
        let mut img = Polynomial::zero(&ring);
        for (j, entry) in row.iter().enumerate() {
            for (e, c) in entry {
                let mut exps = vec![0u32; n + 1];
                exps[j] = 1;
                exps[n] = (e + shift) as u32;
                img = &img + &Polynomial::from_terms(&ring, [(c.clone(), Monomial::from_exponents(exps))]);
            }
        }
        images.push(img);
    }
    images.push(Polynomial::var_at(&ring, n));
    let v_std = v.standardized()?;
    let x_ring = PolyRing::forms(n).with_domain(fam.domain.clone())?;
    let p = v_std.poly().embed_into(&ring)?.map_into(&ring, &images)?;
    if p.is_zero() {
        return Err(Error::ZeroFamily);
    }
    let by_t = p.coefficient_system(&[n]);
    let (lowest_mono, coeff) = by_t
        .iter()
        .min_by_key(|(m, _)| m.exponents()[n])
        .expect("nonzero polynomial has a t-coefficient");
    let k = lowest_mono.exponents()[n] as i64;
    let limit = coeff.embed_into(&x_ring)?;
    let w_std = w.standardized()?.poly().embed_into(&x_ring)?;
    let (wc, wm) = w_std.terms()[0].clone();
    let lc = limit.coefficient(&wm);
    let lambda = if lc.is_zero() {
        None
    } else {
        let lam = fam.domain.div(&lc, &wc)?;
        let scaled = w_std.scale(&lam);
        (scaled == limit).then_some(lam)
    };
    Ok(DegenerationCheck { order: k - (shift as i64) * i64::from(v.degree()), limit, lambda })
}

/// True iff the lowest-order coefficient of `v∘g(t)` is a nonzero multiple of `w`.
pub fn verify_degeneration(fam: &DegenerationFamily, v: &Form, w: &Form) -> Result<bool> {
    Ok(examine_degeneration(fam, v, w)?.holds())
}
