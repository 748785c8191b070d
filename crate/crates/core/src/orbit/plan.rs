//! Sub-elim-sub plans.
//!
//! JSON shape:
//! `{"pre": {"c1200": "0", …}, "ansatz": [["free", "0", …], …], "post": {"c2100": "1", …}}`.
//! Values are rationals written as strings (`"3/4"`) or JSON integers.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::Value;

use super::graph::{AnsatzEntry, GraphIdeal, GroupAnsatz};
use super::Form;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct EliminationPlan {
    pub pre: BTreeMap<String, BigRational>,
    pub ansatz: GroupAnsatz,
    pub post: BTreeMap<String, BigRational>,
}

pub(crate) fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational_text(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational_text(&n.to_string()),
        other => Err(Error::Format(format!("expected a rational, found {other}"))),
    }
}

pub(crate) fn parse_rational_text(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Format(format!("`{s}` is not a rational number"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let den: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if den.sign() != num_bigint::Sign::Plus {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

fn rational_map(v: Option<&Value>, field: &str) -> Result<BTreeMap<String, BigRational>> {
    let Some(v) = v else { return Ok(BTreeMap::new()) };
    let obj = v.as_object().ok_or_else(|| Error::Format(format!("`{field}` must be an object")))?;
    obj.iter().map(|(k, v)| Ok((k.clone(), parse_rational(v)?))).collect()
}

impl EliminationPlan {
    /// Plan with no pre-substitutions: equivalent to plain closure testing.
    pub fn trivial(ansatz: GroupAnsatz, w_values: &[(String, BigRational)]) -> EliminationPlan {
        EliminationPlan { pre: BTreeMap::new(), ansatz, post: w_values.iter().cloned().collect() }
    }

    pub fn from_json(text: &str) -> Result<EliminationPlan> {
        let v: Value = serde_json::from_str(text)?;
        let obj = v.as_object().ok_or_else(|| Error::Format("plan must be a JSON object".into()))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "pre" | "ansatz" | "post") {
                return Err(Error::Format(format!("unknown plan field `{key}`")));
            }
        }
        let rows = obj
            .get("ansatz")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Format("`ansatz` must be an array of rows".into()))?;
        let entries = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Format("ansatz rows must be arrays".into()))?
                    .iter()
                    .map(|e| match e {
                        Value::String(s) if s == "free" => Ok(AnsatzEntry::Free),
                        other => parse_rational(other).map(AnsatzEntry::Fixed),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EliminationPlan {
            pre: rational_map(obj.get("pre"), "pre")?,
            ansatz: GroupAnsatz::new(entries)?,
            post: rational_map(obj.get("post"), "post")?,
        })
    }

    pub fn to_json(&self) -> String {
        let map = |m: &BTreeMap<String, BigRational>| -> Value {
            Value::Object(m.iter().map(|(k, q)| (k.clone(), Value::String(q.to_string()))).collect())
        };
        let ansatz: Vec<Value> = self
            .ansatz
            .entries()
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|e| match e {
                            AnsatzEntry::Free => Value::String("free".into()),
                            AnsatzEntry::Fixed(q) => Value::String(q.to_string()),
                        })
                        .collect(),
                )
            })
            .collect();
        let mut obj = serde_json::Map::new();
        obj.insert("pre".into(), map(&self.pre));
        obj.insert("ansatz".into(), Value::Array(ansatz));
        obj.insert("post".into(), map(&self.post));
        serde_json::to_string_pretty(&Value::Object(obj)).expect("plan serializes")
    }

    /// Checks that `pre` and `post` split the coefficient variables and agree with `w`.
    pub(crate) fn validate(&self, gi: &GraphIdeal, w: &Form) -> Result<()> {
        for k in self.pre.keys() {
            if self.post.contains_key(k) {
                return Err(Error::PlanMismatch(format!("`{k}` appears in both pre and post")));
            }
        }
        for k in self.pre.keys().chain(self.post.keys()) {
            if !gi.c_vars.contains(k) {
                return Err(Error::PlanMismatch(format!("`{k}` is not a coefficient variable")));
            }
        }
        for (name, actual) in gi.coefficient_values(w)? {
            let given = self.pre.get(&name).or_else(|| self.post.get(&name));
            match given {
                None => return Err(Error::PlanMismatch(format!("`{name}` is not assigned"))),
                Some(q) if *q != actual => {
                    return Err(Error::PlanMismatch(format!("`{name}` = {q} but the target has {actual}")))
                }
                Some(_) => {}
            }
        }
        Ok(())
    }
}
