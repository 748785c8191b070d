//! The thirteen normal forms of cubic surfaces with infinitely many singular
//! points, their expected containment matrix and the degeneration fixtures.
//!
//! Matrix convention: cell `(row, col)` is `Yes` when the orbit closure of
//! `row` lies in the orbit closure of `col`. Deciding it means asking whether
//! the form `row` is in the closure of the orbit of `col`.

mod data;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::cache::sha256_hex;
use crate::orbit::{DegenerationFamily, EliminationPlan, Form, VerdictKind};

pub(crate) use data::{FIXTURE_FILES, GB_CHECKS, NORMAL_FORMS, PLAN_FILES, TABLE};

#[derive(Clone, Debug)]
pub struct NormalForm {
    pub label: String,
    /// Waring rank, stored only.
    pub rank: u32,
    pub form: Form,
    pub singularity: String,
    pub orbit_dim: usize,
    /// Dimension of the affine cone over the singular locus.
    pub singular_cone_dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expected {
    Yes,
    No,
    Open,
}

impl Expected {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Expected::Yes => Some(true),
            Expected::No => Some(false),
            Expected::Open => None,
        }
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expected::Yes => "yes",
            Expected::No => "no",
            Expected::Open => "open",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Justification {
    Diagonal,
    Degeneration,
    Inherit,
    Dimension,
    GbComputation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpectedCell {
    pub entry: Expected,
    pub tag: Option<Justification>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub family: DegenerationFamily,
}

/// A cell settled by a sub-elim-sub run on forms in fewer variables: the
/// source is a form in the closure of the `col` orbit, the target is the `row` form.
#[derive(Clone, Debug)]
pub struct GbCheck {
    pub row: String,
    pub col: String,
    pub source: Form,
    pub target: Form,
    pub plan_name: String,
    pub plan: EliminationPlan,
}

#[derive(Debug)]
pub struct Catalog {
    forms: Vec<NormalForm>,
    cells: BTreeMap<(usize, usize), ExpectedCell>,
    fixtures: Vec<Fixture>,
    gb_checks: Vec<GbCheck>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawForm {
    label: String,
    rank: u32,
    form: String,
    singularity: String,
    orbit_dim: usize,
    singular_cone_dim: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCell {
    row: String,
    col: String,
    entry: Expected,
    tag: Option<Justification>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCheck {
    row: String,
    col: String,
    n: usize,
    source_form: String,
    target_form: String,
    plan: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    labels: Vec<String>,
    cells: Vec<RawCell>,
}

impl Catalog {
    /// The registry compiled into the library.
    pub fn embedded() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| {
            Catalog::from_sources(NORMAL_FORMS, TABLE, FIXTURE_FILES)
                .and_then(|c| c.with_gb_checks(GB_CHECKS, PLAN_FILES))
                .expect("embedded catalog is valid")
        })
    }

    pub fn from_sources(forms_json: &str, table_json: &str, fixtures: &[(&str, &str)]) -> Result<Catalog> {
        let raw: Vec<RawForm> = serde_json::from_str(forms_json)?;
        let mut forms = Vec::with_capacity(raw.len());
        for r in raw {
            if forms.iter().any(|f: &NormalForm| f.label == r.label) {
                return Err(Error::Format(format!("duplicate label `{}`", r.label)));
            }
            forms.push(NormalForm {
                form: Form::parse(&r.form, 4)?,
                label: r.label,
                rank: r.rank,
                singularity: r.singularity,
                orbit_dim: r.orbit_dim,
                singular_cone_dim: r.singular_cone_dim,
            });
        }
        let index = |label: &str| {
            forms.iter().position(|f| f.label == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
        };
        let table: RawTable = serde_json::from_str(table_json)?;
        if table.labels != forms.iter().map(|f| f.label.clone()).collect::<Vec<_>>() {
            return Err(Error::Format("matrix labels differ from the normal-form list".into()));
        }
        let mut cells = BTreeMap::new();
        for c in table.cells {
            let key = (index(&c.row)?, index(&c.col)?);
            if c.entry != Expected::Open && c.tag.is_none() {
                return Err(Error::Format(format!("cell ({}, {}) is decided but untagged", c.row, c.col)));
            }
            if cells.insert(key, ExpectedCell { entry: c.entry, tag: c.tag }).is_some() {
                return Err(Error::Format(format!("cell ({}, {}) listed twice", c.row, c.col)));
            }
        }
        if cells.len() != forms.len() * forms.len() {
            return Err(Error::Format(format!("matrix has {} cells, expected {}", cells.len(), forms.len() * forms.len())));
        }
        let fixtures = fixtures
            .iter()
            .map(|(name, text)| {
                DegenerationFamily::from_json(text)
                    .map(|family| Fixture { name: name.to_string(), family })
                    .map_err(|e| Error::Format(format!("fixture {name}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Catalog { forms, cells, fixtures, gb_checks: Vec::new() })
    }

    pub fn with_gb_checks(mut self, checks_json: &str, plans: &[(&str, &str)]) -> Result<Catalog> {
        let raw: Vec<RawCheck> = serde_json::from_str(checks_json)?;
        for r in raw {
            self.index(&r.row)?;
            self.index(&r.col)?;
            let text = plans
                .iter()
                .find(|(name, _)| *name == r.plan)
                .map(|(_, t)| *t)
                .ok_or_else(|| Error::Format(format!("missing plan `{}`", r.plan)))?;
            let plan = EliminationPlan::from_json(text).map_err(|e| Error::Format(format!("plan {}: {e}", r.plan)))?;
            self.gb_checks.push(GbCheck {
                source: Form::parse(&r.source_form, r.n)?,
                target: Form::parse(&r.target_form, r.n)?,
                row: r.row,
                col: r.col,
                plan_name: r.plan,
                plan,
            });
        }
        Ok(self)
    }

    pub fn forms(&self) -> &[NormalForm] {
        &self.forms
    }

    pub fn labels(&self) -> Vec<&str> {
        self.forms.iter().map(|f| f.label.as_str()).collect()
    }

    fn index(&self, label: &str) -> Result<usize> {
        self.forms
            .iter()
            .position(|f| f.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn lookup(&self, label: &str) -> Result<&NormalForm> {
        Ok(&self.forms[self.index(label)?])
    }

    pub fn expected(&self, row: &str, col: &str) -> Result<Expected> {
        Ok(self.cell(row, col)?.entry)
    }

    pub fn cell(&self, row: &str, col: &str) -> Result<ExpectedCell> {
        Ok(self.cells[&(self.index(row)?, self.index(col)?)])
    }

    pub fn fixtures(&self) -> &[Fixture] {
        &self.fixtures
    }

    pub fn gb_checks(&self) -> &[GbCheck] {
        &self.gb_checks
    }

    pub fn gb_check(&self, row: &str, col: &str) -> Option<&GbCheck> {
        self.gb_checks.iter().find(|c| c.row == row && c.col == col)
    }

    pub fn fixture(&self, name: &str) -> Option<&Fixture> {
        self.fixtures.iter().find(|f| f.name == name)
    }

    /// A fixture degenerating the `col` form to the `row` form, using catalog forms on both ends.
    pub fn fixture_for(&self, row: &str, col: &str) -> Option<&Fixture> {
        self.fixtures.iter().find(|f| {
            f.family.target_label == row
                && f.family.source_label == col
                && f.family.source_form.is_none()
                && f.family.target_form.is_none()
        })
    }

    /// Source and target forms of a family: explicit overrides first, then catalog labels.
    pub fn family_forms(&self, fam: &DegenerationFamily) -> Result<(Form, Form)> {
        let n = fam.size();
        let resolve = |text: &Option<String>, label: &str| -> Result<Form> {
            match text {
                Some(t) => Form::parse(t, n),
                None => Ok(self.lookup(label)?.form.clone()),
            }
        };
        Ok((resolve(&fam.source_form, &fam.source_label)?, resolve(&fam.target_form, &fam.target_label)?))
    }

    /// Compares computed verdicts (keyed by `(row, col)`) with the expected matrix.
    pub fn compare(&self, computed: &BTreeMap<(String, String), VerdictKind>) -> CompareReport {
        let mut report = CompareReport::default();
        for ((r, c), cell) in &self.cells {
            let row = self.forms[*r].label.clone();
            let col = self.forms[*c].label.clone();
            let got = computed.get(&(row.clone(), col.clone())).copied();
            let diff = CellDiff { row, col, expected: cell.entry, computed: got };
            match (cell.entry.as_bool(), got.and_then(|k| k.containment())) {
                (Some(e), Some(g)) if e == g => report.agreed += 1,
                (Some(_), Some(_)) => report.mismatches.push(diff),
                (Some(_), None) => report.undecided.push(diff),
                (None, Some(_)) => report.new.push(diff),
                (None, None) => report.open += 1,
            }
        }
        report
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellDiff {
    pub row: String,
    pub col: String,
    pub expected: Expected,
    pub computed: Option<VerdictKind>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub agreed: usize,
    /// Open cells that stayed undecided.
    pub open: usize,
    pub mismatches: Vec<CellDiff>,
    /// Open cells that received a decision.
    pub new: Vec<CellDiff>,
    /// Decided cells left without a decision.
    pub undecided: Vec<CellDiff>,
}

impl CompareReport {
    pub fn is_consistent(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.mismatches.is_empty() && self.undecided.is_empty()
    }
}

/// Content hashes of the embedded data, for drift detection.
pub fn data_hashes() -> Vec<(String, String)> {
    let mut out = vec![
        ("normal_forms.json".to_string(), sha256_hex(NORMAL_FORMS)),
        ("table2.json".to_string(), sha256_hex(TABLE)),
        ("gb_checks.json".to_string(), sha256_hex(GB_CHECKS)),
    ];
    out.extend(FIXTURE_FILES.iter().map(|(n, t)| (format!("fixtures/{n}.json"), sha256_hex(t))));
    out.extend(PLAN_FILES.iter().map(|(n, t)| (format!("plans/{n}.json"), sha256_hex(t))));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::verify_degeneration;

    #[test]
    fn lookup_entries() {
        let cat = Catalog::embedded();
        let c6 = cat.lookup("6C").unwrap();
        assert_eq!(c6.form.to_string(), "x1*x2^2 + x3*x4^2");
        assert_eq!((c6.rank, c6.orbit_dim), (6, 14));
        let a1 = cat.lookup("1A").unwrap();
        assert_eq!(a1.form.to_string(), "x1^3");
        assert_eq!((a1.rank, a1.orbit_dim), (1, 4));
        assert!(matches!(cat.lookup("9Z"), Err(Error::UnknownLabel(_))));
        assert_eq!(cat.forms().len(), 13);
    }

    #[test]
    fn expected_entries() {
        let cat = Catalog::embedded();
        assert_eq!(cat.expected("7B", "6C").unwrap(), Expected::Yes);
        assert_eq!(cat.expected("6C", "7B").unwrap(), Expected::No);
        assert_eq!(cat.expected("4A", "6A").unwrap(), Expected::Open);
        assert!(cat.expected("4A", "9Z").is_err());
    }

    #[test]
    fn matrix_shape() {
        let cat = Catalog::embedded();
        let labels = cat.labels();
        let mut open = 0;
        for r in &labels {
            assert_eq!(cat.expected(r, r).unwrap(), Expected::Yes);
            for c in &labels {
                let cell = cat.cell(r, c).unwrap();
                if cell.entry == Expected::Open {
                    open += 1;
                }
                if cell.entry == Expected::No {
                    assert_eq!(cell.tag, Some(Justification::Dimension));
                    let (dr, dc) = (cat.lookup(r).unwrap().orbit_dim, cat.lookup(c).unwrap().orbit_dim);
                    assert!(dc <= dr, "({r}, {c}) is No but {c} has the larger orbit");
                }
                if cell.entry == Expected::Yes && r != c {
                    let (dr, dc) = (cat.lookup(r).unwrap().orbit_dim, cat.lookup(c).unwrap().orbit_dim);
                    assert!(dr < dc, "({r}, {c}) is Yes with orbit dims {dr} >= {dc}");
                }
            }
        }
        assert_eq!(open, 11);
    }

    #[test]
    fn compare_flags_mismatch_and_new() {
        let cat = Catalog::embedded();
        let mut computed = BTreeMap::new();
        for r in cat.labels() {
            for c in cat.labels() {
                let kind = match cat.expected(r, c).unwrap() {
                    Expected::Yes => VerdictKind::InClosure,
                    Expected::No => VerdictKind::NotInClosure,
                    Expected::Open => VerdictKind::Inconclusive,
                };
                computed.insert((r.to_string(), c.to_string()), kind);
            }
        }
        let clean = cat.compare(&computed);
        assert!(clean.is_complete());
        assert_eq!(clean.agreed + clean.open, 169);
        assert_eq!(clean.open, 11);

        computed.insert(("7B".into(), "6C".into()), VerdictKind::NotInClosure);
        computed.insert(("4A".into(), "6A".into()), VerdictKind::InClosure);
        let r = cat.compare(&computed);
        assert_eq!(r.mismatches.len(), 1);
        assert_eq!((r.mismatches[0].row.as_str(), r.mismatches[0].col.as_str()), ("7B", "6C"));
        assert_eq!(r.new.len(), 1);
        assert_eq!(r.new[0].row, "4A");
    }

    #[test]
    fn every_fixture_verifies() {
        let cat = Catalog::embedded();
        assert!(cat.fixtures().len() >= 20);
        for fx in cat.fixtures() {
            let (v, w) = cat.family_forms(&fx.family).unwrap();
            assert!(verify_degeneration(&fx.family, &v, &w).unwrap(), "fixture {} fails", fx.name);
        }
    }

    #[test]
    fn fixtures_name_their_cell() {
        let cat = Catalog::embedded();
        for fx in cat.fixtures() {
            if fx.family.source_form.is_none() && fx.family.target_form.is_none() {
                assert_eq!(fx.name, format!("{}-{}", fx.family.target_label, fx.family.source_label));
                let cell = cat.cell(&fx.family.target_label, &fx.family.source_label).unwrap();
                assert_eq!(cell.entry, Expected::Yes, "fixture {} certifies a non-Yes cell", fx.name);
            }
        }
    }

    #[test]
    fn data_matches_pinned_hashes() {
        let sums = include_str!("../../data/SHA256SUMS");
        let pinned: BTreeMap<&str, &str> = sums
            .lines()
            .filter_map(|l| l.split_once("  "))
            .map(|(h, name)| (name.trim(), h.trim()))
            .collect();
        let hashes = data_hashes();
        assert_eq!(pinned.len(), hashes.len());
        for (name, h) in &hashes {
            assert_eq!(pinned.get(name.as_str()), Some(&h.as_str()), "{name} drifted from SHA256SUMS");
        }
    }

    #[test]
    fn embedded_lists_match_directories() {
        for (sub, files) in [("fixtures", FIXTURE_FILES), ("plans", PLAN_FILES)] {
            let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(sub);
            let mut on_disk: Vec<String> = std::fs::read_dir(dir)
                .unwrap()
                .map(|e| e.unwrap().path().file_stem().unwrap().to_string_lossy().into_owned())
                .collect();
            on_disk.sort();
            let embedded: Vec<String> = files.iter().map(|(n, _)| n.to_string()).collect();
            assert_eq!(on_disk, embedded, "data/{sub}");
        }
    }

    #[test]
    fn gb_checks_target_yes_cells() {
        let cat = Catalog::embedded();
        assert_eq!(cat.gb_checks().len(), 8);
        for c in cat.gb_checks() {
            assert_eq!(cat.cell(&c.row, &c.col).unwrap().tag, Some(Justification::GbComputation));
            assert_eq!(c.source.degree(), 3);
        }
    }
}
