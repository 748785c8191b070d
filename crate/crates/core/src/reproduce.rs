//! Reproduction of the containment matrix of the catalog forms.
//!
//! Each cell `(row, col)` asks whether the `row` form lies in the closure of
//! the orbit of the `col` form. Cells are settled in this order: diagonal,
//! dimension pretest, verified degeneration fixture, transitivity, and finally
//! a Gröbner computation (a recorded sub-elim-sub plan if one exists, plain
//! closure elimination otherwise).

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use crate::catalog::{Catalog, CompareReport, Expected};
use crate::error::{Error, Result};
use crate::groebner::cache::CacheDir;
use crate::groebner::ComputeBudget;
use crate::orbit::{
    dimension_pretest, in_orbit_closure_cached, singular_invariants, stabilizer_orbit_dimension, sub_elim_sub,
    verify_degeneration, SingularInvariants, VerdictKind,
};

pub const HILBERT_CUTOFF: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DimSource {
    /// Use the dimensions stored in the catalog.
    Catalog,
    /// Compute stabilizer dimensions, falling back to the catalog on budget overrun.
    Compute,
}

#[derive(Clone, Debug)]
pub struct ReproduceOptions {
    /// Limits for each Gröbner computation.
    pub budget: ComputeBudget,
    /// Also attempt the cells left open by the catalog.
    pub include_hard: bool,
    /// Re-run the recorded sub-elim-sub certificates even for cells already decided.
    pub cross_check: bool,
    pub jobs: usize,
    pub cache: Option<CacheDir>,
    pub orbit_dims: DimSource,
}

impl Default for ReproduceOptions {
    fn default() -> Self {
        ReproduceOptions {
            budget: ComputeBudget::default(),
            include_hard: false,
            cross_check: false,
            jobs: 1,
            cache: None,
            orbit_dims: DimSource::Catalog,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Diagonal,
    DimensionPretest,
    Degeneration,
    Transitivity,
    SubElimSub,
    Groebner,
    NotAttempted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellResult {
    pub row: String,
    pub col: String,
    pub verdict: Option<VerdictKind>,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormFacts {
    pub label: String,
    pub orbit_dim: usize,
    /// `"computed"` or `"catalog"`.
    pub dim_source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed_dim: Option<usize>,
    pub singular: SingularInvariants,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankSixCover {
    pub holds: bool,
    /// For each label, a rank-six form whose orbit closure contains it.
    pub witnesses: Vec<(String, Option<String>)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reproduction {
    pub labels: Vec<String>,
    pub forms: Vec<FormFacts>,
    pub cells: Vec<CellResult>,
    pub cross_checks: Vec<CellResult>,
    pub comparison: CompareReport,
    /// Triples `(a, b, c)` with `a ⊆ b`, `b ⊆ c` decided yes but `a ⊆ c` decided no.
    pub transitivity_violations: Vec<(String, String, String)>,
    /// Labels whose computed orbit dimension disagrees with the catalog.
    pub dimension_mismatches: Vec<String>,
    pub rank_six: RankSixCover,
}

impl Reproduction {
    pub fn cell(&self, row: &str, col: &str) -> Option<&CellResult> {
        self.cells.iter().find(|c| c.row == row && c.col == col)
    }

    pub fn verdicts(&self) -> BTreeMap<(String, String), VerdictKind> {
        self.cells
            .iter()
            .filter_map(|c| c.verdict.map(|v| ((c.row.clone(), c.col.clone()), v)))
            .collect()
    }

    pub fn is_success(&self) -> bool {
        self.comparison.is_complete()
            && self.transitivity_violations.is_empty()
            && self.dimension_mismatches.is_empty()
            && self.rank_six.holds
            && self.cross_checks.iter().all(|c| c.verdict.and_then(|v| v.containment()) != Some(false))
    }
}

/// Runs `f` on every item with up to `jobs` worker threads; results keep input order.
fn parallel_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let jobs = jobs.max(1).min(items.len().max(1));
    if jobs == 1 {
        return items.iter().map(&f).collect();
    }
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                out.lock().expect("result lock")[i] = Some(r);
            });
        }
    });
    out.into_inner().expect("result lock").into_iter().map(|r| r.expect("every item ran")).collect()
}

fn form_facts(cat: &Catalog, opts: &ReproduceOptions) -> Result<Vec<FormFacts>> {
    let results = parallel_map(cat.forms(), opts.jobs, |nf| -> Result<FormFacts> {
        let singular = singular_invariants(&nf.form, HILBERT_CUTOFF, &opts.budget)?;
        let computed = match opts.orbit_dims {
            DimSource::Catalog => None,
            DimSource::Compute => match stabilizer_orbit_dimension(&nf.form, &opts.budget) {
                Ok(d) => Some(d),
                Err(Error::BudgetExceeded(_)) => None,
                Err(e) => return Err(e),
            },
        };
        Ok(FormFacts {
            label: nf.label.clone(),
            orbit_dim: computed.unwrap_or(nf.orbit_dim),
            dim_source: if computed.is_some() { "computed" } else { "catalog" }.to_string(),
            computed_dim: computed,
            singular,
        })
    });
    results.into_iter().collect()
}

fn is_yes(v: Option<VerdictKind>) -> bool {
    v.and_then(|k| k.containment()) == Some(true)
}

fn gb_cell(cat: &Catalog, row: &str, col: &str, opts: &ReproduceOptions) -> Result<CellResult> {
    let start = Instant::now();
    let (verdict, method, detail) = if let Some(check) = cat.gb_check(row, col) {
        let v = sub_elim_sub(&check.source, &check.target, &check.plan, &opts.budget)?;
        (v.kind, Method::SubElimSub, format!("plan {}", check.plan_name))
    } else {
        let v = &cat.lookup(col)?.form;
        let w = &cat.lookup(row)?.form;
        let verdict = in_orbit_closure_cached(v, w, &opts.budget, opts.cache.as_ref())?;
        (verdict.kind, Method::Groebner, verdict.detail.unwrap_or_else(|| "closure elimination".to_string()))
    };
    Ok(CellResult {
        row: row.to_string(),
        col: col.to_string(),
        verdict: Some(verdict),
        method,
        detail: Some(detail),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn reproduce(cat: &Catalog, opts: &ReproduceOptions) -> Result<Reproduction> {
    let labels: Vec<String> = cat.labels().iter().map(|s| s.to_string()).collect();
    let k = labels.len();
    let facts = form_facts(cat, opts)?;
    let dimension_mismatches: Vec<String> = facts
        .iter()
        .filter(|f| f.computed_dim.is_some_and(|d| Some(d) != cat.lookup(&f.label).ok().map(|n| n.orbit_dim)))
        .map(|f| f.label.clone())
        .collect();

    let mut cells: Vec<Vec<Option<CellResult>>> = vec![vec![None; k]; k];
    let settle = |r: usize, c: usize, v: VerdictKind, m: Method, d: Option<String>, ms: u64| CellResult {
        row: labels[r].clone(),
        col: labels[c].clone(),
        verdict: Some(v),
        method: m,
        detail: d,
        elapsed_ms: ms,
    };
    for r in 0..k {
        for c in 0..k {
            if r == c {
                cells[r][c] = Some(settle(r, c, VerdictKind::InClosure, Method::Diagonal, None, 0));
                continue;
            }
            let (fr, fc) = (&facts[r], &facts[c]);
            if fc.orbit_dim <= fr.orbit_dim {
                let why = if fc.orbit_dim != fr.orbit_dim {
                    "orbit dimensions differ"
                } else if fc.singular != fr.singular {
                    "equal orbit dimensions, singular invariants differ"
                } else {
                    "equal orbit dimensions, distinct normal forms"
                };
                if let Some(v) = dimension_pretest(fc.orbit_dim, fr.orbit_dim, false) {
                    let detail = format!("dim {} = {}, dim {} = {}; {why}", labels[c], fc.orbit_dim, labels[r], fr.orbit_dim);
                    cells[r][c] = Some(settle(r, c, v, Method::DimensionPretest, Some(detail), 0));
                    continue;
                }
            }
            if let Some(fx) = cat.fixture_for(&labels[r], &labels[c]) {
                let start = Instant::now();
                let (v, w) = cat.family_forms(&fx.family)?;
                if verify_degeneration(&fx.family, &v, &w)? {
                    let ms = start.elapsed().as_millis() as u64;
                    cells[r][c] = Some(settle(r, c, VerdictKind::InClosure, Method::Degeneration, Some(fx.name.clone()), ms));
                }
            }
        }
    }

    loop {
        let mut changed = false;
        for r in 0..k {
            for c in 0..k {
                if cells[r][c].is_some() {
                    continue;
                }
                let via = (0..k).find(|&b| {
                    b != r
                        && b != c
                        && is_yes(cells[r][b].as_ref().and_then(|x| x.verdict))
                        && is_yes(cells[b][c].as_ref().and_then(|x| x.verdict))
                });
                if let Some(b) = via {
                    let detail = format!("via {}", labels[b]);
                    cells[r][c] = Some(settle(r, c, VerdictKind::InClosure, Method::Transitivity, Some(detail), 0));
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut pending = Vec::new();
    for r in 0..k {
        for c in 0..k {
            if cells[r][c].is_some() {
                continue;
            }
            let open = cat.expected(&labels[r], &labels[c])? == Expected::Open;
            if open && !opts.include_hard {
                cells[r][c] = Some(CellResult {
                    row: labels[r].clone(),
                    col: labels[c].clone(),
                    verdict: None,
                    method: Method::NotAttempted,
                    detail: Some("open cell; rerun with include_hard".into()),
                    elapsed_ms: 0,
                });
            } else {
                pending.push((r, c));
            }
        }
    }
    let computed = parallel_map(&pending, opts.jobs, |&(r, c)| gb_cell(cat, &labels[r], &labels[c], opts));
    for (&(r, c), res) in pending.iter().zip(computed) {
        cells[r][c] = Some(res?);
    }

    let cross_checks = if opts.cross_check {
        let checks: Vec<(String, String)> = cat.gb_checks().iter().map(|c| (c.row.clone(), c.col.clone())).collect();
        parallel_map(&checks, opts.jobs, |(r, c)| gb_cell(cat, r, c, opts)).into_iter().collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };

    let cells: Vec<CellResult> = cells.into_iter().flatten().map(|c| c.expect("every cell settled")).collect();
    let grid = |r: usize, c: usize| cells[r * k + c].verdict.and_then(|v| v.containment());
    let mut transitivity_violations = Vec::new();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if grid(a, b) == Some(true) && grid(b, c) == Some(true) && grid(a, c) == Some(false) {
                    transitivity_violations.push((labels[a].clone(), labels[b].clone(), labels[c].clone()));
                }
            }
        }
    }

    let rank_six: Vec<usize> = (0..k).filter(|&i| cat.forms()[i].rank == 6).collect();
    let witnesses: Vec<(String, Option<String>)> = (0..k)
        .map(|r| {
            let w = rank_six.iter().find(|&&c| grid(r, c) == Some(true)).map(|&c| labels[c].clone());
            (labels[r].clone(), w)
        })
        .collect();
    let rank_six = RankSixCover { holds: witnesses.iter().all(|(_, w)| w.is_some()), witnesses };

    let mut rep = Reproduction {
        labels,
        forms: facts,
        cells,
        cross_checks,
        comparison: CompareReport::default(),
        transitivity_violations,
        dimension_mismatches,
        rank_six,
    };
    rep.comparison = cat.compare(&rep.verdicts());
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_map_keeps_order() {
        let items: Vec<u32> = (0..50).collect();
        assert_eq!(parallel_map(&items, 4, |x| x * 2), items.iter().map(|x| x * 2).collect::<Vec<_>>());
        assert!(parallel_map(&Vec::<u32>::new(), 3, |x| *x).is_empty());
    }

    #[test]
    fn default_reproduction_matches_catalog() {
        let cat = Catalog::embedded();
        let rep = reproduce(cat, &ReproduceOptions { jobs: 2, ..Default::default() }).unwrap();
        assert!(rep.comparison.mismatches.is_empty(), "{:?}", rep.comparison.mismatches);
        assert!(rep.comparison.undecided.is_empty(), "{:?}", rep.comparison.undecided);
        assert!(rep.transitivity_violations.is_empty());
        assert!(rep.rank_six.holds);
        assert_eq!(rep.comparison.open, 11);
        assert!(rep.is_success());
        assert_eq!(rep.cell("7B", "6C").unwrap().verdict, Some(VerdictKind::InClosure));
        assert_eq!(rep.cell("6C", "7B").unwrap().verdict, Some(VerdictKind::NotInClosure));
    }
}
