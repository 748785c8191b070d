use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orbitkit::catalog::Catalog;
use orbitkit::groebner::cache::{CacheDir, CacheEntry};
use orbitkit::groebner::ComputeBudget;
use orbitkit::orbit::{
    examine_degeneration, in_orbit, in_orbit_closure_cached, singular_invariants, singular_locus,
    stabilizer_orbit_dimension, sub_elim_sub, DegenerationFamily, EliminationPlan, Form, OrbitMode, Verdict,
    VerdictKind,
};
use orbitkit::reproduce::{reproduce, DimSource, ReproduceOptions};
use orbitkit::Error;

const SCHEMA: &str = "orbitkit-report/1";

#[derive(Parser)]
#[command(name = "orbitkit", version, about = "Orbit and orbit-closure containment for homogeneous forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Clone)]
struct Global {
    /// Wall-clock limit per Gröbner computation, in seconds.
    #[arg(long, global = true, default_value_t = 300)]
    budget: u64,
    /// Limit on processed critical pairs per Gröbner computation.
    #[arg(long, global = true)]
    max_pairs: Option<u64>,
    /// Closure-ideal cache directory.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Comma-separated variable names for inline forms (default x1..xn).
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Required degree of every form.
    #[arg(long, global = true)]
    degree: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Strict,
    Projective,
}

#[derive(Subcommand)]
enum Command {
    /// Is the target in the orbit of the source?
    InOrbit {
        #[arg(long, allow_hyphen_values = true)]
        source: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, value_enum, default_value = "strict")]
        mode: Mode,
    },
    /// Is the target in the orbit closure of the source?
    InClosure {
        #[arg(long, allow_hyphen_values = true)]
        source: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
    },
    /// One-sided closure certificate from a substitution plan.
    SubElimSub {
        #[arg(long, allow_hyphen_values = true)]
        source: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Plan JSON file.
        #[arg(long)]
        plan: PathBuf,
    },
    /// Check a degeneration family.
    VerifyLimit {
        /// Fixture JSON file.
        #[arg(long, conflicts_with = "name")]
        fixture: Option<PathBuf>,
        /// Name of an embedded fixture, e.g. `1A-3A`.
        #[arg(long)]
        name: Option<String>,
        /// Check every embedded fixture.
        #[arg(long, conflicts_with_all = ["fixture", "name"])]
        all: bool,
    },
    /// Orbit dimension from the stabilizer.
    OrbitDim {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// Jacobian ideal and its invariants.
    Singular {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(long, default_value_t = 4)]
        hilbert: u32,
    },
    /// Reproduce the containment table of the catalog forms.
    Reproduce {
        #[arg(long, default_value_t = 2)]
        table: u32,
        /// Attempt the cells the catalog leaves open.
        #[arg(long)]
        include_hard: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Compute orbit dimensions instead of reading them from the catalog.
        #[arg(long)]
        compute_dims: bool,
        /// Re-run the recorded sub-elim-sub certificates.
        #[arg(long)]
        cross_check: bool,
    },
    /// Inspect or clear the closure-ideal cache.
    Cache {
        #[command(subcommand)]
        op: CacheOp,
    },
}

#[derive(Subcommand)]
enum CacheOp {
    List,
    Purge,
    Show { key: String },
}

struct Outcome {
    exit: u8,
    text: String,
    body: Value,
}

fn budget(g: &Global) -> ComputeBudget {
    let mut b = ComputeBudget::seconds(g.budget);
    if let Some(p) = g.max_pairs {
        b.max_pairs = p;
    }
    b
}

fn infer_vars(texts: &[&str]) -> Vec<String> {
    let mut n = 1;
    for t in texts {
        let bytes = t.as_bytes();
        for (i, _) in t.match_indices('x') {
            let digits: String = bytes[i + 1..].iter().take_while(|b| b.is_ascii_digit()).map(|&b| b as char).collect();
            if let Ok(k) = digits.parse::<usize>() {
                n = n.max(k);
            }
        }
    }
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Catalog label or inline polynomial text.
fn resolve_forms(g: &Global, texts: &[&str]) -> Result<Vec<Form>, Error> {
    let cat = Catalog::embedded();
    let inline: Vec<&str> = texts.iter().copied().filter(|t| cat.lookup(t).is_err()).collect();
    let vars = match &g.vars {
        Some(v) => v.clone(),
        None if inline.len() < texts.len() => (1..=4).map(|i| format!("x{i}")).collect(),
        None => infer_vars(&inline),
    };
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let forms = texts
        .iter()
        .map(|t| match cat.lookup(t) {
            Ok(nf) if names.len() == 4 => Form::parse_in(&nf.form.to_string(), &names),
            Ok(_) => Err(Error::DimensionMismatch(format!("label {t} needs 4 variables"))),
            Err(_) => Form::parse_in(t, &names),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(d) = g.degree {
        if let Some(f) = forms.iter().find(|f| f.degree() != d) {
            return Err(Error::InvalidForm(format!("`{f}` has degree {}, expected {d}", f.degree())));
        }
    }
    Ok(forms)
}

fn exit_for(kind: VerdictKind) -> u8 {
    if kind.is_decided() {
        0
    } else {
        2
    }
}

fn verdict_outcome(v: Verdict, elapsed_ms: u64) -> Outcome {
    let mut text = v.kind.to_string();
    if let Some(d) = &v.detail {
        text.push_str(&format!(" ({d})"));
    }
    if let Some(s) = &v.stats {
        text.push_str(&format!(" [{s}]"));
    }
    Outcome {
        exit: exit_for(v.kind),
        text,
        body: json!({ "verdict": v, "elapsed_ms": elapsed_ms }),
    }
}

fn open_cache(g: &Global) -> Result<Option<CacheDir>, Error> {
    g.cache.as_ref().map(CacheDir::open).transpose()
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let g = &cli.global;
    let start = Instant::now();
    let ms = |s: &Instant| s.elapsed().as_millis() as u64;
    match &cli.command {
        Command::InOrbit { source, target, mode } => {
            let f = resolve_forms(g, &[source, target])?;
            let mode = match mode {
                Mode::Strict => OrbitMode::Strict,
                Mode::Projective => OrbitMode::Projective,
            };
            Ok(verdict_outcome(in_orbit(&f[0], &f[1], mode, &budget(g))?, ms(&start)))
        }
        Command::InClosure { source, target } => {
            let f = resolve_forms(g, &[source, target])?;
            let cache = open_cache(g)?;
            let v = in_orbit_closure_cached(&f[0], &f[1], &budget(g), cache.as_ref())?;
            let mut out = verdict_outcome(v, ms(&start));
            out.body["cache_hit"] = json!(out.text.contains("from cache"));
            Ok(out)
        }
        Command::SubElimSub { source, target, plan } => {
            let f = resolve_forms(g, &[source, target])?;
            let plan = EliminationPlan::from_json(&std::fs::read_to_string(plan)?)?;
            Ok(verdict_outcome(sub_elim_sub(&f[0], &f[1], &plan, &budget(g))?, ms(&start)))
        }
        Command::VerifyLimit { fixture, name, all } => {
            let cat = Catalog::embedded();
            let families: Vec<(String, DegenerationFamily)> = if *all {
                cat.fixtures().iter().map(|f| (f.name.clone(), f.family.clone())).collect()
            } else if let Some(path) = fixture {
                vec![(path.display().to_string(), DegenerationFamily::from_json(&std::fs::read_to_string(path)?)?)]
            } else if let Some(n) = name {
                let fx = cat.fixture(n).ok_or_else(|| Error::UnknownLabel(n.clone()))?;
                vec![(fx.name.clone(), fx.family.clone())]
            } else {
                return Err(Error::Format("give --fixture, --name or --all".into()));
            };
            let mut lines = Vec::new();
            let mut results = Vec::new();
            let mut ok = true;
            for (label, fam) in families {
                let (v, w) = cat.family_forms(&fam)?;
                let check = examine_degeneration(&fam, &v, &w)?;
                ok &= check.holds();
                lines.push(format!(
                    "{label}: {} (order {}, limit {})",
                    check.holds(),
                    check.order,
                    check.limit
                ));
                results.push(json!({
                    "fixture": label,
                    "holds": check.holds(),
                    "order": check.order,
                    "limit": check.limit.to_string(),
                    "lambda": check.lambda.as_ref().map(|l| fam.domain.format(l)),
                }));
            }
            Ok(Outcome { exit: if ok { 0 } else { 2 }, text: lines.join("\n"), body: json!({ "results": results }) })
        }
        Command::OrbitDim { form } => {
            let f = resolve_forms(g, &[form])?;
            match stabilizer_orbit_dimension(&f[0], &budget(g)) {
                Ok(d) => Ok(Outcome {
                    exit: 0,
                    text: d.to_string(),
                    body: json!({ "orbit_dim": d, "elapsed_ms": ms(&start) }),
                }),
                Err(Error::BudgetExceeded(s)) => Ok(Outcome {
                    exit: 2,
                    text: format!("BudgetExceeded [{s}]"),
                    body: json!({ "orbit_dim": null, "budget_exceeded": s }),
                }),
                Err(e) => Err(e),
            }
        }
        Command::Singular { form, hilbert } => {
            let f = resolve_forms(g, &[form])?;
            let locus = singular_locus(&f[0])?;
            let inv = singular_invariants(&f[0], *hilbert, &budget(g))?;
            let gens: Vec<String> = locus.generators().iter().map(|p| p.to_string()).collect();
            let dim = inv.dim.map_or("empty".to_string(), |d| d.to_string());
            Ok(Outcome {
                exit: 0,
                text: format!("jacobian: {}\ndim: {dim}\nhilbert: {:?}", gens.join(", "), inv.hilbert),
                body: json!({ "jacobian": gens, "invariants": inv }),
            })
        }
        Command::Reproduce { table, include_hard, jobs, compute_dims, cross_check } => {
            if *table != 2 {
                return Err(Error::Format(format!("no table {table}; only the containment table (2) is reproducible")));
            }
            let opts = ReproduceOptions {
                budget: budget(g),
                include_hard: *include_hard,
                cross_check: *cross_check,
                jobs: (*jobs).max(1),
                cache: open_cache(g)?,
                orbit_dims: if *compute_dims { DimSource::Compute } else { DimSource::Catalog },
            };
            let rep = reproduce(Catalog::embedded(), &opts)?;
            let mut text = String::new();
            text.push_str(&format!("{:>4}", ""));
            for c in &rep.labels {
                text.push_str(&format!("{c:>4}"));
            }
            text.push('\n');
            for r in &rep.labels {
                text.push_str(&format!("{r:>4}"));
                for c in &rep.labels {
                    let sym = match rep.cell(r, c).and_then(|x| x.verdict).and_then(|v| v.containment()) {
                        Some(true) => "Y",
                        Some(false) => "n",
                        None => ".",
                    };
                    text.push_str(&format!("{sym:>4}"));
                }
                text.push('\n');
            }
            let cmp = &rep.comparison;
            text.push_str(&format!(
                "agreed {}, open {}, mismatches {}, new {}, undecided {}\n",
                cmp.agreed,
                cmp.open,
                cmp.mismatches.len(),
                cmp.new.len(),
                cmp.undecided.len()
            ));
            for m in &cmp.mismatches {
                text.push_str(&format!("MISMATCH ({}, {}): expected {}, computed {:?}\n", m.row, m.col, m.expected, m.computed));
            }
            for m in &cmp.new {
                text.push_str(&format!("NEW ({}, {}): {:?}\n", m.row, m.col, m.computed));
            }
            text.push_str(&format!("every form below a rank-six form: {}", rep.rank_six.holds));
            let exit = if !cmp.mismatches.is_empty() || !rep.transitivity_violations.is_empty() {
                3
            } else if rep.is_success() {
                0
            } else {
                2
            };
            Ok(Outcome { exit, text, body: json!({ "elapsed_ms": ms(&start), "reproduction": rep }) })
        }
        Command::Cache { op } => {
            let dir = g
                .cache
                .as_ref()
                .ok_or_else(|| Error::Format("cache commands need --cache DIR".into()))?;
            let cache = CacheDir::open(dir)?;
            match op {
                CacheOp::List => {
                    let mut rows = Vec::new();
                    let mut lines = Vec::new();
                    for key in cache.keys()? {
                        let entry = CacheEntry::read(&cache.path_for(&key))?;
                        let status = entry.metadata.get("status").cloned().unwrap_or_default();
                        let source = entry.metadata.get("source").cloned().unwrap_or_default();
                        lines.push(format!("{key}  {status}  {source}  ({} polynomials)", entry.basis.len()));
                        rows.push(json!({ "key": key, "status": status, "source": source, "basis_len": entry.basis.len() }));
                    }
                    Ok(Outcome { exit: 0, text: lines.join("\n"), body: json!({ "entries": rows }) })
                }
                CacheOp::Purge => {
                    let n = cache.purge()?;
                    Ok(Outcome { exit: 0, text: format!("removed {n} entries"), body: json!({ "removed": n }) })
                }
                CacheOp::Show { key } => {
                    let entry = cache.load(key)?.ok_or_else(|| Error::UnknownLabel(key.clone()))?;
                    let text = entry.to_text();
                    Ok(Outcome { exit: 0, body: json!({ "key": key, "entry": text }), text })
                }
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::InOrbit { .. } => "in-orbit",
        Command::InClosure { .. } => "in-closure",
        Command::SubElimSub { .. } => "sub-elim-sub",
        Command::VerifyLimit { .. } => "verify-limit",
        Command::OrbitDim { .. } => "orbit-dim",
        Command::Singular { .. } => "singular",
        Command::Reproduce { .. } => "reproduce",
        Command::Cache { .. } => "cache",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (exit, text, mut report) = match run(&cli) {
        Ok(o) => (o.exit, o.text, o.body),
        Err(e) => (1, format!("error[{}]: {e}", e.code()), json!({ "error": { "code": e.code(), "message": e.to_string() } })),
    };
    report["schema"] = json!(SCHEMA);
    report["command"] = json!(command_name(&cli.command));
    report["args"] = json!(args);
    report["exit_code"] = json!(exit);
    let rendered = serde_json::to_string_pretty(&report).expect("report serializes");
    match &cli.global.json {
        Some(p) if p.as_os_str() == "-" => {
            let _ = writeln!(std::io::stdout(), "{rendered}");
        }
        Some(p) => {
            if let Err(e) = std::fs::write(p, format!("{rendered}\n")) {
                eprintln!("error[IoError]: {e}");
                return ExitCode::from(1);
            }
            print_text(exit, &text);
        }
        None => print_text(exit, &text),
    }
    ExitCode::from(exit)
}

fn print_text(exit: u8, text: &str) {
    let _ = if exit == 1 {
        writeln!(std::io::stderr(), "{text}")
    } else {
        writeln!(std::io::stdout(), "{text}")
    };
}
