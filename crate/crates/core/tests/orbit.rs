use num_bigint::BigInt;
use num_rational::BigRational;

use orbitkit::catalog::Catalog;
use orbitkit::groebner::{is_zero, ComputeBudget, Ideal};
use orbitkit::orbit::{
    build_graph_ideal, closure_ideal, dimension_pretest, elim_sub_ideal, in_orbit, in_orbit_closure,
    singular_invariants, singular_locus, stabilizer_orbit_dimension, sub_elim_sub, sub_elim_sub_ideal,
    verify_degeneration, AnsatzEntry, EliminationPlan, Form, GroupAnsatz, OrbitMode, VerdictKind,
};
use orbitkit::ring::{parse_poly, PolyRing};
use orbitkit::Error;

fn q(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

fn form(text: &str, n: usize) -> Form {
    Form::parse(text, n).unwrap()
}

fn budget() -> ComputeBudget {
    ComputeBudget::seconds(120)
}

#[test]
fn linear_graph_ideal_with_det() {
    let gi = build_graph_ideal(&form("x1", 1), &GroupAnsatz::generic(1), true).unwrap();
    let r = gi.ideal.ring().clone();
    let expected = Ideal::new(&r, ["g11 - c1", "g11 - 1"].map(|s| parse_poly(s, &r).unwrap())).unwrap();
    assert!(orbitkit::groebner::same_ideal(&gi.ideal, &expected, &budget()).unwrap());
    assert_eq!(gi.c_vars, ["c1"]);
}

#[test]
fn graph_ideal_shapes() {
    let gi = build_graph_ideal(&form("x1^3 + x1*x2^2", 2), &GroupAnsatz::generic(2), false).unwrap();
    assert_eq!(gi.ideal.generators().len(), 4);
    assert_eq!(gi.c_vars, ["c30", "c21", "c12", "c03"]);

    let v = form("x1*x2^2 + x3*x4^2", 4);
    let full = build_graph_ideal(&v, &GroupAnsatz::generic(4), false).unwrap();
    let ansatz = GroupAnsatz::with_row_support(4, &[vec![0, 1, 2, 3], vec![0, 2], vec![0, 1, 2, 3], vec![0, 2]]).unwrap();
    assert_eq!(ansatz.free_count(), 12);
    let restricted = build_graph_ideal(&v, &ansatz, false).unwrap();
    assert_eq!(full.ideal.generators().len(), 20);
    assert_eq!(restricted.ideal.generators().len(), 20);
    assert_eq!(restricted.g_vars.len(), 12);
    assert!(matches!(ansatz.entries()[1][1], AnsatzEntry::Fixed(_)));
}

#[test]
fn ansatz_must_match_form_size() {
    let err = build_graph_ideal(&form("x1^3", 2), &GroupAnsatz::generic(3), false).unwrap_err();
    assert!(matches!(err, Error::DimensionMismatch(_)));
}

#[test]
fn binary_closure_ideals() {
    let cubes = closure_ideal(&form("x1^3", 2), &GroupAnsatz::generic(2), &budget(), None).unwrap();
    assert!(cubes.contains(&form("x1^3", 2)).unwrap());
    assert!(!cubes.contains(&form("x1^2*x2", 2)).unwrap());

    let j = closure_ideal(&form("x1^3 + x1*x2^2", 2), &GroupAnsatz::generic(2), &budget(), None).unwrap();
    assert!(is_zero(&j.specialize(&form("x1^2*x2", 2)).unwrap()));

    let j = closure_ideal(&form("x1^2*x2", 2), &GroupAnsatz::generic(2), &budget(), None).unwrap();
    assert!(!is_zero(&j.specialize(&form("x1^3 + x1*x2^2", 2)).unwrap()));
}

#[test]
fn binary_closure_verdicts() {
    let (v, w) = (form("x1^3 + x1*x2^2", 2), form("x1^2*x2", 2));
    assert_eq!(in_orbit_closure(&v, &w, &budget()).unwrap().kind, VerdictKind::InClosure);
    assert_eq!(in_orbit_closure(&w, &v, &budget()).unwrap().kind, VerdictKind::NotInClosure);
    assert_eq!(in_orbit_closure(&v, &v, &budget()).unwrap().kind, VerdictKind::InClosure);
}

#[test]
fn square_times_linear_misses_mixed_cubic() {
    // closure of l^2*m in the variables x1, x3, x4
    let vars = ["x1", "x3", "x4"];
    let v = Form::parse_in("x3^2*x4", &vars).unwrap();
    let w = Form::parse_in("x1*x3*x4 + x3^3", &vars).unwrap();
    assert_eq!(in_orbit_closure(&v, &w, &budget()).unwrap().kind, VerdictKind::NotInClosure);
}

#[test]
fn orbit_reflexivity() {
    let cat = Catalog::embedded();
    for label in ["1A", "2A", "3A", "4B", "4C", "4D", "5A", "6A", "6B", "7A"] {
        let f = &cat.lookup(label).unwrap().form;
        assert_eq!(in_orbit(f, f, OrbitMode::Strict, &budget()).unwrap().kind, VerdictKind::InOrbit, "{label}");
    }
}

#[test]
fn strict_and_projective_modes() {
    let v = form("x1^3 + x2^3", 2);
    let w = form("x1^2*x2 + x1*x2^2", 2);
    assert_eq!(in_orbit(&v, &w, OrbitMode::Strict, &budget()).unwrap().kind, VerdictKind::NotInOrbit);
    assert_eq!(in_orbit(&v, &w, OrbitMode::Projective, &budget()).unwrap().kind, VerdictKind::InOrbit);
    let w5 = w.scaled(&q(5)).unwrap();
    assert_eq!(in_orbit(&v, &w5, OrbitMode::Projective, &budget()).unwrap().kind, VerdictKind::InOrbit);

    let u = form("x1^2*x2", 2);
    for mode in [OrbitMode::Strict, OrbitMode::Projective] {
        assert_eq!(in_orbit(&v, &u, mode, &budget()).unwrap().kind, VerdictKind::NotInOrbit);
        assert_eq!(in_orbit(&v, &u.scaled(&q(5)).unwrap(), mode, &budget()).unwrap().kind, VerdictKind::NotInOrbit);
    }
}

#[test]
fn mismatched_shapes_are_rejected() {
    let err = in_orbit(&form("x1^3", 2), &form("x1^3", 3), OrbitMode::Strict, &budget()).unwrap_err();
    assert!(matches!(err, Error::DimensionMismatch(_)));
    let err = in_orbit_closure(&form("x1^3", 2), &form("x1^2", 2), &budget()).unwrap_err();
    assert!(matches!(err, Error::DimensionMismatch(_)));
}

#[test]
fn elimination_order_matters_for_substitution() {
    let r = PolyRing::rational(&["x", "y", "z"]).unwrap();
    let ideal = Ideal::new(&r, [parse_poly("y + x*z", &r).unwrap()]).unwrap();
    let k = elim_sub_ideal(&ideal, &["z"], &[("x", q(0)), ("y", q(1))], &budget()).unwrap();
    assert!(is_zero(&k));
    let m = sub_elim_sub_ideal(&ideal, &[("x", q(0))], &["z"], &[("y", q(1))], &budget()).unwrap();
    assert!(orbitkit::groebner::is_trivial(&m, &budget()).unwrap());
}

fn binary_plan(pre: &[(&str, i64)], post: &[(&str, i64)]) -> EliminationPlan {
    EliminationPlan {
        pre: pre.iter().map(|(k, v)| (k.to_string(), q(*v))).collect(),
        ansatz: GroupAnsatz::generic(2),
        post: post.iter().map(|(k, v)| (k.to_string(), q(*v))).collect(),
    }
}

#[test]
fn sub_elim_sub_is_one_sided() {
    let (v, w) = (form("x1^3 + x1*x2^2", 2), form("x1^2*x2", 2));
    let coeffs = [("c30", 0), ("c21", 1), ("c12", 0), ("c03", 0)];

    let trivial = binary_plan(&[], &coeffs);
    let verdict = sub_elim_sub(&v, &w, &trivial, &budget()).unwrap();
    assert_eq!(verdict.kind, VerdictKind::ContainmentProven);
    assert_eq!(in_orbit_closure(&v, &w, &budget()).unwrap().kind, VerdictKind::InClosure);

    // pre-substituting everything asks for orbit membership, which fails here
    let eager = binary_plan(&coeffs, &[]);
    assert_eq!(sub_elim_sub(&v, &w, &eager, &budget()).unwrap().kind, VerdictKind::Inconclusive);

    let reverse = binary_plan(&[], &[("c30", 1), ("c21", 0), ("c12", 1), ("c03", 0)]);
    assert_eq!(sub_elim_sub(&w, &v, &reverse, &budget()).unwrap().kind, VerdictKind::Inconclusive);
}

#[test]
fn plan_must_agree_with_target() {
    let (v, w) = (form("x1^3 + x1*x2^2", 2), form("x1^2*x2", 2));
    let wrong = binary_plan(&[("c30", 1)], &[("c21", 1), ("c12", 0), ("c03", 0)]);
    assert!(matches!(sub_elim_sub(&v, &w, &wrong, &budget()), Err(Error::PlanMismatch(_))));
    let short = binary_plan(&[], &[("c21", 1)]);
    assert!(matches!(sub_elim_sub(&v, &w, &short, &budget()), Err(Error::PlanMismatch(_))));
    let twice = binary_plan(&[("c21", 1)], &[("c21", 1), ("c30", 0), ("c12", 0), ("c03", 0)]);
    assert!(matches!(sub_elim_sub(&v, &w, &twice, &budget()), Err(Error::PlanMismatch(_))));
}

#[test]
fn degeneration_examples() {
    let cat = Catalog::embedded();
    let fam = &cat.fixture("6C-limit").unwrap().family;
    let (v, w) = cat.family_forms(fam).unwrap();
    assert_eq!(v, form("x1*x2^2 + x3*x4^2", 4));
    assert_eq!(w, form("x1*x2^2", 4));
    assert!(verify_degeneration(fam, &v, &w).unwrap());

    let fam = &cat.fixture("1A-3A").unwrap().family;
    let (v, w) = cat.family_forms(fam).unwrap();
    assert!(verify_degeneration(fam, &v, &w).unwrap());
    assert!(!verify_degeneration(fam, &v, &v).unwrap());

    let fam = &cat.fixture("3A-2A").unwrap().family;
    let (v, w) = cat.family_forms(fam).unwrap();
    let check = orbitkit::orbit::examine_degeneration(fam, &v, &w).unwrap();
    assert_eq!(check.order, 1);
    assert_eq!(check.limit, form("3*x1^2*x2", 4).poly().clone());
    assert!(check.holds());
}

#[test]
fn verified_limits_are_in_the_closure() {
    let cat = Catalog::embedded();
    let fam = &cat.fixture("binary-cubic").unwrap().family;
    let (v, w) = cat.family_forms(fam).unwrap();
    assert!(verify_degeneration(fam, &v, &w).unwrap());
    assert_eq!(in_orbit_closure(&v, &w, &budget()).unwrap().kind, VerdictKind::InClosure);
}

#[test]
fn singular_loci() {
    let r = PolyRing::forms(4);
    let p = |s: &str| parse_poly(s, &r).unwrap();
    let j = singular_locus(&form("x1^3", 4)).unwrap();
    assert_eq!(j.generators(), [p("3*x1^2")]);
    let j = singular_locus(&form("x1*x2^2 + x3*x4^2", 4)).unwrap();
    let expected = Ideal::new(&r, ["x2^2", "2*x1*x2", "x4^2", "2*x3*x4"].map(p)).unwrap();
    assert!(orbitkit::groebner::same_ideal(&j, &expected, &budget()).unwrap());

    let fermat = singular_invariants(&form("x1^3 + x2^3 + x3^3 + x4^3", 4), 4, &budget()).unwrap();
    assert_eq!(fermat.dim, Some(0));
    let cat = Catalog::embedded();
    let dim = |l: &str| singular_invariants(&cat.lookup(l).unwrap().form, 3, &budget()).unwrap().dim;
    assert_eq!(dim("1A"), Some(3));
    assert_eq!(dim("2A"), Some(2));
    for nf in cat.forms() {
        assert_eq!(dim(&nf.label), Some(nf.singular_cone_dim), "{}", nf.label);
    }
}

#[test]
fn small_orbit_dimensions() {
    let f = |s: &str, n| stabilizer_orbit_dimension(&form(s, n), &budget()).unwrap();
    assert_eq!(f("x1^3", 4), 4);
    assert_eq!(f("x1*x2*x3", 4), 10);
    assert_eq!(f("x1^3 + x2^3", 2), 4);
    assert_eq!(f("x1^2*x2", 2), 3);
}

#[test]
fn dimension_pretest_examples() {
    assert_eq!(dimension_pretest(13, 14, false), Some(VerdictKind::NotInClosure));
    assert_eq!(dimension_pretest(11, 11, false), Some(VerdictKind::NotInClosure));
    assert_eq!(dimension_pretest(11, 11, true), None);
    assert_eq!(dimension_pretest(14, 7, false), None);
}

#[test]
fn verdict_semantics() {
    assert_eq!(VerdictKind::ContainmentProven.containment(), Some(true));
    assert_eq!(VerdictKind::NotInClosure.containment(), Some(false));
    assert_eq!(VerdictKind::Inconclusive.containment(), None);
    assert!(!VerdictKind::BudgetExceeded.is_decided());
}

#[test]
fn exhausted_budget_is_a_verdict() {
    let tight = ComputeBudget { max_pairs: 1, ..ComputeBudget::default() };
    let v = form("x1^3 + x1*x2^2 + x2*x3^2", 3);
    let verdict = in_orbit_closure(&v, &form("x1^3", 3), &tight).unwrap();
    assert_eq!(verdict.kind, VerdictKind::BudgetExceeded);
    assert!(verdict.stats.is_some());
}
