//! Embedded data files. Keep the lists in step with `data/fixtures` and `data/plans`.

pub(crate) const NORMAL_FORMS: &str = include_str!("../../data/normal_forms.json");
pub(crate) const TABLE: &str = include_str!("../../data/table2.json");
pub(crate) const GB_CHECKS: &str = include_str!("../../data/gb_checks.json");

pub(crate) const FIXTURE_FILES: &[(&str, &str)] = &[
    ("1A-2A", include_str!("../../data/fixtures/1A-2A.json")),
    ("1A-3A", include_str!("../../data/fixtures/1A-3A.json")),
    ("1A-4A", include_str!("../../data/fixtures/1A-4A.json")),
    ("1A-4B", include_str!("../../data/fixtures/1A-4B.json")),
    ("1A-4C", include_str!("../../data/fixtures/1A-4C.json")),
    ("1A-4D", include_str!("../../data/fixtures/1A-4D.json")),
    ("1A-6A", include_str!("../../data/fixtures/1A-6A.json")),
    ("1A-7B", include_str!("../../data/fixtures/1A-7B.json")),
    ("2A-4B", include_str!("../../data/fixtures/2A-4B.json")),
    ("2A-4C", include_str!("../../data/fixtures/2A-4C.json")),
    ("2A-4D", include_str!("../../data/fixtures/2A-4D.json")),
    ("2A-5A", include_str!("../../data/fixtures/2A-5A.json")),
    ("2A-6B", include_str!("../../data/fixtures/2A-6B.json")),
    ("2A-7A", include_str!("../../data/fixtures/2A-7A.json")),
    ("2A-7B", include_str!("../../data/fixtures/2A-7B.json")),
    ("3A-2A", include_str!("../../data/fixtures/3A-2A.json")),
    ("4A-6C", include_str!("../../data/fixtures/4A-6C.json")),
    ("4B-4A", include_str!("../../data/fixtures/4B-4A.json")),
    ("4B-7B", include_str!("../../data/fixtures/4B-7B.json")),
    ("4C-4A", include_str!("../../data/fixtures/4C-4A.json")),
    ("4C-6B", include_str!("../../data/fixtures/4C-6B.json")),
    ("4C-7A", include_str!("../../data/fixtures/4C-7A.json")),
    ("4C-7B", include_str!("../../data/fixtures/4C-7B.json")),
    ("4D-4A", include_str!("../../data/fixtures/4D-4A.json")),
    ("4D-4C", include_str!("../../data/fixtures/4D-4C.json")),
    ("4D-6B", include_str!("../../data/fixtures/4D-6B.json")),
    ("4D-7A", include_str!("../../data/fixtures/4D-7A.json")),
    ("4D-7B", include_str!("../../data/fixtures/4D-7B.json")),
    ("5A-4B", include_str!("../../data/fixtures/5A-4B.json")),
    ("5A-4C", include_str!("../../data/fixtures/5A-4C.json")),
    ("5A-6B", include_str!("../../data/fixtures/5A-6B.json")),
    ("5A-7A", include_str!("../../data/fixtures/5A-7A.json")),
    ("6B-6A", include_str!("../../data/fixtures/6B-6A.json")),
    ("6C-limit", include_str!("../../data/fixtures/6C-limit.json")),
    ("7A-6A", include_str!("../../data/fixtures/7A-6A.json")),
    ("7B-6C", include_str!("../../data/fixtures/7B-6C.json")),
    ("binary-cubic", include_str!("../../data/fixtures/binary-cubic.json")),
];

pub(crate) const PLAN_FILES: &[(&str, &str)] = &[
    ("2A-4C", include_str!("../../data/plans/2A-4C.json")),
    ("2A-4D", include_str!("../../data/plans/2A-4D.json")),
    ("2A-5A", include_str!("../../data/plans/2A-5A.json")),
    ("2A-6B", include_str!("../../data/plans/2A-6B.json")),
    ("2A-7A", include_str!("../../data/plans/2A-7A.json")),
    ("5A-4B", include_str!("../../data/plans/5A-4B.json")),
    ("5A-4C", include_str!("../../data/plans/5A-4C.json")),
    ("7B-6C", include_str!("../../data/plans/7B-6C.json")),
];
