//! End-to-end acceptance checks. Each test covers one numbered criterion
//! and prints a single PASS line (visible with `--nocapture`); a failure
//! prints FAIL before panicking.

use std::time::Instant;

use indexmap::IndexMap;
use proptest::prelude::*;

use oax::axis::AxisConstraint;
use oax::compose::{LabeledVerdict, VerdictSource};
use oax::engine::{conflict_report, conflict_report_text};
use oax::interval::{Density, Edge, Interval};
use oax::lint::{check_refinement, FindingKind, LintRegistry, Severity};
use oax::model::{parse_policy, Operator};
use oax::numeric::{rat, Rat};
use oax::profile::{AxisOperand, AxisRegistry, OAX};
use oax::verdict::{
    axis_subsumes, axis_verdict, box_denote, kleene_and, kleene_not, kleene_or, to_constraints,
    AxisSlot, BoxDenotation, SubsumptionVerdict, Verdict3,
};

fn pass(n: u32, name: &str) {
    println!("criterion {n} ({name}): PASS");
}

fn operand(name: &str) -> AxisOperand {
    AxisRegistry::standard()
        .lookup(&format!("{OAX}{name}"))
        .unwrap()
        .clone()
}

// -- 1: running-example regression ----------------------------------------

#[test]
fn criterion_01_display_size_regression() {
    let start = Instant::now();
    let registry = AxisRegistry::standard();
    let left = parse_policy(
        r#"{"uid":"ex:display","permission":[{"action":"odrl:display","constraint":[
            {"leftOperand":"oax:absoluteSizeWidth","operator":"odrl:lteq","rightOperand":600},
            {"leftOperand":"oax:absoluteSizeHeight","operator":"odrl:lteq","rightOperand":600}
        ]}]}"#,
    )
    .unwrap();
    let right = parse_policy(
        r#"{"uid":"ex:slot","permission":[{"action":"odrl:display","constraint":[
            {"leftOperand":"oax:absoluteSizeWidth","operator":"odrl:gteq","rightOperand":1200},
            {"leftOperand":"oax:absoluteSizeWidth","operator":"odrl:lteq","rightOperand":1200},
            {"leftOperand":"oax:absoluteSizeHeight","operator":"odrl:gteq","rightOperand":400},
            {"leftOperand":"oax:absoluteSizeHeight","operator":"odrl:lteq","rightOperand":400}
        ]}]}"#,
    )
    .unwrap();
    let side = vec![
        LabeledVerdict {
            operand: "odrl:spatial".into(),
            source: VerdictSource::ConceptValued,
            verdict: Verdict3::Compatible,
            note: None,
        },
        LabeledVerdict {
            operand: "odrl:purpose".into(),
            source: VerdictSource::ConceptValued,
            verdict: Verdict3::Unknown,
            note: None,
        },
    ];
    let report = conflict_report(&left, &right, &registry, &side).unwrap();
    assert_eq!(report.verdict, Verdict3::Conflict);
    assert_eq!(
        report.axes["oax:absoluteSizeWidth"].verdict,
        Verdict3::Conflict
    );
    assert_eq!(
        report.axes["oax:absoluteSizeHeight"].verdict,
        Verdict3::Compatible
    );
    let text = conflict_report_text(&report);
    assert!(text.contains("sole conflicting axis: oax:absoluteSizeWidth"));
    assert!(start.elapsed().as_secs() < 1);
    pass(1, "running-example regression");
}

// -- 2: Kleene algebra ------------------------------------------------------

#[test]
fn criterion_02_kleene_truth_tables() {
    use Verdict3::*;
    let all = [Conflict, Unknown, Compatible];
    let mut assertions = 0;
    for a in all {
        for b in all {
            assert_eq!(kleene_and(a, b), a.min(b), "and {a:?} {b:?}");
            assertions += 1;
            assert_eq!(kleene_or(a, b), a.max(b), "or {a:?} {b:?}");
            assertions += 1;
        }
    }
    for a in all {
        let expected = match a {
            Conflict => Compatible,
            Unknown => Unknown,
            Compatible => Conflict,
        };
        assert_eq!(kleene_not(a), expected);
        assertions += 1;
        // De Morgan closes the table: not distributes over min/max
        for b in all {
            assert_eq!(kleene_not(kleene_and(a, b)), kleene_or(kleene_not(a), kleene_not(b)));
        }
        assertions += 2;
    }
    assert_eq!(assertions, 27);
    pass(2, "Kleene truth tables");
}

// -- 3: conflict propagation ------------------------------------------------

fn dimensional_op() -> impl Strategy<Value = Operator> {
    prop_oneof![
        Just(Operator::Eq),
        Just(Operator::Lt),
        Just(Operator::Lteq),
        Just(Operator::Gt),
        Just(Operator::Gteq),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10_000, ..ProptestConfig::default() })]
    #[test]
    fn criterion_03_conflict_propagation(
        o1 in dimensional_op(),
        o2 in dimensional_op(),
        o3 in dimensional_op(),
        v1 in 0i64..=20,
        v2 in 0i64..=20,
        v3 in 0i64..=20,
    ) {
        let x = operand("absoluteSpatialPositionX");
        let c1 = AxisConstraint::new(x.clone(), o1, rat(v1));
        let c2 = AxisConstraint::new(x.clone(), o2, rat(v2));
        let c3 = AxisConstraint::new(x, o3, rat(v3));
        if axis_subsumes(&c1, &c2).unwrap() == SubsumptionVerdict::Confirmed
            && axis_verdict(&c2, &c3).unwrap() == Verdict3::Conflict
        {
            prop_assert_eq!(axis_verdict(&c1, &c3).unwrap(), Verdict3::Conflict);
        }
    }
}

#[test]
fn criterion_03_marker() {
    // the property above runs 10,000 cases; this prints the summary line
    pass(3, "conflict propagation over 10,000 triples");
}

// -- 4: AABB round-trip -----------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig { cases: 1_000, ..ProptestConfig::default() })]
    #[test]
    fn criterion_04_aabb_round_trip(
        dims in 1usize..=3,
        bounds in proptest::collection::vec((0i64..=20, 0i64..=20), 3),
    ) {
        let names = [
            "absoluteSpatialPositionX",
            "absoluteSpatialPositionY",
            "absoluteSpatialPositionZ",
        ];
        let axes: Vec<AxisOperand> = names[..dims].iter().map(|n| operand(n)).collect();
        let refs: Vec<&AxisOperand> = axes.iter().collect();
        let mut den = BoxDenotation::default();
        for (axis, (a, b)) in axes.iter().zip(&bounds) {
            let (lo, hi) = (*a.min(b), *a.max(b));
            den.axes.insert(
                axis.iri.clone(),
                AxisSlot {
                    interval: Interval::new(
                        Edge::Closed(rat(lo)),
                        Edge::Closed(rat(hi)),
                        Density::Dense,
                    ),
                    constrained: true,
                },
            );
        }
        let constraints = to_constraints(&den, &refs);
        let back = box_denote(&constraints, &refs).unwrap();
        prop_assert_eq!(back, den);
    }
}

#[test]
fn criterion_04_marker() {
    pass(4, "AABB round-trip over 1,000 boxes");
}

// -- 5: oracle equivalence --------------------------------------------------

/// Membership bitmask over a fixed grid; two intervals relate exactly as
/// their masks do because every nonempty difference region with integer
/// endpoints in 0..=12 contains a grid point.
fn mask(interval: &Interval, grid: &[Rat]) -> u64 {
    let mut m = 0u64;
    for (i, v) in grid.iter().enumerate() {
        if interval.contains(v).unwrap_or(false) {
            m |= 1 << i;
        }
    }
    m
}

fn all_intervals(density: Density) -> Vec<Interval> {
    let mut out = Vec::new();
    for lo in 0..=12i64 {
        for hi in 0..=12i64 {
            for lo_open in [false, true] {
                for hi_open in [false, true] {
                    let l = if lo_open {
                        Edge::Open(rat(lo))
                    } else {
                        Edge::Closed(rat(lo))
                    };
                    let h = if hi_open {
                        Edge::Open(rat(hi))
                    } else {
                        Edge::Closed(rat(hi))
                    };
                    out.push(Interval::new(l, h, density));
                }
            }
        }
    }
    out
}

#[test]
fn criterion_05_oracle_equivalence() {
    let start = Instant::now();
    // dense: quarter-unit grid spanning just beyond the endpoint range
    let dense_grid: Vec<Rat> = (-4..=52)
        .map(|k| Rat::new(k.into(), 4.into()))
        .collect();
    // discrete: integer grid
    let discrete_grid: Vec<Rat> = (-1..=13).map(rat).collect();

    for (density, grid) in [
        (Density::Dense, &dense_grid),
        (Density::IntegerDiscrete, &discrete_grid),
    ] {
        let intervals = all_intervals(density);
        let masks: Vec<u64> = intervals.iter().map(|i| mask(i, grid)).collect();
        for (i, a) in intervals.iter().enumerate() {
            assert_eq!(a.is_empty(), masks[i] == 0, "is_empty {a}");
            for (j, b) in intervals.iter().enumerate() {
                let inter = a.intersect(b).unwrap();
                assert_eq!(
                    inter.is_empty(),
                    masks[i] & masks[j] == 0,
                    "verdict {a} vs {b}"
                );
                assert_eq!(
                    a.is_subset(b).unwrap(),
                    masks[i] & !masks[j] == 0,
                    "subset {a} vs {b}"
                );
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "oracle took {elapsed:?}");
    pass(5, "interval oracle equivalence");
}

// -- 6: projection soundness ------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig { cases: 1_000, ..ProptestConfig::default() })]
    #[test]
    fn criterion_06_projection_soundness(
        dims in 1usize..=4,
        bounds in proptest::collection::vec((0i64..=20, 0i64..=20), 4),
        point in proptest::collection::vec(-2i64..=22, 4),
    ) {
        let names = [
            "absoluteSpatialPositionX",
            "absoluteSpatialPositionY",
            "absoluteSpatialPositionZ",
            "spatialCoordinatesAltitude",
        ];
        let axes: Vec<AxisOperand> = names[..dims].iter().map(|n| operand(n)).collect();
        let refs: Vec<&AxisOperand> = axes.iter().collect();
        let constraints: Vec<AxisConstraint> = axes
            .iter()
            .zip(&bounds)
            .flat_map(|(axis, (a, b))| {
                let (lo, hi) = (*a.min(b), *a.max(b));
                vec![
                    AxisConstraint::new(axis.clone(), Operator::Gteq, rat(lo)),
                    AxisConstraint::new(axis.clone(), Operator::Lteq, rat(hi)),
                ]
            })
            .collect();
        let den = box_denote(&constraints, &refs).unwrap();
        let p: IndexMap<String, Rat> = axes
            .iter()
            .zip(&point)
            .map(|(axis, v)| (axis.iri.clone(), rat(*v)))
            .collect();
        let member = den.contains(&p).unwrap();
        let all_projections = axes.iter().zip(&point).all(|(axis, v)| {
            den.axes[&axis.iri].interval.contains(&rat(*v)).unwrap()
        });
        prop_assert_eq!(member, all_projections);
    }
}

#[test]
fn criterion_06_marker() {
    pass(6, "projection soundness over 1,000 samples");
}

// -- 7: conservative extension ----------------------------------------------

#[test]
fn criterion_07_conservative_extension() {
    let bases = [
        "odrl:absoluteSize",
        "odrl:relativeSize",
        "odrl:absoluteSpatialPosition",
        "odrl:relativeSpatialPosition",
        "odrl:spatialCoordinates",
    ];
    let operators = ["odrl:lteq", "odrl:gteq", "odrl:eq", "odrl:lt"];
    let mut policies = Vec::new();
    for (i, base) in bases.iter().enumerate() {
        for (j, op) in operators.iter().enumerate() {
            let json = format!(
                r#"{{"uid":"ex:p{i}{j}","permission":[{{"action":"odrl:display","constraint":[
                    {{"leftOperand":"{base}","operator":"{op}","rightOperand":{}}}
                ]}}]}}"#,
                10 * (i + 1) + j
            );
            policies.push(parse_policy(&json).unwrap());
        }
    }
    assert!(policies.len() >= 20);
    let with = AxisRegistry::standard();
    let without = AxisRegistry::empty();
    for (a, b) in policies.iter().zip(policies.iter().rev()) {
        let r1 = conflict_report(a, b, &with, &[]).unwrap();
        let r2 = conflict_report(a, b, &without, &[]).unwrap();
        assert_eq!(
            serde_json::to_vec(&r1).unwrap(),
            serde_json::to_vec(&r2).unwrap(),
            "{} vs {}",
            a.uid,
            b.uid
        );
    }
    pass(7, "conservative extension over base-operand policies");
}

// -- 8: profile table --------------------------------------------------------

#[test]
fn criterion_08_profile_table() {
    let rows = AxisRegistry::standard().dump();
    assert_eq!(rows.len(), 15);
    let expected = [
        ("oax:absoluteSizeWidth", "(0, +inf)"),
        ("oax:absoluteSizeHeight", "(0, +inf)"),
        ("oax:absoluteSizeDepth", "(0, +inf)"),
        ("oax:relativeSizeWidth", "(0, 100]"),
        ("oax:relativeSizeHeight", "(0, 100]"),
        ("oax:relativeSizeDepth", "(0, 100]"),
        ("oax:absoluteSpatialPositionX", "(-inf, +inf)"),
        ("oax:absoluteSpatialPositionY", "(-inf, +inf)"),
        ("oax:absoluteSpatialPositionZ", "(-inf, +inf)"),
        ("oax:relativeSpatialPositionX", "[0, 100]"),
        ("oax:relativeSpatialPositionY", "[0, 100]"),
        ("oax:relativeSpatialPositionZ", "[0, 100]"),
        ("oax:spatialCoordinatesLongitude", "[-180, 180]"),
        ("oax:spatialCoordinatesLatitude", "[-90, 90]"),
        ("oax:spatialCoordinatesAltitude", "(-inf, +inf)"),
    ];
    for (row, (iri, domain)) in rows.iter().zip(&expected) {
        assert_eq!(&row.iri, iri);
        assert_eq!(&row.domain, domain, "{iri}");
    }
    pass(8, "15-operand profile table");
}

// -- 9: suite regeneration ----------------------------------------------------

#[test]
fn criterion_09_suite_regeneration() {
    let suite = oax::bench::generate_suite();
    assert_eq!(suite.len(), 117);
    let manifest = oax::bench::manifest(&suite);
    let expected = [
        ("A", 15),
        ("B", 11),
        ("C", 12),
        ("D", 12),
        ("E", 12),
        ("F", 17),
        ("G", 16),
        ("H", 12),
        ("I", 10),
    ];
    for (cat, n) in expected {
        assert_eq!(manifest.categories[cat], n, "category {cat}");
    }
    // expected statuses are consistent with the internal verdicts
    for (problem, entry) in suite.iter().zip(&manifest.problems) {
        let (szs, smt) = problem.expected_statuses().unwrap();
        assert_eq!(entry.expected_szs, szs.as_str());
        assert_eq!(entry.expected_smt, smt.as_str());
    }
    // two generations are byte-identical on disk
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    oax::bench::write_suite(d1.path(), &suite).unwrap();
    oax::bench::write_suite(d2.path(), &oax::bench::generate_suite()).unwrap();
    let mut files = 0;
    let mut stack = vec![d1.path().to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(d1.path()).unwrap();
                assert_eq!(
                    std::fs::read(&path).unwrap(),
                    std::fs::read(d2.path().join(rel)).unwrap(),
                    "{rel:?}"
                );
                files += 1;
            }
        }
    }
    assert_eq!(files, 117 * 2 + 3);
    pass(9, "117-problem suite regeneration");
}

// -- 10: cross-prover concordance ---------------------------------------------

#[test]
fn criterion_10_cross_prover_concordance() {
    use oax::config::{resolve_prover, VAMPIRE_ENV, Z3_ENV};
    let vampire = resolve_prover(None, None, VAMPIRE_ENV, "vampire");
    let z3 = resolve_prover(None, None, Z3_ENV, "z3");
    if vampire.is_none() && z3.is_none() {
        println!(
            "criterion 10 (cross-prover concordance): SKIP (no vampire or z3 on this system)"
        );
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let suite = oax::bench::generate_suite();
    let manifest = oax::bench::write_suite(dir.path(), &suite).unwrap();
    let paths = oax::bench::ProverPaths { vampire, z3 };
    let results = oax::bench::run_suite(&manifest, &paths, dir.path(), 10, 8);
    let report = oax::bench::concordance_report(&manifest, &results);
    assert_eq!(report.mismatched, 0, "{}", report.to_text());
    assert_eq!(report.skipped, 0);
    pass(10, "cross-prover concordance");
}

// -- 11: lint fixtures --------------------------------------------------------

#[test]
fn criterion_11_lint_fixtures() {
    let registry = AxisRegistry::standard();
    let lints = LintRegistry::standard();

    let contradiction = parse_policy(
        r#"{"uid":"ex:c","permission":[{"action":"odrl:display","constraint":[
            {"leftOperand":"oax:absoluteSizeWidth","operator":"odrl:lteq","rightOperand":600},
            {"leftOperand":"oax:absoluteSizeWidth","operator":"odrl:gteq","rightOperand":800}
        ]}]}"#,
    )
    .unwrap();
    let findings = lints.run(&contradiction, &registry);
    assert!(findings
        .iter()
        .any(|f| f.kind == FindingKind::SelfContradiction && f.severity == Severity::Error));

    let redundancy = parse_policy(
        r#"{"uid":"ex:r","permission":[{"action":"odrl:display","constraint":[
            {"leftOperand":"oax:absoluteSizeWidth","operator":"odrl:lteq","rightOperand":600},
            {"leftOperand":"oax:absoluteSizeWidth","operator":"odrl:lteq","rightOperand":1200}
        ]}]}"#,
    )
    .unwrap();
    let findings = lints.run(&redundancy, &registry);
    let red: Vec<_> = findings
        .iter()
        .filter(|f| f.kind == FindingKind::Redundancy)
        .collect();
    assert_eq!(red.len(), 1);
    assert_eq!(red[0].severity, Severity::Warning);
    assert_eq!(red[0].location, "permission[0].constraint[1]");

    let upstream = parse_policy(
        r#"{"uid":"ex:up","permission":[{"action":"odrl:display","constraint":[
            {"leftOperand":"oax:absoluteSizeWidth","operator":"odrl:lteq","rightOperand":1200},
            {"leftOperand":"oax:absoluteSizeHeight","operator":"odrl:lteq","rightOperand":900}
        ]}]}"#,
    )
    .unwrap();
    let downstream = parse_policy(
        r#"{"uid":"ex:down","permission":[{"action":"odrl:display","constraint":[
            {"leftOperand":"oax:absoluteSizeWidth","operator":"odrl:lteq","rightOperand":600},
            {"leftOperand":"oax:absoluteSizeHeight","operator":"odrl:lteq","rightOperand":400}
        ]}]}"#,
    )
    .unwrap();
    let refinement = check_refinement(&upstream, &downstream, &registry).unwrap();
    assert_eq!(refinement.verdict, SubsumptionVerdict::Confirmed);

    let ambiguous = parse_policy(
        r#"{"uid":"ex:a","permission":[{"action":"odrl:display","constraint":[
            {"leftOperand":"odrl:absoluteSize","operator":"odrl:lteq","rightOperand":600}
        ]}]}"#,
    )
    .unwrap();
    let findings = lints.run(&ambiguous, &registry);
    let amb: Vec<_> = findings
        .iter()
        .filter(|f| f.kind == FindingKind::Ambiguity)
        .collect();
    assert_eq!(amb.len(), 1);
    assert_eq!(amb[0].severity, Severity::Warning);
    assert_eq!(amb[0].interpretations, Some(5));

    pass(11, "lint fixtures");
}
