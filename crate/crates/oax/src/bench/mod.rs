//! Deterministic regeneration of the 117-problem benchmark suite, external
//! prover execution, and concordance reporting.
//!
//! Generation uses fixed literal tables — no randomness — so two runs
//! produce byte-identical files. The internal verdict engine computes every
//! expected verdict; problems whose verdict would be Unknown are never
//! emitted.

mod prover;
mod report;

pub use prover::{
    run_problem, run_suite, ProverBackend, ProverKind, ProverPaths, ProverResult, ProverStatus,
    VampireBackend, Z3Backend,
};
pub use report::{concordance_report, ConcordanceReport, ReportRow};

use std::io;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::axis::AxisConstraint;
use crate::compose::{connective_verdict, BranchSet};
use crate::encode::{
    emit_axiom_files, emit_smt, emit_tptp, Category, Expected, ProverProblem, Relation,
};
use crate::fsutil::atomic_write;
use crate::interval::Density;
use crate::model::{compact, Connective, Operator};
use crate::numeric::{format_decimal, rat};
use crate::profile::{AxisOperand, AxisRegistry, OAX};
use crate::verdict::{box_subsumes, Verdict3};

/// Bumped whenever generation changes; recorded in the manifest so
/// regenerated suites are comparable.
pub const GENERATOR_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub category: Category,
    pub relation: Relation,
    pub connective: String,
    pub axes: Vec<String>,
    pub left: Vec<Vec<String>>,
    pub right: Vec<Vec<String>>,
    pub expected: String,
    pub expected_szs: String,
    pub expected_smt: String,
    pub tptp_file: String,
    pub smt_file: String,
    pub description: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteManifest {
    pub generator_version: String,
    pub total: usize,
    pub categories: IndexMap<String, usize>,
    pub problems: Vec<ManifestEntry>,
}

fn constraint_str(c: &AxisConstraint) -> String {
    format!(
        "{} {} {}",
        compact(&c.operand.iri),
        c.operator.name(),
        format_decimal(&c.value)
    )
}

fn axis_str(op: &AxisOperand) -> String {
    match op.domain.density() {
        Density::Dense => compact(&op.iri),
        Density::IntegerDiscrete => format!("{} (discrete)", compact(&op.iri)),
    }
}

pub fn manifest(problems: &[ProverProblem]) -> SuiteManifest {
    let mut categories: IndexMap<String, usize> = IndexMap::new();
    for cat in Category::ALL {
        categories.insert(format!("{cat:?}"), 0);
    }
    let mut entries = Vec::new();
    for p in problems {
        *categories.get_mut(&format!("{:?}", p.category)).unwrap() += 1;
        let (szs, smt) = p.expected_statuses().expect("no Unknown problem is emitted");
        entries.push(ManifestEntry {
            id: p.id.clone(),
            category: p.category,
            relation: p.relation,
            connective: p.connective.key().to_string(),
            axes: p.axes.iter().map(axis_str).collect(),
            left: p
                .left
                .branches
                .iter()
                .map(|b| b.iter().map(constraint_str).collect())
                .collect(),
            right: p
                .right
                .branches
                .iter()
                .map(|b| b.iter().map(constraint_str).collect())
                .collect(),
            expected: p.expected.label().to_string(),
            expected_szs: szs.as_str().to_string(),
            expected_smt: smt.as_str().to_string(),
            tptp_file: format!("{}/{}.p", p.category.dir(), p.id),
            smt_file: format!("{}/{}.smt2", p.category.dir(), p.id),
            description: describe(p),
        });
    }
    SuiteManifest {
        generator_version: GENERATOR_VERSION.to_string(),
        total: problems.len(),
        categories,
        problems: entries,
    }
}

fn describe(p: &ProverProblem) -> String {
    if p.id == "e001" {
        return "display-size policy against a fixed-size slot; width is the sole conflicting axis"
            .to_string();
    }
    format!(
        "{:?} over {} axis(es), expected {}",
        p.relation,
        p.axes.len(),
        p.expected.label()
    )
}

/// Writes the axiom files, every problem file, and the manifest under
/// `dir`. TPTP include paths are relative to `dir`, so provers must run
/// with `dir` as working directory.
pub fn write_suite(dir: &Path, problems: &[ProverProblem]) -> io::Result<SuiteManifest> {
    for (name, text) in emit_axiom_files() {
        atomic_write(&dir.join("ax").join(name), text.as_bytes())?;
    }
    for p in problems {
        let tptp = emit_tptp(p).expect("no Unknown problem is emitted");
        let smt = emit_smt(p).expect("no Unknown problem is emitted");
        let cat_dir = dir.join(p.category.dir());
        atomic_write(&cat_dir.join(format!("{}.p", p.id)), tptp.as_bytes())?;
        atomic_write(&cat_dir.join(format!("{}.smt2", p.id)), smt.as_bytes())?;
    }
    let m = manifest(problems);
    let json = serde_json::to_string_pretty(&m).expect("manifest serializes");
    atomic_write(&dir.join("manifest.json"), json.as_bytes())?;
    Ok(m)
}

pub fn read_manifest(dir: &Path) -> io::Result<SuiteManifest> {
    let text = std::fs::read_to_string(dir.join("manifest.json"))?;
    serde_json::from_str(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
}

// --- generation -----------------------------------------------------------

struct Gen {
    registry: AxisRegistry,
    discrete: AxisRegistry,
}

impl Gen {
    fn new() -> Gen {
        let registry = AxisRegistry::standard();
        let mut discrete = AxisRegistry::standard();
        discrete
            .set_density(&format!("{OAX}absoluteSizeWidth"), Density::IntegerDiscrete)
            .expect("width is registered");
        Gen { registry, discrete }
    }

    fn ax(&self, name: &str) -> AxisOperand {
        self.registry
            .lookup(&format!("{OAX}{name}"))
            .expect("generator uses registered axes")
            .clone()
    }

    /// The integer-discrete width axis used by density-variant problems.
    fn dax(&self) -> AxisOperand {
        self.discrete
            .lookup(&format!("{OAX}absoluteSizeWidth"))
            .expect("width is registered")
            .clone()
    }
}

fn c(op: &AxisOperand, operator: Operator, v: i64) -> AxisConstraint {
    AxisConstraint::new(op.clone(), operator, rat(v))
}

/// Axis-aligned box: one gteq/lteq pair per axis.
fn bx(axes: &[AxisOperand], bounds: &[(i64, i64)]) -> Vec<AxisConstraint> {
    axes.iter()
        .zip(bounds)
        .flat_map(|(op, (lo, hi))| {
            vec![c(op, Operator::Gteq, *lo), c(op, Operator::Lteq, *hi)]
        })
        .collect()
}

fn conflict_problem(
    cat: Category,
    idx: usize,
    conn: Connective,
    axes: Vec<AxisOperand>,
    left: Vec<Vec<AxisConstraint>>,
    right: Vec<Vec<AxisConstraint>>,
) -> ProverProblem {
    let refs: Vec<&AxisOperand> = axes.iter().collect();
    let l = BranchSet { branches: left };
    let r = BranchSet { branches: right };
    let (verdict, _) =
        connective_verdict(conn, &l, &r, &refs).expect("generator axes are consistent");
    assert_ne!(
        verdict,
        Verdict3::Unknown,
        "generator produced an Unknown verdict for {cat:?}{idx:03}"
    );
    ProverProblem {
        id: format!("{}{idx:03}", format!("{cat:?}").to_lowercase()),
        category: cat,
        relation: Relation::ConflictCheck,
        connective: conn,
        left: l,
        right: r,
        axes,
        expected: Expected::Verdict(verdict),
    }
}

fn subsumption_problem(
    cat: Category,
    idx: usize,
    axes: Vec<AxisOperand>,
    left: Vec<AxisConstraint>,
    right: Vec<AxisConstraint>,
) -> ProverProblem {
    let refs: Vec<&AxisOperand> = axes.iter().collect();
    let (verdict, _) =
        box_subsumes(&left, &right, &refs).expect("generator axes are consistent");
    assert_ne!(
        verdict,
        crate::verdict::SubsumptionVerdict::Unknown,
        "generator produced an Unknown subsumption for {cat:?}{idx:03}"
    );
    ProverProblem {
        id: format!("{}{idx:03}", format!("{cat:?}").to_lowercase()),
        category: cat,
        relation: Relation::SubsumptionCheck,
        connective: Connective::And,
        left: BranchSet::single(left),
        right: BranchSet::single(right),
        axes,
        expected: Expected::Subsumption(verdict),
    }
}

fn pair(
    cat: Category,
    idx: usize,
    axis: &AxisOperand,
    l: (Operator, i64),
    r: (Operator, i64),
) -> ProverProblem {
    conflict_problem(
        cat,
        idx,
        Connective::And,
        vec![axis.clone()],
        vec![vec![c(axis, l.0, l.1)]],
        vec![vec![c(axis, r.0, r.1)]],
    )
}

/// A (15): each of the five dimensional operators in a conflicting pair, a
/// compatible pair, and an integer-density variant.
fn category_a(g: &Gen) -> Vec<ProverProblem> {
    use Operator::*;
    let x = g.ax("absoluteSpatialPositionX");
    let dw = g.dax();
    let specs: [(&AxisOperand, (Operator, i64), (Operator, i64)); 15] = [
        (&x, (Eq, 10), (Eq, 20)),
        (&x, (Eq, 10), (Eq, 10)),
        (&dw, (Eq, 7), (Gt, 6)),
        (&x, (Lt, 10), (Gt, 20)),
        (&x, (Lt, 10), (Gt, 5)),
        (&dw, (Lt, 10), (Gt, 9)),
        (&x, (Lteq, 10), (Gteq, 20)),
        (&x, (Lteq, 10), (Gteq, 5)),
        (&dw, (Lteq, 9), (Gt, 8)),
        (&x, (Gt, 20), (Lt, 10)),
        (&x, (Gt, 5), (Lt, 10)),
        (&dw, (Gt, 5), (Lt, 6)),
        (&x, (Gteq, 20), (Lteq, 10)),
        (&x, (Gteq, 5), (Lteq, 10)),
        (&dw, (Gteq, 7), (Lt, 8)),
    ];
    specs
        .iter()
        .enumerate()
        .map(|(i, (axis, l, r))| pair(Category::A, i + 1, axis, *l, *r))
        .collect()
}

/// B (11): two-axis conjunctions exercising per-axis verdicts and their
/// Kleene combination.
fn category_b(g: &Gen) -> Vec<ProverProblem> {
    use Operator::*;
    let w = g.ax("absoluteSizeWidth");
    let h = g.ax("absoluteSizeHeight");
    let specs: [(Vec<(usize, Operator, i64)>, Vec<(usize, Operator, i64)>); 11] = [
        (
            vec![(0, Lteq, 600), (1, Lteq, 600)],
            vec![(0, Gteq, 1200), (1, Gteq, 100)],
        ),
        (
            vec![(0, Lteq, 600), (1, Lteq, 300)],
            vec![(0, Gteq, 200), (1, Gteq, 500)],
        ),
        (
            vec![(0, Lteq, 100), (1, Lteq, 100)],
            vec![(0, Gteq, 200), (1, Gteq, 200)],
        ),
        (
            vec![(0, Lteq, 600), (1, Lteq, 600)],
            vec![(0, Gteq, 100), (1, Gteq, 100)],
        ),
        (
            vec![(0, Eq, 300), (1, Lteq, 500)],
            vec![(0, Lteq, 400), (1, Gteq, 200)],
        ),
        (
            vec![(0, Eq, 300), (1, Lteq, 500)],
            vec![(0, Gteq, 400), (1, Gteq, 100)],
        ),
        (
            vec![(0, Lt, 300), (1, Lteq, 500)],
            vec![(0, Gteq, 300), (1, Gteq, 100)],
        ),
        (
            vec![(0, Lteq, 300), (1, Lteq, 500)],
            vec![(0, Gteq, 300), (1, Gteq, 500)],
        ),
        (
            vec![(0, Gteq, 100), (0, Lteq, 200), (1, Gteq, 50), (1, Lteq, 80)],
            vec![(0, Gteq, 150), (0, Lteq, 250), (1, Gteq, 60), (1, Lteq, 70)],
        ),
        (
            vec![(0, Gteq, 100), (0, Lteq, 200), (1, Lteq, 40)],
            vec![(0, Gteq, 150), (0, Lteq, 250), (1, Gteq, 50)],
        ),
        (
            vec![(0, Gt, 200), (1, Gt, 100)],
            vec![(0, Lt, 300), (1, Lt, 200)],
        ),
    ];
    let axes = [w, h];
    specs
        .iter()
        .enumerate()
        .map(|(i, (l, r))| {
            conflict_problem(
                Category::B,
                i + 1,
                Connective::And,
                axes.to_vec(),
                vec![l.iter().map(|(a, o, v)| c(&axes[*a], *o, *v)).collect()],
                vec![r.iter().map(|(a, o, v)| c(&axes[*a], *o, *v)).collect()],
            )
        })
        .collect()
}

/// C (12): three-axis boxes — conflicts localized to each axis, compatible
/// cases, and 3-D subsumptions in both directions.
fn category_c(g: &Gen) -> Vec<ProverProblem> {
    use Operator::*;
    let axes = [
        g.ax("absoluteSpatialPositionX"),
        g.ax("absoluteSpatialPositionY"),
        g.ax("absoluteSpatialPositionZ"),
    ];
    let mut out = Vec::new();
    // conflicts on X, Y, Z respectively
    for (i, conflict_axis) in (0..3).enumerate() {
        let left: Vec<AxisConstraint> = (0..3)
            .map(|a| {
                if a == conflict_axis {
                    c(&axes[a], Lteq, 0)
                } else {
                    c(&axes[a], Lteq, 10)
                }
            })
            .collect();
        let right: Vec<AxisConstraint> = (0..3)
            .map(|a| {
                if a == conflict_axis {
                    c(&axes[a], Gteq, 5)
                } else {
                    c(&axes[a], Gteq, 0)
                }
            })
            .collect();
        out.push(conflict_problem(
            Category::C,
            i + 1,
            Connective::And,
            axes.to_vec(),
            vec![left],
            vec![right],
        ));
    }
    // compatible boxes
    out.push(conflict_problem(
        Category::C,
        4,
        Connective::And,
        axes.to_vec(),
        vec![bx(&axes, &[(0, 10), (0, 10), (0, 10)])],
        vec![bx(&axes, &[(5, 15), (5, 15), (5, 15)])],
    ));
    out.push(conflict_problem(
        Category::C,
        5,
        Connective::And,
        axes.to_vec(),
        vec![vec![
            c(&axes[0], Gt, 0),
            c(&axes[0], Lt, 10),
            c(&axes[1], Gt, 0),
            c(&axes[1], Lt, 10),
            c(&axes[2], Gt, 0),
            c(&axes[2], Lt, 10),
        ]],
        vec![bx(&axes, &[(5, 15), (5, 15), (5, 15)])],
    ));
    out.push(conflict_problem(
        Category::C,
        6,
        Connective::And,
        axes.to_vec(),
        vec![vec![
            c(&axes[0], Eq, 5),
            c(&axes[1], Eq, 5),
            c(&axes[2], Eq, 5),
        ]],
        vec![bx(&axes, &[(0, 10), (0, 10), (0, 10)])],
    ));
    // subsumptions
    out.push(subsumption_problem(
        Category::C,
        7,
        axes.to_vec(),
        bx(&axes, &[(2, 4), (2, 4), (2, 4)]),
        bx(&axes, &[(0, 10), (0, 10), (0, 10)]),
    ));
    out.push(subsumption_problem(
        Category::C,
        8,
        axes.to_vec(),
        vec![
            c(&axes[0], Gt, 2),
            c(&axes[0], Lt, 4),
            c(&axes[1], Gt, 2),
            c(&axes[1], Lt, 4),
            c(&axes[2], Gt, 2),
            c(&axes[2], Lt, 4),
        ],
        bx(&axes, &[(2, 4), (2, 4), (2, 4)]),
    ));
    out.push(subsumption_problem(
        Category::C,
        9,
        axes.to_vec(),
        bx(&axes, &[(1, 9), (1, 9), (1, 9)]),
        bx(&axes, &[(1, 9), (1, 9), (1, 9)]),
    ));
    out.push(subsumption_problem(
        Category::C,
        10,
        axes.to_vec(),
        bx(&axes, &[(0, 20), (2, 4), (2, 4)]),
        bx(&axes, &[(2, 4), (2, 4), (2, 4)]),
    ));
    out.push(subsumption_problem(
        Category::C,
        11,
        axes.to_vec(),
        bx(&axes, &[(0, 10), (0, 10), (0, 10)]),
        bx(&axes, &[(2, 4), (2, 4), (2, 4)]),
    ));
    out.push(subsumption_problem(
        Category::C,
        12,
        axes.to_vec(),
        bx(&axes, &[(2, 5), (2, 5), (2, 5)]),
        vec![
            c(&axes[0], Gteq, 2),
            c(&axes[0], Lt, 5),
            c(&axes[1], Gteq, 2),
            c(&axes[1], Lt, 5),
            c(&axes[2], Gteq, 2),
            c(&axes[2], Lt, 5),
        ],
    ));
    out
}

/// D (12): four-axis problems mixing all five operators.
fn category_d(g: &Gen) -> Vec<ProverProblem> {
    use Operator::*;
    let axes = [
        g.ax("absoluteSpatialPositionX"),
        g.ax("absoluteSpatialPositionY"),
        g.ax("absoluteSpatialPositionZ"),
        g.ax("spatialCoordinatesAltitude"),
    ];
    let specs: [(Vec<(usize, Operator, i64)>, Vec<(usize, Operator, i64)>); 12] = [
        // conflicts, localized to a different axis each time
        (
            vec![(0, Lt, 0), (1, Lteq, 10), (2, Eq, 5), (3, Gteq, 0)],
            vec![(0, Gteq, 0), (1, Gteq, 0), (2, Lteq, 10), (3, Lteq, 100)],
        ),
        (
            vec![(0, Lteq, 10), (1, Gt, 50), (2, Eq, 5), (3, Gteq, 0)],
            vec![(0, Gteq, 0), (1, Lteq, 40), (2, Lteq, 10), (3, Lteq, 100)],
        ),
        (
            vec![(0, Lteq, 10), (1, Lteq, 10), (2, Eq, 5), (3, Gteq, 0)],
            vec![(0, Gteq, 0), (1, Gteq, 0), (2, Gt, 5), (3, Lteq, 100)],
        ),
        (
            vec![(0, Lteq, 10), (1, Lteq, 10), (2, Eq, 5), (3, Gteq, 200)],
            vec![(0, Gteq, 0), (1, Gteq, 0), (2, Lteq, 10), (3, Lt, 150)],
        ),
        (
            vec![(0, Eq, 3), (1, Eq, 4), (2, Lteq, 10), (3, Gteq, 0)],
            vec![(0, Eq, 3), (1, Eq, 5), (2, Gteq, 0), (3, Lteq, 100)],
        ),
        (
            vec![(0, Gt, 10), (1, Gt, 10), (2, Gt, 10), (3, Gt, 10)],
            vec![(0, Lt, 20), (1, Lt, 20), (2, Lt, 20), (3, Lteq, 10)],
        ),
        // compatible
        (
            vec![(0, Lteq, 10), (1, Lteq, 10), (2, Lteq, 10), (3, Lteq, 10)],
            vec![(0, Gteq, 0), (1, Gteq, 0), (2, Gteq, 0), (3, Gteq, 0)],
        ),
        (
            vec![(0, Eq, 5), (1, Lt, 10), (2, Gt, 0), (3, Lteq, 50)],
            vec![(0, Lteq, 5), (1, Gt, 0), (2, Lt, 10), (3, Gteq, 0)],
        ),
        (
            vec![(0, Gt, 0), (1, Gt, 0), (2, Gt, 0), (3, Gt, 0)],
            vec![(0, Lt, 1), (1, Lt, 1), (2, Lt, 1), (3, Lt, 1)],
        ),
        (
            vec![(0, Gteq, 10), (1, Gteq, 10), (2, Gteq, 10), (3, Gteq, 10)],
            vec![(0, Lteq, 10), (1, Lteq, 10), (2, Lteq, 10), (3, Lteq, 10)],
        ),
        (
            vec![(0, Eq, 1), (1, Eq, 2), (2, Eq, 3), (3, Eq, 4)],
            vec![(0, Gteq, 0), (1, Gteq, 0), (2, Gteq, 0), (3, Gteq, 0)],
        ),
        (
            vec![(0, Lt, 100), (1, Lteq, 100), (2, Lt, 100), (3, Lteq, 100)],
            vec![(0, Gt, -100), (1, Gteq, -100), (2, Gt, -100), (3, Gteq, -100)],
        ),
    ];
    specs
        .iter()
        .enumerate()
        .map(|(i, (l, r))| {
            conflict_problem(
                Category::D,
                i + 1,
                Connective::And,
                axes.to_vec(),
                vec![l.iter().map(|(a, o, v)| c(&axes[*a], *o, *v)).collect()],
                vec![r.iter().map(|(a, o, v)| c(&axes[*a], *o, *v)).collect()],
            )
        })
        .collect()
}

/// E (12): heterogeneous axis mixes across the operand families, including
/// the display-size-versus-fixed-slot scenario as e001.
fn category_e(g: &Gen) -> Vec<ProverProblem> {
    use Operator::*;
    let w = g.ax("absoluteSizeWidth");
    let h = g.ax("absoluteSizeHeight");
    let rw = g.ax("relativeSizeWidth");
    let rh = g.ax("relativeSizeHeight");
    let rd = g.ax("relativeSizeDepth");
    let lon = g.ax("spatialCoordinatesLongitude");
    let lat = g.ax("spatialCoordinatesLatitude");
    let alt = g.ax("spatialCoordinatesAltitude");
    let x = g.ax("absoluteSpatialPositionX");

    let mut out = Vec::new();
    // e001: the running display-size example; width conflicts, height overlaps.
    out.push(conflict_problem(
        Category::E,
        1,
        Connective::And,
        vec![w.clone(), h.clone()],
        vec![vec![c(&w, Lteq, 600), c(&h, Lteq, 600)]],
        vec![vec![
            c(&w, Gteq, 1200),
            c(&w, Lteq, 1200),
            c(&h, Gteq, 400),
            c(&h, Lteq, 400),
        ]],
    ));
    out.push(conflict_problem(
        Category::E,
        2,
        Connective::And,
        vec![rw.clone(), rh.clone()],
        vec![vec![c(&rw, Lteq, 50), c(&rh, Lteq, 50)]],
        vec![vec![c(&rw, Gteq, 60), c(&rh, Gteq, 10)]],
    ));
    out.push(conflict_problem(
        Category::E,
        3,
        Connective::And,
        vec![lon.clone(), lat.clone()],
        vec![bx(&[lon.clone(), lat.clone()], &[(-10, 10), (40, 50)])],
        vec![bx(&[lon.clone(), lat.clone()], &[(0, 20), (45, 55)])],
    ));
    out.push(conflict_problem(
        Category::E,
        4,
        Connective::And,
        vec![lon.clone(), lat.clone()],
        vec![bx(&[lon.clone(), lat.clone()], &[(-10, 10), (40, 50)])],
        vec![bx(&[lon.clone(), lat.clone()], &[(100, 120), (-30, -20)])],
    ));
    out.push(conflict_problem(
        Category::E,
        5,
        Connective::And,
        vec![w.clone(), alt.clone()],
        vec![vec![c(&w, Lteq, 600), c(&alt, Lteq, 1000)]],
        vec![vec![c(&w, Gteq, 100), c(&alt, Gteq, 500)]],
    ));
    out.push(conflict_problem(
        Category::E,
        6,
        Connective::And,
        vec![rw.clone(), lat.clone(), alt.clone()],
        vec![vec![c(&rw, Lteq, 80), c(&lat, Gteq, 60), c(&alt, Lteq, 2000)]],
        vec![vec![c(&rw, Gteq, 20), c(&lat, Lteq, 30), c(&alt, Gteq, 0)]],
    ));
    out.push(conflict_problem(
        Category::E,
        7,
        Connective::And,
        vec![w.clone(), h.clone(), lon.clone(), lat.clone()],
        vec![vec![
            c(&w, Lteq, 800),
            c(&h, Lteq, 600),
            c(&lon, Gteq, -5),
            c(&lat, Gteq, 40),
        ]],
        vec![vec![
            c(&w, Gteq, 400),
            c(&h, Gteq, 300),
            c(&lon, Lteq, 5),
            c(&lat, Lteq, 45),
        ]],
    ));
    out.push(conflict_problem(
        Category::E,
        8,
        Connective::And,
        vec![w.clone(), h.clone(), lon.clone(), lat.clone()],
        vec![vec![
            c(&w, Lteq, 800),
            c(&h, Lteq, 600),
            c(&lon, Gteq, 20),
            c(&lat, Gteq, 40),
        ]],
        vec![vec![
            c(&w, Gteq, 400),
            c(&h, Gteq, 300),
            c(&lon, Lteq, 10),
            c(&lat, Lteq, 45),
        ]],
    ));
    out.push(conflict_problem(
        Category::E,
        9,
        Connective::And,
        vec![rw.clone(), rh.clone(), rd.clone()],
        vec![vec![c(&rw, Lteq, 100), c(&rh, Lteq, 100), c(&rd, Lteq, 100)]],
        vec![vec![c(&rw, Gteq, 100), c(&rh, Gteq, 100), c(&rd, Gteq, 100)]],
    ));
    out.push(conflict_problem(
        Category::E,
        10,
        Connective::And,
        vec![lat.clone()],
        vec![vec![c(&lat, Gteq, 89)]],
        vec![vec![c(&lat, Lteq, -89)]],
    ));
    out.push(conflict_problem(
        Category::E,
        11,
        Connective::And,
        vec![alt.clone(), x.clone()],
        vec![vec![c(&alt, Gt, 0), c(&x, Lt, 50)]],
        vec![vec![c(&alt, Lt, 100), c(&x, Gt, 0)]],
    ));
    out.push(conflict_problem(
        Category::E,
        12,
        Connective::And,
        vec![w.clone(), rw.clone(), lon.clone(), alt.clone()],
        vec![vec![
            c(&w, Lteq, 100),
            c(&rw, Lteq, 50),
            c(&lon, Gteq, 0),
            c(&alt, Gteq, 0),
        ]],
        vec![vec![
            c(&w, Gteq, 200),
            c(&rw, Gteq, 10),
            c(&lon, Lteq, 10),
            c(&alt, Lteq, 100),
        ]],
    ));
    out
}

/// F (17): a difficulty ladder of 3–12 distinct constants over 1–4
/// unbounded axes. With m constants the ordering closure contributes
/// C(m, 2) facts — 66 at the top of the ladder.
fn category_f(g: &Gen) -> Vec<ProverProblem> {
    use Operator::*;
    let pool = [
        g.ax("absoluteSpatialPositionX"),
        g.ax("absoluteSpatialPositionY"),
        g.ax("absoluteSpatialPositionZ"),
        g.ax("spatialCoordinatesAltitude"),
    ];
    let mut out = Vec::new();
    let mut idx = 0usize;
    let mut build = |m: usize, conflicting: bool| {
        idx += 1;
        let k = ((m + 2) / 3).min(4);
        let axes: Vec<AxisOperand> = pool[..k].to_vec();
        // distinct constants 10, 20, ..., 10m distributed round-robin
        let mut per_axis: Vec<Vec<i64>> = vec![Vec::new(); k];
        for i in 0..m {
            per_axis[i % k].push(10 * (i as i64 + 1));
        }
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (a, values) in per_axis.iter().enumerate() {
            let (min, max) = (values[0], *values.last().expect("each axis gets values"));
            let empty = conflicting && a == 0;
            // swapped bounds empty the first axis in the conflicting variant
            left.push(c(&axes[a], Gteq, if empty { max } else { min }));
            right.push(c(&axes[a], Lteq, if empty { min } else { max }));
            for mid in &values[1..values.len() - 1] {
                left.push(c(&axes[a], Gt, *mid));
            }
        }
        conflict_problem(
            Category::F,
            idx,
            Connective::And,
            axes,
            vec![left],
            vec![right],
        )
    };
    for m in 3..=12 {
        out.push(build(m, true));
    }
    for m in 3..=9 {
        out.push(build(m, false));
    }
    out
}

/// G (16): the ten unordered operator pairs sharing one boundary value,
/// plus six multi-axis cases with boundary-touching intervals.
fn category_g(g: &Gen) -> Vec<ProverProblem> {
    use Operator::*;
    let x = g.ax("absoluteSpatialPositionX");
    let y = g.ax("absoluteSpatialPositionY");
    let z = g.ax("absoluteSpatialPositionZ");
    let w = g.ax("absoluteSizeWidth");
    let h = g.ax("absoluteSizeHeight");
    let lon = g.ax("spatialCoordinatesLongitude");
    let lat = g.ax("spatialCoordinatesLatitude");

    let ops = [Eq, Lt, Lteq, Gt, Gteq];
    let mut out = Vec::new();
    let mut idx = 0usize;
    for i in 0..ops.len() {
        for j in (i + 1)..ops.len() {
            idx += 1;
            out.push(pair(Category::G, idx, &x, (ops[i], 50), (ops[j], 50)));
        }
    }
    // multi-axis boundary cases
    out.push(conflict_problem(
        Category::G,
        11,
        Connective::And,
        vec![w.clone(), h.clone()],
        vec![vec![c(&w, Lteq, 100), c(&h, Lteq, 100)]],
        vec![vec![c(&w, Gteq, 100), c(&h, Gteq, 100)]],
    ));
    out.push(conflict_problem(
        Category::G,
        12,
        Connective::And,
        vec![w.clone(), h.clone()],
        vec![vec![c(&w, Lt, 100), c(&h, Lteq, 100)]],
        vec![vec![c(&w, Gteq, 100), c(&h, Gteq, 100)]],
    ));
    out.push(conflict_problem(
        Category::G,
        13,
        Connective::And,
        vec![x.clone(), y.clone()],
        vec![vec![c(&x, Lteq, 0), c(&y, Lt, 0)]],
        vec![vec![c(&x, Gteq, 0), c(&y, Gt, 0)]],
    ));
    out.push(conflict_problem(
        Category::G,
        14,
        Connective::And,
        vec![x.clone(), y.clone(), z.clone()],
        vec![vec![c(&x, Lteq, 5), c(&y, Lteq, 5), c(&z, Lteq, 5)]],
        vec![vec![c(&x, Gteq, 5), c(&y, Gteq, 5), c(&z, Gteq, 5)]],
    ));
    out.push(conflict_problem(
        Category::G,
        15,
        Connective::And,
        vec![x.clone(), y.clone(), z.clone()],
        vec![vec![c(&x, Lteq, 5), c(&y, Lteq, 5), c(&z, Lt, 5)]],
        vec![vec![c(&x, Gteq, 5), c(&y, Gteq, 5), c(&z, Gteq, 5)]],
    ));
    out.push(conflict_problem(
        Category::G,
        16,
        Connective::And,
        vec![lon.clone(), lat.clone()],
        vec![vec![c(&lon, Lteq, 180), c(&lat, Lteq, 90)]],
        vec![vec![c(&lon, Gteq, 180), c(&lat, Gteq, 90)]],
    ));
    out
}

/// H (12): `or` branch sets — unions of boxes where compatibility may come
/// from any cross-pick of branches.
fn category_h(g: &Gen) -> Vec<ProverProblem> {
    let x = g.ax("absoluteSpatialPositionX");
    let y = g.ax("absoluteSpatialPositionY");
    let z = g.ax("absoluteSpatialPositionZ");
    let xy = [x.clone(), y.clone()];
    let xyz = [x.clone(), y.clone(), z.clone()];

    let mut out = Vec::new();
    let mut push2 = |idx: usize,
                     left: Vec<Vec<(i64, i64)>>,
                     right: Vec<Vec<(i64, i64)>>| {
        let axes = if left[0].len() == 2 { &xy[..] } else { &xyz[..] };
        out.push(conflict_problem(
            Category::H,
            idx,
            Connective::Or,
            axes.to_vec(),
            left.iter().map(|b| bx(axes, b)).collect(),
            right.iter().map(|b| bx(axes, b)).collect(),
        ));
    };
    // cross-pick overlap: only the second left box meets the second right box
    push2(
        1,
        vec![vec![(0, 10), (0, 10)], vec![(20, 30), (20, 30)]],
        vec![vec![(40, 50), (40, 50)], vec![(25, 28), (22, 27)]],
    );
    // all four pairs disjoint
    push2(
        2,
        vec![vec![(0, 10), (0, 10)], vec![(20, 30), (20, 30)]],
        vec![vec![(40, 50), (40, 50)], vec![(60, 70), (60, 70)]],
    );
    // first-first overlap
    push2(
        3,
        vec![vec![(0, 10), (0, 10)], vec![(20, 30), (20, 30)]],
        vec![vec![(5, 15), (5, 15)], vec![(60, 70), (60, 70)]],
    );
    // every pair overlaps
    push2(
        4,
        vec![vec![(0, 100), (0, 100)], vec![(10, 90), (10, 90)]],
        vec![vec![(20, 80), (20, 80)], vec![(30, 70), (30, 70)]],
    );
    // three branches vs two, single overlapping pair
    push2(
        5,
        vec![
            vec![(0, 10), (0, 10)],
            vec![(20, 30), (20, 30)],
            vec![(40, 50), (40, 50)],
        ],
        vec![vec![(45, 55), (45, 55)], vec![(100, 110), (100, 110)]],
    );
    // three branches vs two, fully disjoint
    push2(
        6,
        vec![
            vec![(0, 10), (0, 10)],
            vec![(20, 30), (20, 30)],
            vec![(40, 50), (40, 50)],
        ],
        vec![vec![(60, 70), (60, 70)], vec![(100, 110), (100, 110)]],
    );
    // boundary touch across branches
    push2(
        7,
        vec![vec![(0, 10), (0, 10)], vec![(20, 30), (20, 30)]],
        vec![vec![(10, 15), (10, 15)], vec![(60, 70), (60, 70)]],
    );
    // 3-axis cross-pick overlap
    push2(
        8,
        vec![
            vec![(0, 10), (0, 10), (0, 10)],
            vec![(20, 30), (20, 30), (20, 30)],
        ],
        vec![
            vec![(40, 50), (40, 50), (40, 50)],
            vec![(25, 35), (25, 35), (25, 35)],
        ],
    );
    // 3-axis disjoint: overlap on two axes, separated on the third
    push2(
        9,
        vec![
            vec![(0, 10), (0, 10), (0, 10)],
            vec![(20, 30), (20, 30), (90, 95)],
        ],
        vec![
            vec![(0, 10), (0, 10), (40, 50)],
            vec![(20, 30), (20, 30), (60, 70)],
        ],
    );
    // single branch vs two branches
    push2(
        10,
        vec![vec![(0, 100), (0, 100)]],
        vec![vec![(200, 210), (200, 210)], vec![(50, 60), (50, 60)]],
    );
    push2(
        11,
        vec![vec![(0, 10), (0, 10)]],
        vec![vec![(200, 210), (200, 210)], vec![(50, 60), (50, 60)]],
    );
    // nested unions, everything overlaps
    push2(
        12,
        vec![
            vec![(0, 40), (0, 40), (0, 40)],
            vec![(10, 30), (10, 30), (10, 30)],
        ],
        vec![
            vec![(20, 60), (20, 60), (20, 60)],
            vec![(15, 25), (15, 25), (15, 25)],
        ],
    );
    out
}

/// I (10): `xone` branch sets — L-shaped unions of two rectangles where
/// compatibility requires exactly one overlapping branch pair.
fn category_i(g: &Gen) -> Vec<ProverProblem> {
    let x = g.ax("absoluteSpatialPositionX");
    let y = g.ax("absoluteSpatialPositionY");
    let xy = [x.clone(), y.clone()];

    let mut out = Vec::new();
    let mut push = |idx: usize, left: Vec<Vec<(i64, i64)>>, right: Vec<Vec<(i64, i64)>>| {
        out.push(conflict_problem(
            Category::I,
            idx,
            Connective::Xone,
            xy.to_vec(),
            left.iter().map(|b| bx(&xy, b)).collect(),
            right.iter().map(|b| bx(&xy, b)).collect(),
        ));
    };
    // L of a horizontal and a vertical bar; one probe box hits the
    // horizontal bar only, the other sits far away.
    push(
        1,
        vec![vec![(0, 10), (0, 2)], vec![(0, 2), (0, 10)]],
        vec![vec![(5, 8), (1, 2)], vec![(20, 30), (20, 30)]],
    );
    // probe hits the vertical bar only
    push(
        2,
        vec![vec![(0, 10), (0, 2)], vec![(0, 2), (0, 10)]],
        vec![vec![(1, 2), (5, 8)], vec![(20, 30), (20, 30)]],
    );
    // both probes miss — exclusive-or over fully disjoint regions
    push(
        3,
        vec![vec![(0, 10), (0, 2)], vec![(0, 2), (0, 10)]],
        vec![vec![(20, 30), (20, 30)], vec![(40, 50), (40, 50)]],
    );
    // larger L, single corner hit
    push(
        4,
        vec![vec![(0, 100), (0, 20)], vec![(0, 20), (0, 100)]],
        vec![vec![(50, 60), (30, 40)], vec![(10, 15), (60, 80)]],
    );
    // two L shapes, disjoint quadrants
    push(
        5,
        vec![vec![(0, 10), (0, 2)], vec![(0, 2), (0, 10)]],
        vec![vec![(-30, -20), (-30, -20)], vec![(50, 60), (50, 60)]],
    );
    // exactly one overlap at a shared closed boundary
    push(
        6,
        vec![vec![(0, 10), (0, 2)], vec![(0, 2), (0, 10)]],
        vec![vec![(10, 20), (0, 2)], vec![(30, 40), (30, 40)]],
    );
    // mirrored L pairs, single elbow overlap
    push(
        7,
        vec![vec![(0, 30), (0, 5)], vec![(0, 5), (0, 30)]],
        vec![vec![(20, 40), (10, 20)], vec![(2, 4), (10, 20)]],
    );
    // disjoint mirrored pairs
    push(
        8,
        vec![vec![(0, 30), (0, 5)], vec![(0, 5), (0, 30)]],
        vec![vec![(40, 60), (40, 60)], vec![(70, 90), (70, 90)]],
    );
    // thin bars crossing a single probe
    push(
        9,
        vec![vec![(0, 100), (10, 12)], vec![(10, 12), (30, 100)]],
        vec![vec![(50, 55), (10, 11)], vec![(200, 210), (200, 210)]],
    );
    // all disjoint with negative coordinates
    push(
        10,
        vec![vec![(-100, -90), (0, 2)], vec![(-100, -98), (0, 10)]],
        vec![vec![(0, 10), (0, 10)], vec![(20, 30), (20, 30)]],
    );
    out
}

/// The full 117-problem suite in category order:
/// A 15, B 11, C 12, D 12, E 12, F 17, G 16, H 12, I 10.
pub fn generate_suite() -> Vec<ProverProblem> {
    let g = Gen::new();
    let mut out = Vec::new();
    out.extend(category_a(&g));
    out.extend(category_b(&g));
    out.extend(category_c(&g));
    out.extend(category_d(&g));
    out.extend(category_e(&g));
    out.extend(category_f(&g));
    out.extend(category_g(&g));
    out.extend(category_h(&g));
    out.extend(category_i(&g));
    out
}
