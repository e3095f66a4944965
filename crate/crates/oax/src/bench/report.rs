//! Concordance reporting: per-problem comparison of the internal verdict's
//! expected statuses against what the external provers actually reported.

use serde::Serialize;

use super::{ManifestEntry, ProverKind, ProverResult, ProverStatus, SuiteManifest};

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub id: String,
    pub expected: String,
    pub expected_szs: String,
    pub expected_smt: String,
    pub vampire: Option<ProverStatus>,
    pub z3: Option<ProverStatus>,
    pub vampire_match: Option<bool>,
    pub z3_match: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConcordanceReport {
    pub total: usize,
    pub concordant: usize,
    pub mismatched: usize,
    pub skipped: usize,
    pub concordance_percent: f64,
    pub rows: Vec<ReportRow>,
}

impl ConcordanceReport {
    /// 0 = full concordance (or degraded run with no provers), 1 = mismatch.
    pub fn exit_code(&self) -> i32 {
        if self.mismatched > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("id        expected      vampire               z3\n");
        for row in &self.rows {
            let fmt = |s: &Option<ProverStatus>, m: &Option<bool>| match (s, m) {
                (Some(st), Some(true)) => format!("{} (ok)", st.as_str()),
                (Some(st), Some(false)) => format!("{} (MISMATCH)", st.as_str()),
                _ => "skipped".to_string(),
            };
            out.push_str(&format!(
                "{:<9} {:<13} {:<21} {}\n",
                row.id,
                row.expected,
                fmt(&row.vampire, &row.vampire_match),
                fmt(&row.z3, &row.z3_match),
            ));
        }
        out.push_str(&format!(
            "concordance: {}/{} matched, {} mismatched, {} skipped ({:.1}%)\n",
            self.concordant,
            self.total,
            self.mismatched,
            self.skipped,
            self.concordance_percent
        ));
        out
    }
}

fn matches(entry: &ManifestEntry, status: &ProverStatus) -> bool {
    match status {
        ProverStatus::Theorem | ProverStatus::CounterSatisfiable => {
            entry.expected_szs == status.as_str()
        }
        ProverStatus::Sat | ProverStatus::Unsat => entry.expected_smt == status.as_str(),
        ProverStatus::Timeout | ProverStatus::ParseFail => false,
    }
}

/// Joins prover results against the manifest. A problem with no result for
/// either prover counts as skipped; a problem where any present result
/// disagrees with the expected status counts as mismatched.
pub fn concordance_report(
    manifest: &SuiteManifest,
    results: &[ProverResult],
) -> ConcordanceReport {
    let mut rows = Vec::new();
    let mut concordant = 0;
    let mut mismatched = 0;
    let mut skipped = 0;
    for entry in &manifest.problems {
        let find = |kind: ProverKind| {
            results
                .iter()
                .find(|r| r.id == entry.id && r.prover == kind)
                .map(|r| r.status.clone())
        };
        let vampire = find(ProverKind::Vampire);
        let z3 = find(ProverKind::Z3);
        let vampire_match = vampire.as_ref().map(|s| matches(entry, s));
        let z3_match = z3.as_ref().map(|s| matches(entry, s));
        match (vampire_match, z3_match) {
            (None, None) => skipped += 1,
            (a, b) => {
                if a == Some(false) || b == Some(false) {
                    mismatched += 1;
                } else {
                    concordant += 1;
                }
            }
        }
        rows.push(ReportRow {
            id: entry.id.clone(),
            expected: entry.expected.clone(),
            expected_szs: entry.expected_szs.clone(),
            expected_smt: entry.expected_smt.clone(),
            vampire,
            z3,
            vampire_match,
            z3_match,
        });
    }
    let total = manifest.problems.len();
    let judged = total - skipped;
    let concordance_percent = if judged == 0 {
        100.0
    } else {
        100.0 * concordant as f64 / judged as f64
    };
    ConcordanceReport {
        total,
        concordant,
        mismatched,
        skipped,
        concordance_percent,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{generate_suite, manifest};

    #[test]
    fn absent_provers_mean_all_skipped_and_exit_zero() {
        let m = manifest(&generate_suite());
        let report = concordance_report(&m, &[]);
        assert_eq!(report.skipped, 117);
        assert_eq!(report.mismatched, 0);
        assert_eq!(report.exit_code(), 0);
        assert_eq!(report.concordance_percent, 100.0);
        assert!(report.to_text().contains("skipped"));
    }

    #[test]
    fn matching_and_flipped_statuses_are_detected() {
        let m = manifest(&generate_suite());
        let entry = &m.problems[0];
        let status = |s: &str| match s {
            "Theorem" => ProverStatus::Theorem,
            "CounterSatisfiable" => ProverStatus::CounterSatisfiable,
            "sat" => ProverStatus::Sat,
            _ => ProverStatus::Unsat,
        };
        let good = vec![
            ProverResult {
                id: entry.id.clone(),
                prover: ProverKind::Vampire,
                status: status(&entry.expected_szs),
                wall_ms: 1,
                excerpt: String::new(),
            },
            ProverResult {
                id: entry.id.clone(),
                prover: ProverKind::Z3,
                status: status(&entry.expected_smt),
                wall_ms: 1,
                excerpt: String::new(),
            },
        ];
        let report = concordance_report(&m, &good);
        assert_eq!(report.concordant, 1);
        assert_eq!(report.skipped, 116);
        assert_eq!(report.exit_code(), 0);

        // flip the SMT answer
        let mut bad = good;
        bad[1].status = if bad[1].status == ProverStatus::Sat {
            ProverStatus::Unsat
        } else {
            ProverStatus::Sat
        };
        let report = concordance_report(&m, &bad);
        assert_eq!(report.mismatched, 1);
        assert_eq!(report.exit_code(), 1);
        assert!(report.to_text().contains("MISMATCH"));
    }

    #[test]
    fn timeout_counts_as_mismatch_when_present() {
        let m = manifest(&generate_suite());
        let results = vec![ProverResult {
            id: m.problems[0].id.clone(),
            prover: ProverKind::Vampire,
            status: ProverStatus::Timeout,
            wall_ms: 1000,
            excerpt: String::new(),
        }];
        let report = concordance_report(&m, &results);
        assert_eq!(report.mismatched, 1);
    }
}
