//! Command-line front door: policy validation, conflict/subsumption/request
//! evaluation, linting, refinement checks, prover-problem emission, and the
//! benchmark harness.
//!
//! Exit codes are the machine contract: definite-negative outcomes exit 1,
//! Unknown exits 3, usage/parse/environment errors exit 2.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use oax::bench::{self, ProverPaths};
use oax::compose::LabeledVerdict;
use oax::config::{resolve_prover, Config, VAMPIRE_ENV, Z3_ENV};
use oax::encode::{self, Expected, ProverProblem, Relation};
use oax::engine::{
    conflict_report, conflict_report_text, lower_policy, request_report, subsumption_report,
};
use oax::fsutil::atomic_write;
use oax::lint::{check_refinement, findings_text, LintRegistry};
use oax::model::{parse_context_json, parse_context_pairs, parse_policy};
use oax::profile::AxisRegistry;
use oax::{Policy, SubsumptionVerdict, Verdict3};

#[derive(Parser)]
#[command(name = "oax", version, about = "Spatial-axis reasoning for ODRL policies")]
struct Cli {
    /// Config file (defaults to ./oax.toml when present)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a policy and run bound validation plus ambiguity lint
    Validate { policy: PathBuf },
    /// Evaluate the conflict verdict between two policies
    Conflict {
        left: PathBuf,
        right: PathBuf,
        /// JSON file with externally supplied verdict labels for
        /// concept-valued or scalar operands
        #[arg(long)]
        verdicts: Option<PathBuf>,
    },
    /// Check whether the first policy's scope refines the second's
    Subsume { narrow: PathBuf, wide: PathBuf },
    /// Evaluate a request context against a policy
    Request {
        policy: PathBuf,
        /// Inline context, e.g. "width=950,height=20"
        #[arg(long, conflicts_with = "context_json")]
        context: Option<String>,
        /// Context as a JSON object file
        #[arg(long)]
        context_json: Option<PathBuf>,
    },
    /// Run the policy-quality checks
    Lint {
        policy: PathBuf,
        /// Comma-separated rule names (default: all)
        #[arg(long, value_delimiter = ',')]
        rules: Option<Vec<String>>,
    },
    /// Check that a downstream policy refines an upstream one
    Refine {
        upstream: PathBuf,
        downstream: PathBuf,
    },
    /// Emit a prover problem for the first comparable rule pair
    Emit {
        left: PathBuf,
        right: PathBuf,
        /// Target encoder
        #[arg(long, value_enum, default_value_t = EmitFormat::Tptp)]
        encoder: EmitFormat,
        /// Relation to conjecture
        #[arg(long, value_enum, default_value_t = EmitRelation::Conflict)]
        relation: EmitRelation,
        /// Output file (stdout when omitted)
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Benchmark suite operations
    Bench {
        #[command(subcommand)]
        cmd: BenchCmd,
    },
    /// Axis profile operations
    Profile {
        /// Print the 15-operand table
        #[arg(long)]
        dump: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitFormat {
    Tptp,
    Smt,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitRelation {
    Conflict,
    Subsume,
}

#[derive(Subcommand)]
enum BenchCmd {
    /// Regenerate the 117-problem suite
    Generate {
        #[arg(long, default_value = "bench")]
        out: PathBuf,
    },
    /// Run external provers over a generated suite and report concordance
    Run {
        #[arg(long, default_value = "bench")]
        dir: PathBuf,
        #[arg(long)]
        vampire: Option<PathBuf>,
        #[arg(long)]
        z3: Option<PathBuf>,
        /// Per-problem timeout in seconds
        #[arg(long)]
        timeout: Option<u64>,
        /// Worker pool size
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the JSON report here in addition to stdout
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match load_config(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => return fail(2, &e),
    };
    let mut registry = AxisRegistry::standard();
    if let Err(e) = config.apply_densities(&mut registry) {
        return fail(2, &format!("config: {e}"));
    }
    match run(cli.cmd, cli.format, &config, &registry) {
        Ok(code) => ExitCode::from(code),
        Err(e) => fail(2, &e),
    }
}

fn fail(code: u8, message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn load_config(path: Option<&Path>) -> Result<Config, String> {
    match path {
        Some(p) => Config::load(p).map_err(|e| e.to_string()),
        None => Config::discover().map_err(|e| e.to_string()),
    }
}

fn read_policy(path: &Path) -> Result<Policy, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_policy(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_verdicts(path: &Path) -> Result<Vec<LabeledVerdict>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn print_report<T: Serialize>(format: Format, value: &T, text: String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("reports serialize")
        ),
        Format::Text => print!("{text}"),
    }
}

fn verdict_exit(v: Verdict3) -> u8 {
    match v {
        Verdict3::Compatible => 0,
        Verdict3::Conflict => 1,
        Verdict3::Unknown => 3,
    }
}

fn subsumption_exit(v: SubsumptionVerdict) -> u8 {
    match v {
        SubsumptionVerdict::Confirmed => 0,
        SubsumptionVerdict::Refuted => 1,
        SubsumptionVerdict::Unknown => 3,
    }
}

fn run(
    cmd: Cmd,
    format: Format,
    config: &Config,
    registry: &AxisRegistry,
) -> Result<u8, String> {
    match cmd {
        Cmd::Validate { policy } => {
            let p = read_policy(&policy)?;
            let findings = LintRegistry::standard().run_selected(
                &p,
                registry,
                Some(&["ambiguity".to_string(), "bound-violation".to_string()]),
            );
            print_report(format, &findings, findings_text(&findings));
            Ok(if findings.is_empty() { 0 } else { 1 })
        }
        Cmd::Conflict {
            left,
            right,
            verdicts,
        } => {
            let p1 = read_policy(&left)?;
            let p2 = read_policy(&right)?;
            let side = match verdicts {
                Some(path) => read_verdicts(&path)?,
                None => Vec::new(),
            };
            let report =
                conflict_report(&p1, &p2, registry, &side).map_err(|e| e.to_string())?;
            let text = conflict_report_text(&report);
            print_report(format, &report, text);
            Ok(verdict_exit(report.verdict))
        }
        Cmd::Subsume { narrow, wide } => {
            let p1 = read_policy(&narrow)?;
            let p2 = read_policy(&wide)?;
            let report = subsumption_report(&p1, &p2, registry).map_err(|e| e.to_string())?;
            let mut text = format!("verdict: {:?}\n", report.verdict);
            for pair in &report.pairs {
                text.push_str(&format!(
                    "{} vs {} ({}): {:?}\n",
                    pair.left_rule, pair.right_rule, pair.action, pair.verdict
                ));
            }
            print_report(format, &report, text);
            Ok(subsumption_exit(report.verdict))
        }
        Cmd::Request {
            policy,
            context,
            context_json,
        } => {
            let p = read_policy(&policy)?;
            let ctx = match (context, context_json) {
                (Some(pairs), _) => parse_context_pairs(&pairs).map_err(|e| e.to_string())?,
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                    parse_context_json(&text).map_err(|e| e.to_string())?
                }
                (None, None) => return Err("provide --context or --context-json".to_string()),
            };
            let report = request_report(&p, &ctx, registry).map_err(|e| e.to_string())?;
            let mut text = format!("{}\n", if report.satisfied { "Yes" } else { "No" });
            for rule in &report.rules {
                text.push_str(&format!(
                    "{} ({}): {}\n",
                    rule.rule,
                    rule.action,
                    if rule.satisfied { "satisfied" } else { "violated" }
                ));
            }
            print_report(format, &report, text);
            Ok(if report.satisfied { 0 } else { 1 })
        }
        Cmd::Lint { policy, rules } => {
            let p = read_policy(&policy)?;
            let findings =
                LintRegistry::standard().run_selected(&p, registry, rules.as_deref());
            print_report(format, &findings, findings_text(&findings));
            Ok(if findings.is_empty() { 0 } else { 1 })
        }
        Cmd::Refine {
            upstream,
            downstream,
        } => {
            let up = read_policy(&upstream)?;
            let down = read_policy(&downstream)?;
            let report = check_refinement(&up, &down, registry).map_err(|e| e.to_string())?;
            let mut text = format!("verdict: {:?}\n", report.verdict);
            text.push_str(&findings_text(&report.findings));
            print_report(format, &report, text);
            Ok(subsumption_exit(report.verdict))
        }
        Cmd::Emit {
            left,
            right,
            encoder,
            relation,
            out,
        } => {
            let p1 = read_policy(&left)?;
            let p2 = read_policy(&right)?;
            let problem = build_problem(&p1, &p2, relation, registry)?;
            let text = match encoder {
                EmitFormat::Tptp => encode::emit_tptp(&problem),
                EmitFormat::Smt => encode::emit_smt(&problem),
            }
            .map_err(|e| e.to_string())?;
            match out {
                Some(path) => atomic_write(&path, text.as_bytes())
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Cmd::Bench { cmd } => run_bench(cmd, format, config),
        Cmd::Profile { dump: _ } => {
            let rows = registry.dump();
            let mut text = String::new();
            for row in &rows {
                text.push_str(&format!(
                    "{:<36} {:<20} {:<10?} {:<14} {:?}\n",
                    row.iri, row.base, row.axis, row.domain, row.density
                ));
            }
            print_report(format, &rows, text);
            Ok(0)
        }
    }
}

/// Lowers the first comparable rule pair (same action and kind) of the two
/// policies into a prover problem.
fn build_problem(
    p1: &Policy,
    p2: &Policy,
    relation: EmitRelation,
    registry: &AxisRegistry,
) -> Result<ProverProblem, String> {
    let left = lower_policy(p1, registry).map_err(|e| e.to_string())?;
    let right = lower_policy(p2, registry).map_err(|e| e.to_string())?;
    for l in &left {
        for r in &right {
            if l.action != r.action || l.kind != r.kind {
                continue;
            }
            let axes: Vec<_> = oax::engine::constrained_axes(&[l, r], registry)
                .into_iter()
                .cloned()
                .collect();
            let refs: Vec<&oax::AxisOperand> = axes.iter().collect();
            let conn = if l.connective == oax::model::Connective::Xone
                || r.connective == oax::model::Connective::Xone
            {
                oax::model::Connective::Xone
            } else if l.is_branched() || r.is_branched() {
                oax::model::Connective::Or
            } else {
                oax::model::Connective::And
            };
            let (rel, expected) = match relation {
                EmitRelation::Conflict => {
                    let (v, _) =
                        oax::compose::connective_verdict(conn, &l.branches, &r.branches, &refs)
                            .map_err(|e| e.to_string())?;
                    (Relation::ConflictCheck, Expected::Verdict(v))
                }
                EmitRelation::Subsume => {
                    let (v, _) = oax::verdict::box_subsumes(
                        &l.branches.branches[0],
                        &r.branches.branches[0],
                        &refs,
                    )
                    .map_err(|e| e.to_string())?;
                    (Relation::SubsumptionCheck, Expected::Subsumption(v))
                }
            };
            return Ok(ProverProblem {
                id: "emitted".to_string(),
                category: encode::Category::A,
                relation: rel,
                connective: conn,
                left: l.branches.clone(),
                right: r.branches.clone(),
                axes,
                expected,
            });
        }
    }
    Err("no comparable rule pair (matching action and kind)".to_string())
}

fn run_bench(cmd: BenchCmd, format: Format, config: &Config) -> Result<u8, String> {
    match cmd {
        BenchCmd::Generate { out } => {
            let suite = bench::generate_suite();
            let manifest =
                bench::write_suite(&out, &suite).map_err(|e| format!("write suite: {e}"))?;
            let summary = format!(
                "wrote {} problems ({} files) to {}\n",
                manifest.total,
                manifest.total * 2 + 3,
                out.display()
            );
            print_report(format, &manifest.categories, summary);
            Ok(0)
        }
        BenchCmd::Run {
            dir,
            vampire,
            z3,
            timeout,
            jobs,
            report,
        } => {
            let manifest = bench::read_manifest(&dir)
                .map_err(|e| format!("cannot read manifest in {}: {e}", dir.display()))?;
            let vampire_path =
                resolve_prover(vampire.as_deref(), config.provers.vampire.as_deref(), VAMPIRE_ENV, "vampire");
            let z3_path =
                resolve_prover(z3.as_deref(), config.provers.z3.as_deref(), Z3_ENV, "z3");
            // an explicitly requested prover that does not exist is an
            // environment error, not a degraded run
            for (label, path) in [("vampire", &vampire_path), ("z3", &z3_path)] {
                if let Some(p) = path {
                    if !p.is_file() {
                        return Err(format!(
                            "{label} executable {} not found; install it or unset the path",
                            p.display()
                        ));
                    }
                }
            }
            if vampire_path.is_none() && z3_path.is_none() {
                eprintln!(
                    "note: no provers found (checked flags, config, {VAMPIRE_ENV}/{Z3_ENV}, PATH); \
                     external columns will be skipped"
                );
            }
            let paths = ProverPaths {
                vampire: vampire_path,
                z3: z3_path,
            };
            let timeout = timeout.unwrap_or(config.run.timeout_secs);
            let jobs = jobs.unwrap_or(config.run.jobs);
            let results = bench::run_suite(&manifest, &paths, &dir, timeout, jobs);
            let rep = bench::concordance_report(&manifest, &results);
            if let Some(path) = report {
                let json = serde_json::to_string_pretty(&rep).expect("report serializes");
                atomic_write(&path, json.as_bytes())
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            print_report(format, &rep, rep.to_text());
            Ok(rep.exit_code() as u8)
        }
    }
}
