//! External prover execution: backend definitions for a TPTP prover
//! (vampire) and an SMT solver (z3), subprocess supervision with a hard
//! timeout, and a bounded worker pool for whole-suite runs.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::sync::{mpsc, Arc, Mutex};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::SuiteManifest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProverKind {
    Vampire,
    Z3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProverStatus {
    Theorem,
    CounterSatisfiable,
    #[serde(rename = "sat")]
    Sat,
    #[serde(rename = "unsat")]
    Unsat,
    Timeout,
    ParseFail,
}

impl ProverStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProverStatus::Theorem => "Theorem",
            ProverStatus::CounterSatisfiable => "CounterSatisfiable",
            ProverStatus::Sat => "sat",
            ProverStatus::Unsat => "unsat",
            ProverStatus::Timeout => "Timeout",
            ProverStatus::ParseFail => "ParseFail",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProverResult {
    pub id: String,
    pub prover: ProverKind,
    pub status: ProverStatus,
    pub wall_ms: u64,
    pub excerpt: String,
}

/// One external reasoning tool behind a common interface.
pub trait ProverBackend: Send + Sync {
    fn kind(&self) -> ProverKind;
    fn binary_name(&self) -> &'static str;
    fn env_var(&self) -> &'static str;
    /// Problem-file field in the manifest this backend consumes.
    fn file_of<'m>(&self, entry: &'m super::ManifestEntry) -> &'m str;
    fn args(&self, file: &Path, timeout_secs: u64) -> Vec<String>;
    fn parse(&self, output: &str) -> ProverStatus;
}

pub struct VampireBackend;

impl ProverBackend for VampireBackend {
    fn kind(&self) -> ProverKind {
        ProverKind::Vampire
    }

    fn binary_name(&self) -> &'static str {
        "vampire"
    }

    fn env_var(&self) -> &'static str {
        crate::config::VAMPIRE_ENV
    }

    fn file_of<'m>(&self, entry: &'m super::ManifestEntry) -> &'m str {
        &entry.tptp_file
    }

    fn args(&self, file: &Path, timeout_secs: u64) -> Vec<String> {
        vec![
            "-t".to_string(),
            format!("{timeout_secs}s"),
            file.display().to_string(),
        ]
    }

    fn parse(&self, output: &str) -> ProverStatus {
        for line in output.lines() {
            if let Some(rest) = line.split("SZS status ").nth(1) {
                let token = rest.split_whitespace().next().unwrap_or("");
                return match token {
                    "Theorem" => ProverStatus::Theorem,
                    "CounterSatisfiable" => ProverStatus::CounterSatisfiable,
                    "Timeout" | "ResourceOut" => ProverStatus::Timeout,
                    _ => ProverStatus::ParseFail,
                };
            }
        }
        ProverStatus::ParseFail
    }
}

pub struct Z3Backend;

impl ProverBackend for Z3Backend {
    fn kind(&self) -> ProverKind {
        ProverKind::Z3
    }

    fn binary_name(&self) -> &'static str {
        "z3"
    }

    fn env_var(&self) -> &'static str {
        crate::config::Z3_ENV
    }

    fn file_of<'m>(&self, entry: &'m super::ManifestEntry) -> &'m str {
        &entry.smt_file
    }

    fn args(&self, file: &Path, timeout_secs: u64) -> Vec<String> {
        vec![format!("-T:{timeout_secs}"), file.display().to_string()]
    }

    fn parse(&self, output: &str) -> ProverStatus {
        for token in output.split_whitespace() {
            match token {
                "sat" => return ProverStatus::Sat,
                "unsat" => return ProverStatus::Unsat,
                "timeout" => return ProverStatus::Timeout,
                _ => {}
            }
        }
        ProverStatus::ParseFail
    }
}

/// Resolved executables; `None` marks a prover as unavailable, which
/// degrades the run to skipped columns rather than failing it.
#[derive(Debug, Default, Clone)]
pub struct ProverPaths {
    pub vampire: Option<PathBuf>,
    pub z3: Option<PathBuf>,
}

/// Runs one problem under one backend. Prover failures are reported as
/// statuses (ParseFail/Timeout), never as process errors.
pub fn run_problem(
    backend: &dyn ProverBackend,
    exe: &Path,
    cwd: &Path,
    id: &str,
    file: &Path,
    timeout_secs: u64,
) -> ProverResult {
    let start = Instant::now();
    let spawned = Command::new(exe)
        .args(backend.args(file, timeout_secs))
        .current_dir(cwd)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn();
    let mut child = match spawned {
        Ok(c) => c,
        Err(e) => {
            return ProverResult {
                id: id.to_string(),
                prover: backend.kind(),
                status: ProverStatus::ParseFail,
                wall_ms: 0,
                excerpt: format!("spawn failed: {e}"),
            }
        }
    };

    // drain pipes on side threads so a chatty prover cannot deadlock us
    let mut stdout = child.stdout.take().expect("stdout piped");
    let mut stderr = child.stderr.take().expect("stderr piped");
    let out_handle = std::thread::spawn(move || {
        let mut buf = String::new();
        let _ = stdout.read_to_string(&mut buf);
        buf
    });
    let err_handle = std::thread::spawn(move || {
        let mut buf = String::new();
        let _ = stderr.read_to_string(&mut buf);
        buf
    });

    // allow a grace period past the prover's own limit before killing
    let deadline = start + Duration::from_secs(timeout_secs) + Duration::from_secs(2);
    let mut timed_out = false;
    loop {
        match child.try_wait() {
            Ok(Some(_)) => break,
            Ok(None) => {
                if Instant::now() >= deadline {
                    let _ = child.kill();
                    let _ = child.wait();
                    timed_out = true;
                    break;
                }
                std::thread::sleep(Duration::from_millis(10));
            }
            Err(_) => break,
        }
    }
    // After a kill the pipes may stay open in orphaned grandchildren, so
    // never block on the reader threads in the timeout case.
    let (status, output) = if timed_out {
        drop(out_handle);
        drop(err_handle);
        (ProverStatus::Timeout, String::new())
    } else {
        let output = format!(
            "{}{}",
            out_handle.join().unwrap_or_default(),
            err_handle.join().unwrap_or_default()
        );
        (backend.parse(&output), output)
    };
    ProverResult {
        id: id.to_string(),
        prover: backend.kind(),
        status,
        wall_ms: start.elapsed().as_millis() as u64,
        excerpt: output.chars().take(200).collect(),
    }
}

/// Runs every manifest problem under each available prover with a bounded
/// worker pool; results come back sorted by (id, prover) so reports are
/// deterministic regardless of scheduling.
pub fn run_suite(
    manifest: &SuiteManifest,
    paths: &ProverPaths,
    bench_dir: &Path,
    timeout_secs: u64,
    jobs: usize,
) -> Vec<ProverResult> {
    let backends: Vec<(Arc<dyn ProverBackend>, PathBuf)> = [
        (
            Arc::new(VampireBackend) as Arc<dyn ProverBackend>,
            paths.vampire.clone(),
        ),
        (Arc::new(Z3Backend) as Arc<dyn ProverBackend>, paths.z3.clone()),
    ]
    .into_iter()
    .filter_map(|(b, p)| p.map(|p| (b, p)))
    .collect();

    let mut queue: Vec<(Arc<dyn ProverBackend>, PathBuf, String, PathBuf)> = Vec::new();
    for entry in &manifest.problems {
        for (backend, exe) in &backends {
            queue.push((
                backend.clone(),
                exe.clone(),
                entry.id.clone(),
                PathBuf::from(backend.file_of(entry)),
            ));
        }
    }

    let queue = Arc::new(Mutex::new(queue));
    let (tx, rx) = mpsc::channel();
    let workers = jobs.max(1);
    let mut handles = Vec::new();
    for _ in 0..workers {
        let queue = queue.clone();
        let tx = tx.clone();
        let cwd = bench_dir.to_path_buf();
        handles.push(std::thread::spawn(move || loop {
            let job = queue.lock().expect("queue lock").pop();
            let Some((backend, exe, id, file)) = job else {
                break;
            };
            let result = run_problem(backend.as_ref(), &exe, &cwd, &id, &file, timeout_secs);
            if tx.send(result).is_err() {
                break;
            }
        }));
    }
    drop(tx);
    let mut results: Vec<ProverResult> = rx.into_iter().collect();
    for h in handles {
        let _ = h.join();
    }
    results.sort_by(|a, b| a.id.cmp(&b.id).then(a.prover.cmp(&b.prover)));
    results
}
