//! Reproducible experiments behind the `cube-orient` CLI.
//!
//! Every command returns an [`ExperimentReport`]; the binary prints it as JSON
//! and exits nonzero when any case failed.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::connectivity::{
    is_strongly_k_node_connected, is_strongly_k_node_connected_par, strongly_connected,
    ConnectivityReport,
};
use crate::cube::{Dim, NodeSet, Orientation};
use crate::error::CubeError;
use crate::format;
use crate::isoperimetry::{
    bv_bruteforce, bv_hamming_ball, check_claim6, check_theorem1_condition, expansion_bound,
    facts_3_4_report, harper_bv, level_symmetry_holds, shadow_degrees, MAX_FACTS_K,
    MAX_THEOREM1_K,
};
use crate::orient::{
    enumerate_eulerian_orientations_with_order, find_smooth_not_strongly_connected,
    inductive_good_orientation, EdgeOrder, EulerianChain, SamplerConfig, MAX_ENUMERATION_DIM,
};

/// Environment variable that overrides `--jobs`.
pub const JOBS_ENV: &str = "CUBE_ORIENT_JOBS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sample,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<u64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub total: u64,
    pub pass: u64,
    pub fail: u64,
}

/// A failing case, replayable from `orientation` (CUBEORIENT v1 text).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub case: u64,
    pub orientation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ConnectivityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub parameters: Parameters,
    pub outcome: Outcome,
    pub witnesses: Vec<WitnessRecord>,
    pub findings: BTreeMap<String, Value>,
    pub duration_ms: u64,
}

impl ExperimentReport {
    fn new(experiment: &str, parameters: Parameters) -> Self {
        ExperimentReport {
            experiment: experiment.to_string(),
            parameters,
            outcome: Outcome::default(),
            witnesses: Vec::new(),
            findings: BTreeMap::new(),
            duration_ms: 0,
        }
    }

    fn record(&mut self, ok: bool) {
        self.outcome.total += 1;
        if ok {
            self.outcome.pass += 1;
        } else {
            self.outcome.fail += 1;
        }
    }

    fn finding(&mut self, key: &str, value: impl Serialize) {
        self.findings.insert(
            key.to_string(),
            serde_json::to_value(value).expect("finding serializes"),
        );
    }

    /// `pass + fail = total`, and failures carry at least one witness.
    pub fn is_consistent(&self) -> bool {
        self.outcome.pass + self.outcome.fail == self.outcome.total
            && (self.outcome.fail == 0 || !self.witnesses.is_empty())
    }

    pub fn succeeded(&self) -> bool {
        self.outcome.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One-line CSV summary with a header row.
    pub fn to_csv_summary(&self) -> String {
        format!(
            "experiment,total,pass,fail,duration_ms\n{},{},{},{},{}\n",
            self.experiment, self.outcome.total, self.outcome.pass, self.outcome.fail, self.duration_ms
        )
    }
}

/// Resolves the worker count (`CUBE_ORIENT_JOBS` wins over the flag) and
/// installs it as rayon's global pool. Returns the count in effect.
pub fn configure_jobs(flag: Option<usize>) -> usize {
    let env = std::env::var(JOBS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok());
    let jobs = env.or(flag).filter(|&j| j > 0);
    if let Some(j) = jobs {
        // A pool already exists when called twice in one process; keep it.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    rayon::current_num_threads()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub dim: u32,
    pub mode: Mode,
    pub samples: u64,
    pub seed: u64,
    /// Cycle reversals between samples; defaults to `10 * |E|`.
    pub steps: Option<u64>,
    /// Directory for witness files; the current directory when absent.
    pub out_dir: Option<PathBuf>,
}

/// Checks every case at level `k`, stopping at the first failure. Returns the
/// number of cases examined and the failing case, if any. The result does not
/// depend on the worker count.
pub fn check_cases(cases: &[Orientation], k: u32) -> anyhow::Result<(u64, Option<(u64, ConnectivityReport)>)> {
    let first_failure = cases
        .par_iter()
        .enumerate()
        .map(|(i, o)| is_strongly_k_node_connected(o, k).map(|r| (i, r)))
        .find_map_first(|res| match res {
            Ok((_, r)) if r.verdict => None,
            other => Some(other),
        });
    match first_failure {
        None => Ok((cases.len() as u64, None)),
        Some(Ok((i, report))) => Ok((i as u64 + 1, Some((i as u64, report)))),
        Some(Err(e)) => Err(e.into()),
    }
}

fn witness_path(dir: &Path, stem: &str) -> PathBuf {
    dir.join(format!("{stem}.cubeorient"))
}

/// Writes `o` and its report next to each other and returns the record.
pub fn persist_witness(
    dir: &Path,
    stem: &str,
    case: u64,
    o: &Orientation,
    report: Option<&ConnectivityReport>,
) -> anyhow::Result<WitnessRecord> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = witness_path(dir, stem);
    format::write_file(&path, o).with_context(|| format!("writing {}", path.display()))?;
    if let Some(r) = report {
        let json_path = dir.join(format!("{stem}.report.json"));
        fs::write(&json_path, serde_json::to_string_pretty(r)?)
            .with_context(|| format!("writing {}", json_path.display()))?;
    }
    Ok(WitnessRecord {
        case,
        orientation: format::to_text(o),
        report: report.cloned(),
        file: Some(path.display().to_string()),
    })
}

/// Re-runs the connectivity check on a persisted orientation.
pub fn replay_witness(path: &Path, k: u32) -> anyhow::Result<ConnectivityReport> {
    let o = format::read_file(path)?;
    Ok(is_strongly_k_node_connected(&o, k)?)
}

/// Every Eulerian orientation of `Q_d` (or a seeded sample) must be strongly
/// `d/2`-node connected.
pub fn cmd_verify_main_theorem(cfg: &VerifyConfig) -> anyhow::Result<ExperimentReport> {
    let start = Instant::now();
    let dim = Dim::new(cfg.dim)?;
    if !dim.is_even() {
        return Err(CubeError::NotEulerian(cfg.dim).into());
    }
    let k = cfg.dim / 2;
    let mut params = Parameters {
        d: Some(cfg.dim),
        k: Some(k),
        mode: Some(cfg.mode),
        ..Parameters::default()
    };

    let cases: Vec<Orientation> = match cfg.mode {
        Mode::Exhaustive => {
            if cfg.dim > MAX_ENUMERATION_DIM {
                return Err(CubeError::infeasible(format!(
                    "exhaustive mode supports d <= {MAX_ENUMERATION_DIM}, got d = {}",
                    cfg.dim
                ))
                .into());
            }
            let mut all = Vec::new();
            enumerate_eulerian_orientations_with_order(dim, EdgeOrder::Canonical, |o| {
                all.push(o.clone())
            })?;
            all
        }
        Mode::Sample => {
            if cfg.dim != 4 && cfg.dim != 6 {
                return Err(CubeError::infeasible(format!(
                    "sample mode supports d in {{4, 6}}, got d = {}",
                    cfg.dim
                ))
                .into());
            }
            let steps = cfg.steps.unwrap_or_else(|| SamplerConfig::default_steps(dim));
            params.seed = Some(cfg.seed);
            params.samples = Some(cfg.samples);
            params.steps = Some(steps);
            EulerianChain::new(dim, &SamplerConfig::new(cfg.seed, steps))?
                .take(cfg.samples as usize)
                .collect()
        }
    };

    let mut report = ExperimentReport::new("verify", params);
    report.finding("cases_generated", cases.len());
    let all_eulerian = cases.iter().all(Orientation::is_eulerian);
    report.finding("all_eulerian", all_eulerian);
    if !all_eulerian {
        bail!("generator produced a non-Eulerian orientation");
    }

    let (examined, failure) = check_cases(&cases, k)?;
    report.outcome = Outcome {
        total: examined,
        pass: examined - failure.is_some() as u64,
        fail: failure.is_some() as u64,
    };
    if let Some((case, conn)) = failure {
        let dir = cfg.out_dir.clone().unwrap_or_else(|| PathBuf::from("."));
        let stem = format!("verify-d{}-case{case}", cfg.dim);
        report
            .witnesses
            .push(persist_witness(&dir, &stem, case, &cases[case as usize], Some(&conn))?);
        report.finding("aborted", true);
    }
    report.duration_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// One row of the Harper table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarperRow {
    pub m: u64,
    pub harper_bv: u64,
    pub oracle: Option<u64>,
    pub oracle_kind: Option<String>,
    pub bound: u64,
    pub bound_satisfied: bool,
}

pub const MAX_HARPER_TABLE_N: u32 = 16;
/// Largest `n` for which rows carry the simplicial-segment oracle.
pub const MAX_HARPER_ORACLE_N: u32 = 12;

/// Rows `(m, b_v, oracle, bound, bound satisfied)` for `m = 1..=m_max` in
/// `Q_n` with `k = n/2`.
pub fn cmd_harper_table(n: u32, m_max: u64) -> anyhow::Result<Vec<HarperRow>> {
    if n < 2 || !n.is_multiple_of(2) || n > MAX_HARPER_TABLE_N {
        return Err(CubeError::infeasible(format!(
            "n must be even and in 2..={MAX_HARPER_TABLE_N}, got {n}"
        ))
        .into());
    }
    let half = 1u64 << (n - 1);
    if !(1..=half).contains(&m_max) {
        return Err(CubeError::infeasible(format!("m_max must be in 1..={half}, got {m_max}")).into());
    }
    let dim = Dim::new(n)?;
    let k = n / 2;
    (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let bv = harper_bv(m, n)?;
            let (oracle, kind) = if n <= crate::isoperimetry::MAX_BRUTEFORCE_DIM {
                (Some(bv_bruteforce(m, dim)?), Some("bruteforce"))
            } else if n <= MAX_HARPER_ORACLE_N {
                (Some(bv_hamming_ball(m, dim)?), Some("hamming_ball"))
            } else {
                (None, None)
            };
            let bound = expansion_bound(m, k);
            Ok(HarperRow {
                m,
                harper_bv: bv,
                oracle,
                oracle_kind: kind.map(str::to_string),
                bound,
                bound_satisfied: bv > bound,
            })
        })
        .collect()
}

pub fn harper_rows_to_csv(rows: &[HarperRow]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Summarizes a Harper table as a report: one case per row, failing when the
/// bound is violated or the oracle disagrees.
pub fn harper_report(n: u32, m_max: u64, rows: &[HarperRow]) -> ExperimentReport {
    let mut report = ExperimentReport::new(
        "harper",
        Parameters {
            d: Some(n),
            k: Some(n / 2),
            ..Parameters::default()
        },
    );
    report.finding("m_max", m_max);
    let mut mismatches = Vec::new();
    for row in rows {
        let ok = row.bound_satisfied && row.oracle.is_none_or(|o| o == row.harper_bv);
        report.record(ok);
        if !ok {
            mismatches.push(row.m);
        }
    }
    if !mismatches.is_empty() {
        report.finding("failing_m", &mismatches);
        report.witnesses.push(WitnessRecord {
            case: mismatches[0],
            orientation: String::new(),
            report: None,
            file: None,
        });
    }
    report
}

pub const MAX_CONSTRUCT_K: u32 = crate::orient::MAX_INDUCTIVE_K;
pub const MAX_CONSTRUCT_VERIFY_K: u32 = 3;

/// Builds the recursive four-copy orientation of `Q_{2k}`, writes it to
/// `out_path`, and verifies it when `k <= 3`.
pub fn cmd_construct(k: u32, out_path: &Path) -> anyhow::Result<ExperimentReport> {
    let start = Instant::now();
    if !(1..=MAX_CONSTRUCT_K).contains(&k) {
        return Err(CubeError::invalid(format!("k must be in 1..={MAX_CONSTRUCT_K}, got {k}")).into());
    }
    let o = inductive_good_orientation(k)?;
    format::write_file(out_path, &o).with_context(|| format!("writing {}", out_path.display()))?;

    let mut report = ExperimentReport::new(
        "construct",
        Parameters {
            d: Some(2 * k),
            k: Some(k),
            ..Parameters::default()
        },
    );
    report.finding("file", out_path.display().to_string());
    report.finding("eulerian", o.is_eulerian());
    let verified = k <= MAX_CONSTRUCT_VERIFY_K;
    report.finding("verified", verified);
    if verified {
        let conn = is_strongly_k_node_connected_par(&o, k)?;
        let ok = conn.verdict && o.is_eulerian();
        report.record(ok);
        if !ok {
            report.witnesses.push(WitnessRecord {
                case: 0,
                orientation: format::to_text(&o),
                report: Some(conn),
                file: Some(out_path.display().to_string()),
            });
        }
    }
    report.duration_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Finds a smooth orientation of `Q_3` that is not strongly connected, writes
/// it to `out_path`, and confirms the verdicts after reloading the file.
pub fn cmd_counterexample_q3(out_path: &Path) -> anyhow::Result<ExperimentReport> {
    let start = Instant::now();
    let dim = Dim::new(3)?;
    let mut report = ExperimentReport::new(
        "counterexample",
        Parameters {
            d: Some(3),
            ..Parameters::default()
        },
    );
    let Some(o) = find_smooth_not_strongly_connected(dim, &SamplerConfig::new(0, 0)) else {
        bail!("no smooth, non-strongly-connected orientation of Q_3 found");
    };
    format::write_file(out_path, &o).with_context(|| format!("writing {}", out_path.display()))?;
    let reloaded = format::read_file(out_path)?;
    let none = NodeSet::empty(dim);

    let smooth = reloaded.is_smooth();
    let connected = strongly_connected(&reloaded, &none)?;
    let replay_identical = reloaded == o;
    report.finding("file", out_path.display().to_string());
    report.finding("smooth", smooth);
    report.finding("strongly_connected", connected);
    report.finding("eulerian", reloaded.is_eulerian());
    report.finding("replay_identical", replay_identical);
    report.witnesses.push(WitnessRecord {
        case: 0,
        orientation: format::to_text(&o),
        report: Some(is_strongly_k_node_connected(&o, 1)?),
        file: Some(out_path.display().to_string()),
    });
    report.record(smooth && !connected && replay_identical);
    report.duration_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Counts Eulerian orientations of `Q_d` under two edge orders.
pub fn cmd_enumerate(d: u32) -> anyhow::Result<ExperimentReport> {
    let start = Instant::now();
    let dim = Dim::new(d)?;
    let canonical = enumerate_eulerian_orientations_with_order(dim, EdgeOrder::Canonical, |_| {})?;
    let dimension_major =
        enumerate_eulerian_orientations_with_order(dim, EdgeOrder::DimensionMajor, |_| {})?;
    let mut report = ExperimentReport::new(
        "enumerate",
        Parameters {
            d: Some(d),
            ..Parameters::default()
        },
    );
    report.finding("count", canonical);
    report.finding("count_dimension_major", dimension_major);
    report.record(canonical == dimension_major);
    if canonical != dimension_major {
        report.witnesses.push(WitnessRecord {
            case: 0,
            orientation: String::new(),
            report: None,
            file: None,
        });
    }
    report.duration_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Checks the colex shadow inequality for every `(m', r)` with
/// `k + 1 <= r <= 2k - 2`. Returns `(instances, all hold)`.
pub fn claim6_sweep(k: u32) -> anyhow::Result<(u64, bool)> {
    let n = 2 * k;
    let mut count = 0;
    let mut all = true;
    for r in k + 1..=n.saturating_sub(2) {
        let cap = crate::isoperimetry::binomial(n, r)?;
        for m_prime in 1..=cap {
            count += 1;
            all &= check_claim6(m_prime, r, k)?;
        }
    }
    Ok((count, all))
}

/// Checks the segment/shadow degree pattern (`r` below, at most
/// `2k - r + 1` above) on `instances` random `(m', r)` with `r >= k + 1`.
pub fn shadow_degree_sample(k: u32, instances: u64, seed: u64) -> anyhow::Result<bool> {
    if k < 1 {
        bail!("k must be positive");
    }
    let n = 2 * k;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        let r = rng.gen_range(k + 1..=n);
        let cap = crate::isoperimetry::binomial(n, r)?;
        let m_prime = rng.gen_range(1..=cap);
        let deg = shadow_degrees(m_prime, r, n)?;
        if deg.segment_min != r || deg.segment_max != r || deg.shadow_max > n - r + 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Numerical checks of the expansion hypothesis and its supporting
/// inequalities for a given `k`.
pub fn cmd_facts(k: u32) -> anyhow::Result<ExperimentReport> {
    let start = Instant::now();
    if !(1..=MAX_THEOREM1_K).contains(&k) {
        return Err(CubeError::infeasible(format!("k must be in 1..={MAX_THEOREM1_K}, got {k}")).into());
    }
    let mut report = ExperimentReport::new(
        "facts",
        Parameters {
            d: Some(2 * k),
            k: Some(k),
            ..Parameters::default()
        },
    );
    let mut failed = Vec::new();
    let mut check = |report: &mut ExperimentReport, name: &str, ok: bool| {
        report.finding(name, ok);
        report.record(ok);
        if !ok {
            failed.push(name.to_string());
        }
    };

    check(&mut report, "expansion_condition", check_theorem1_condition(k)?);
    if k <= MAX_FACTS_K {
        let facts = facts_3_4_report(k)?;
        check(&mut report, "small_m_identity", facts.small_m_identity);
        check(&mut report, "large_m_identity", facts.large_m_identity);
        check(&mut report, "small_sets_bound", facts.small_sets);
        check(&mut report, "large_sets_bound", facts.large_sets);
    }
    let (instances, claim6) = claim6_sweep(k)?;
    report.finding("shadow_instances", instances);
    check(&mut report, "shadow_exceeds_segment", claim6);
    check(&mut report, "shadow_degrees", shadow_degree_sample(k, 100, k as u64)?);
    check(&mut report, "level_symmetry", level_symmetry_holds(k)?);

    if !failed.is_empty() {
        report.witnesses.push(WitnessRecord {
            case: 0,
            orientation: String::new(),
            report: None,
            file: None,
        });
        report.finding("failed_checks", json!(failed));
    }
    report.duration_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
