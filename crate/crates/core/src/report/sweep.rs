use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fieldgeom::{generate_config, is_prime, ConfigFile};

use super::run::{run_all, Counts, RunOptions, VerificationReport};
use super::Status;

/// Sweep description, read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub n: Vec<u64>,
    #[serde(default)]
    pub r: Vec<usize>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    /// Smallest prime to try.
    #[serde(default = "default_q_min")]
    pub q_min: u64,
    /// Also run the vector-field check at the next valid prime.
    #[serde(default = "default_true")]
    pub second_q: bool,
    #[serde(default)]
    pub extremality: bool,
    #[serde(default = "default_draws")]
    pub draws: usize,
    /// Explicit configurations appended after the grid.
    #[serde(default)]
    pub configs: Vec<ConfigFile>,
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}
fn default_q_min() -> u64 {
    7
}
fn default_true() -> bool {
    true
}
fn default_draws() -> usize {
    1000
}

/// Largest prime tried when searching for a valid `q`.
pub const Q_SEARCH_LIMIT: u64 = 2000;

/// `s = (s_1, s_1 + 1, ..., s_1 + r - 1)` with `s_1` the least value
/// allowed: 1, or `ceil(3 / n)` for surfaces.
pub fn canonical_s(n: u64, r: usize) -> Vec<usize> {
    let first = if r == 2 {
        3usize.div_ceil(n as usize).max(1)
    } else {
        1
    };
    (0..r).map(|i| first + i).collect()
}

/// Smallest prime `q >= q_min` with `n | q - 1` for which generation
/// succeeds with this seed.
pub fn smallest_valid_q(n: u64, r: usize, s: &[usize], seed: u64, q_min: u64) -> Option<u64> {
    (q_min.max(2)..=Q_SEARCH_LIMIT)
        .filter(|&q| is_prime(q) && (q - 1) % n == 0)
        .find(|&q| generate_config(n, r, s, q, seed).is_ok())
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub n: u64,
    pub r: usize,
    pub s: Vec<usize>,
    pub q: Option<u64>,
    pub q_extra: Option<u64>,
    pub seed: Option<u64>,
    pub status: Status,
    pub counts: Counts,
    pub failed: Vec<String>,
    pub warned: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub rows: Vec<SweepRow>,
    /// Status counts per check id over all configurations.
    pub per_check: BTreeMap<String, Counts>,
    #[serde(skip)]
    pub reports: Vec<Option<VerificationReport>>,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != Status::Fail)
    }

    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("summary serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }
}

enum Job {
    Grid {
        n: u64,
        r: usize,
        s: Vec<usize>,
        seed: u64,
    },
    Explicit(ConfigFile),
}

fn run_job(job: &Job, spec: &SweepSpec) -> (SweepRow, Option<VerificationReport>) {
    let opts = RunOptions {
        draws: spec.draws,
        extremality: spec.extremality,
        ..RunOptions::default()
    };
    let (file, q_extra) = match job {
        Job::Explicit(f) => (f.clone(), None),
        Job::Grid { n, r, s, seed } => {
            let Some(q) = smallest_valid_q(*n, *r, s, *seed, spec.q_min) else {
                let row = SweepRow {
                    n: *n,
                    r: *r,
                    s: s.clone(),
                    q: None,
                    q_extra: None,
                    seed: Some(*seed),
                    status: Status::Fail,
                    counts: Counts::default(),
                    failed: vec![],
                    warned: vec![],
                    error: Some(format!(
                        "no valid q in [{}, {}]",
                        spec.q_min, Q_SEARCH_LIMIT
                    )),
                };
                return (row, None);
            };
            let q2 = if spec.second_q {
                smallest_valid_q(*n, *r, s, *seed, q + 1)
            } else {
                None
            };
            let file = ConfigFile {
                n: *n,
                r: *r,
                s: s.clone(),
                q,
                seed: Some(*seed),
                base: None,
            };
            (file, q2)
        }
    };
    let report = run_all(&file, &RunOptions { q_extra, ..opts });
    let ids = |st: Status| -> Vec<String> {
        report
            .checks
            .iter()
            .filter(|c| c.status == st)
            .map(|c| c.id.clone())
            .collect()
    };
    let row = SweepRow {
        n: file.n,
        r: file.r,
        s: file.s.clone(),
        q: Some(file.q),
        q_extra,
        seed: file.seed,
        status: if report.passed() {
            Status::Pass
        } else {
            Status::Fail
        },
        counts: report.counts,
        failed: ids(Status::Fail),
        warned: ids(Status::Warn),
        error: None,
    };
    (row, Some(report))
}

/// Runs the grid `n x r x seeds` with canonical `s`, then the explicit
/// configurations, on `jobs` worker threads. Row order follows the spec
/// regardless of completion order.
pub fn sweep(spec: &SweepSpec, jobs: usize) -> SweepSummary {
    let mut work = Vec::new();
    for &n in &spec.n {
        for &r in &spec.r {
            for &seed in &spec.seeds {
                work.push(Job::Grid {
                    n,
                    r,
                    s: canonical_s(n, r),
                    seed,
                });
            }
        }
    }
    work.extend(spec.configs.iter().cloned().map(Job::Explicit));

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let results: Vec<(SweepRow, Option<VerificationReport>)> =
        pool.install(|| work.par_iter().map(|j| run_job(j, spec)).collect());

    let mut per_check: BTreeMap<String, Counts> = BTreeMap::new();
    for (_, report) in &results {
        for c in report.iter().flat_map(|r| &r.checks) {
            let e = per_check.entry(c.id.clone()).or_default();
            match c.status {
                Status::Pass => e.pass += 1,
                Status::Warn => e.warn += 1,
                Status::Fail => e.fail += 1,
            }
        }
    }
    let (rows, reports) = results.into_iter().unzip();
    SweepSummary {
        rows,
        per_check,
        reports,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_s_values() {
        assert_eq!(canonical_s(2, 2), vec![2, 3]);
        assert_eq!(canonical_s(3, 2), vec![1, 2]);
        assert_eq!(canonical_s(3, 3), vec![1, 2, 3]);
        assert_eq!(canonical_s(5, 2), vec![1, 2]);
    }

    #[test]
    fn smallest_q() {
        assert_eq!(smallest_valid_q(3, 3, &[1, 2, 3], 0, 7), Some(13));
    }

    #[test]
    fn empty_spec() {
        let spec: SweepSpec = serde_json::from_str("{}").unwrap();
        let out = sweep(&spec, 2);
        assert!(out.rows.is_empty());
        assert!(out.per_check.is_empty());
    }

    #[test]
    fn small_grid_and_bad_row() {
        let spec: SweepSpec = serde_json::from_str(
            r#"{"n":[2,3],"r":[2,3],"draws":20,
                "configs":[{"n":2,"r":2,"s":[2,3],"q":13,"base":[[1,5],[2,3,4]]}]}"#,
        )
        .unwrap();
        let out = sweep(&spec, 3);
        assert_eq!(out.rows.len(), 5);
        for row in &out.rows[..4] {
            assert_eq!(row.status, Status::Pass, "{row:?}");
        }
        assert_eq!(out.rows[4].status, Status::Fail);
        assert_eq!(out.to_canonical_json(), sweep(&spec, 1).to_canonical_json());
    }
}
