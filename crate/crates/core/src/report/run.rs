use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::blowup::Blowup;
use crate::fieldgeom::{generate_config, validate_config, ConfigFile};
use crate::rigidity::verify_rigidity;
use crate::vectorfields::verify_vanishing;

use super::checks::{cone_checks, identity_checks, lattice_checks};
use super::{Anchor, CheckRecord, Status};

/// Knobs for [`run_all`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Search cap for the cone; `None` means `10 N`.
    pub cap: Option<i64>,
    /// Second prime for the vector-field check.
    pub q_extra: Option<u64>,
    /// Random draws per expansion identity.
    pub draws: usize,
    /// Run the extremality brute force.
    pub extremality: bool,
    /// Record wall-clock time per stage. Off by default so reports are
    /// byte-identical across runs.
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            cap: None,
            q_extra: None,
            draws: 1000,
            extremality: true,
            timings: false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub warn: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    /// The configuration as run, with generated base points filled in.
    pub config: ConfigFile,
    pub checks: Vec<CheckRecord>,
    pub counts: Counts,
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn new(config: ConfigFile, checks: Vec<CheckRecord>, notes: Vec<String>) -> Self {
        let mut counts = Counts::default();
        for c in &checks {
            match c.status {
                Status::Pass => counts.pass += 1,
                Status::Warn => counts.warn += 1,
                Status::Fail => counts.fail += 1,
            }
        }
        VerificationReport {
            config,
            checks,
            counts,
            notes,
        }
    }

    pub fn passed(&self) -> bool {
        self.counts.fail == 0
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Sorted keys, two-space indentation, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        writeln!(
            out,
            "# Verification report\n\nn = {}, r = {}, s = {:?}, q = {}\n",
            c.n, c.r, c.s, c.q
        )
        .unwrap();
        writeln!(
            out,
            "{} pass, {} warn, {} fail\n",
            self.counts.pass, self.counts.warn, self.counts.fail
        )
        .unwrap();
        out.push_str("| check | status | claim |\n|---|---|---|\n");
        for r in &self.checks {
            writeln!(
                out,
                "| `{}` | {} | {} |",
                r.id,
                r.status,
                r.anchor.claim().replace('|', "\\|")
            )
            .unwrap();
        }
        let noted: Vec<&CheckRecord> = self.checks.iter().filter(|r| r.note.is_some()).collect();
        if !noted.is_empty() || !self.notes.is_empty() {
            out.push_str("\n## Notes\n\n");
            for r in noted {
                writeln!(
                    out,
                    "- `{}`: {}",
                    r.id,
                    r.note.as_deref().unwrap_or_default()
                )
                .unwrap();
            }
            for n in &self.notes {
                writeln!(out, "- {n}").unwrap();
            }
        }
        out
    }
}

fn timed<F: FnOnce() -> Vec<CheckRecord>>(timings: bool, f: F) -> Vec<CheckRecord> {
    let start = Instant::now();
    let mut recs = f();
    if timings {
        let ms = start.elapsed().as_millis() as u64;
        for r in &mut recs {
            r.elapsed_ms = Some(ms);
        }
    }
    recs
}

/// Validation, lattice identities, cone, rigidity and vector fields, in
/// that order. Later stages are skipped when validation fails.
pub fn run_all(file: &ConfigFile, options: &RunOptions) -> VerificationReport {
    let validation = validate_config(file);
    let mut checks = validation.records;
    let mut notes = Vec::new();
    let Some(blowup) = validation.blowup else {
        notes.push("configuration invalid; remaining checks skipped".into());
        return VerificationReport::new(file.clone(), checks, notes);
    };
    let t = options.timings;
    let seed = file.seed.unwrap_or(0);
    checks.extend(timed(t, || lattice_checks(&blowup)));
    checks.extend(timed(t, || identity_checks(&blowup, options.draws, seed)));
    if options.extremality {
        checks.extend(timed(t, || cone_checks(&blowup, options.cap)));
    } else {
        notes.push("extremality brute force skipped".into());
    }
    checks.extend(timed(t, || verify_rigidity(&blowup).records));
    checks.extend(timed(t, || verify_vanishing(&blowup)));
    if let Some(q2) = options.q_extra {
        checks.extend(timed(t, || vanishing_at(&blowup, q2, seed)));
    }
    notes.push(
        "the divisor H~_i is expressed as pi*(H_i) minus the exceptional divisors off axis i; \
         with that class H~_i . l~_j = -n*s_j for j != i"
            .into(),
    );
    VerificationReport::new(blowup.config().to_file(), checks, notes)
}

/// Regenerates the configuration over `F_q2` with the same `(n, r, s, seed)`
/// and reruns the vector-field kernel there.
fn vanishing_at(blowup: &Blowup, q2: u64, seed: u64) -> Vec<CheckRecord> {
    let cfg = blowup.config();
    let result = generate_config(cfg.n(), cfg.r(), cfg.s(), q2, seed).and_then(Blowup::new);
    match result {
        Ok(b2) => {
            let rec = verify_vanishing(&b2)
                .into_iter()
                .find(|r| r.id == "vector_fields.vanishing")
                .expect("vanishing record present");
            vec![CheckRecord {
                id: "vector_fields.vanishing.q_extra".into(),
                ..rec
            }]
        }
        Err(e) => vec![CheckRecord::new(
            "vector_fields.vanishing.q_extra",
            Anchor::VectorFields,
            Status::Fail,
            json!({ "q": q2, "error": e.to_string() }),
            json!({ "dimension": cfg.r() }),
        )],
    }
}
