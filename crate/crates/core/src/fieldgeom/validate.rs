use std::collections::HashSet;

use serde_json::json;

use super::config::{structural_issues, Config, ConfigFile};
use super::delta::g_action;
use super::stabilizer::{stabilizer_of_axis, torus_maps};
use super::FieldGeomError;
use crate::blowup::Blowup;
use crate::report::{Anchor, CheckRecord, Status};

/// Outcome of [`validate_config`]: the check records, and the built
/// configuration when every check passed.
#[derive(Debug)]
pub struct Validation {
    pub records: Vec<CheckRecord>,
    pub reasons: Vec<String>,
    pub blowup: Option<Blowup>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.reasons.is_empty() && self.blowup.is_some()
    }
}

/// Runs the structural checks, builds the point set (generating base
/// points when the document has none) and checks genericity axis by axis.
/// Later stages are skipped once one fails.
pub fn validate_config(file: &ConfigFile) -> Validation {
    let mut records = Vec::new();
    let mut reasons = Vec::new();

    let issues = structural_issues(file.n, file.r, &file.s, file.q);
    reasons.extend(issues.iter().map(|e| e.to_string()));
    records.push(CheckRecord::new(
        "config.structure",
        Anchor::ConfigStructure,
        Status::from_bool(issues.is_empty()),
        json!({ "n": file.n, "r": file.r, "s": file.s, "q": file.q, "violations": reasons }),
        json!({ "violations": [] }),
    ));
    if !issues.is_empty() {
        return Validation {
            records,
            reasons,
            blowup: None,
        };
    }

    let built = Config::from_file(file).and_then(Blowup::new);
    let blowup = match built {
        Ok(b) => b,
        Err(e) => {
            reasons.push(e.to_string());
            records.push(CheckRecord::new(
                "config.points",
                Anchor::PointSet,
                Status::Fail,
                json!({ "error": e.to_string() }),
                json!({ "size": file.n as usize * file.s.iter().sum::<usize>() }),
            ));
            return Validation {
                records,
                reasons,
                blowup: None,
            };
        }
    };

    let point_problems = point_set_problems(&blowup);
    records.push(CheckRecord::new(
        "config.points",
        Anchor::PointSet,
        Status::from_bool(point_problems.is_empty()),
        json!({
            "size": blowup.num_points(),
            "per_axis": (0..blowup.r()).map(|i| blowup.axis_len(i)).collect::<Vec<_>>(),
            "problems": point_problems,
        }),
        json!({
            "size": blowup.config().delta_size(),
            "per_axis": blowup.config().s().iter().map(|&si| si * blowup.n() as usize).collect::<Vec<_>>(),
            "problems": [],
        }),
    ));
    reasons.extend(point_problems);
    if !reasons.is_empty() {
        return Validation {
            records,
            reasons,
            blowup: None,
        };
    }

    let expected = torus_maps(&blowup);
    let mut orders = Vec::new();
    let mut extras = Vec::new();
    for axis in 0..blowup.r() {
        match stabilizer_of_axis(&blowup, axis) {
            Ok(stab) => {
                orders.push(stab.len());
                if stab != expected {
                    let extra = stab.iter().find(|m| !expected.contains(m)).copied();
                    let err = match extra {
                        Some(extra) => FieldGeomError::NonGeneric {
                            axis,
                            order: stab.len(),
                            n: blowup.n(),
                            extra,
                        }
                        .to_string(),
                        None => format!("axis {} stabilizer misses a scaling", axis + 1),
                    };
                    extras.push(err);
                }
            }
            Err(e) => {
                orders.push(0);
                extras.push(e.to_string());
            }
        }
    }
    records.push(
        CheckRecord::new(
            "config.genericity",
            Anchor::Genericity,
            Status::from_bool(extras.is_empty()),
            json!({ "stabilizer_orders": orders, "problems": extras }),
            json!({ "stabilizer_orders": vec![blowup.n(); blowup.r()], "problems": [] }),
        )
        .with_note("maps are taken in the form [u:v] -> [u : mu v] fixing [0:1], matching the torus action"),
    );
    reasons.extend(extras);

    let valid = reasons.is_empty();
    Validation {
        records,
        reasons,
        blowup: valid.then_some(blowup),
    }
}

fn point_set_problems(blowup: &Blowup) -> Vec<String> {
    let cfg = blowup.config();
    let mut problems = Vec::new();
    if blowup.num_points() != cfg.delta_size() {
        problems.push(format!(
            "|Delta| = {} but n*sum(s) = {}",
            blowup.num_points(),
            cfg.delta_size()
        ));
    }
    let coords: HashSet<(usize, u64)> = blowup
        .delta()
        .iter()
        .map(|p| (p.axis, p.z().value()))
        .collect();
    if coords.len() != blowup.num_points() {
        problems.push("points are not distinct".to_string());
    }
    for p in blowup.delta() {
        if p.coord.is_origin() || p.z().is_zero() {
            problems.push(format!(
                "point {} is a fixed point of the action",
                p.label()
            ));
        }
        let mut g = vec![0; blowup.r()];
        g[p.axis] = 1;
        let image = g_action(cfg, &g, p);
        if blowup.find(image.axis, &image.coord).is_none() {
            problems.push(format!("point {} leaves Delta under the action", p.label()));
        }
        let mut cur = *p;
        let mut size = 0;
        loop {
            cur = g_action(cfg, &g, &cur);
            size += 1;
            if cur == *p {
                break;
            }
        }
        if size != cfg.n() {
            problems.push(format!("orbit of {} has size {size}", p.label()));
        }
    }
    problems
}
