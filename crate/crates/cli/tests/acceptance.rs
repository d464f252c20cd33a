//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use aut_blowup::cone::EffectiveCone;
use aut_blowup::fieldgeom::{generate_config, stabilizer_of_axis, Config};
use aut_blowup::report::{canonical_s, identity_checks, smallest_valid_q, Status};
use aut_blowup::rigidity::{
    build_graph, census, g_action_permutations, geometric_automorphisms, profiles, ComponentKind,
};
use aut_blowup::vectorfields::derivation_kernel;
use aut_blowup::Blowup;

// Budgets, pinned. Tolerances are exact equality throughout.
const LATTICE_BUDGET: Duration = Duration::from_secs(1);
const EXTREMALITY_BUDGET: Duration = Duration::from_secs(60);
const RIGIDITY_BUDGET: Duration = Duration::from_secs(10);
const VECTOR_FIELD_BUDGET: Duration = Duration::from_secs(1);
const DRAWS: usize = 1000;
const MIN_SWEEP: usize = 20;
const ORACLE_MAX_Q: u64 = 31;

struct SweepConfig {
    blowup: Blowup,
    seed: u64,
    q_extra: Option<u64>,
}

fn sweep_configs() -> Vec<SweepConfig> {
    let mut out = Vec::new();
    for n in 2..=5u64 {
        for r in 2..=4usize {
            let s = canonical_s(n, r);
            for seed in [0, 1] {
                let q = smallest_valid_q(n, r, &s, seed, 7).expect("a valid prime exists");
                let cfg = generate_config(n, r, &s, q, seed).expect("q was checked");
                out.push(SweepConfig {
                    blowup: Blowup::new(cfg).expect("generated configs build"),
                    seed,
                    q_extra: smallest_valid_q(n, r, &s, seed, q + 1),
                });
            }
        }
    }
    out
}

fn c0() -> Blowup {
    Blowup::new(Config::new(2, 2, vec![2, 3], 13, vec![vec![1, 2], vec![3, 4, 5]], None).unwrap())
        .unwrap()
}

fn name(b: &Blowup) -> String {
    let c = b.config();
    format!("(n={}, r={}, s={:?}, q={})", c.n(), c.r(), c.s(), c.q())
}

type Outcome = Result<String, String>;

fn lemma_h(sweep: &[SweepConfig]) -> Outcome {
    let start = Instant::now();
    for sc in sweep {
        let b = &sc.blowup;
        let n = b.n() as i64;
        for i in 0..b.r() {
            let h = b.strict_transform_h(i).map_err(|e| e.to_string())?;
            for j in 0..b.r() {
                let got = b.intersect(&b.line(j), &h).map_err(|e| e.to_string())?;
                let want = if i == j {
                    1
                } else {
                    -n * b.config().s()[j] as i64
                };
                if got != want {
                    return Err(format!(
                        "{}: H~_{}.l~_{} = {got}, want {want}",
                        name(b),
                        i + 1,
                        j + 1
                    ));
                }
            }
        }
    }
    let t = start.elapsed();
    if t > LATTICE_BUDGET {
        return Err(format!("took {t:?}"));
    }
    Ok(format!("{} configs, {t:?}", sweep.len()))
}

fn lemma_gamma(sweep: &[SweepConfig]) -> Outcome {
    let mut pairs = 0;
    for sc in sweep {
        let b = &sc.blowup;
        for p in 0..b.num_points() {
            for i in (0..b.r()).filter(|&i| i != b.axis_of(p)) {
                let g = b.class_gamma_tilde(p, i).map_err(|e| e.to_string())?;
                for q in 0..b.num_points() {
                    let got = b
                        .intersect(&g, &b.exceptional_divisor(q))
                        .map_err(|e| e.to_string())?;
                    if got != i64::from(p == q) {
                        return Err(format!("{}: gamma~.E = {got} at ({p},{i},{q})", name(b)));
                    }
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (p, i) pairs"))
}

fn identities(sweep: &[SweepConfig]) -> Outcome {
    for sc in sweep {
        for rec in identity_checks(&sc.blowup, DRAWS, sc.seed) {
            if rec.status != Status::Pass {
                return Err(format!("{}: {} {}", name(&sc.blowup), rec.id, rec.computed));
            }
        }
    }
    Ok(format!(
        "{DRAWS} draws of each identity on {} configs",
        sweep.len()
    ))
}

fn extremality() -> Outcome {
    let b = c0();
    let start = Instant::now();
    let cone = EffectiveCone::new(&b);
    let gens = cone.generators();
    if gens.len() != 22 {
        return Err(format!("{} generators", gens.len()));
    }
    for g in gens.iter() {
        if !cone.is_extremal(&g.class).map_err(|e| e.to_string())? {
            return Err(format!("{} not extremal", g.name));
        }
    }
    let e = b.exceptional_line(0);
    let probes = [
        ("l1+e_p", &b.line(0) + &e),
        ("2e_p", e.scale(2)),
        ("l1+l2", &b.line(0) + &b.line(1)),
    ];
    for (label, c) in &probes {
        if cone.is_extremal(c).map_err(|e| e.to_string())? {
            return Err(format!("{label} reported extremal"));
        }
    }
    let t = start.elapsed();
    if t > EXTREMALITY_BUDGET {
        return Err(format!("took {t:?}"));
    }
    Ok(format!("22 generators extremal, 3 probes split, {t:?}"))
}

fn census_check(sweep: &[SweepConfig]) -> Outcome {
    let mut warned = 0;
    for sc in sweep {
        let b = &sc.blowup;
        let graph = build_graph(b);
        let profs = profiles(&graph);
        for (v, p) in graph.vertices().iter().zip(&profs) {
            let want = match v.kind {
                ComponentKind::Exceptional { .. } => (0, b.r()),
                ComponentKind::Gamma { axis, .. } => (1, b.n() as usize * b.config().s()[axis]),
                ComponentKind::Line { axis } => (b.n() as usize * b.config().s()[axis], b.r() - 1),
            };
            if (p.divisor_neighbors, p.curve_neighbors) != want {
                return Err(format!(
                    "{}: {} has {:?}, want {want:?}",
                    name(b),
                    v.label(b),
                    p
                ));
            }
        }
        let c = census(b, &graph);
        let line = c
            .records
            .iter()
            .find(|r| r.id == "rigidity.census.line")
            .expect("line record");
        if line.status != Status::Warn {
            return Err(format!("{}: line census status {}", name(b), line.status));
        }
        if c.records
            .iter()
            .any(|r| r.id != "rigidity.census.line" && r.status != Status::Pass)
        {
            return Err(format!("{}: census record failed", name(b)));
        }
        warned += 1;
    }
    Ok(format!(
        "{} configs, line divergence recorded as WARN on {warned}",
        sweep.len()
    ))
}

fn group_check(b: &Blowup) -> Result<(usize, u64), String> {
    let start = Instant::now();
    let group = geometric_automorphisms(b).map_err(|e| e.to_string())?;
    let order = group.order();
    let exponent = group.exponent();
    let want = (b.n() as usize).pow(b.r() as u32);
    if order != want || exponent != b.n() {
        return Err(format!("order {order}, exponent {exponent}"));
    }
    if group.permutations() != g_action_permutations(b) {
        return Err("Delta-action differs from the G-action".into());
    }
    if start.elapsed() > RIGIDITY_BUDGET {
        return Err(format!("took {:?}", start.elapsed()));
    }
    Ok((order, exponent))
}

fn rigidity() -> Outcome {
    let (o0, e0) = group_check(&c0()).map_err(|e| format!("C0: {e}"))?;
    if o0 != 4 {
        return Err(format!("C0 order {o0}"));
    }
    let info = match generate_config(3, 3, &[1, 2, 3], 13, 0)
        .map_err(|e| e.to_string())
        .and_then(|c| Blowup::new(c).map_err(|e| e.to_string()))
        .and_then(|b| group_check(&b))
    {
        Ok((o, e)) => format!("C1 at q=13: order {o}, exponent {e}"),
        Err(e) => format!("C1 at q=13: {e}"),
    };
    let c1 = generate_config(3, 3, &[1, 2, 3], 7, 0).map_err(|e| {
        format!("C0 order {o0} exponent {e0}; C1 at q=7 cannot be built: {e} [{info}]")
    })?;
    let b = Blowup::new(c1).map_err(|e| e.to_string())?;
    let (o1, _) = group_check(&b).map_err(|e| format!("C1: {e}"))?;
    if o1 != 27 {
        return Err(format!("C1 order {o1}"));
    }
    Ok(format!("C0 order {o0}, C1 order {o1}; {info}"))
}

fn vector_fields(sweep: &[SweepConfig]) -> Outcome {
    let mut runs = 0;
    let mut single_q = 0;
    for sc in sweep {
        let c = sc.blowup.config();
        let mut targets = vec![sc.blowup.clone()];
        match sc.q_extra {
            Some(q2) => {
                let cfg =
                    generate_config(c.n(), c.r(), c.s(), q2, sc.seed).map_err(|e| e.to_string())?;
                targets.push(Blowup::new(cfg).map_err(|e| e.to_string())?);
            }
            None => single_q += 1,
        }
        for b in &targets {
            let start = Instant::now();
            let k = derivation_kernel(b);
            if !k.is_scalar(b.r()) {
                return Err(format!("{}: kernel dimension {}", name(b), k.dimension));
            }
            if start.elapsed() > VECTOR_FIELD_BUDGET {
                return Err(format!("{}: took {:?}", name(b), start.elapsed()));
            }
            runs += 1;
        }
    }
    Ok(format!(
        "{runs} kernels all scalar ({single_q} configs with one prime)"
    ))
}

fn oracles(sweep: &[SweepConfig]) -> Outcome {
    let mut axes = 0;
    let mut pool: Vec<Blowup> = vec![c0()];
    pool.extend(sweep.iter().map(|s| s.blowup.clone()));
    for b in pool.iter().filter(|b| b.config().q() <= ORACLE_MAX_Q) {
        for axis in 0..b.r() {
            let fast = stabilizer_of_axis(b, axis).map_err(|e| e.to_string())?;
            if fast != common::brute_stabilizer(b, axis) {
                return Err(format!("{} axis {}: stabilizer differs", name(b), axis + 1));
            }
            axes += 1;
        }
    }
    let c1 = Blowup::new(generate_config(3, 3, &[1, 2, 3], 13, 0).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    for b in [c0(), c1] {
        let bad = common::incidence_mismatches(&b);
        if !bad.is_empty() {
            return Err(format!(
                "{}: {} incidence mismatches, first {:?}",
                name(&b),
                bad.len(),
                bad[0]
            ));
        }
    }
    Ok(format!(
        "{axes} axis stabilizers, incidence on C0 and C1 (q=13)"
    ))
}

fn determinism() -> Outcome {
    let config: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs", "c0.json"]
        .iter()
        .collect();
    let run = || -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_aut-blowup"))
            .args(["verify", "--config"])
            .arg(&config)
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("exit status {}", out.status));
        }
        Ok(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    if a != b {
        return Err("reports differ".into());
    }
    Ok(format!("{} identical bytes", a.len()))
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let sweep = sweep_configs();
    assert!(sweep.len() >= MIN_SWEEP);
    let criteria: Vec<(&str, Criterion)> = vec![
        ("lattice identities H~.l~", Box::new(|| lemma_h(&sweep))),
        ("gamma~ pairing", Box::new(|| lemma_gamma(&sweep))),
        ("expansion identities", Box::new(|| identities(&sweep))),
        ("extremality on C0", Box::new(extremality)),
        ("incidence census", Box::new(|| census_check(&sweep))),
        ("rigidity C0 and C1", Box::new(rigidity)),
        ("vector fields", Box::new(|| vector_fields(&sweep))),
        ("oracle equivalences", Box::new(|| oracles(&sweep))),
        ("deterministic reports", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (label, f) in &criteria {
        match f() {
            Ok(detail) => println!("PASS  {label}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {label}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
