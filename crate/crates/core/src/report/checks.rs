use serde_json::json;

use crate::blowup::Blowup;
use crate::cone::{case3_identity_check, expected_generator_count, EffectiveCone, GeneratorLabel};
use crate::fieldgeom::Lcg;
use crate::lattice::{CurveClass, DivisorClass};

use super::{Anchor, CheckRecord, Status};

/// Intersection-number identities on the lattice, one record per claim.
pub fn lattice_checks(b: &Blowup) -> Vec<CheckRecord> {
    let r = b.r();
    let k = b.num_points();
    let n = b.n() as i64;
    let pair = |c: &CurveClass, d: &DivisorClass| -> i64 {
        b.intersect(c, d).expect("classes share the basis")
    };
    let mut out = Vec::new();

    let mut bad = Vec::new();
    for p in 0..k {
        for q in 0..k {
            let got = pair(&b.exceptional_line(p), &b.exceptional_divisor(q));
            let want = if p == q { -1 } else { 0 };
            if got != want {
                bad.push(json!([b.point(p).label(), b.point(q).label(), got]));
            }
        }
    }
    out.push(CheckRecord::new(
        "lattice.exceptional_pairing",
        Anchor::ExceptionalPairing,
        Status::from_bool(bad.is_empty()),
        json!({ "pairs": k * k, "mismatches": bad }),
        json!({ "mismatches": [] }),
    ));

    let mut bad = Vec::new();
    for i in 0..r {
        let h = b.strict_transform_h(i).expect("axis in range");
        let expansion_ok = (0..r).all(|j| h.h()[j] == i64::from(i == j))
            && (0..k).all(|p| h.m()[p] == if b.axis_of(p) == i { 0 } else { -1 });
        let e_ok = (0..k).all(|p| pair(&b.exceptional_line(p), &h) == i64::from(b.axis_of(p) != i));
        if !(expansion_ok && e_ok) {
            bad.push(i + 1);
        }
    }
    out.push(CheckRecord::new(
        "lattice.h_tilde.expansion",
        Anchor::StrictTransformH,
        Status::from_bool(bad.is_empty()),
        json!({ "bad_axes": bad }),
        json!({ "bad_axes": [] }),
    ));

    let mut bad = Vec::new();
    for i in 0..r {
        for p in 0..k {
            let got = pair(&b.line(i), &b.exceptional_divisor(p));
            if got != i64::from(b.axis_of(p) == i) {
                bad.push(json!([i + 1, b.point(p).label(), got]));
            }
        }
    }
    out.push(CheckRecord::new(
        "lattice.line_exceptional",
        Anchor::LineMeetsExceptional,
        Status::from_bool(bad.is_empty()),
        json!({ "mismatches": bad }),
        json!({ "mismatches": [] }),
    ));

    let mut table = vec![vec![0i64; r]; r];
    for (i, row) in table.iter_mut().enumerate() {
        let h = b.strict_transform_h(i).expect("axis in range");
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = pair(&b.line(j), &h);
        }
    }
    let diag: Vec<i64> = (0..r).map(|i| table[i][i]).collect();
    out.push(CheckRecord::new(
        "lattice.h_tilde.line_self",
        Anchor::HTildeLineSelf,
        Status::from_bool(diag.iter().all(|&x| x == 1)),
        json!(diag),
        json!(vec![1; r]),
    ));
    let expected: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    if i == j {
                        1
                    } else {
                        -n * b.config().s()[j] as i64
                    }
                })
                .collect()
        })
        .collect();
    out.push(CheckRecord::new(
        "lattice.h_tilde.line_other",
        Anchor::HTildeLineOther,
        Status::from_bool(table == expected),
        json!(table),
        json!(expected),
    ));

    let degrees: Vec<i64> = (0..r)
        .map(|i| b.canonical_pullback_check(i).expect("axis in range"))
        .collect();
    out.push(CheckRecord::new(
        "lattice.canonical_degree",
        Anchor::CanonicalDegree,
        Status::from_bool(degrees.iter().all(|&d| d == -2)),
        json!(degrees),
        json!(vec![-2; r]),
    ));

    let mut bad = Vec::new();
    let mut checked = 0;
    for p in 0..k {
        for i in (0..r).filter(|&i| i != b.axis_of(p)) {
            checked += 1;
            let g = b.class_gamma_tilde(p, i).expect("admissible pair");
            let e_ok = (0..k).all(|q| pair(&g, &b.exceptional_divisor(q)) == i64::from(q == p));
            let unit: Vec<i64> = (0..r).map(|j| i64::from(j == i)).collect();
            let push_ok = b.pushforward(&g) == unit;
            let pull_ok =
                (0..r).all(|j| pair(&g, &b.pullback_h(j)) == pair(&b.line(i), &b.pullback_h(j)));
            if !(e_ok && push_ok && pull_ok) {
                bad.push(json!([b.point(p).label(), i + 1]));
            }
        }
    }
    out.push(CheckRecord::new(
        "lattice.gamma_class",
        Anchor::GammaClass,
        Status::from_bool(bad.is_empty()),
        json!({ "pairs": checked, "mismatches": bad }),
        json!({ "mismatches": [] }),
    ));
    out
}

/// Random integer draws for the two expansion identities.
pub fn identity_checks(b: &Blowup, draws: usize, seed: u64) -> Vec<CheckRecord> {
    let r = b.r();
    let k = b.num_points();
    let mut rng = Lcg::new(seed);
    let mut spade_bad = Vec::new();
    for _ in 0..draws {
        let a: Vec<i64> = (0..r).map(|_| rng.range_i64(-8, 8)).collect();
        let eps: Vec<i64> = (0..k).map(|_| rng.range_i64(-8, 8)).collect();
        let c = b.expand_in_basis(&a, &eps).expect("shapes match");
        let ok = b.pushforward(&c) == a
            && (0..k).all(|p| {
                b.intersect(&c, &b.exceptional_divisor(p))
                    .expect("shapes match")
                    == eps[p]
            });
        if !ok && spade_bad.len() < 5 {
            spade_bad.push(json!({ "a": a, "eps": eps }));
        }
    }
    let mut diamond_bad = Vec::new();
    let mut diamond_draws = 0;
    if k > 0 {
        for _ in 0..draws {
            let q = rng.below(k as u64) as usize;
            let j = b.axis_of(q);
            let a: Vec<i64> = (0..r)
                .map(|i| if i == j { 0 } else { rng.range_i64(0, 8) })
                .collect();
            let eps_q = rng.range_i64(-8, 8);
            diamond_draws += 1;
            let ok =
                case3_identity_check(b, q, &a, eps_q).expect("preconditions hold by construction");
            if !ok && diamond_bad.len() < 5 {
                diamond_bad.push(json!({ "q": b.point(q).label(), "a": a, "eps_q": eps_q }));
            }
        }
    }
    vec![
        CheckRecord::new(
            "cone.expansion_identity",
            Anchor::SpadeIdentity,
            Status::from_bool(spade_bad.is_empty()),
            json!({ "draws": draws, "seed": seed, "counterexamples": spade_bad }),
            json!({ "counterexamples": [] }),
        ),
        CheckRecord::new(
            "cone.single_point_identity",
            Anchor::DiamondIdentity,
            Status::from_bool(diamond_bad.is_empty()),
            json!({ "draws": diamond_draws, "seed": seed, "counterexamples": diamond_bad }),
            json!({ "counterexamples": [] }),
        ),
    ]
}

/// Generator list, extremality of every generator, and three sums that
/// must split.
pub fn cone_checks(b: &Blowup, cap: Option<i64>) -> Vec<CheckRecord> {
    let cone = match cap {
        Some(c) => EffectiveCone::with_cap(b, c),
        None => EffectiveCone::new(b),
    };
    let gens = cone.generators();
    let mut out = Vec::new();
    let degrees: Vec<i64> = gens
        .iter()
        .map(|g| {
            cone.phi_degree(&g.class)
                .expect("generator shares the basis")
        })
        .collect();
    out.push(CheckRecord::new(
        "cone.generators",
        Anchor::ConeGenerators,
        Status::from_bool(
            gens.len() == expected_generator_count(b) && degrees.iter().all(|&d| d > 0),
        ),
        json!({ "count": gens.len(), "min_phi_degree": degrees.iter().min() }),
        json!({ "count": expected_generator_count(b), "phi_degree_positive": true }),
    ));

    let mut not_extremal = Vec::new();
    let mut errors = Vec::new();
    for g in gens.iter() {
        match cone.is_extremal(&g.class) {
            Ok(true) => {}
            Ok(false) => not_extremal.push(g.name.clone()),
            Err(e) => errors.push(format!("{}: {e}", g.name)),
        }
    }
    out.push(CheckRecord::new(
        "cone.extremality",
        Anchor::Extremality,
        Status::from_bool(not_extremal.is_empty() && errors.is_empty()),
        json!({ "generators": gens.len(), "not_extremal": not_extremal, "errors": errors, "cap": cone.cap() }),
        json!({ "not_extremal": [], "errors": [] }),
    ));

    let mut probes: Vec<(String, CurveClass)> = Vec::new();
    if b.num_points() > 0 {
        let p = 0;
        let e = b.exceptional_line(p);
        let name = gens
            .get(
                gens.position(&GeneratorLabel::Exceptional { point: p })
                    .expect("e_p is a generator"),
            )
            .name
            .clone();
        probes.push((format!("l1+{name}"), &b.line(0) + &e));
        probes.push((format!("2{name}"), e.scale(2)));
    }
    if b.r() >= 2 {
        probes.push(("l1+l2".into(), &b.line(0) + &b.line(1)));
    }
    let mut results = Vec::new();
    let mut ok = true;
    for (name, class) in &probes {
        match cone.two_part_decompositions(class) {
            Ok(splits) => {
                ok &= !splits.is_empty();
                results.push(json!({ "class": name, "splits": splits.len() }));
            }
            Err(e) => {
                ok = false;
                results.push(json!({ "class": name, "error": e.to_string() }));
            }
        }
    }
    out.push(CheckRecord::new(
        "cone.non_extremal",
        Anchor::NonExtremalProbes,
        Status::from_bool(ok),
        json!(results),
        json!({ "every_probe_splits": true }),
    ));
    out
}
