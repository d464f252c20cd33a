//! Independent recomputations of the closed-form rules.

mod common;

use std::collections::BTreeSet;

use aut_blowup::cone::{generators, EffectiveCone};
use aut_blowup::fieldgeom::{generate_config, stabilizer_of_axis, Config};
use aut_blowup::lattice::CurveClass;
use aut_blowup::report::{canonical_s, smallest_valid_q};
use aut_blowup::Blowup;

fn c0() -> Blowup {
    Blowup::new(Config::new(2, 2, vec![2, 3], 13, vec![vec![1, 2], vec![3, 4, 5]], None).unwrap())
        .unwrap()
}

fn c1() -> Blowup {
    Blowup::new(generate_config(3, 3, &[1, 2, 3], 13, 0).unwrap()).unwrap()
}

/// Configurations of the sweep grid with `q <= 31`.
fn small_sweep() -> Vec<Blowup> {
    let mut out = vec![c0()];
    for n in 2..=5u64 {
        for r in 2..=4usize {
            let s = canonical_s(n, r);
            for seed in [0, 1] {
                if let Some(q) = smallest_valid_q(n, r, &s, seed, 7).filter(|&q| q <= 31) {
                    out.push(Blowup::new(generate_config(n, r, &s, q, seed).unwrap()).unwrap());
                }
            }
        }
    }
    out
}

#[test]
fn stabilizer_matches_full_pgl2_enumeration() {
    let configs = small_sweep();
    assert!(
        configs.len() >= 10,
        "only {} configs with q <= 31",
        configs.len()
    );
    for b in &configs {
        for axis in 0..b.r() {
            assert_eq!(
                stabilizer_of_axis(b, axis).unwrap(),
                common::brute_stabilizer(b, axis),
                "q={} axis {}",
                b.field().modulus(),
                axis + 1
            );
        }
    }
}

fn check_incidence_against_points(b: &Blowup) {
    assert_eq!(common::incidence_mismatches(b), vec![]);
}

#[test]
fn incidence_matches_point_model_c0() {
    check_incidence_against_points(&c0());
}

#[test]
fn incidence_matches_point_model_c1() {
    check_incidence_against_points(&c1());
}

fn check_search_against_naive(b: &Blowup, max_degree: i64) {
    let cone = EffectiveCone::new(b);
    let gens = generators(b);
    let mut targets: Vec<CurveClass> = Vec::new();
    for i in 0..gens.len() {
        targets.push(gens.get(i).class.clone());
        for j in i..gens.len() {
            targets.push(&gens.get(i).class + &gens.get(j).class);
        }
    }
    targets.push(&b.line(0).scale(2) + &b.exceptional_line(0));
    let mut compared = 0;
    for t in targets {
        if cone.phi_degree(&t).unwrap() > max_degree {
            continue;
        }
        let fast: BTreeSet<Vec<(usize, u64)>> = cone
            .decompositions(&t)
            .unwrap()
            .iter()
            .map(|d| d.parts().to_vec())
            .collect();
        assert_eq!(
            fast,
            common::naive_decompositions(b, &cone, &t),
            "target {t:?}"
        );
        assert_eq!(
            cone.is_extremal(&t).unwrap(),
            fast.iter().all(|d| d.iter().map(|p| p.1).sum::<u64>() == 1)
        );
        compared += 1;
    }
    assert!(compared > 20);
}

#[test]
fn cone_search_matches_naive_enumeration_small() {
    let b = Blowup::new(Config::harness(2, 2, vec![1, 2], 13, vec![vec![1], vec![2, 3]]).unwrap())
        .unwrap();
    check_search_against_naive(&b, 10);
}

#[test]
fn cone_search_matches_naive_enumeration_c0() {
    check_search_against_naive(&c0(), 8);
}
