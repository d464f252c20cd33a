//! Brute-force oracles shared by the integration tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use aut_blowup::cone::{generators, EffectiveCone};
use aut_blowup::fieldgeom::{FieldElement, MoebiusMap, PrimeField, ProjPoint};
use aut_blowup::lattice::CurveClass;
use aut_blowup::rigidity::{build_graph, incident, ComponentKind};
use aut_blowup::Blowup;

/// Maps in all of `PGL_2(F_q)` fixing `[0:1]` and permuting the axis points.
pub fn brute_stabilizer(b: &Blowup, axis: usize) -> Vec<MoebiusMap> {
    let origin = ProjPoint::origin(b.field());
    let pts: HashSet<ProjPoint> = b.axis_points(axis).map(|i| b.point(i).coord).collect();
    let mut out: Vec<MoebiusMap> = MoebiusMap::enumerate_all(b.field())
        .into_iter()
        .filter(|m| m.fixes(&origin))
        .filter(|m| pts.iter().all(|p| pts.contains(&m.apply(p))))
        .collect();
    out.sort();
    out
}

/// A point of `Y` over `F_q`: off `Delta` a point of `(P^1)^r`, over
/// `p in Delta` a tangent direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum YPoint {
    Plain(Vec<ProjPoint>),
    Exceptional(usize, Vec<u64>),
}

fn normalize(dir: &[FieldElement]) -> Vec<u64> {
    let lead = dir
        .iter()
        .find(|x| !x.is_zero())
        .expect("nonzero direction")
        .inv()
        .unwrap();
    dir.iter().map(|&x| (x * lead).value()).collect()
}

fn unit_dir(field: &PrimeField, r: usize, i: usize) -> Vec<u64> {
    let dir: Vec<FieldElement> = (0..r)
        .map(|j| if j == i { field.one() } else { field.zero() })
        .collect();
    normalize(&dir)
}

fn all_dirs(field: &PrimeField, r: usize) -> Vec<Vec<u64>> {
    let mut dirs: Vec<Vec<FieldElement>> = vec![vec![]];
    for _ in 0..r {
        dirs = dirs
            .into_iter()
            .flat_map(|d| {
                (*field).elements().map(move |x| {
                    let mut d = d.clone();
                    d.push(x);
                    d
                })
            })
            .collect();
    }
    let set: BTreeSet<Vec<u64>> = dirs
        .iter()
        .filter(|d| d.iter().any(|x| !x.is_zero()))
        .map(|d| normalize(d))
        .collect();
    set.into_iter().collect()
}

/// Points of the strict transform of the coordinate line through `base`
/// in direction `axis`.
fn line_points(b: &Blowup, base: &[ProjPoint], axis: usize) -> HashSet<YPoint> {
    let delta: Vec<Vec<ProjPoint>> = (0..b.num_points()).map(|i| b.full_point(i)).collect();
    ProjPoint::all(b.field())
        .into_iter()
        .map(|t| {
            let mut x = base.to_vec();
            x[axis] = t;
            match delta.iter().position(|d| *d == x) {
                Some(p) => YPoint::Exceptional(p, unit_dir(b.field(), b.r(), axis)),
                None => YPoint::Plain(x),
            }
        })
        .collect()
}

fn component_points(b: &Blowup, kind: &ComponentKind, dirs: &[Vec<u64>]) -> HashSet<YPoint> {
    let origin = vec![ProjPoint::origin(b.field()); b.r()];
    match *kind {
        ComponentKind::Exceptional { point } => dirs
            .iter()
            .map(|d| YPoint::Exceptional(point, d.clone()))
            .collect(),
        ComponentKind::Line { axis } => line_points(b, &origin, axis),
        ComponentKind::Gamma { point, axis } => line_points(b, &b.full_point(point), axis),
    }
}

/// Pairs `(a, b)` of component labels where `incident` and the point model disagree.
pub fn incidence_mismatches(b: &Blowup) -> Vec<(String, String)> {
    let graph = build_graph(b);
    let dirs = all_dirs(b.field(), b.r());
    let sets: Vec<HashSet<YPoint>> = graph
        .vertices()
        .iter()
        .map(|c| component_points(b, &c.kind, &dirs))
        .collect();
    let vs = graph.vertices();
    let mut bad = Vec::new();
    for i in 0..vs.len() {
        for j in 0..vs.len() {
            if i == j {
                continue;
            }
            let meets = !sets[i].is_disjoint(&sets[j]);
            if incident(b, &vs[i], &vs[j]) != meets {
                bad.push((vs[i].label(b), vs[j].label(b)));
            }
        }
    }
    bad
}

/// Every multiset of generators whose degree fits the budget, by brute force.
pub fn naive_decompositions(
    b: &Blowup,
    cone: &EffectiveCone<'_>,
    target: &CurveClass,
) -> BTreeSet<Vec<(usize, u64)>> {
    let gens = generators(b);
    let degrees: Vec<i64> = gens
        .iter()
        .map(|g| cone.phi_degree(&g.class).unwrap())
        .collect();
    let budget = cone.phi_degree(target).unwrap();
    let mut out = BTreeSet::new();
    let mut counts = vec![0u64; gens.len()];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        idx: usize,
        left: i64,
        acc: CurveClass,
        counts: &mut Vec<u64>,
        degrees: &[i64],
        classes: &[CurveClass],
        target: &CurveClass,
        out: &mut BTreeSet<Vec<(usize, u64)>>,
    ) {
        if idx == classes.len() {
            if left == 0 && &acc == target {
                out.insert(
                    counts
                        .iter()
                        .enumerate()
                        .filter(|(_, &m)| m > 0)
                        .map(|(i, &m)| (i, m))
                        .collect(),
                );
            }
            return;
        }
        let mut k = 0;
        let mut acc = acc;
        loop {
            counts[idx] = k;
            rec(
                idx + 1,
                left - k as i64 * degrees[idx],
                acc.clone(),
                counts,
                degrees,
                classes,
                target,
                out,
            );
            if left - (k as i64 + 1) * degrees[idx] < 0 {
                break;
            }
            k += 1;
            acc = &acc + &classes[idx];
        }
        counts[idx] = 0;
    }
    let classes: Vec<CurveClass> = gens.iter().map(|g| g.class.clone()).collect();
    rec(
        0,
        budget,
        b.zero_curve(),
        &mut counts,
        &degrees,
        &classes,
        target,
        &mut out,
    );
    out
}
