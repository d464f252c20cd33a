use std::collections::HashSet;

use serde::Serialize;

use super::config::Config;
use super::field::FieldElement;
use super::proj::ProjPoint;
use super::FieldGeomError;

/// A point of the blown-up set.
///
/// The full point of `(P^1)^r` has `coord` at position `axis` and `[0:1]`
/// everywhere else. `coord = [1 : zeta^torsion * base[axis][orbit]]`.
/// Axes and orbits are 0-based; labels print them 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DeltaPoint {
    pub axis: usize,
    pub orbit: usize,
    pub torsion: u64,
    pub coord: ProjPoint,
}

impl DeltaPoint {
    /// The affine coordinate `z` of `coord = [1:z]`.
    pub fn z(&self) -> FieldElement {
        self.coord
            .affine_coord()
            .expect("points of the configuration avoid [0:1]")
    }

    /// `axis.orbit.torsion` with 1-based axis and orbit.
    pub fn label(&self) -> String {
        format!("{}.{}.{}", self.axis + 1, self.orbit + 1, self.torsion)
    }
}

/// The `mu_n`-orbit of `z` as a set of field values.
pub(crate) fn orbit_of(config: &Config, z: FieldElement) -> HashSet<u64> {
    config
        .roots_of_unity()
        .into_iter()
        .map(|mu| (mu * z).value())
        .collect()
}

/// Builds the point set, ordered by `(axis, orbit, torsion)`.
pub fn build_delta(config: &Config) -> Result<Vec<DeltaPoint>, FieldGeomError> {
    let mut out = Vec::with_capacity(config.delta_size());
    for (axis, row) in config.base().iter().enumerate() {
        let mut seen: Vec<HashSet<u64>> = Vec::with_capacity(row.len());
        for (orbit, &b) in row.iter().enumerate() {
            if b.is_zero() {
                return Err(FieldGeomError::ZeroBase { axis, orbit });
            }
            if let Some(first) = seen.iter().position(|o| o.contains(&b.value())) {
                return Err(FieldGeomError::OrbitCollision {
                    axis,
                    first,
                    second: orbit,
                });
            }
            seen.push(orbit_of(config, b));
            for torsion in 0..config.n() {
                let z = config.zeta().pow(torsion) * b;
                out.push(DeltaPoint {
                    axis,
                    orbit,
                    torsion,
                    coord: ProjPoint::affine(z),
                });
            }
        }
    }
    Ok(out)
}

/// Action of `g = (k_1, ..., k_r)`, standing for `(zeta^k_1, ..., zeta^k_r)`,
/// by `[u:v] -> [u : zeta^k v]` on each factor.
pub fn g_action(config: &Config, g: &[u64], p: &DeltaPoint) -> DeltaPoint {
    let k = g[p.axis] % config.n();
    let torsion = (p.torsion + k) % config.n();
    let z = config.zeta().pow(torsion) * config.base()[p.axis][p.orbit];
    DeltaPoint {
        torsion,
        coord: ProjPoint::affine(z),
        ..*p
    }
}

/// All `n^r` exponent tuples of the group, in lexicographic order.
pub fn group_elements(n: u64, r: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c0() -> Config {
        Config::new(2, 2, vec![2, 3], 13, vec![vec![1, 2], vec![3, 4, 5]], None).unwrap()
    }

    #[test]
    fn c0_points() {
        let delta = build_delta(&c0()).unwrap();
        assert_eq!(delta.len(), 10);
        let coords = |axis: usize| -> Vec<u64> {
            delta
                .iter()
                .filter(|p| p.axis == axis)
                .map(|p| p.z().value())
                .collect()
        };
        assert_eq!(coords(0), vec![1, 12, 2, 11]);
        assert_eq!(coords(1), vec![3, 10, 4, 9, 5, 8]);
        assert!(delta
            .iter()
            .all(|p| !p.coord.is_origin() && !p.z().is_zero()));
    }

    #[test]
    fn collisions_and_zero_base() {
        let cfg =
            Config::new(2, 2, vec![2, 3], 13, vec![vec![1, 12], vec![3, 4, 5]], None).unwrap();
        assert_eq!(
            build_delta(&cfg),
            Err(FieldGeomError::OrbitCollision {
                axis: 0,
                first: 0,
                second: 1
            })
        );
        let cfg = Config::new(2, 2, vec![2, 3], 13, vec![vec![1, 2], vec![3, 0, 5]], None).unwrap();
        assert_eq!(
            build_delta(&cfg),
            Err(FieldGeomError::ZeroBase { axis: 1, orbit: 1 })
        );
    }

    #[test]
    fn action() {
        let cfg = c0();
        let delta = build_delta(&cfg).unwrap();
        let p = delta[0];
        assert_eq!(g_action(&cfg, &[0, 0], &p), p);
        let moved = g_action(&cfg, &[1, 0], &p);
        assert_eq!((moved.axis, moved.orbit, moved.torsion), (0, 0, 1));
        assert_eq!(moved, delta[1]);
        // orbit under own cyclic factor has size n
        let mut orbit = HashSet::new();
        let mut cur = p;
        for _ in 0..cfg.n() {
            orbit.insert(cur);
            cur = g_action(&cfg, &[1, 0], &cur);
        }
        assert_eq!(orbit.len(), 2);
        assert_eq!(cur, p);
        assert_eq!(
            group_elements(2, 2),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }
}
