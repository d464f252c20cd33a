use std::collections::HashSet;

use super::field::FieldElement;
use super::moebius::MoebiusMap;
use super::FieldGeomError;
use crate::blowup::Blowup;

/// Möbius maps fixing `[0:1]` and permuting the points `[1:z]`, `z` in `coords`.
///
/// A map fixing `[0:1]` is `z -> alpha z + beta` on the chart `[1:z]`, so it
/// is pinned down by the images of two distinct points of the set. Every
/// ordered pair of distinct targets gives one candidate; candidates that do
/// not permute the set are dropped. Since three rational points determine a
/// map, no map over an extension field is missed.
pub fn stabilizer_of_coords(coords: &[FieldElement]) -> Result<Vec<MoebiusMap>, FieldGeomError> {
    let set: HashSet<FieldElement> = coords.iter().copied().collect();
    if set.len() < 2 {
        return Err(FieldGeomError::TooFewPoints { count: set.len() });
    }
    let mut pts: Vec<FieldElement> = set.iter().copied().collect();
    pts.sort();
    let (z1, z2) = (pts[0], pts[1]);
    let denom = (z1 - z2).inv().expect("distinct points");
    let mut out = Vec::new();
    for &w1 in &pts {
        for &w2 in &pts {
            if w1 == w2 {
                continue;
            }
            let alpha = (w1 - w2) * denom;
            let beta = w1 - alpha * z1;
            if pts.iter().all(|&z| set.contains(&(alpha * z + beta))) {
                out.push(MoebiusMap::affine(alpha, beta)?);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Stabilizer of the `axis`-th coordinates of the points on that axis,
/// among maps fixing `[0:1]`.
pub fn stabilizer_of_axis(blowup: &Blowup, axis: usize) -> Result<Vec<MoebiusMap>, FieldGeomError> {
    if axis >= blowup.r() {
        return Err(FieldGeomError::AxisOutOfRange {
            axis,
            r: blowup.r(),
        });
    }
    let coords: Vec<FieldElement> = blowup
        .axis_points(axis)
        .map(|i| blowup.point(i).z())
        .collect();
    stabilizer_of_coords(&coords)
}

/// The maps `[u:v] -> [u : mu v]` with `mu^n = 1`, sorted.
pub fn torus_maps(blowup: &Blowup) -> Vec<MoebiusMap> {
    let mut maps: Vec<MoebiusMap> = blowup
        .config()
        .roots_of_unity()
        .into_iter()
        .map(|mu| MoebiusMap::scaling(mu).expect("roots of unity are nonzero"))
        .collect();
    maps.sort();
    maps
}

/// Checks that every axis stabilizer is exactly the `mu_n` scalings.
pub fn check_genericity(blowup: &Blowup) -> Result<(), FieldGeomError> {
    let expected = torus_maps(blowup);
    for axis in 0..blowup.r() {
        let stab = stabilizer_of_axis(blowup, axis)?;
        if stab != expected {
            let extra =
                stab.iter().find(|m| !expected.contains(m)).copied().expect(
                    "the scalings are always contained, so a mismatch has an extra element",
                );
            return Err(FieldGeomError::NonGeneric {
                axis,
                order: stab.len(),
                n: blowup.n(),
                extra,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldgeom::{Config, PrimeField, ProjPoint};

    fn c0() -> Blowup {
        Blowup::new(
            Config::new(2, 2, vec![2, 3], 13, vec![vec![1, 2], vec![3, 4, 5]], None).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn c0_axis_stabilizers() {
        let b = c0();
        let f = b.field();
        for axis in 0..2 {
            let stab = stabilizer_of_axis(&b, axis).unwrap();
            assert_eq!(
                stab,
                vec![
                    MoebiusMap::identity(f),
                    MoebiusMap::scaling(f.element(12)).unwrap()
                ]
            );
        }
        assert!(check_genericity(&b).is_ok());
    }

    #[test]
    fn whole_unit_group_has_all_scalings() {
        let f = PrimeField::new(13).unwrap();
        let coords: Vec<FieldElement> = f.units().collect();
        let stab = stabilizer_of_coords(&coords).unwrap();
        assert_eq!(stab.len(), 12);
        assert!(stab.iter().all(|m| m.as_scaling().is_some()));
    }

    #[test]
    fn too_few_points() {
        let f = PrimeField::new(13).unwrap();
        assert_eq!(
            stabilizer_of_coords(&[f.element(3)]),
            Err(FieldGeomError::TooFewPoints { count: 1 })
        );
    }

    #[test]
    fn stabilizer_is_a_group_fixing_origin() {
        let b = c0();
        let origin = ProjPoint::origin(b.field());
        for axis in 0..2 {
            let stab = stabilizer_of_axis(&b, axis).unwrap();
            assert!(stab.contains(&MoebiusMap::identity(b.field())));
            for g in &stab {
                assert!(g.fixes(&origin));
                assert!(stab.contains(&g.inverse()));
                for h in &stab {
                    assert!(stab.contains(&g.compose(h)));
                }
            }
        }
    }
}
