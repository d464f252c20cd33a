//! Vector fields on `(P^1)^r` vanishing on `Delta`.
//!
//! A field is a tuple `(A_1, ..., A_r)` of 2x2 matrices modulo scalars. It
//! vanishes at `p` iff each coordinate of `p` is an eigenvector of the
//! matching `A_i`, which is linear in the entries. The kernel is computed
//! in the full `4r`-dimensional space and compared with the scalar tuples.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::json;

use crate::blowup::Blowup;
use crate::fieldgeom::{FieldElement, PrimeField, ProjPoint};
use crate::report::{Anchor, CheckRecord, Status};

/// `r` blocks `(a, b, c, d)`, block `i` holding `A_i = ((a, b), (c, d))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationVector(pub Vec<FieldElement>);

impl DerivationVector {
    pub fn r(&self) -> usize {
        self.0.len() / 4
    }

    pub fn block(&self, i: usize) -> [FieldElement; 4] {
        [
            self.0[4 * i],
            self.0[4 * i + 1],
            self.0[4 * i + 2],
            self.0[4 * i + 3],
        ]
    }

    pub fn is_scalar(&self) -> bool {
        (0..self.r()).all(|i| {
            let [a, b, c, d] = self.block(i);
            b.is_zero() && c.is_zero() && a == d
        })
    }

    /// `A_i = I` in block `i`, zero elsewhere.
    pub fn scalar_unit(field: &PrimeField, r: usize, i: usize) -> Self {
        let mut v = vec![field.zero(); 4 * r];
        v[4 * i] = field.one();
        v[4 * i + 3] = field.one();
        DerivationVector(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintRow {
    pub coeffs: Vec<FieldElement>,
    /// Index into `Delta`, when the row came from a configuration point.
    pub point: Option<usize>,
    pub axis: usize,
}

impl ConstraintRow {
    pub fn apply(&self, v: &DerivationVector) -> FieldElement {
        let zero = self.coeffs[0].zero_like();
        self.coeffs
            .iter()
            .zip(&v.0)
            .fold(zero, |acc, (&x, &y)| acc + x * y)
    }
}

/// `det[A v | v] = 0` for `v = (x, y)`: `a xy + b y^2 - c x^2 - d xy = 0`
/// on block `block` of a `4r`-vector.
pub fn eigen_constraint_row(v: &ProjPoint, block: usize, r: usize) -> ConstraintRow {
    let (x, y) = (v.u(), v.v());
    let zero = x.zero_like();
    let mut coeffs = vec![zero; 4 * r];
    coeffs[4 * block] = x * y;
    coeffs[4 * block + 1] = y * y;
    coeffs[4 * block + 2] = -(x * x);
    coeffs[4 * block + 3] = -(x * y);
    ConstraintRow {
        coeffs,
        point: None,
        axis: block,
    }
}

/// One row per point and axis: `[1:z_p]` on the point's own axis and
/// `[0:1]` on every other.
pub fn assemble_system(blowup: &Blowup) -> Vec<ConstraintRow> {
    let r = blowup.r();
    let mut rows = Vec::with_capacity(blowup.num_points() * r);
    for idx in 0..blowup.num_points() {
        for (axis, coord) in blowup.full_point(idx).iter().enumerate() {
            let mut row = eigen_constraint_row(coord, axis, r);
            row.point = Some(idx);
            rows.push(row);
        }
    }
    rows
}

/// Same assembly for an arbitrary list of points of `(P^1)^r`.
pub fn assemble_from_points(points: &[Vec<ProjPoint>], r: usize) -> Vec<ConstraintRow> {
    points
        .iter()
        .enumerate()
        .flat_map(|(idx, p)| {
            assert_eq!(p.len(), r, "point has the wrong number of coordinates");
            p.iter().enumerate().map(move |(axis, coord)| {
                let mut row = eigen_constraint_row(coord, axis, r);
                row.point = Some(idx);
                row
            })
        })
        .collect()
}

/// Row-reduced echelon form over `F_q`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<FieldElement>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

pub fn rref(matrix: &[Vec<FieldElement>], cols: usize) -> Echelon {
    let mut m: Vec<Vec<FieldElement>> = matrix.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(sel) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, sel);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for x in m[row].iter_mut() {
            *x = *x * inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col];
                let pivot_row = m[row].clone();
                for (x, &t) in m[i].iter_mut().zip(&pivot_row) {
                    *x = *x - f * t;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    Echelon {
        rows: m,
        pivots,
        cols,
    }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One basis vector per free column.
    pub fn kernel_basis(&self, field: &PrimeField) -> Vec<Vec<FieldElement>> {
        let pivot_set: BTreeSet<usize> = self.pivots.iter().copied().collect();
        (0..self.cols)
            .filter(|c| !pivot_set.contains(c))
            .map(|free| {
                let mut v = vec![field.zero(); self.cols];
                v[free] = field.one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[free];
                }
                v
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelResult {
    pub rows: usize,
    pub rank: usize,
    pub dimension: usize,
    pub pivots: Vec<usize>,
    pub basis: Vec<DerivationVector>,
}

impl KernelResult {
    pub fn is_scalar(&self, r: usize) -> bool {
        self.dimension == r && self.basis.iter().all(DerivationVector::is_scalar)
    }
}

pub fn kernel_of_rows(field: &PrimeField, rows: &[ConstraintRow], r: usize) -> KernelResult {
    let matrix: Vec<Vec<FieldElement>> = rows.iter().map(|row| row.coeffs.clone()).collect();
    let ech = rref(&matrix, 4 * r);
    let basis: Vec<DerivationVector> = ech
        .kernel_basis(field)
        .into_iter()
        .map(DerivationVector)
        .collect();
    KernelResult {
        rows: rows.len(),
        rank: ech.rank(),
        dimension: basis.len(),
        pivots: ech.pivots.clone(),
        basis,
    }
}

pub fn derivation_kernel(blowup: &Blowup) -> KernelResult {
    kernel_of_rows(blowup.field(), &assemble_system(blowup), blowup.r())
}

/// Pairwise non-proportional eigenvector directions imposed on each block.
pub fn directions_per_block(blowup: &Blowup) -> Vec<usize> {
    (0..blowup.r())
        .map(|axis| {
            let dirs: BTreeSet<ProjPoint> = (0..blowup.num_points())
                .map(|idx| blowup.full_point(idx)[axis])
                .collect();
            dirs.len()
        })
        .collect()
}

pub fn verify_vanishing(blowup: &Blowup) -> Vec<CheckRecord> {
    let r = blowup.r();
    let rows = assemble_system(blowup);
    let dirs = directions_per_block(blowup);
    let system = CheckRecord::new(
        "vector_fields.system",
        Anchor::VectorFieldSystem,
        Status::from_bool(rows.len() == blowup.num_points() * r && dirs.iter().all(|&d| d >= 3)),
        json!({ "rows": rows.len(), "columns": 4 * r, "directions_per_block": dirs }),
        json!({ "rows": blowup.num_points() * r, "columns": 4 * r, "min_directions_per_block": 3 }),
    );
    let kernel = kernel_of_rows(blowup.field(), &rows, r);
    let ok = kernel.is_scalar(r);
    let nonscalar = kernel.basis.iter().find(|v| !v.is_scalar());
    let vanishing = CheckRecord::new(
        "vector_fields.vanishing",
        Anchor::VectorFields,
        Status::from_bool(ok),
        json!({
            "q": blowup.field().modulus(),
            "rank": kernel.rank,
            "dimension": kernel.dimension,
            "pivots": kernel.pivots,
            "all_scalar": kernel.basis.iter().all(DerivationVector::is_scalar),
            "nonscalar_witness": nonscalar,
        }),
        json!({ "rank": 4 * r - r, "dimension": r, "all_scalar": true }),
    );
    vec![system, vanishing]
}

/// The full constraint matrix, for external audit.
pub fn system_json(blowup: &Blowup) -> serde_json::Value {
    let rows = assemble_system(blowup);
    json!({
        "q": blowup.field().modulus(),
        "columns": 4 * blowup.r(),
        "rows": rows.iter().map(|row| json!({
            "point": row.point.map(|p| blowup.point(p).label()),
            "axis": row.axis + 1,
            "coeffs": row.coeffs,
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldgeom::Config;

    fn vals(row: &ConstraintRow) -> Vec<u64> {
        row.coeffs.iter().map(|x| x.value()).collect()
    }

    #[test]
    fn constraint_rows() {
        let f = PrimeField::new(13).unwrap();
        assert_eq!(
            vals(&eigen_constraint_row(&ProjPoint::origin(&f), 0, 1)),
            vec![0, 1, 0, 0]
        );
        let one = ProjPoint::affine(f.one());
        assert_eq!(vals(&eigen_constraint_row(&one, 0, 1)), vec![1, 1, 12, 12]);
        let z = ProjPoint::affine(f.element(3));
        assert_eq!(vals(&eigen_constraint_row(&z, 1, 2))[4..], [3, 9, 12, 10]);
    }

    #[test]
    fn scalars_satisfy_every_row() {
        let f = PrimeField::new(7).unwrap();
        for p in ProjPoint::all(&f) {
            let row = eigen_constraint_row(&p, 1, 2);
            for i in 0..2 {
                assert!(row
                    .apply(&DerivationVector::scalar_unit(&f, 2, i))
                    .is_zero());
            }
        }
    }

    #[test]
    fn c0_kernel_is_scalar() {
        let b = Blowup::new(
            Config::new(2, 2, vec![2, 3], 13, vec![vec![1, 2], vec![3, 4, 5]], None).unwrap(),
        )
        .unwrap();
        let k = derivation_kernel(&b);
        assert_eq!(k.rows, 20);
        assert_eq!(k.dimension, 2);
        assert_eq!(
            k.basis,
            vec![
                DerivationVector::scalar_unit(b.field(), 2, 0),
                DerivationVector::scalar_unit(b.field(), 2, 1)
            ]
        );
        assert!(verify_vanishing(&b).iter().all(CheckRecord::passed));
    }

    #[test]
    fn single_origin_point_leaves_lower_triangular() {
        let f = PrimeField::new(13).unwrap();
        let o = ProjPoint::origin(&f);
        let k = kernel_of_rows(&f, &assemble_from_points(&[vec![o, o]], 2), 2);
        assert_eq!(k.dimension, 6);
        assert!(!k.is_scalar(2));
        let empty = kernel_of_rows(&f, &[], 2);
        assert_eq!(empty.dimension, 8);
    }

    #[test]
    fn three_directions_force_scalars() {
        for q in [2u64, 3, 5] {
            let f = PrimeField::new(q).unwrap();
            let pts = ProjPoint::all(&f);
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    for k in j + 1..pts.len() {
                        let rows: Vec<ConstraintRow> = [pts[i], pts[j], pts[k]]
                            .iter()
                            .map(|p| eigen_constraint_row(p, 0, 1))
                            .collect();
                        let res = kernel_of_rows(&f, &rows, 1);
                        assert!(res.is_scalar(1), "q={q} {} {} {}", pts[i], pts[j], pts[k]);
                    }
                }
                // two directions leave a diagonalizable family
                if i + 1 < pts.len() {
                    let rows = vec![
                        eigen_constraint_row(&pts[i], 0, 1),
                        eigen_constraint_row(&pts[i + 1], 0, 1),
                    ];
                    assert_eq!(kernel_of_rows(&f, &rows, 1).dimension, 2);
                }
            }
        }
    }
}
