//! Numerical classes of divisors and curves on `Y` and the intersection
//! pairing between them.
//!
//! Divisors are written over `pi*(H_1), ..., pi*(H_r)` followed by the
//! `E_p`; curves over `l~_1, ..., l~_r` followed by the `e_p`. Points are
//! ordered as in [`Blowup::delta`]. The pairing is
//!
//! ```text
//! pi*(H_j) . l~_i = [i = j]      pi*(H_j) . e_p = 0
//! E_q      . l~_i = [q in Delta_i]   E_q . e_p = -[p = q]
//! ```
//!
//! Coefficients are `i64`; the workspace builds every profile with
//! overflow checks, so an overflow aborts instead of wrapping.

use std::fmt::Write as _;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::blowup::Blowup;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("class has shape ({got_axes}, {got_points}), basis has ({axes}, {points})")]
    ConfigMismatch {
        axes: usize,
        points: usize,
        got_axes: usize,
        got_points: usize,
    },
    #[error("axis {} out of range for r = {r}", .axis + 1)]
    AxisOutOfRange { axis: usize, r: usize },
    #[error("point index {point} out of range")]
    PointOutOfRange { point: usize },
    #[error("point {point} lies on axis {}; gamma needs a different axis", .axis + 1)]
    SameAxis { point: usize, axis: usize },
    #[error("flat vector has length {got}, expected {expected}")]
    FlatLength { expected: usize, got: usize },
}

/// A curve class `sum l_i l~_i + sum e_p e_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    l: Vec<i64>,
    e: Vec<i64>,
}

/// A divisor class `sum h_i pi*(H_i) + sum m_p E_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    h: Vec<i64>,
    m: Vec<i64>,
}

macro_rules! class_ops {
    ($ty:ident, $a:ident, $b:ident) => {
        impl $ty {
            pub fn new($a: Vec<i64>, $b: Vec<i64>) -> Self {
                $ty { $a, $b }
            }

            pub fn zero(axes: usize, points: usize) -> Self {
                $ty {
                    $a: vec![0; axes],
                    $b: vec![0; points],
                }
            }

            pub fn is_zero(&self) -> bool {
                self.$a.iter().chain(&self.$b).all(|&x| x == 0)
            }

            pub fn scale(&self, k: i64) -> Self {
                $ty {
                    $a: self.$a.iter().map(|x| x * k).collect(),
                    $b: self.$b.iter().map(|x| x * k).collect(),
                }
            }

            /// Coefficients in basis order: axes first, then points.
            pub fn to_flat(&self) -> Vec<i64> {
                self.$a.iter().chain(&self.$b).copied().collect()
            }

            pub fn from_flat(blowup: &Blowup, flat: &[i64]) -> Result<Self, LatticeError> {
                let (r, k) = (blowup.r(), blowup.num_points());
                if flat.len() != r + k {
                    return Err(LatticeError::FlatLength {
                        expected: r + k,
                        got: flat.len(),
                    });
                }
                Ok($ty {
                    $a: flat[..r].to_vec(),
                    $b: flat[r..].to_vec(),
                })
            }

            fn shape(&self) -> (usize, usize) {
                (self.$a.len(), self.$b.len())
            }
        }

        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                assert_eq!(self.shape(), rhs.shape(), "classes over different bases");
                $ty {
                    $a: self.$a.iter().zip(&rhs.$a).map(|(x, y)| x + y).collect(),
                    $b: self.$b.iter().zip(&rhs.$b).map(|(x, y)| x + y).collect(),
                }
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                self + &(-rhs)
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                self.scale(-1)
            }
        }

        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                self.to_flat().serialize(serializer)
            }
        }
    };
}

class_ops!(CurveClass, l, e);
class_ops!(DivisorClass, h, m);

impl CurveClass {
    /// Coefficients on `l~_1, ..., l~_r`.
    pub fn l(&self) -> &[i64] {
        &self.l
    }

    /// Coefficients on the `e_p`.
    pub fn e(&self) -> &[i64] {
        &self.e
    }
}

impl DivisorClass {
    pub fn h(&self) -> &[i64] {
        &self.h
    }

    pub fn m(&self) -> &[i64] {
        &self.m
    }
}

impl Blowup {
    pub fn zero_curve(&self) -> CurveClass {
        CurveClass::zero(self.r(), self.num_points())
    }

    pub fn zero_divisor(&self) -> DivisorClass {
        DivisorClass::zero(self.r(), self.num_points())
    }

    /// `l~_i`. Panics if `i >= r`.
    pub fn line(&self, i: usize) -> CurveClass {
        let mut c = self.zero_curve();
        c.l[i] = 1;
        c
    }

    /// `e_p`, a line in `E_p`. Panics if `p` is out of range.
    pub fn exceptional_line(&self, p: usize) -> CurveClass {
        let mut c = self.zero_curve();
        c.e[p] = 1;
        c
    }

    /// `pi*(H_i)`.
    pub fn pullback_h(&self, i: usize) -> DivisorClass {
        let mut d = self.zero_divisor();
        d.h[i] = 1;
        d
    }

    /// `pi*(D)` for `D = sum coeffs_i H_i`.
    pub fn pullback(&self, coeffs: &[i64]) -> DivisorClass {
        assert_eq!(coeffs.len(), self.r());
        DivisorClass::new(coeffs.to_vec(), vec![0; self.num_points()])
    }

    /// `E_p`.
    pub fn exceptional_divisor(&self, p: usize) -> DivisorClass {
        let mut d = self.zero_divisor();
        d.m[p] = 1;
        d
    }

    fn check_curve(&self, c: &CurveClass) -> Result<(), LatticeError> {
        self.check_shape(c.shape())
    }

    fn check_shape(&self, (got_axes, got_points): (usize, usize)) -> Result<(), LatticeError> {
        if (got_axes, got_points) != (self.r(), self.num_points()) {
            return Err(LatticeError::ConfigMismatch {
                axes: self.r(),
                points: self.num_points(),
                got_axes,
                got_points,
            });
        }
        Ok(())
    }

    fn check_axis(&self, axis: usize) -> Result<(), LatticeError> {
        if axis >= self.r() {
            return Err(LatticeError::AxisOutOfRange { axis, r: self.r() });
        }
        Ok(())
    }

    pub fn intersect(&self, c: &CurveClass, d: &DivisorClass) -> Result<i64, LatticeError> {
        self.check_curve(c)?;
        self.check_shape(d.shape())?;
        let mut total = 0i64;
        for i in 0..self.r() {
            // pi*(H_i) . l~_i
            total += d.h[i] * c.l[i];
            // E_q . l~_i for q on axis i
            let on_axis: i64 = self.axis_points(i).map(|q| d.m[q]).sum();
            total += c.l[i] * on_axis;
        }
        for p in 0..self.num_points() {
            total -= d.m[p] * c.e[p];
        }
        Ok(total)
    }

    /// `H~_i = pi*(H_i) - sum_{s != i} sum_{p in Delta_s} E_p`.
    pub fn strict_transform_h(&self, i: usize) -> Result<DivisorClass, LatticeError> {
        self.check_axis(i)?;
        let mut d = self.pullback_h(i);
        for p in 0..self.num_points() {
            if self.axis_of(p) != i {
                d.m[p] = -1;
            }
        }
        Ok(d)
    }

    /// `gamma~_{p,i} = l~_i + sum_{q in Delta_i} e_q - e_p`, for `p` off axis `i`.
    pub fn class_gamma_tilde(&self, p: usize, i: usize) -> Result<CurveClass, LatticeError> {
        self.check_axis(i)?;
        if p >= self.num_points() {
            return Err(LatticeError::PointOutOfRange { point: p });
        }
        if self.axis_of(p) == i {
            return Err(LatticeError::SameAxis { point: p, axis: i });
        }
        let mut c = self.line(i);
        for q in self.axis_points(i) {
            c.e[q] = 1;
        }
        c.e[p] = -1;
        Ok(c)
    }

    /// Multidegree `(c . pi*(H_1), ..., c . pi*(H_r))`.
    pub fn pushforward(&self, c: &CurveClass) -> Vec<i64> {
        c.l.clone()
    }

    /// `sum a_i l~_i + sum_i sum_{p in Delta_i} (a_i - eps_p) e_p`: the class
    /// with multidegree `a` meeting each `E_p` with multiplicity `eps_p`.
    pub fn expand_in_basis(&self, a: &[i64], eps: &[i64]) -> Result<CurveClass, LatticeError> {
        self.check_shape((a.len(), eps.len()))?;
        let e = (0..self.num_points())
            .map(|p| a[self.axis_of(p)] - eps[p])
            .collect();
        Ok(CurveClass::new(a.to_vec(), e))
    }

    /// `l~_i . pi*(K)` with `K = -2(H_1 + ... + H_r)`.
    pub fn canonical_pullback_check(&self, i: usize) -> Result<i64, LatticeError> {
        self.check_axis(i)?;
        let k = self.pullback(&vec![-2; self.r()]);
        self.intersect(&self.line(i), &k)
    }

    /// `K_Y = pi*(K) + (r - 1) sum E_p`. Standard blow-up formula for points
    /// on an `r`-fold; not used by any check.
    pub fn canonical_class(&self) -> DivisorClass {
        DivisorClass::new(
            vec![-2; self.r()],
            vec![self.r() as i64 - 1; self.num_points()],
        )
    }

    pub fn curve_basis_labels(&self) -> Vec<String> {
        (0..self.r())
            .map(|i| format!("l{}", i + 1))
            .chain(self.delta().iter().map(|p| format!("e[{}]", p.label())))
            .collect()
    }

    pub fn divisor_basis_labels(&self) -> Vec<String> {
        (0..self.r())
            .map(|i| format!("H{}", i + 1))
            .chain(self.delta().iter().map(|p| format!("E[{}]", p.label())))
            .collect()
    }

    pub fn curve_basis(&self) -> Vec<CurveClass> {
        (0..self.r())
            .map(|i| self.line(i))
            .chain((0..self.num_points()).map(|p| self.exceptional_line(p)))
            .collect()
    }

    pub fn divisor_basis(&self) -> Vec<DivisorClass> {
        (0..self.r())
            .map(|i| self.pullback_h(i))
            .chain((0..self.num_points()).map(|p| self.exceptional_divisor(p)))
            .collect()
    }

    /// Pairing matrix: rows are curve basis elements, columns divisor basis elements.
    pub fn gram_matrix(&self) -> Vec<Vec<i64>> {
        let divisors = self.divisor_basis();
        self.curve_basis()
            .iter()
            .map(|c| {
                divisors
                    .iter()
                    .map(|d| self.intersect(c, d).expect("basis classes share the shape"))
                    .collect()
            })
            .collect()
    }

    /// The pairing matrix as CSV with a header row of divisor labels and a
    /// leading column of curve labels.
    pub fn pairing_table_csv(&self) -> String {
        let mut out = String::from("curve");
        for label in self.divisor_basis_labels() {
            write!(out, ",{label}").unwrap();
        }
        out.push('\n');
        for (label, row) in self.curve_basis_labels().iter().zip(self.gram_matrix()) {
            out.push_str(label);
            for x in row {
                write!(out, ",{x}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}
