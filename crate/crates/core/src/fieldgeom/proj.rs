use std::fmt;

use serde::{Serialize, Serializer};

use super::field::{FieldElement, PrimeField};
use super::FieldGeomError;

/// A point `[u:v]` of the projective line over `F_q`.
///
/// Stored normalized (`u = 1` when `u != 0`, otherwise `v = 1`), so derived
/// equality is equality up to a nonzero scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    u: FieldElement,
    v: FieldElement,
}

impl ProjPoint {
    pub fn new(u: FieldElement, v: FieldElement) -> Result<Self, FieldGeomError> {
        if u.is_zero() && v.is_zero() {
            return Err(FieldGeomError::ZeroVector);
        }
        let scale = if u.is_zero() { v } else { u };
        let inv = scale.inv().expect("nonzero");
        Ok(ProjPoint {
            u: u * inv,
            v: v * inv,
        })
    }

    /// `[1 : z]`.
    pub fn affine(z: FieldElement) -> Self {
        ProjPoint {
            u: z.one_like(),
            v: z,
        }
    }

    /// The point `[0:1]`, fixed by the torus action and shared by all the lines.
    pub fn origin(field: &PrimeField) -> Self {
        ProjPoint {
            u: field.zero(),
            v: field.one(),
        }
    }

    /// The point `[1:0]`, the other fixed point of the action.
    pub fn far(field: &PrimeField) -> Self {
        ProjPoint {
            u: field.one(),
            v: field.zero(),
        }
    }

    pub fn u(&self) -> FieldElement {
        self.u
    }

    pub fn v(&self) -> FieldElement {
        self.v
    }

    /// `Some(z)` when the point is `[1:z]`.
    pub fn affine_coord(&self) -> Option<FieldElement> {
        if self.u.is_zero() {
            None
        } else {
            Some(self.v)
        }
    }

    pub fn is_origin(&self) -> bool {
        self.u.is_zero()
    }

    /// Every point of `P^1(F_q)`: `[1:z]` for all `z`, then `[0:1]`.
    pub fn all(field: &PrimeField) -> Vec<ProjPoint> {
        let mut pts: Vec<ProjPoint> = field.elements().map(ProjPoint::affine).collect();
        pts.push(ProjPoint::origin(field));
        pts
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.u, self.v)
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.u.value(), self.v.value()].serialize(serializer)
    }
}
