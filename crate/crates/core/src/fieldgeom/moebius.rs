use std::fmt;

use serde::{Serialize, Serializer};

use super::field::{FieldElement, PrimeField};
use super::proj::ProjPoint;
use super::FieldGeomError;

/// An element of `PGL_2(F_q)` acting by `[u:v] -> [a u + b v : c u + d v]`.
///
/// The stored matrix is the canonical representative: the first nonzero
/// entry in row-major order is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoebiusMap {
    entries: [FieldElement; 4],
}

impl MoebiusMap {
    pub fn new(
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
        d: FieldElement,
    ) -> Result<Self, FieldGeomError> {
        if (a * d - b * c).is_zero() {
            return Err(FieldGeomError::SingularMatrix);
        }
        let lead = [a, b, c, d]
            .into_iter()
            .find(|x| !x.is_zero())
            .expect("invertible matrix has a nonzero entry");
        let inv = lead.inv().expect("nonzero");
        Ok(MoebiusMap {
            entries: [a * inv, b * inv, c * inv, d * inv],
        })
    }

    pub fn identity(field: &PrimeField) -> Self {
        MoebiusMap {
            entries: [field.one(), field.zero(), field.zero(), field.one()],
        }
    }

    /// `[u:v] -> [u : mu v]`.
    pub fn scaling(mu: FieldElement) -> Result<Self, FieldGeomError> {
        let one = mu.one_like();
        let zero = mu.zero_like();
        MoebiusMap::new(one, zero, zero, mu)
    }

    /// `[u:v] -> [u : mu v + kappa u]`, i.e. `z -> mu z + kappa` on the chart `[1:z]`.
    pub fn affine(mu: FieldElement, kappa: FieldElement) -> Result<Self, FieldGeomError> {
        let one = mu.one_like();
        let zero = mu.zero_like();
        MoebiusMap::new(one, zero, kappa, mu)
    }

    pub fn entries(&self) -> [FieldElement; 4] {
        self.entries
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let [a, b, c, d] = self.entries;
        ProjPoint::new(a * p.u() + b * p.v(), c * p.u() + d * p.v())
            .expect("invertible map sends nonzero vectors to nonzero vectors")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = other.entries;
        MoebiusMap::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
            .expect("product of invertible matrices is invertible")
    }

    pub fn inverse(&self) -> MoebiusMap {
        let [a, b, c, d] = self.entries;
        MoebiusMap::new(d, -b, -c, a).expect("adjugate of an invertible matrix is invertible")
    }

    pub fn is_identity(&self) -> bool {
        let [a, b, c, d] = self.entries;
        a.is_one() && b.is_zero() && c.is_zero() && d.is_one()
    }

    /// `Some(mu)` when the map is `[u:v] -> [u : mu v]`.
    pub fn as_scaling(&self) -> Option<FieldElement> {
        let [a, b, c, d] = self.entries;
        (a.is_one() && b.is_zero() && c.is_zero()).then_some(d)
    }

    pub fn fixes(&self, p: &ProjPoint) -> bool {
        self.apply(p) == *p
    }

    /// Every element of `PGL_2(F_q)`, by canonical representative. `q^3 - q` maps.
    pub fn enumerate_all(field: &PrimeField) -> Vec<MoebiusMap> {
        let mut out = Vec::new();
        let els: Vec<FieldElement> = field.elements().collect();
        // leading entry a = 1
        for &b in &els {
            for &c in &els {
                for &d in &els {
                    if let Ok(m) = MoebiusMap::new(field.one(), b, c, d) {
                        out.push(m);
                    }
                }
            }
        }
        // a = 0, b = 1
        for &c in &els {
            for &d in &els {
                if let Ok(m) = MoebiusMap::new(field.zero(), field.one(), c, d) {
                    out.push(m);
                }
            }
        }
        out
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

impl Serialize for MoebiusMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let [a, b, c, d] = self.entries.map(|x| x.value());
        [[a, b], [c, d]].serialize(serializer)
    }
}
