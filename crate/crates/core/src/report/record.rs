use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
        })
    }
}

/// The registry of mathematical claims a check record can point at.
///
/// Records carry an `Anchor`, never a free-form string, so an unknown
/// anchor does not compile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Anchor {
    ConfigStructure,
    PointSet,
    Genericity,
    ExceptionalPairing,
    StrictTransformH,
    LineMeetsExceptional,
    HTildeLineSelf,
    HTildeLineOther,
    CanonicalDegree,
    GammaClass,
    SpadeIdentity,
    DiamondIdentity,
    ConeGenerators,
    Extremality,
    NonExtremalProbes,
    IncidenceGraph,
    CensusExceptional,
    CensusGamma,
    CensusLine,
    PinComponents,
    Automorphisms,
    VectorFieldSystem,
    VectorFields,
}

impl Anchor {
    pub const ALL: [Anchor; 23] = [
        Anchor::ConfigStructure,
        Anchor::PointSet,
        Anchor::Genericity,
        Anchor::ExceptionalPairing,
        Anchor::StrictTransformH,
        Anchor::LineMeetsExceptional,
        Anchor::HTildeLineSelf,
        Anchor::HTildeLineOther,
        Anchor::CanonicalDegree,
        Anchor::GammaClass,
        Anchor::SpadeIdentity,
        Anchor::DiamondIdentity,
        Anchor::ConeGenerators,
        Anchor::Extremality,
        Anchor::NonExtremalProbes,
        Anchor::IncidenceGraph,
        Anchor::CensusExceptional,
        Anchor::CensusGamma,
        Anchor::CensusLine,
        Anchor::PinComponents,
        Anchor::Automorphisms,
        Anchor::VectorFieldSystem,
        Anchor::VectorFields,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Anchor::ConfigStructure => "construction.parameters",
            Anchor::PointSet => "construction.points",
            Anchor::Genericity => "construction.genericity",
            Anchor::ExceptionalPairing => "intersection.exceptional",
            Anchor::StrictTransformH => "intersection.h_tilde.expansion",
            Anchor::LineMeetsExceptional => "intersection.line_exceptional",
            Anchor::HTildeLineSelf => "intersection.h_tilde.line_self",
            Anchor::HTildeLineOther => "intersection.h_tilde.line_other",
            Anchor::CanonicalDegree => "intersection.canonical_degree",
            Anchor::GammaClass => "intersection.gamma_class",
            Anchor::SpadeIdentity => "cone.expansion_identity",
            Anchor::DiamondIdentity => "cone.single_point_identity",
            Anchor::ConeGenerators => "cone.generators",
            Anchor::Extremality => "cone.extremality",
            Anchor::NonExtremalProbes => "cone.non_extremal",
            Anchor::IncidenceGraph => "rigidity.components",
            Anchor::CensusExceptional => "rigidity.census.exceptional",
            Anchor::CensusGamma => "rigidity.census.gamma",
            Anchor::CensusLine => "rigidity.census.line",
            Anchor::PinComponents => "rigidity.pinning",
            Anchor::Automorphisms => "rigidity.automorphisms",
            Anchor::VectorFieldSystem => "vector_fields.system",
            Anchor::VectorFields => "vector_fields.vanishing",
        }
    }

    /// The statement being checked.
    pub fn claim(&self) -> &'static str {
        match self {
            Anchor::ConfigStructure => {
                "n, r >= 2; s_i positive and pairwise distinct; n*s_i >= 3 when r = 2; n | q-1"
            }
            Anchor::PointSet => {
                "Delta_i is a union of s_i mu_n-orbits of size n on l_i, avoiding [0:1] and [1:0]; Delta is G-stable"
            }
            Anchor::Genericity => {
                "the Moebius maps fixing [0:1] and stabilizing Delta_i are exactly [u:v] -> [u : mu v], mu^n = 1"
            }
            Anchor::ExceptionalPairing => "e_p.E_p = -1 and e_p.E_q = 0 for p != q",
            Anchor::StrictTransformH => "H~_i = pi*(H_i) - sum over p in Delta \\ Delta_i of E_p",
            Anchor::LineMeetsExceptional => "l~_i.E_p = 1 if p in Delta_i and 0 otherwise",
            Anchor::HTildeLineSelf => "H~_i.l~_i = 1",
            Anchor::HTildeLineOther => "H~_i.l~_j = -n*s_j for i != j",
            Anchor::CanonicalDegree => "K = -2(H_1 + ... + H_r) on (P^1)^r, so K.l_i = -2",
            Anchor::GammaClass => {
                "gamma~_{p,i} = l~_i + sum_{q in Delta_i} e_q - e_p, with gamma~_{p,i}.E_p = 1 and .E_q = 0 otherwise"
            }
            Anchor::SpadeIdentity => {
                "sum a_i l~_i + sum_i sum_{p in Delta_i} (a_i - eps_p) e_p has multidegree a and E_p-degree eps_p"
            }
            Anchor::DiamondIdentity => {
                "with a_j = 0 and eps supported at q in Delta_j: expansion = (-eps_q + sum_{i!=j} a_i) e_q + sum_{i!=j} a_i gamma~_{q,i}"
            }
            Anchor::ConeGenerators => {
                "effective curve classes are generated by l~_i, e_p and gamma~_{p,i} (p not in Delta_i)"
            }
            Anchor::Extremality => "each generator admits no splitting into two nonzero effective classes",
            Anchor::NonExtremalProbes => "sums of two generators split, so they are not extremal",
            Anchor::IncidenceGraph => "F decomposes into the E_p, the l~_i and the gamma~_{p,i}",
            Anchor::CensusExceptional => "E_p meets exactly r other components of F",
            Anchor::CensusGamma => "gamma~_{p,i} meets exactly n*s_i + 1 other components of F",
            Anchor::CensusLine => "l~_i meets the n*s_i divisors E_p, p in Delta_i",
            Anchor::PinComponents => {
                "incidence profiles single out the E_p and each individual l~_i"
            }
            Anchor::Automorphisms => {
                "automorphisms descend to per-axis maps fixing [0:1] and stabilizing Delta_i; the group is G = (Z/n)^r"
            }
            Anchor::VectorFieldSystem => {
                "a vector field (A_1..A_r) vanishes at p iff each coordinate of p is an eigenvector of A_i"
            }
            Anchor::VectorFields => "vector fields vanishing on Delta have every A_i scalar",
        }
    }
}

impl Serialize for Anchor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Anchor", 2)?;
        st.serialize_field("claim", self.claim())?;
        st.serialize_field("id", self.id())?;
        st.end()
    }
}

/// One verified claim.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: Anchor,
    pub status: Status,
    pub computed: Value,
    pub expected: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckRecord {
    pub fn new(
        id: impl Into<String>,
        anchor: Anchor,
        status: Status,
        computed: Value,
        expected: Value,
    ) -> Self {
        CheckRecord {
            id: id.into(),
            anchor,
            status,
            computed,
            expected,
            note: None,
            elapsed_ms: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
