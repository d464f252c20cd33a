//! Prime fields, the projective line, the point configuration and its
//! torus action.

mod config;
mod delta;
mod field;
mod generate;
mod moebius;
mod proj;
mod stabilizer;
mod validate;

pub use config::{structural_issues, Config, ConfigFile};
pub use delta::{build_delta, g_action, group_elements, DeltaPoint};
pub use field::{is_prime, primitive_nth_root, FieldElement, PrimeField, MAX_MODULUS};
pub use generate::{generate_config, generate_config_with_cap, Lcg, DEFAULT_RETRY_CAP};
pub use moebius::MoebiusMap;
pub use proj::ProjPoint;
pub use stabilizer::{check_genericity, stabilizer_of_axis, stabilizer_of_coords, torus_maps};
pub use validate::{validate_config, Validation};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FieldGeomError {
    #[error("q = {0} is not prime")]
    NotPrime(u64),
    #[error("q = {0} exceeds the supported modulus")]
    ModulusTooLarge(u64),
    #[error("n = {0} < 2")]
    OrderTooSmall(u64),
    #[error("n = {n} does not divide q - 1 = {}", .q - 1)]
    NDoesNotDivide { n: u64, q: u64 },
    #[error("r = {0} < 2")]
    DimensionTooSmall(usize),
    #[error("s has {got} entries, expected r = {expected}")]
    SLength { expected: usize, got: usize },
    #[error("s_{} = 0 is not positive", .axis + 1)]
    SNotPositive { axis: usize },
    #[error("s_i not distinct")]
    SNotDistinct,
    #[error("n·s_{} = {product} < 3", .axis + 1)]
    OrbitTooSmall { axis: usize, product: u64 },
    #[error("base has {got} rows, expected r = {expected}")]
    BaseRows { expected: usize, got: usize },
    #[error("base row {} has {got} entries, expected s_{} = {expected}", .axis + 1, .axis + 1)]
    BaseShape {
        axis: usize,
        expected: usize,
        got: usize,
    },
    #[error("base coordinate {} on axis {} is zero", .orbit + 1, .axis + 1)]
    ZeroBase { axis: usize, orbit: usize },
    #[error("base coordinates {} and {} on axis {} lie in the same orbit", .first + 1, .second + 1, .axis + 1)]
    OrbitCollision {
        axis: usize,
        first: usize,
        second: usize,
    },
    #[error("(0, 0) is not a projective point")]
    ZeroVector,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("stabilizer needs at least 2 points, got {count}")]
    TooFewPoints { count: usize },
    #[error("axis {} needs {needed} orbits but F_q^* has only {available}", .axis + 1)]
    TooSmallField {
        axis: usize,
        needed: usize,
        available: usize,
    },
    #[error("no generic configuration found in {attempts} attempts")]
    ExhaustedRetries { attempts: usize },
    #[error("axis {} stabilizer has order {order} > n = {n}; extra element {extra}", .axis + 1)]
    NonGeneric {
        axis: usize,
        order: usize,
        n: u64,
        extra: MoebiusMap,
    },
    #[error("axis {} out of range for r = {r}", .axis + 1)]
    AxisOutOfRange { axis: usize, r: usize },
}
