//! Exact rational machinery over set systems: unit systems, forced values,
//! weighting verification and search, and the strong variant.

pub mod certificate;
pub mod decide;
pub mod json;
pub mod linalg;
pub mod scan;
pub mod simplex;
pub mod strong;
pub mod system;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use certificate::{
    forced_value, forced_value_in, solve_unit_system, AffineSolutionSpace, ForcedOutcome, ForcedValueCertificate,
    InfeasibilityProof, NotForced,
};
pub use decide::{
    decide_equi_exact, verify_weighting, DecideOptions, EquiRefutation, PositivityObstruction, WeightFunction,
    WeightingFailure, DEFAULT_EXHAUSTIVE_LIMIT,
};
pub use json::SystemWitness;
pub use simplex::{Direction, LinearProgram, LpOutcome, Relation};
pub use strong::{strong_check, total_range, ConstantTotal, StrongRefutation, StrongYes, DEFAULT_STRONG_LIMIT};
pub use system::{stable_system, star_system, SetSystem, Source};

/// Exact rational number.
pub type Q = BigRational;

/// `n / d` as an exact rational. Panics when `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}
