//! Exact constructions of point sets with many repeated distances.
//!
//! Points of the plane are elements of a cyclotomic field `Q(ζ_N)` read
//! through the complex embedding `ζ ↦ e^{2πi/N}`. Regular polygons, rotations
//! by rational turns and reflections across lines through two field points
//! all stay inside such fields, so distance equalities are decided exactly by
//! comparing canonical forms. Interval evaluation is only used to order real
//! values and to feed the floating-point cross-check.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod constructions;
pub mod cyclo;
mod error;
pub mod geometry;
pub mod oracle;
pub mod spectrum;

pub use error::{Error, Result};


pub use constructions::{
    build_theorem1, build_theorem2, decompose, verify_claim, ConstructionPlan, EdgeChoice, Theorem, Verdict,
};
pub use cyclo::{
    compare_real, cyclotomic_polynomial, eval_interval, ComplexBox, CycloField, CycloNum, FieldEmbedding, Interval,
    Rational,
};
pub use geometry::{squared_distance, PointSet, Transform, TransformLog, Turn};
pub use spectrum::{distance_spectrum, DistanceClass, DistanceSpectrum, SpectrumStats};
