//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.

mod coeffs;
mod field;
mod interval;
mod num;
mod poly;

pub use field::{cyclotomic_polynomial, euler_phi, CycloField};
pub use interval::{
    compare_real, cos_sin_turn, eval_interval, pi_interval, ComplexBox, FieldEmbedding, Interval,
    START_PRECISION,
};
pub use num::{ArithOp, CycloNum, Rational};
