//! Arithmetic in `F_p[t]/(f)`, the Alexander biquandle on it, and axiom
//! checkers.

mod axioms;
mod biquandle;
mod field;
mod poly;

pub use axioms::{
    check_biquandle_axioms, check_gfamily_axioms, AxiomCheck, AxiomReport, FamilyCheckOptions,
    FiniteBiquandleTable, DEFAULT_SAMPLES, EXHAUSTIVE_LIMIT,
};
pub(crate) use biquandle::gcd;
pub use biquandle::AlexanderBiquandle;
pub use field::{Field, FieldElement, MAX_FIELD_ORDER};
pub use poly::parse_coefficients;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {0} exceeds the supported maximum")]
    TooLarge(u64),
    #[error("modulus must have degree at least 1")]
    DegreeTooSmall,
    #[error("t is not invertible: the modulus has zero constant term")]
    TNotInvertible,
    #[error("{poly} is reducible (divisible by {factor})")]
    Reducible { poly: String, factor: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("s must be a unit")]
    SNotUnit,
    #[error("biquandle of type {kind} does not give a Z_{m}-family ({kind} does not divide {m})")]
    NotZmFamily { m: u64, kind: u64 },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}
