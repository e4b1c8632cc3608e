//! Computational machinery for tame ramification in number-field families:
//! permutation-group exponent calculus, desk-scale field enumeration and
//! census statistics, Frobenius class counting, quadratic class-group
//! torsion, explicit constants for effective prime-counting bounds, and
//! Weil heights of small generators.






pub mod classgroup;
pub mod constants;
pub mod fields;
pub mod frobenius;
pub mod heights;
pub mod perm;
pub mod polymod;
pub mod polyz;


pub mod ramcalc;
pub mod roots;

pub mod sieve;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("membership error: {0}")]
    Membership(String),
    #[error("family-validity error: {0}")]
    FamilyValidity(String),
    #[error("ramified-prime error: p = {0} divides the discriminant")]
    RamifiedPrime(u64),
    #[error("construction error: {0}")]
    Construction(String),
    #[error("fit error: {0}")]
    Fit(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
