//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator in rational function")]
    ZeroDenominator,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("charts do not match: expected `{expected}`, got `{got}`")]
    ChartMismatch { expected: String, got: String },
    #[error("value lives on chart `{expected}`, not `{got}`")]
    WrongChart { expected: String, got: String },
    #[error("chart map `{0}` has no registered exact inverse")]
    NotInvertible(String),
    #[error("unknown chart `{0}`")]
    UnknownChart(String),
    #[error("sample point outside chart domain after {0} attempts")]
    SamplePointOutsideDomain(usize),
    #[error("numerically degenerate Jacobian (|det| = {0:.3e})")]
    DegenerateJacobian(f64),
    #[error("bivector `{0}` fails the Jacobi identity; not a Poisson structure")]
    NotPoisson(String),
    #[error("family parameter c = {0} is degenerate here: open leaves have infinite area for |c| <= 1")]
    DegenerateFamily(String),
    #[error("family parameter c = {0} outside the required range")]
    OutOfRange(String),
    #[error("volume density is identically zero")]
    ZeroDensity,
    #[error("degree cap M = {0} too small; need M >= 2")]
    CapTooSmall(usize),
    #[error("structure coefficient vanishes on the loop of radius^2 = {0}")]
    SingularOnLoop(String),
    #[error("exact sequence underdetermined: {0}")]
    Underdetermined(String),
    #[error("exact sequence inconsistent: {0}")]
    Inconsistent(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
