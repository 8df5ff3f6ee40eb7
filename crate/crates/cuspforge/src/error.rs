//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoreError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("inexact polynomial division (arithmetic invariant violated)")]
    InexactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("matrix is not lower Hessenberg: entry ({i},{j}) is nonzero")]
    NotHessenberg { i: usize, j: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("q = {0} is not a prime power >= 2")]
    NotPrimePower(u64),
    #[error("deg_p must be >= 1")]
    BadDegP,
    #[error("r must be >= {min} for this operation (got {got})")]
    BadR { min: usize, got: usize },
    #[error("r = {got} exceeds the configured cap {cap}")]
    RCapExceeded { got: usize, cap: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DivisorError {
    #[error("generator index {i} out of range for r = {r}")]
    IndexOutOfRange { i: usize, r: usize },
    #[error("divisor has nonzero weighted degree {0}")]
    NonzeroDegree(String),
    #[error("coefficient length {got} does not match r + 1 = {want}")]
    BadLength { got: usize, want: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeltaError {
    #[error("exponent vector is not integral at index {index}: {value}")]
    NonIntegral { index: usize, value: String },
    #[error(transparent)]
    Divisor(#[from] DivisorError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("reduction is defined for r >= 7; use the direct small-r determinant path for r = {0}")]
    SmallR(usize),
    #[error("expected matrix variant {expected}, got {got}")]
    WrongVariant { expected: String, got: String },
    #[error("generator index {i} is not a matrix row index for r = {r}")]
    BadGenerator { i: usize, r: usize },
    #[error("determinant engines disagree: bareiss = {bareiss}, laplace = {laplace}")]
    EngineDisagreement { bareiss: String, laplace: String },
    #[error("determinant residue mod P is {0}, not +/-1: nonvanishing certificate fails")]
    Falsified(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Delta(#[from] DeltaError),
}
