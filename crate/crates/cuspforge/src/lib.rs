//! Exact arithmetic for cuspidal divisor groups of Drinfeld modular curves
//! at prime-power level.
//!
//! The pipeline: enumerate cusps ([`cusps`]), build the rational cuspidal
//! generators ([`divisor`]), push them through the delta-quotient map
//! ([`delta`]), assemble the exponent matrices and certify their
//! determinants ([`engine`]). Everything is exact: [`poly::PolyZ`] over
//! `BigInt`, rationals only in the intermediate quotient vectors.

pub mod cli;
pub mod cusps;
pub mod delta;
pub mod divisor;
pub mod emit;
pub mod engine;
pub mod error;
pub mod matrix;
pub mod params;
pub mod poly;
pub mod sigma;
