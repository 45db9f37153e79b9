//! Exact verification of the design-theoretic, group-theoretic and
//! modular-form identities attached to the D4 lattice.
//!
//! Everything here is exact: shells of D4 are enumerated as integer points,
//! design conditions are checked with rational harmonic polynomials, LP bound
//! certificates are verified as polynomial identities, and q-expansions are
//! carried with arbitrary-precision integer coefficients.
//!
//! The modules follow the natural layers:
//!
//! * [`exact`]: rationals, integer vectors, polynomials, linear algebra
//! * [`gegenbauer`]: Gegenbauer polynomials, expansions, LP certificates
//! * [`harmonic`]: harmonic bases, group actions, W(F4), Molien series
//! * [`lattice`]: shells, design tests, distance distributions, levels
//! * [`quaternion`]: Hurwitz quaternions and orbit decompositions
//! * [`qseries`]: eta products, E2, theta series, τ2 scans
//! * [`verify`]: the check pipelines behind the CLI and the FFI layer

pub mod config;
mod error;
pub mod exact;
pub mod gegenbauer;
pub mod harmonic;
pub mod lattice;
pub mod qseries;
pub mod quaternion;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
