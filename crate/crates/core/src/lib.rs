//! Resonance counting for Schrödinger operators with finitely many point
//! interactions in R³.
//!
//! Resonances are the zeros of the characteristic determinant
//! `D(z) = (−4π)^N det Γ(z)`, an exponential polynomial in `z`. Its top
//! frequency b_ν (the effective size) fixes the growth `N(R) ≈ (b_ν/π) R` of the
//! counting function; the asymptotics are of Weyl type when b_ν equals the size
//! `V(Y) = max_σ Σ_j |y_j − y_σ(j)|` of the configuration.
//!
//! * [`geometry`]: configurations, strengths, distances, samplers.
//! * [`permutations`]: cycles, signs, edge multigraphs and their classes.
//! * [`sizing`]: V_σ(Y), V(Y) and the genericity test.
//! * [`expoly`]: Leibniz expansion into canonical exponential-polynomial form.
//! * [`gammadet`]: direct determinant evaluation by LU.
//! * [`zeros`]: argument-principle counting and zero localization.
//! * [`asymptotics`]: slope fits, Weyl classification, genericity scans.

pub mod asymptotics;
pub mod error;
pub mod expoly;
pub mod gammadet;
pub mod geometry;
pub mod permutations;
pub mod poly;
pub mod sizing;
pub mod zeros;

pub use error::{Error, Result};
pub use num_complex::Complex64;
