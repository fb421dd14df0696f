//! Desk-scale verification of explicit, RH-conditional prime number theorem
//! bounds.
//!
//! * [`sieve`] enumerates primes and prime powers.
//! * [`chebyshev`] accumulates ψ, θ, π, ψ₁ and the Mertens sums with
//!   tracked rounding error, and scans claims over ranges.
//! * [`zeros`] ingests zeta-zero tables and evaluates zero sums and the
//!   truncated explicit formula for ψ₁.
//! * [`bounds`] holds the constants and closed-form bound expressions,
//!   evaluable in the log domain far beyond `f64` range.
//! * [`verifier`] turns all of the above into certified reports.

pub mod bounds;
pub mod chebyshev;
pub mod error;
pub mod numeric;
pub mod sieve;
pub mod verifier;
pub mod zeros;

pub use error::{Error, Result};
