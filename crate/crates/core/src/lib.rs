//! Exact combinatorics, arbitrary-precision special values and a
//! verification harness for Euler-type formulas of the Dirichlet beta
//! function at even arguments and for the zeta series tied to them.
//!
//! The crate is layered bottom-up:
//!
//! * [`exact`]: Bernoulli and Euler numbers, Euler polynomials, harmonic
//!   numbers and the [`ClosedForm`](exact::ClosedForm) representation of
//!   linear combinations of basis constants times powers of pi.
//! * [`numeric`]: MPFR-backed evaluation with explicit error bounds
//!   (constants, odd zeta values, beta values, Hurwitz zeta, polygamma at
//!   1/4, the phi functions).
//! * [`identities`]: the zeta-series summation engine and a registry of
//!   identities that can be checked to a requested precision.
//! * [`conjecture`]: the sweep harness for the conjectured closed form of
//!   the half-weighted zeta series and its quarter-weighted corollary.
//! * [`cache`] and [`cli`]: persistence of memoized values and the
//!   command-line front end.

pub mod cache;
pub mod cli;
pub mod conjecture;
pub mod error;
pub mod exact;
pub mod identities;
pub mod numeric;

pub use error::{Error, Result};
pub use exact::{BasisConstant, ClosedForm};
pub use numeric::{NumericValue, PrecisionContext};
pub use rug::{Integer, Rational};
