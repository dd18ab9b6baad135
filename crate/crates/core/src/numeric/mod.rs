//! Arbitrary-precision evaluation with explicit absolute error bounds.
//!
//! Every routine takes a [`PrecisionContext`] and returns a
//! [`NumericValue`] whose `abs_error` bounds the distance to the true value.
//! Arithmetic is carried out with MPFR at `P + g` decimal digits plus a few
//! spare bits.

mod accel;
mod beta;
mod constants;
mod eval;
mod phi;
mod render;
mod value;
mod zeta;

pub use accel::{alternating_sum, cvz_term_count, AlternatingSum};
pub use beta::{beta_direct, beta_via_hurwitz};
pub use constants::{constant, Constant};
pub use eval::closedform_eval;
pub use phi::phi;
pub use render::{render_fixed, render_magnitude, render_scientific, Rendered};
pub use value::NumericValue;
pub use zeta::{cached_zeta_values, hurwitz_zeta, insert_cached_zeta, polygamma_quarter, zeta_odd};

use rug::Float;

use crate::error::{Error, Result};

/// Bits of precision used for error-bound bookkeeping.
pub(crate) const ERROR_BITS: u32 = 64;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Target accuracy `P` (decimal digits) plus guard digits `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    target_digits: u32,
    guard_digits: u32,
}

impl PrecisionContext {
    pub const MIN_DIGITS: u32 = 10;
    pub const MIN_GUARD: u32 = 10;

    /// Context with the default guard policy `g = 10 + ceil(P / 10)`.
    pub fn new(target_digits: u32) -> Result<Self> {
        Self::with_guard(target_digits, Self::default_guard(target_digits))
    }

    pub fn with_guard(target_digits: u32, guard_digits: u32) -> Result<Self> {
        if target_digits < Self::MIN_DIGITS {
            return Err(Error::Config(format!(
                "target digits must be >= {}, got {target_digits}",
                Self::MIN_DIGITS
            )));
        }
        if guard_digits < Self::MIN_GUARD {
            return Err(Error::Config(format!(
                "guard digits must be >= {}, got {guard_digits}",
                Self::MIN_GUARD
            )));
        }
        Ok(Self {
            target_digits,
            guard_digits,
        })
    }

    pub fn default_guard(target_digits: u32) -> u32 {
        10 + target_digits.div_ceil(10)
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// `P + g`: every internal quantity aims at this many correct digits.
    pub fn working_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }

    /// Binary precision for MPFR values.
    pub fn bits(&self) -> u32 {
        bits_for_digits(self.working_digits())
    }

    /// Same target, `extra` more guard digits.
    pub fn with_extra_guard(&self, extra: u32) -> Self {
        Self {
            target_digits: self.target_digits,
            guard_digits: self.guard_digits + extra,
        }
    }

    /// `10^{-(P+g)}`.
    pub fn tolerance(&self) -> Float {
        pow10_neg(self.working_digits())
    }

    /// `10^{-P}`, the accuracy contract for returned values.
    pub fn contract(&self) -> Float {
        pow10_neg(self.target_digits)
    }
}

pub(crate) fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32 + 24
}

/// `10^{-d}` at error-bookkeeping precision.
pub fn pow10_neg(d: u32) -> Float {
    Float::with_val(ERROR_BITS, Float::u_pow_u(10, d)).recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_invariants() {
        let ctx = PrecisionContext::new(50).unwrap();
        assert_eq!(ctx.guard_digits(), 15);
        assert_eq!(ctx.working_digits(), 65);
        assert!(ctx.bits() as f64 >= 65.0 * LOG2_10);
        assert_eq!(PrecisionContext::new(20).unwrap().guard_digits(), 12);
        assert!(PrecisionContext::new(9).is_err());
        assert!(PrecisionContext::with_guard(20, 9).is_err());
        assert_eq!(ctx.with_extra_guard(7).working_digits(), 72);
    }
}
