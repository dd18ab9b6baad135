use std::time::Duration;

use rug::Float;

use crate::numeric::{NumericValue, PrecisionContext};

/// Digits of agreement between two sides of an identity.
///
/// Fewer than this many digits, `P - 5`, marks a failure at precision `P`.
pub const PASS_SLACK_DIGITS: u32 = 5;

/// Outcome of evaluating both sides of an identity.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub id: String,
    pub lhs: NumericValue,
    pub rhs: NumericValue,
    pub abs_diff: Float,
    /// `floor(-log10(max(abs_diff, 10^{-(P+g)})))`.
    pub digits_agreed: i64,
    pub terms_used: u64,
    pub elapsed: Duration,
    pub digits: u32,
    pub guard: u32,
}

impl IdentityReport {
    pub fn new(
        id: impl Into<String>,
        ctx: &PrecisionContext,
        lhs: NumericValue,
        rhs: NumericValue,
        elapsed: Duration,
    ) -> Self {
        let abs_diff = lhs.abs_diff(&rhs);
        let digits_agreed = digits_agreed(&abs_diff, ctx);
        let terms_used = lhs.terms + rhs.terms;
        Self {
            id: id.into(),
            lhs,
            rhs,
            abs_diff,
            digits_agreed,
            terms_used,
            elapsed,
            digits: ctx.target_digits(),
            guard: ctx.guard_digits(),
        }
    }

    pub fn pass(&self) -> bool {
        self.digits_agreed >= self.digits as i64 - PASS_SLACK_DIGITS as i64
    }
}

pub fn digits_agreed(abs_diff: &Float, ctx: &PrecisionContext) -> i64 {
    let floor = ctx.tolerance();
    let d = if *abs_diff > floor {
        Float::with_val(64, abs_diff)
    } else {
        floor
    };
    (-d.log10()).floor().to_f64() as i64
}
