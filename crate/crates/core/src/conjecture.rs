//! Sweep harness for the conjectured closed form of the half-weighted zeta
//! series at odd `N = 2k - 1`, and its quarter-weighted companion.
//!
//! Both sides shrink like `1/N!`, while the right-hand side is a sum of terms
//! as large as `pi^{-N}`. The right-hand side is therefore evaluated with
//! extra guard digits chosen from `N` and `P` alone, so a given `N` is always
//! computed the same way regardless of how a sweep is split.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use rug::{Float, Rational};

use crate::error::{domain, Error, Result};
use crate::exact::{factorial, harmonic, BasisConstant, ClosedForm};
use crate::identities::{digits_agreed, zeta_series_sum, PASS_SLACK_DIGITS};
use crate::numeric::{closedform_eval, pow10_neg, NumericValue, PrecisionContext};

/// Extra right-hand-side digits are rounded up to a multiple of this, so
/// neighbouring `N` share cached zeta values.
const GUARD_BUCKET: u32 = 20;
const GUARD_MARGIN: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Conjecture {
    #[serde(rename = "conjecture26")]
    Half,
    #[serde(rename = "conjecture27")]
    Quarter,
}

impl Conjecture {
    pub fn name(self) -> &'static str {
        match self {
            Self::Half => "conjecture26",
            Self::Quarter => "conjecture27",
        }
    }

    fn weight(self) -> Rational {
        match self {
            Self::Half => Rational::from((1, 2)),
            Self::Quarter => Rational::from((1, 4)),
        }
    }

    pub fn rhs_form(self, n: u32) -> Result<ClosedForm> {
        match self {
            Self::Half => conjecture26_rhs_form(n),
            Self::Quarter => conjecture27_rhs_form(n),
        }
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Conjecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conjecture26" => Ok(Self::Half),
            "conjecture27" => Ok(Self::Quarter),
            other => Err(Error::Config(format!(
                "unknown sweep '{other}', expected conjecture26 or conjecture27"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub n: u32,
    pub lhs: NumericValue,
    pub rhs: NumericValue,
    pub abs_diff: Float,
    /// `abs_diff / |rhs|`.
    pub rel_diff: Float,
    pub digits_agreed: i64,
    pub terms_used: u64,
    pub elapsed: Duration,
    /// Threshold `10^{-(P-5)}` for this result's context.
    threshold: Float,
}

impl SweepResult {
    fn new(
        n: u32,
        ctx: &PrecisionContext,
        lhs: NumericValue,
        rhs: NumericValue,
        elapsed: Duration,
    ) -> Self {
        let abs_diff = lhs.abs_diff(&rhs);
        let rel_diff = if rhs.value.is_zero() {
            Float::with_val(64, f64::INFINITY)
        } else {
            Float::with_val(64, &abs_diff / Float::with_val(64, rhs.value.abs_ref()))
        };
        Self {
            n,
            digits_agreed: digits_agreed(&abs_diff, ctx),
            terms_used: lhs.terms + rhs.terms,
            lhs,
            rhs,
            abs_diff,
            rel_diff,
            elapsed,
            threshold: pow10_neg(ctx.target_digits().saturating_sub(PASS_SLACK_DIGITS)),
        }
    }

    /// Absolute residual below `10^{-(P-5)}`; when the right-hand side is
    /// itself that small, the relative residual must be too.
    pub fn pass(&self) -> bool {
        if self.abs_diff >= self.threshold {
            return false;
        }
        let tiny = Float::with_val(64, self.rhs.value.abs_ref()) < self.threshold;
        !tiny || self.rel_diff < self.threshold
    }
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub which: Conjecture,
    pub digits: u32,
    pub guard: u32,
    /// Ordered by `n`.
    pub results: Vec<SweepResult>,
    pub worst_digits_agreed: i64,
    pub total_elapsed: Duration,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(SweepResult::pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SweepResult> {
        self.results.iter().filter(|r| !r.pass())
    }
}

fn check_odd(n: u32) -> Result<()> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(domain(format!("N must be a positive odd integer, got {n}")));
    }
    Ok(())
}

/// `(1/2) [ln(pi)/N! - H_N/N! + sum_{m=1}^{(N-1)/2} (-1)^{m+1} zeta(2m+1) / (pi^{2m} (N-2m)!)]`.
pub fn conjecture26_rhs_form(n: u32) -> Result<ClosedForm> {
    check_odd(n)?;
    let half = Rational::from((1, 2));
    let nf = Rational::from(factorial(n));
    let mut cf = ClosedForm::term(BasisConstant::LnPi, 0, Rational::from(&half / &nf));
    cf.add_term(BasisConstant::One, 0, -(harmonic(n) * &half / &nf));
    for m in 1..=(n - 1) / 2 {
        let sign = if m % 2 == 1 { 1 } else { -1 };
        let c = Rational::from((sign, 2)) / Rational::from(factorial(n - 2 * m));
        cf.add_term(BasisConstant::zeta_odd(2 * m + 1)?, -2 * m as i32, c);
    }
    Ok(cf)
}

/// `(1/2) [ln(pi/2)/N! - H_N/N! - (-1)^{(N+1)/2} (2/pi)^N beta(N+1)
///   - sum_{m=1}^{(N-1)/2} (-1)^m (2/pi)^{2m} zeta(2m+1)/(N-2m)!]`.
pub fn conjecture27_rhs_form(n: u32) -> Result<ClosedForm> {
    check_odd(n)?;
    let half = Rational::from((1, 2));
    let nf = Rational::from(factorial(n));
    let lead = Rational::from(&half / &nf);
    let mut cf = ClosedForm::term(BasisConstant::LnPi, 0, lead.clone());
    cf.add_term(BasisConstant::Ln2, 0, -lead);
    cf.add_term(BasisConstant::One, 0, -(harmonic(n) * &half / &nf));
    let two_n = Rational::from(rug::Integer::from(1) << n);
    let beta_sign = if n.div_ceil(2) % 2 == 1 { 1 } else { -1 };
    cf.add_term(
        BasisConstant::beta_even(n + 1)?,
        -(n as i32),
        two_n * Rational::from((beta_sign, 2)),
    );
    for m in 1..=(n - 1) / 2 {
        let sign = if m % 2 == 1 { 1 } else { -1 };
        let four_m = Rational::from(rug::Integer::from(1) << (2 * m));
        let c = four_m * Rational::from((sign, 2)) / Rational::from(factorial(n - 2 * m));
        cf.add_term(BasisConstant::zeta_odd(2 * m + 1)?, -2 * m as i32, c);
    }
    Ok(cf)
}

fn log10_float(x: &Float) -> f64 {
    Float::with_val(64, x.abs_ref()).log10().to_f64()
}

/// Extra digits the right-hand side needs so its absolute error is small
/// relative to the series value, which is at least `(8/5) x^2 / (N+2)!`.
pub fn rhs_extra_guard(which: Conjecture, n: u32) -> Result<u32> {
    let cf = which.rhs_form(n)?;
    let pi_log = Float::with_val(64, rug::float::Constant::Pi)
        .log10()
        .to_f64();
    let largest = cf
        .terms()
        .map(|(_, pi_exp, c)| log10_float(&Float::with_val(64, c)) + pi_exp as f64 * pi_log)
        .fold(f64::NEG_INFINITY, f64::max);
    let x = which.weight();
    let first = Float::with_val(64, &Rational::from(x.square_ref())) * 8u32
        / 5u32
        / Float::with_val(64, factorial(n + 2));
    // ln(pi) and the odd zeta values are all below 1.25, a tenth of a digit
    let needed = largest + 0.1 - log10_float(&first) + GUARD_MARGIN;
    if needed <= 0.0 {
        return Ok(0);
    }
    Ok((needed.ceil() as u32).div_ceil(GUARD_BUCKET) * GUARD_BUCKET)
}

fn lhs(which: Conjecture, n: u32, ctx: &PrecisionContext) -> Result<NumericValue> {
    check_odd(n)?;
    zeta_series_sum(n.div_ceil(2), &which.weight(), ctx)
}

fn rhs(which: Conjecture, n: u32, ctx: &PrecisionContext) -> Result<NumericValue> {
    let cf = which.rhs_form(n)?;
    let wide = ctx.with_extra_guard(rhs_extra_guard(which, n)?);
    closedform_eval(&cf, &wide)
}

/// `sum_n zeta(2n) / (2n (2n+1) ... (2n+N) 2^{2n})`.
pub fn conjecture26_lhs(n: u32, ctx: &PrecisionContext) -> Result<NumericValue> {
    lhs(Conjecture::Half, n, ctx)
}

pub fn conjecture26_rhs(n: u32, ctx: &PrecisionContext) -> Result<NumericValue> {
    rhs(Conjecture::Half, n, ctx)
}

/// `sum_n zeta(2n) / (2n (2n+1) ... (2n+N) 4^{2n})`.
pub fn conjecture27_lhs(n: u32, ctx: &PrecisionContext) -> Result<NumericValue> {
    lhs(Conjecture::Quarter, n, ctx)
}

pub fn conjecture27_rhs(n: u32, ctx: &PrecisionContext) -> Result<NumericValue> {
    rhs(Conjecture::Quarter, n, ctx)
}

pub fn check(which: Conjecture, n: u32, ctx: &PrecisionContext) -> Result<SweepResult> {
    let start = Instant::now();
    let l = lhs(which, n, ctx)?;
    let r = rhs(which, n, ctx)?;
    Ok(SweepResult::new(n, ctx, l, r, start.elapsed()))
}

pub fn conjecture26_check(n: u32, ctx: &PrecisionContext) -> Result<SweepResult> {
    check(Conjecture::Half, n, ctx)
}

pub fn conjecture27_check(n: u32, ctx: &PrecisionContext) -> Result<SweepResult> {
    check(Conjecture::Quarter, n, ctx)
}

/// Runs `which` for every odd `N` in `start..=end` on the global thread pool.
pub fn sweep(
    which: Conjecture,
    start: u32,
    end: u32,
    ctx: &PrecisionContext,
) -> Result<SweepReport> {
    sweep_with_jobs(which, start, end, ctx, None)
}

/// [`sweep`] with an explicit worker count.
pub fn sweep_with_jobs(
    which: Conjecture,
    start: u32,
    end: u32,
    ctx: &PrecisionContext,
    jobs: Option<usize>,
) -> Result<SweepReport> {
    check_odd(start)?;
    check_odd(end)?;
    if start > end {
        return Err(domain(format!("empty sweep range {start}..{end}")));
    }
    let began = Instant::now();
    let ns: Vec<u32> = (start..=end).step_by(2).collect();
    let run = || {
        ns.par_iter()
            .map(|&n| check(which, n, ctx))
            .collect::<Result<Vec<_>>>()
    };
    let mut results = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    results.sort_by_key(|r| r.n);
    let worst_digits_agreed = results.iter().map(|r| r.digits_agreed).min().unwrap_or(0);
    Ok(SweepReport {
        which,
        digits: ctx.target_digits(),
        guard: ctx.guard_digits(),
        results,
        worst_digits_agreed,
        total_elapsed: began.elapsed(),
    })
}
