//! The Euler-type formula for `beta(2k)` and the closed form of the
//! half-minus-quarter zeta series.

use std::time::Instant;

use rug::{Float, Integer, Rational};

use super::report::IdentityReport;
use super::zeta_series::zeta_series_sum;
use crate::error::{domain, Result};
use crate::exact::{euler_poly_one_odd, factorial, zeta_even_exact, BasisConstant, ClosedForm};
use crate::numeric::{closedform_eval, constant, Constant, NumericValue, PrecisionContext};

/// How the infinite series in the `beta(2k)` formula is summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesRoute {
    /// Convert each term to a multiple of `zeta(2m+2)` and sum the two
    /// geometric zeta series.
    Conversion,
    /// Sum `(-1)^m pi^{2m} E_{2m+1}(1) / ((2m+2k+1)! 4^m)` term by term.
    EulerPolynomial,
}

fn sign(odd: bool) -> Rational {
    if odd {
        Rational::from(-1)
    } else {
        Rational::from(1)
    }
}

fn pow2(e: u32) -> Integer {
    Integer::from(1) << e
}

/// The finite part of the `beta(2k)` formula:
/// `(-1)^{k+1} (pi/2)^{2k-1}/(2k-1)! ln2
///  - (-1)^k sum_{m=1}^{k-1} (-1)^m (pi/2)^{2k-2m-1}/(2k-2m-1)! (1 - 4^{-m}) zeta(2m+1)`.
pub fn theorem1_finite_part(k: u32) -> ClosedForm {
    let mut cf = ClosedForm::term(
        BasisConstant::Ln2,
        2 * k as i32 - 1,
        sign(k.is_multiple_of(2)) / Rational::from(pow2(2 * k - 1) * factorial(2 * k - 1)),
    );
    for m in 1..k {
        let e = 2 * k - 2 * m - 1;
        let one_minus = Rational::from(1) - Rational::from((1, pow2(2 * m)));
        let c = -sign((k + m) % 2 == 1) * one_minus / Rational::from(pow2(e) * factorial(e));
        cf.add_term(BasisConstant::ZetaOdd(2 * m + 1), e as i32, c);
    }
    cf
}

/// `sum_{m>=0} (-1)^m pi^{2m} E_{2m+1}(1) / ((2m+2k+1)! 4^m)` summed directly.
///
/// Every term is positive and bounded by `(2/3) (2m+1)! / ((2m+2k+1)! 4^m)`
/// (from `|B_{2n}| = 2 (2n)! zeta(2n) / (2 pi)^{2n}`), a sequence with ratio
/// at most 1/4, so the tail after `M` terms is below `4/3` of its `M`-th
/// entry.
pub fn theorem1_series_direct(k: u32, ctx: &PrecisionContext) -> Result<NumericValue> {
    if k < 1 {
        return Err(domain("series needs k >= 1"));
    }
    let pi = constant(Constant::Pi, ctx);
    let pi2 = pi.mul(&pi);
    let mut pi_pow = NumericValue::exact(Float::with_val(ctx.bits(), 1));
    let mut total = NumericValue::zero(ctx.bits());
    let tol = ctx.tolerance();
    let mut m: u32 = 0;
    loop {
        let coeff = sign(m % 2 == 1) * euler_poly_one_odd(m as usize)
            / Rational::from(factorial(2 * m + 2 * k + 1) * pow2(2 * m));
        total = total.add(&pi_pow.scale(&coeff));
        m += 1;
        let bound = Rational::from((2, 3)) * Rational::from(factorial(2 * m + 1))
            / Rational::from(factorial(2 * m + 2 * k + 1) * pow2(2 * m))
            * Rational::from((4, 3));
        let bound = Float::with_val(64, &bound);
        if bound < tol {
            total.abs_error += bound;
            total.terms = m as u64;
            return Ok(total);
        }
        pi_pow = pi_pow.mul(&pi2);
    }
}

/// `beta(2k)` from the Euler-type formula (conversion route).
pub fn theorem1_beta(k: u32, ctx: &PrecisionContext) -> Result<NumericValue> {
    theorem1_beta_with(k, SeriesRoute::Conversion, ctx)
}

pub fn theorem1_beta_with(
    k: u32,
    route: SeriesRoute,
    ctx: &PrecisionContext,
) -> Result<NumericValue> {
    if k < 1 {
        return Err(domain("theorem1_beta needs k >= 1"));
    }
    let finite = closedform_eval(&theorem1_finite_part(k), ctx)?;
    let pi = constant(Constant::Pi, ctx);
    let series_part = match route {
        SeriesRoute::Conversion => {
            // (-1)^k pi^{2k+1} / 2^{2k+2} * (16 / pi^2) * D = (-1)^k pi^{2k-1} / 2^{2k-2} * D
            let half = zeta_series_sum(k, &Rational::from((1, 2)), ctx)?;
            let quarter = zeta_series_sum(k, &Rational::from((1, 4)), ctx)?;
            let d = half.sub(&quarter);
            let c = sign(k % 2 == 1) / Rational::from(pow2(2 * k - 2));
            d.mul(&pi.powi(2 * k as i32 - 1)).scale(&c)
        }
        SeriesRoute::EulerPolynomial => {
            let s = theorem1_series_direct(k, ctx)?;
            let c = sign(k % 2 == 1) / Rational::from(pow2(2 * k + 2));
            s.mul(&pi.powi(2 * k as i32 + 1)).scale(&c)
        }
    };
    Ok(finite.add(&series_part))
}

/// Closed form of `sum zeta(2n) (2^{-2n} - 4^{-2n}) / (2n ... (2n+2k-1))`:
/// `(-1)^k 2^{2k-2} beta(2k) / pi^{2k-1} + k ln2 / (2k)!
///  + 1/2 sum_{m=1}^{k-1} (-1)^m (2^{2m} - 1) zeta(2m+1) / (pi^{2m} (2k-2m-1)!)`.
pub fn theorem2_rhs(k: u32) -> ClosedForm {
    let mut cf = ClosedForm::term(
        BasisConstant::BetaEven(2 * k),
        -(2 * k as i32 - 1),
        sign(k % 2 == 1) * Rational::from(pow2(2 * k - 2)),
    );
    cf.add_term(
        BasisConstant::Ln2,
        0,
        Rational::from((Integer::from(k), factorial(2 * k))),
    );
    for m in 1..k {
        let c = sign(m % 2 == 1) * Rational::from(pow2(2 * m) - 1u32)
            / Rational::from(2 * factorial(2 * k - 2 * m - 1));
        cf.add_term(BasisConstant::ZetaOdd(2 * m + 1), -(2 * m as i32), c);
    }
    cf
}

/// The same right-hand side assembled term by term in floating point, as an
/// independent check on [`theorem2_rhs`].
pub fn theorem2_rhs_numeric(k: u32, ctx: &PrecisionContext) -> Result<NumericValue> {
    use crate::numeric::{beta_direct, zeta_odd};
    let pi = constant(Constant::Pi, ctx);
    let beta = beta_direct(2 * k, ctx)?;
    let mut total = beta
        .div(&pi.powi(2 * k as i32 - 1))
        .scale(&(sign(k % 2 == 1) * Rational::from(pow2(2 * k - 2))));
    let ln2 = constant(Constant::Ln2, ctx);
    total = total.add(&ln2.scale(&Rational::from((Integer::from(k), factorial(2 * k)))));
    for m in 1..k {
        let z = zeta_odd(2 * m + 1, ctx)?;
        let c = sign(m % 2 == 1) * Rational::from(pow2(2 * m) - 1u32)
            / Rational::from(2 * factorial(2 * k - 2 * m - 1));
        total = total.add(&z.div(&pi.powi(2 * m as i32)).scale(&c));
    }
    Ok(total)
}

/// Both sides of the half-minus-quarter zeta series identity.
pub fn theorem2_check(k: u32, ctx: &PrecisionContext) -> Result<IdentityReport> {
    if k < 1 {
        return Err(domain("theorem2_check needs k >= 1"));
    }
    let start = Instant::now();
    let half = zeta_series_sum(k, &Rational::from((1, 2)), ctx)?;
    let quarter = zeta_series_sum(k, &Rational::from((1, 4)), ctx)?;
    let lhs = half.sub(&quarter);
    let rhs = closedform_eval(&theorem2_rhs(k), ctx)?;
    Ok(IdentityReport::new(
        format!("theorem2:k={k}"),
        ctx,
        lhs,
        rhs,
        start.elapsed(),
    ))
}

/// Exact check of `(-1)^m pi^{2m} E_{2m+1}(1) = (4 - 2^{-2m}) (2m+1)! zeta(2m+2) / pi^2`
/// with `zeta(2m+2)` expanded through the Bernoulli numbers.
pub fn conversion_check(m: u32) -> bool {
    let lhs = ClosedForm::term(
        BasisConstant::One,
        2 * m as i32,
        sign(m % 2 == 1) * euler_poly_one_odd(m as usize),
    );
    let factor = (Rational::from(4) - Rational::from((1, pow2(2 * m))))
        * Rational::from(factorial(2 * m + 1));
    let rhs = zeta_even_exact(m + 1)
        .expect("m + 1 >= 1")
        .scaled(&factor)
        .times_pi_power(-2);
    lhs == rhs
}
