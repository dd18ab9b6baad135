use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use rug::{Float, Rational};

use super::accel::{alternating_sum, cvz_term_count};
use super::value::ulp;
use super::zeta::hurwitz_zeta;
use super::{NumericValue, PrecisionContext, ERROR_BITS};
use crate::error::{domain, Result};

static BETA_CACHE: LazyLock<RwLock<HashMap<(u32, u32), NumericValue>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Dirichlet beta `sum_{k>=0} (-1)^k / (2k+1)^s` for integer `s >= 1`.
///
/// The series is alternating with decreasing terms, so a plain partial sum
/// is used whenever the first omitted term is already below tolerance within
/// fewer terms than the accelerated route needs.
pub fn beta_direct(s: u32, ctx: &PrecisionContext) -> Result<NumericValue> {
    if s < 1 {
        return Err(domain("beta_direct needs s >= 1"));
    }
    let key = (s, ctx.working_digits());
    if let Some(v) = BETA_CACHE.read().expect("beta cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    let bits = ctx.bits();
    let n_acc = cvz_term_count(ctx);
    let inv_pow = |k: u64| Float::with_val(bits, Float::u_pow_u(2 * k as u32 + 1, s)).recip();

    // first omitted term (2K+1)^{-s} below 10^{-W} / 2
    let w = ctx.working_digits() as f64 + 2f64.log10();
    let direct_terms = ((10f64.powf(w / s as f64) - 1.0) / 2.0).ceil().max(1.0);
    let result = if direct_terms < n_acc as f64 {
        let k_max = direct_terms as u64;
        let mut acc = Float::new(bits);
        for k in (0..k_max).rev() {
            if k % 2 == 0 {
                acc += inv_pow(k);
            } else {
                acc -= inv_pow(k);
            }
        }
        let tail = Float::with_val(ERROR_BITS, inv_pow(k_max));
        let e = tail + ulp(&acc) * (k_max + 2);
        NumericValue::new(acc, e).with_terms(k_max)
    } else {
        let one = Float::with_val(ERROR_BITS, 1);
        let sum = alternating_sum(n_acc, bits, &one, |k| inv_pow(k as u64));
        NumericValue::new(sum.value, sum.bound).with_terms(sum.terms)
    };
    BETA_CACHE
        .write()
        .expect("beta cache poisoned")
        .insert(key, result.clone());
    Ok(result)
}

/// `beta(s) = [zeta(s, 1/4) - zeta(s, 3/4)] / 4^s`, independent of
/// [`beta_direct`].
pub fn beta_via_hurwitz(s: u32, ctx: &PrecisionContext) -> Result<NumericValue> {
    if s < 2 {
        return Err(domain(format!("beta_via_hurwitz needs s >= 2, got {s}")));
    }
    let q = hurwitz_zeta(s, &Rational::from((1, 4)), ctx)?;
    let t = hurwitz_zeta(s, &Rational::from((3, 4)), ctx)?;
    let four_s = Rational::from(rug::Integer::from(1) << (2 * s));
    Ok(q.sub(&t).scale(&four_s.recip()))
}
