use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use rug::ops::Pow;
use rug::{Float, Rational};

use super::accel::{alternating_sum, cvz_term_count};
use super::value::ulp;
use super::{bits_for_digits, NumericValue, PrecisionContext, ERROR_BITS};
use crate::error::{domain, Error, Result};
use crate::exact::{bernoulli, factorial};

/// Odd zeta values keyed by `(s, working digits)`.
static ZETA_CACHE: LazyLock<RwLock<HashMap<(u32, u32), Float>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

enum ZetaRoute {
    /// Plain partial sum of `n^{-s}` up to `K`.
    Direct(u64),
    /// Accelerated eta series.
    Eta(usize),
}

fn zeta_route(s: u32, ctx: &PrecisionContext) -> ZetaRoute {
    let n_acc = cvz_term_count(ctx);
    // the tail after K is at most (K+1)^{-s} (1 + (K+1)/(s-1)); ask for
    // (K+1)^{-s} < 10^{-W} / 4 and K + 1 <= s - 1 so the factor is <= 2
    let w = ctx.working_digits() as f64 + 4f64.log10();
    let log_k = w / s as f64;
    if log_k < (n_acc as f64).log10() {
        let k = 10f64.powf(log_k).ceil() as u64;
        if k < s as u64 - 1 {
            return ZetaRoute::Direct(k);
        }
    }
    ZetaRoute::Eta(n_acc)
}

/// Error bound of [`zeta_odd`], a function of `(s, ctx)` only so that cached
/// and freshly computed values report the same bound.
fn zeta_odd_bound(s: u32, ctx: &PrecisionContext) -> (Float, u64) {
    let bits = ctx.bits();
    let mut rounding = Float::with_val(ERROR_BITS, 1);
    rounding >>= bits as i32 - 3;
    match zeta_route(s, ctx) {
        ZetaRoute::Direct(k) => {
            // (K+1)^{-s} (1 + (K+1)/(s-1)) <= 2 (K+1)^{-s}
            let tail = Float::with_val(ERROR_BITS, Float::u_pow_u(k as u32 + 1, s)).recip() * 2u32;
            (tail + rounding * (k + 2), k)
        }
        ZetaRoute::Eta(n) => {
            // alternating_sum bound with a_0 = 1, then divided by 1 - 2^{1-s} >= 3/4
            let mut d = Float::with_val(ERROR_BITS, 3) + Float::with_val(ERROR_BITS, 8).sqrt();
            d = d.pow(n as u32) / 2u32;
            let mut e = Float::with_val(ERROR_BITS, 2) / &d;
            e += rounding * (2 * n as u64 + 4);
            (e * 4u32 / 3u32, n as u64)
        }
    }
}

/// `zeta(s)` for odd `s >= 3`.
///
/// Small `s` go through the alternating eta series with acceleration and
/// `zeta(s) = eta(s) / (1 - 2^{1-s})`; large `s` use the plain partial sum
/// when that needs fewer terms.
pub fn zeta_odd(s: u32, ctx: &PrecisionContext) -> Result<NumericValue> {
    if s < 3 || s.is_multiple_of(2) {
        return Err(domain(format!(
            "zeta_odd needs an odd argument >= 3 (even values are exact), got {s}"
        )));
    }
    let key = (s, ctx.working_digits());
    let (bound, terms) = zeta_odd_bound(s, ctx);
    if let Some(v) = ZETA_CACHE.read().expect("zeta cache poisoned").get(&key) {
        return Ok(NumericValue::new(v.clone(), bound).with_terms(terms));
    }
    let bits = ctx.bits();
    let inv_pow = |n: u64| Float::with_val(bits, Float::u_pow_u(n as u32, s)).recip();
    let value = match zeta_route(s, ctx) {
        ZetaRoute::Direct(k) => {
            // smallest terms first
            let mut acc = Float::new(bits);
            for n in (1..=k).rev() {
                acc += inv_pow(n);
            }
            acc
        }
        ZetaRoute::Eta(n) => {
            let one = Float::with_val(ERROR_BITS, 1);
            let eta = alternating_sum(n, bits, &one, |k| inv_pow(k as u64 + 1));
            let mut factor = Float::with_val(bits, 1);
            factor >>= s - 1;
            let denom = Float::with_val(bits, 1) - factor;
            eta.value / denom
        }
    };
    ZETA_CACHE
        .write()
        .expect("zeta cache poisoned")
        .insert(key, value.clone());
    Ok(NumericValue::new(value, bound).with_terms(terms))
}

/// Snapshot of the odd-zeta cache as `(s, working digits, value)`, sorted.
pub fn cached_zeta_values() -> Vec<(u32, u32, Float)> {
    let cache = ZETA_CACHE.read().expect("zeta cache poisoned");
    let mut out: Vec<_> = cache.iter().map(|(&(s, w), v)| (s, w, v.clone())).collect();
    out.sort_by_key(|&(s, w, _)| (s, w));
    out
}

/// Inserts a value computed elsewhere (a loaded cache file). The value is
/// rounded to the precision the key implies.
pub fn insert_cached_zeta(s: u32, working_digits: u32, value: &Float) -> Result<()> {
    if s < 3 || s.is_multiple_of(2) {
        return Err(domain(format!(
            "cached zeta argument must be odd and >= 3, got {s}"
        )));
    }
    let v = Float::with_val(bits_for_digits(working_digits), value);
    ZETA_CACHE
        .write()
        .expect("zeta cache poisoned")
        .insert((s, working_digits), v);
    Ok(())
}

/// Hurwitz zeta `zeta(s, a) = sum_{k>=0} (k+a)^{-s}` for integer `s >= 2` and
/// rational `0 < a <= 1`, by Euler-Maclaurin summation.
///
/// Direct sum up to `K = max(P+g, 16)`, then the integral, the half term and
/// Bernoulli corrections until one drops below the tolerance. For this
/// integrand the remainder is bounded by the first omitted correction; twice
/// that is folded into the error.
pub fn hurwitz_zeta(s: u32, a: &Rational, ctx: &PrecisionContext) -> Result<NumericValue> {
    if s < 2 {
        return Err(domain(format!("hurwitz_zeta needs s >= 2, got {s}")));
    }
    if *a <= 0 || *a > 1 {
        return Err(domain(format!("hurwitz_zeta needs 0 < a <= 1, got {a}")));
    }
    // the leading term a^{-s} can be large; carry enough extra bits that the
    // absolute tolerance is still met
    let lead = (s as f64) * (1.0 / a.to_f64()).log2();
    let bits = ctx.bits() + lead.ceil().max(0.0) as u32 + 8;
    let tol = ctx.tolerance();
    let mut cutoff = ctx.working_digits().max(16) as u64;
    for _ in 0..8 {
        if let Some(v) = hurwitz_em(s, a, cutoff, bits, &tol) {
            return Ok(v);
        }
        cutoff *= 2;
    }
    Err(Error::Convergence(format!(
        "Euler-Maclaurin for zeta({s}, {a}) did not reach tolerance"
    )))
}

fn hurwitz_em(s: u32, a: &Rational, cutoff: u64, bits: u32, tol: &Float) -> Option<NumericValue> {
    let mut direct = Float::new(bits);
    for k in (0..cutoff).rev() {
        let x = Float::with_val(bits, Rational::from(a + k));
        direct += x.pow(s).recip();
    }
    let x = Float::with_val(bits, Rational::from(a + cutoff));
    let x_pow_s = Float::with_val(bits, (&x).pow(s));
    let mut total = Float::with_val(bits, &x / &x_pow_s) / (s - 1);
    total += Float::with_val(bits, x_pow_s.recip_ref()) / 2u32;

    let x2_inv = Float::with_val(bits, x.square_ref()).recip();
    // power = x^{-s-2j+1}, rising = s (s+1) ... (s+2j-2)
    let mut power = Float::with_val(bits, &x * &x2_inv) / &x_pow_s;
    let mut rising = Rational::from(s);
    let mut prev_mag: Option<Float> = None;
    let mut corrections = 0u64;
    let mut rounding_terms = cutoff + 4;
    let mut j: u32 = 1;
    let remainder = loop {
        let coeff = bernoulli(2 * j as usize) / Rational::from(factorial(2 * j)) * &rising;
        let t = Float::with_val(bits, &power * &coeff);
        let mag = Float::with_val(ERROR_BITS, t.abs_ref());
        if mag * 4u32 < *tol {
            break Float::with_val(ERROR_BITS, t.abs_ref()) * 2u32;
        }
        if let Some(p) = &prev_mag {
            if Float::with_val(ERROR_BITS, t.abs_ref()) > *p {
                // asymptotic series started to diverge before converging
                return None;
            }
        }
        prev_mag = Some(Float::with_val(ERROR_BITS, t.abs_ref()));
        total += t;
        corrections += 1;
        rounding_terms += 2;
        rising *= Rational::from((s + 2 * j - 1) as u64 * (s + 2 * j) as u64);
        power *= &x2_inv;
        j += 1;
    };
    let value = Float::with_val(bits, &direct + &total);
    let mut e = remainder;
    e += ulp(&value) * rounding_terms;
    Some(NumericValue::new(value, e).with_terms(cutoff + corrections))
}

/// `psi^{(2n-1)}(1/4) = (2n-1)! zeta(2n, 1/4)`.
pub fn polygamma_quarter(n: u32, ctx: &PrecisionContext) -> Result<NumericValue> {
    if n < 1 {
        return Err(domain("polygamma_quarter needs n >= 1"));
    }
    let z = hurwitz_zeta(2 * n, &Rational::from((1, 4)), ctx)?;
    Ok(z.scale(&Rational::from(factorial(2 * n - 1))))
}
