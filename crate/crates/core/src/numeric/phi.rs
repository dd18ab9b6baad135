use rug::{Float, Rational};

use super::accel::{alternating_sum, cvz_term_count};
use super::value::ulp;
use super::{NumericValue, PrecisionContext, ERROR_BITS};
use crate::error::{domain, Error, Result};

const MAX_DIRECT_TERMS: u64 = 50_000_000;

/// `phi_n(u) = -2 sum_{j>=1} j^n / (-u)^j` for `u > 1` and any integer `n`.
///
/// For `n <= 0` the terms `j^n u^{-j}` form a moment sequence and the
/// alternating sum is accelerated, which keeps `u` close to 1 cheap. For
/// `n > 0` the series is summed directly; once the term ratio
/// `(1 + 1/j)^n / u` drops below one the tail is bounded geometrically.
pub fn phi(n: i64, u: &Rational, ctx: &PrecisionContext) -> Result<NumericValue> {
    if *u <= 1 {
        return Err(domain(format!("phi needs u > 1, got {u}")));
    }
    let bits = ctx.bits();
    let u_inv = Float::with_val(bits, u.clone().recip());
    if n <= 0 {
        let m = n.unsigned_abs() as u32;
        let a0 = Float::with_val(ERROR_BITS, &u_inv);
        // a_k = u^{-(k+1)} / (k+1)^m; 2 sum (-1)^k a_k
        let mut u_pow = Float::with_val(bits, &u_inv);
        let sum = alternating_sum(cvz_term_count(ctx), bits, &a0, |k| {
            let t = if m == 0 {
                u_pow.clone()
            } else {
                Float::with_val(
                    bits,
                    &u_pow / Float::with_val(bits, Float::u_pow_u(k as u32 + 1, m)),
                )
            };
            u_pow *= &u_inv;
            t
        });
        let value = Float::with_val(bits, sum.value * 2u32);
        let e = Float::with_val(ERROR_BITS, sum.bound * 2u32);
        return Ok(NumericValue::new(value, e).with_terms(sum.terms));
    }

    let n_u = n as u32;
    let tol = ctx.tolerance();
    let u_f = u.to_f64();
    let mut acc = Float::new(bits);
    let mut abs_sum = Float::new(ERROR_BITS);
    let mut u_pow = Float::with_val(bits, &u_inv);
    let mut j: u64 = 1;
    loop {
        let t = Float::with_val(bits, Float::u_pow_u(j as u32, n_u)) * &u_pow;
        abs_sum += Float::with_val(ERROR_BITS, t.abs_ref());
        if j % 2 == 1 {
            acc += &t;
        } else {
            acc -= &t;
        }
        u_pow *= &u_inv;
        // ratio of |t_{j+2}| to |t_{j+1}| bounds all later ratios
        let ratio = (1.0 + 1.0 / (j + 1) as f64).powi(n_u as i32) / u_f;
        if ratio < 1.0 {
            let next = Float::with_val(bits, Float::u_pow_u(j as u32 + 1, n_u)) * &u_pow;
            let tail = Float::with_val(ERROR_BITS, next.abs()) / (1.0 - ratio);
            if tail < tol {
                // the summed series is sum (-1)^{j+1} j^n u^{-j}; phi = 2 * that
                let value = Float::with_val(bits, acc * 2u32);
                let mut e = tail * 2u32;
                e += ulp(&Float::with_val(bits, &abs_sum)) * (j + 2) * 4u32;
                return Ok(NumericValue::new(value, e).with_terms(j));
            }
        }
        j += 1;
        if j > MAX_DIRECT_TERMS {
            return Err(Error::Convergence(format!(
                "phi({n}, {u}) needs more than {MAX_DIRECT_TERMS} terms at this precision"
            )));
        }
    }
}
