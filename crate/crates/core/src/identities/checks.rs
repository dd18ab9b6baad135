//! Checks of the polygamma relation, the even/odd split of the sine series
//! and its limit at `u -> 1+`.

use std::time::Instant;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::report::IdentityReport;
use crate::error::{domain, Result};
use crate::exact::{bernoulli, factorial};
use crate::numeric::{
    alternating_sum, beta_direct, constant, cvz_term_count, polygamma_quarter, Constant,
    NumericValue, PrecisionContext,
};

/// `beta(2n) = psi^{(2n-1)}(1/4) / (2 (2n-1)! 4^{2n-1}) - (2^{2n} - 1) |B_{2n}| pi^{2n} / (2 (2n)!)`.
pub fn kolbig_check(n: u32, ctx: &PrecisionContext) -> Result<IdentityReport> {
    if n < 1 {
        return Err(domain("kolbig_check needs n >= 1"));
    }
    let start = Instant::now();
    let lhs = beta_direct(2 * n, ctx)?;
    let psi = polygamma_quarter(n, ctx)?;
    let psi_scale = Rational::from((
        1,
        2 * factorial(2 * n - 1) * (Integer::from(1) << (2 * (2 * n - 1))),
    ));
    let b = bernoulli(2 * n as usize).abs();
    let pi_coeff = Rational::from((Integer::from(1) << (2 * n)) - 1u32) * b
        / Rational::from(2 * factorial(2 * n));
    let pi_term = constant(Constant::Pi, ctx)
        .powi(2 * n as i32)
        .scale(&pi_coeff);
    let rhs = psi.scale(&psi_scale).sub(&pi_term);
    Ok(IdentityReport::new(
        format!("kolbig:n={n}"),
        ctx,
        lhs,
        rhs,
        start.elapsed(),
    ))
}

/// Number of terms `N` with `u^{-N} / (1 - 1/u) < 10^{-(P+g)}`.
fn geometric_cutoff(u: &Rational, ctx: &PrecisionContext) -> u64 {
    let uf = u.to_f64();
    let w = ctx.working_digits() as f64 * std::f64::consts::LN_10;
    let lead = -(1.0 - 1.0 / uf).ln();
    ((w + lead) / uf.ln()).ceil() as u64 + 1
}

fn validate_u(u: &Rational) -> Result<()> {
    if *u <= 1 {
        return Err(domain(format!("u must exceed 1, got {u}")));
    }
    Ok(())
}

/// `sum_{n>=1} (-1)^n sin(n pi/2) / (u^n n^{2k})`, with the sine taken
/// exactly from `n mod 4`.
pub fn sine_series(k: u32, u: &Rational, ctx: &PrecisionContext) -> Result<NumericValue> {
    validate_u(u)?;
    let bits = ctx.bits();
    let cutoff = geometric_cutoff(u, ctx);
    let u_inv = Float::with_val(bits, u.clone().recip());
    let mut u_pow = Float::with_val(bits, 1);
    let mut acc = Float::new(bits);
    for n in 1..=cutoff {
        u_pow *= &u_inv;
        let sine: i32 = match n % 4 {
            1 => 1,
            3 => -1,
            _ => 0,
        };
        let sign = if n % 2 == 0 { sine } else { -sine };
        if sign == 0 {
            continue;
        }
        let t = Float::with_val(
            bits,
            &u_pow / Float::with_val(bits, Float::u_pow_u(n as u32, 2 * k)),
        );
        if sign > 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    Ok(bounded_geometric(acc, u, cutoff))
}

/// `sum_{m>=1} (-1)^m / (u^{2m-1} (2m-1)^{2k})`.
pub fn odd_split_series(k: u32, u: &Rational, ctx: &PrecisionContext) -> Result<NumericValue> {
    validate_u(u)?;
    let bits = ctx.bits();
    let cutoff = geometric_cutoff(u, ctx);
    let u_inv = Float::with_val(bits, u.clone().recip());
    let u_inv2 = Float::with_val(bits, u_inv.square_ref());
    let mut u_pow = u_inv.clone();
    let mut acc = Float::new(bits);
    let mut m: u64 = 1;
    while 2 * m - 1 <= cutoff {
        let t = Float::with_val(
            bits,
            &u_pow / Float::with_val(bits, Float::u_pow_u(2 * m as u32 - 1, 2 * k)),
        );
        if m.is_multiple_of(2) {
            acc += t;
        } else {
            acc -= t;
        }
        u_pow *= &u_inv2;
        m += 1;
    }
    Ok(bounded_geometric(acc, u, cutoff))
}

fn bounded_geometric(acc: Float, u: &Rational, cutoff: u64) -> NumericValue {
    // tail: u^{-(N+1)} / (1 - 1/u); rounding: one ulp per term, two for u^{-n}
    let u_f = Float::with_val(64, u);
    let tail = Float::with_val(64, u_f.clone().pow(-(cutoff as i32 + 1)))
        / (Float::with_val(64, 1) - u_f.recip());
    let mut e = Float::with_val(64, 1) >> (acc.prec() as i32 - 2);
    e *= cutoff * 3;
    NumericValue::new(acc, tail + e).with_terms(cutoff)
}

/// Both sides of the even/odd split of the sine-weighted series.
pub fn master_identity_check(
    k: u32,
    u: &Rational,
    ctx: &PrecisionContext,
) -> Result<IdentityReport> {
    if k < 1 {
        return Err(domain("master_identity_check needs k >= 1"));
    }
    let start = Instant::now();
    let lhs = sine_series(k, u, ctx)?;
    let rhs = odd_split_series(k, u, ctx)?;
    Ok(IdentityReport::new(
        format!("master:k={k},u={u}"),
        ctx,
        lhs,
        rhs,
        start.elapsed(),
    ))
}

/// The odd-split series at `u` summed with acceleration, cheap even for `u`
/// very close to 1.
pub fn odd_split_series_accelerated(
    k: u32,
    u: &Rational,
    ctx: &PrecisionContext,
) -> Result<NumericValue> {
    validate_u(u)?;
    let bits = ctx.bits();
    let u_inv = Float::with_val(bits, u.clone().recip());
    let u_inv2 = Float::with_val(bits, u_inv.square_ref());
    let mut u_pow = u_inv.clone();
    let a0 = Float::with_val(64, &u_inv);
    // -sum_{j>=0} (-1)^j u^{-(2j+1)} / (2j+1)^{2k}
    let sum = alternating_sum(cvz_term_count(ctx), bits, &a0, |j| {
        let t = Float::with_val(
            bits,
            &u_pow / Float::with_val(bits, Float::u_pow_u(2 * j as u32 + 1, 2 * k)),
        );
        u_pow *= &u_inv2;
        t
    });
    Ok(NumericValue::new(-sum.value, sum.bound).with_terms(sum.terms))
}

/// Distances `|S(1 + 10^{-d}) + beta(2k)|` for `d = 1..=4`.
pub fn limit_approach_gaps(k: u32, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    if k < 1 {
        return Err(domain("limit_approach_check needs k >= 1"));
    }
    let beta = beta_direct(2 * k, ctx)?;
    (1..=4u32)
        .map(|d| {
            let pow = Integer::from(Integer::u_pow_u(10, d));
            let u = Rational::from((Integer::from(&pow + 1u32), pow));
            let s = odd_split_series_accelerated(k, &u, ctx)?;
            Ok(Float::with_val(64, s.add(&beta).value.abs_ref()))
        })
        .collect()
}

/// The gaps to `-beta(2k)` shrink strictly and the last is below `10^{-3}`.
pub fn limit_approach_check(k: u32, ctx: &PrecisionContext) -> Result<bool> {
    let gaps = limit_approach_gaps(k, ctx)?;
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    Ok(decreasing && *gaps.last().expect("four gaps") < 1e-3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u32) -> PrecisionContext {
        PrecisionContext::new(p).unwrap()
    }

    #[test]
    fn kolbig_small_n() {
        let c = ctx(30);
        for n in 1..=3 {
            assert!(kolbig_check(n, &c).unwrap().pass(), "n = {n}");
        }
        assert!(kolbig_check(0, &c).is_err());
    }

    #[test]
    fn master_cases() {
        let c = ctx(20);
        for (k, u) in [
            (1, Rational::from(2)),
            (2, Rational::from((3, 2))),
            (1, Rational::from((101, 100))),
        ] {
            let r = master_identity_check(k, &u, &c).unwrap();
            assert!(r.pass(), "{}", r.id);
        }
        assert!(master_identity_check(1, &Rational::from(1), &c).is_err());
    }

    #[test]
    fn accelerated_split_matches_direct() {
        let c = ctx(20);
        let u = Rational::from((11, 10));
        let a = odd_split_series(2, &u, &c).unwrap();
        let b = odd_split_series_accelerated(2, &u, &c).unwrap();
        assert!(a.abs_diff(&b) < 1e-28);
    }

    #[test]
    fn limit_approach() {
        let c = ctx(20);
        for k in 1..=3 {
            assert!(limit_approach_check(k, &c).unwrap(), "k = {k}");
        }
    }
}
