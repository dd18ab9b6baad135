//! Summation of `sum_{n>=1} zeta(2n) w(n) / (2n (2n+1) ... (2n+2k-1))` for
//! geometric weights `w(n) = sum_i c_i x_i^{2n}`.
//!
//! `zeta(2n)` enters as the exact rational multiple of `pi^{2n}`, so every
//! term is an exact rational times a power of pi. Since `zeta(2n) <= zeta(2)`
//! the tail after `n0` terms is at most
//! `zeta(2) sum_i |c_i| x_i^{2(n0+1)} / ((1 - x_i^2) prod_j (2n0+2+j))`.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{domain, Error, Result};
use crate::exact::zeta_even_coefficient;
use crate::numeric::{constant, Constant, NumericValue, PrecisionContext};

const MAX_TERMS: u64 = 200_000;

/// A computed zeta series with its truncation data.
#[derive(Debug, Clone)]
pub struct SeriesSum {
    pub value: NumericValue,
    pub terms: u64,
    /// Rigorous bound on the omitted tail.
    pub tail_bound: Float,
}

/// `(2n)(2n+1)...(2n+2k-1)`.
fn rising_block(n: u64, k: u32) -> Integer {
    let mut p = Integer::from(1);
    for j in 0..2 * k as u64 {
        p *= 2 * n + j;
    }
    p
}

fn validate(k: u32, weights: &[(Rational, Rational)]) -> Result<()> {
    if k < 1 {
        return Err(domain("zeta series needs k >= 1"));
    }
    for (x, _) in weights {
        if *x <= 0 || *x >= 1 {
            return Err(domain(format!(
                "zeta series weight needs 0 < x < 1, got {x}"
            )));
        }
    }
    Ok(())
}

fn tail_bound(k: u32, n0: u64, weights: &[(Rational, Rational)]) -> Rational {
    // zeta(2) < 329/200
    let zeta2 = Rational::from((329, 200));
    let block = Rational::from(rising_block(n0 + 1, k));
    let mut acc = Rational::new();
    for (x, c) in weights {
        let x2 = Rational::from(x.square_ref());
        let geo = x2.clone().pow(n0 as u32 + 1) / (Rational::from(1) - x2);
        acc += geo * Rational::from(c.abs_ref());
    }
    acc * zeta2 / block
}

/// Weighted zeta series. With `forced_terms = None` the sum stops at the
/// first `n0` whose tail bound is below `10^{-(P+g)}` times `min(1, |t_1|)`.
pub fn zeta_series_weighted(
    k: u32,
    weights: &[(Rational, Rational)],
    ctx: &PrecisionContext,
    forced_terms: Option<u64>,
) -> Result<SeriesSum> {
    validate(k, weights)?;
    let bits = ctx.bits();
    let pi = constant(Constant::Pi, ctx);
    let pi2 = pi.mul(&pi);
    let mut pi_pow = pi2.clone();
    let mut x_pows: Vec<Rational> = weights
        .iter()
        .map(|(x, _)| Rational::from(x.square_ref()))
        .collect();
    let x_steps = x_pows.clone();

    let mut total = NumericValue::zero(bits);
    let tol_base = ctx.tolerance();
    let mut tol: Option<Float> = None;
    let mut n: u64 = 1;
    loop {
        let mut w = Rational::new();
        for ((_, c), xp) in weights.iter().zip(&x_pows) {
            w += Rational::from(c * xp);
        }
        let q = zeta_even_coefficient(n as u32) * w / Rational::from(rising_block(n, k));
        let term = pi_pow.scale(&q);
        if tol.is_none() {
            let t1 = Float::with_val(64, term.value.abs_ref());
            tol = Some(if t1 < 1 && !t1.is_zero() {
                tol_base.clone() * t1
            } else {
                tol_base.clone()
            });
        }
        total = total.add(&term);

        let tail = Float::with_val(64, &tail_bound(k, n, weights));
        let done = match forced_terms {
            Some(f) => n >= f,
            None => tail < *tol.as_ref().expect("set on first term"),
        };
        if done {
            let mut value = total;
            value.abs_error += &tail;
            value.terms = n;
            return Ok(SeriesSum {
                value,
                terms: n,
                tail_bound: tail,
            });
        }
        n += 1;
        if n > MAX_TERMS {
            return Err(Error::Convergence(format!(
                "zeta series k = {k} exceeded {MAX_TERMS} terms"
            )));
        }
        pi_pow = pi_pow.mul(&pi2);
        for (xp, step) in x_pows.iter_mut().zip(&x_steps) {
            *xp *= step;
        }
    }
}

/// `sum_{n>=1} zeta(2n) x^{2n} / prod_{j=0}^{2k-1} (2n+j)` for `0 < x < 1`.
pub fn zeta_series_sum(k: u32, x: &Rational, ctx: &PrecisionContext) -> Result<NumericValue> {
    Ok(zeta_series_detailed(k, x, ctx, None)?.value)
}

/// Like [`zeta_series_sum`] but also returns the term count and tail bound,
/// optionally forcing the number of terms.
pub fn zeta_series_detailed(
    k: u32,
    x: &Rational,
    ctx: &PrecisionContext,
    forced_terms: Option<u64>,
) -> Result<SeriesSum> {
    zeta_series_weighted(k, &[(x.clone(), Rational::from(1))], ctx, forced_terms)
}

/// The half-minus-quarter combination summed in one pass, with weight
/// `2^{-2n} - 4^{-2n}`.
pub fn zeta_series_half_minus_quarter(k: u32, ctx: &PrecisionContext) -> Result<NumericValue> {
    let weights = [
        (Rational::from((1, 2)), Rational::from(1)),
        (Rational::from((1, 4)), Rational::from(-1)),
    ];
    Ok(zeta_series_weighted(k, &weights, ctx, None)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{BasisConstant, ClosedForm};
    use crate::numeric::closedform_eval;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn ctx(p: u32) -> PrecisionContext {
        PrecisionContext::new(p).unwrap()
    }

    #[test]
    fn half_weight_k1_is_log_pi_form() {
        let c = ctx(30);
        let s = zeta_series_sum(1, &q(1, 2), &c).unwrap();
        let mut cf = ClosedForm::term(BasisConstant::LnPi, 0, q(1, 2));
        cf.add_term(BasisConstant::One, 0, q(-1, 2));
        let rhs = closedform_eval(&cf, &c).unwrap();
        assert!(s.abs_diff(&rhs) < 1e-38);
        assert_eq!(
            crate::numeric::render_fixed(&s, 20).text,
            "0.07236494292470008707"
        );
    }

    #[test]
    fn brute_force_oracle() {
        // Independent route: zeta(2n) by direct summation plus an
        // Euler-Maclaurin tail, the outer series truncated far out.
        let bits = 200;
        let zeta = |s: u32| {
            let mut acc = Float::new(bits);
            for m in (1..2000u32).rev() {
                acc += Float::with_val(bits, Float::u_pow_u(m, s)).recip();
            }
            // Euler-Maclaurin tail at x = 2000 with the B_2 and B_4 corrections
            let x = Float::with_val(bits, 2000);
            let xs = Float::with_val(bits, (&x).pow(-(s as i32)));
            acc += Float::with_val(bits, &xs * &x) / (s - 1);
            acc += Float::with_val(bits, &xs / 2u32);
            let sf = s as f64;
            acc += Float::with_val(bits, &xs / &x) * sf / 12.0;
            let x3 = Float::with_val(bits, x.pow(-3i32));
            acc -= Float::with_val(bits, &xs * &x3) * (sf * (sf + 1.0) * (sf + 2.0)) / 720.0;
            acc
        };
        let mut brute = Float::new(bits);
        for n in 1..60u32 {
            let mut t = zeta(2 * n) * Float::with_val(bits, 4).pow(-(n as i32));
            for j in 0..4 {
                t /= 2 * n + j;
            }
            brute += t;
        }
        let s = zeta_series_sum(2, &q(1, 2), &ctx(20)).unwrap();
        assert!(Float::with_val(bits, &s.value - &brute).abs() < 1e-20);
    }

    #[test]
    fn doubling_terms_stays_within_tail_bound() {
        let c = ctx(30);
        for (k, x) in [(1, q(1, 2)), (3, q(1, 4)), (5, q(1, 2))] {
            let base = zeta_series_detailed(k, &x, &c, None).unwrap();
            let doubled = zeta_series_detailed(k, &x, &c, Some(2 * base.terms)).unwrap();
            let change = base.value.abs_diff(&doubled.value);
            assert!(change < base.tail_bound, "k = {k}");
        }
    }

    #[test]
    fn one_pass_difference_matches_two_sums() {
        let c = ctx(40);
        for k in 1..=4 {
            let half = zeta_series_sum(k, &q(1, 2), &c).unwrap();
            let quarter = zeta_series_sum(k, &q(1, 4), &c).unwrap();
            let one = zeta_series_half_minus_quarter(k, &c).unwrap();
            assert!(half.sub(&quarter).abs_diff(&one) < 1e-43);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let c = ctx(20);
        assert!(zeta_series_sum(0, &q(1, 2), &c).is_err());
        assert!(zeta_series_sum(1, &q(1, 1), &c).is_err());
        assert!(zeta_series_sum(1, &q(3, 2), &c).is_err());
        assert!(zeta_series_sum(1, &q(0, 1), &c).is_err());
    }
}
