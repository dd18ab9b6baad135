use std::sync::{LazyLock, RwLock};

use rug::{Integer, Rational};

static BERNOULLI: LazyLock<RwLock<Vec<Rational>>> =
    LazyLock::new(|| RwLock::new(vec![Rational::from(1)]));

static EULER: LazyLock<RwLock<Vec<Integer>>> =
    LazyLock::new(|| RwLock::new(vec![Integer::from(1)]));

/// Row `n` of Pascal's triangle, `C(n, 0) ..= C(n, n)`, built by the additive
/// recurrence.
pub fn binomial_row(n: usize) -> Vec<Integer> {
    let mut row = vec![Integer::from(1)];
    for _ in 0..n {
        row = next_pascal_row(&row);
    }
    row
}

fn next_pascal_row(row: &[Integer]) -> Vec<Integer> {
    let mut next = Vec::with_capacity(row.len() + 1);
    next.push(Integer::from(1));
    for pair in row.windows(2) {
        next.push(Integer::from(&pair[0] + &pair[1]));
    }
    next.push(Integer::from(1));
    next
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// Bernoulli number `B_n` (convention `B_1 = -1/2`), from the recurrence
/// `sum_{k=0}^{n} C(n+1, k) B_k = 0`. Values are memoized process-wide.
pub fn bernoulli(n: usize) -> Rational {
    {
        let cache = BERNOULLI.read().expect("bernoulli cache poisoned");
        if let Some(b) = cache.get(n) {
            return b.clone();
        }
    }
    let mut cache = BERNOULLI.write().expect("bernoulli cache poisoned");
    let start = cache.len();
    if start <= n {
        // row m + 1 of Pascal's triangle is needed to produce B_m
        let mut row = binomial_row(start + 1);
        for m in start..=n {
            let b = if m > 1 && m % 2 == 1 {
                Rational::new()
            } else {
                let mut acc = Rational::new();
                for (k, bk) in cache.iter().enumerate().take(m) {
                    if k > 1 && k % 2 == 1 {
                        continue;
                    }
                    acc += Rational::from(&row[k] * bk);
                }
                -acc / Rational::from(m as u64 + 1)
            };
            cache.push(b);
            row = next_pascal_row(&row);
        }
    }
    cache[n].clone()
}

/// Number of Bernoulli numbers currently memoized (`B_0 .. B_{len-1}`).
pub fn bernoulli_cached_len() -> usize {
    BERNOULLI.read().expect("bernoulli cache poisoned").len()
}

/// Euler number `E_n`, the coefficient of `z^n / n!` in `sech z`.
///
/// Uses `sum_{k} C(n, 2k) E_{2k} = 0` for even `n >= 2`; odd indices vanish.
pub fn euler_number(n: usize) -> Integer {
    {
        let cache = EULER.read().expect("euler cache poisoned");
        if let Some(e) = cache.get(n) {
            return e.clone();
        }
    }
    let mut cache = EULER.write().expect("euler cache poisoned");
    let start = cache.len();
    if start <= n {
        let mut row = binomial_row(start);
        for m in start..=n {
            let e = if m % 2 == 1 {
                Integer::new()
            } else {
                let mut acc = Integer::new();
                for k in (0..m).step_by(2) {
                    acc += Integer::from(&row[k] * &cache[k]);
                }
                -acc
            };
            cache.push(e);
            row = next_pascal_row(&row);
        }
    }
    cache[n].clone()
}

/// Euler polynomial `E_n(x) = sum_k C(n,k) (E_k / 2^k) (x - 1/2)^(n-k)`,
/// evaluated exactly.
pub fn euler_poly(n: usize, x: &Rational) -> Rational {
    let row = binomial_row(n);
    let shift = x - Rational::from((1, 2));
    let mut powers = Vec::with_capacity(n + 1);
    let mut p = Rational::from(1);
    for _ in 0..=n {
        powers.push(p.clone());
        p *= &shift;
    }
    let mut acc = Rational::new();
    for k in 0..=n {
        let ek = euler_number(k);
        if ek == 0 {
            continue;
        }
        let term = Rational::from((Integer::from(&row[k] * &ek), Integer::from(1) << k as u32));
        acc += term * &powers[n - k];
    }
    acc
}

/// `E_{2m+1}(1) = 2 (2^{2m+2} - 1) / (2m+2) * B_{2m+2}`.
pub fn euler_poly_one_odd(m: usize) -> Rational {
    let two_pow = Integer::from(1) << (2 * m as u32 + 2);
    let factor = Rational::from((2 * (two_pow - 1u32), Integer::from(2 * m + 2)));
    factor * bernoulli(2 * m + 2)
}

/// Harmonic number `H_N = sum_{i=1}^{N} 1/i`.
///
/// Numerator and denominator are accumulated unreduced and canonicalized
/// every 32 steps.
pub fn harmonic(n: u32) -> Rational {
    assert!(n >= 1, "harmonic number needs N >= 1");
    let mut num = Integer::from(0);
    let mut den = Integer::from(1);
    for i in 1..=n {
        // num/den + 1/i
        num = num * i + &den;
        den *= i;
        if i % 32 == 0 {
            let r = Rational::from((num, den));
            let (a, b) = r.into_numer_denom();
            num = a;
            den = b;
        }
    }
    Rational::from((num, den))
}

/// The rational `r_n` with `zeta(2n) = r_n * pi^{2n}`:
/// `(-1)^{n-1} 2^{2n-1} B_{2n} / (2n)!`.
pub fn zeta_even_coefficient(n: u32) -> Rational {
    assert!(n >= 1, "even zeta needs n >= 1");
    let b = bernoulli(2 * n as usize);
    let scaled = b * Rational::from((Integer::from(1) << (2 * n - 1), factorial(2 * n)));
    if n.is_multiple_of(2) {
        -scaled
    } else {
        scaled
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), q(0, 1));
        assert_eq!(bernoulli(12), q(-691, 2730));
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_number(0), 1);
        assert_eq!(euler_number(1), 0);
        assert_eq!(euler_number(2), -1);
        assert_eq!(euler_number(4), 5);
        assert_eq!(euler_number(6), -61);
        assert_eq!(euler_number(8), 1385);
    }

    #[test]
    fn euler_poly_examples() {
        assert_eq!(euler_poly(0, &q(7, 3)), q(1, 1));
        assert_eq!(euler_poly(1, &q(1, 1)), q(1, 2));
        assert_eq!(euler_poly(3, &q(1, 1)), q(-1, 4));
        // E_2(x) = x^2 - x
        assert_eq!(euler_poly(2, &q(3, 1)), q(6, 1));
    }

    #[test]
    fn euler_poly_one_odd_examples() {
        assert_eq!(euler_poly_one_odd(0), q(1, 2));
        assert_eq!(euler_poly_one_odd(1), q(-1, 4));
        assert_eq!(euler_poly_one_odd(2), q(1, 2));
        assert_eq!(euler_poly_one_odd(2), euler_poly(5, &q(1, 1)));
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(1), q(1, 1));
        assert_eq!(harmonic(3), q(11, 6));
        assert_eq!(harmonic(5), q(137, 60));
        // the constants attached to the k = 2 and k = 3 half-weighted series
        assert_eq!(harmonic(3) / Rational::from(2 * 6), q(11, 72));
        assert_eq!(harmonic(5) / Rational::from(2 * 120), q(137, 14400));
        let h100 = harmonic(100);
        let direct = (1..=100u32).fold(Rational::new(), |acc, i| acc + q(1, i as i64));
        assert_eq!(h100, direct);
    }

    #[test]
    fn pascal_rows() {
        let row = binomial_row(5);
        let expected: Vec<Integer> = [1, 5, 10, 10, 5, 1]
            .iter()
            .map(|&v| Integer::from(v))
            .collect();
        assert_eq!(row, expected);
    }

    #[test]
    fn zeta_even_coefficients() {
        assert_eq!(zeta_even_coefficient(1), q(1, 6));
        assert_eq!(zeta_even_coefficient(2), q(1, 90));
        assert_eq!(zeta_even_coefficient(3), q(1, 945));
    }
}
