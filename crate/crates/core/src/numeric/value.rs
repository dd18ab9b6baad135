use std::cmp::max;
use std::fmt;

use rug::{Float, Rational};

use super::ERROR_BITS;

/// A high-precision real together with a bound on its absolute error.
///
/// `terms` records how many series terms went into the value; combining two
/// values adds their counts.
#[derive(Clone, PartialEq)]
pub struct NumericValue {
    pub value: Float,
    pub abs_error: Float,
    pub terms: u64,
}

impl fmt::Debug for NumericValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ± {}",
            self.value.to_string_radix(10, Some(40)),
            self.abs_error.to_string_radix(10, Some(3))
        )
    }
}

/// Rounding allowance for a freshly rounded value: one unit in the last
/// place, counted generously.
pub(crate) fn ulp(v: &Float) -> Float {
    let mut e = Float::with_val(ERROR_BITS, v.abs_ref());
    e >>= v.prec() as i32 - 1;
    e
}

fn err<T>(v: T) -> Float
where
    Float: rug::Assign<T>,
{
    Float::with_val(ERROR_BITS, v).abs()
}

impl NumericValue {
    pub fn new(value: Float, abs_error: Float) -> Self {
        Self {
            value,
            abs_error: Float::with_val(ERROR_BITS, abs_error),
            terms: 0,
        }
    }

    pub fn exact(value: Float) -> Self {
        Self::new(value, Float::new(ERROR_BITS))
    }

    pub fn with_terms(mut self, terms: u64) -> Self {
        self.terms = terms;
        self
    }

    pub fn zero(bits: u32) -> Self {
        Self::exact(Float::new(bits))
    }

    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        let value = Float::with_val(bits, q);
        let e = ulp(&value);
        Self::new(value, e)
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    /// `|value| + abs_error`.
    pub fn magnitude_bound(&self) -> Float {
        err(self.value.abs_ref()) + &self.abs_error
    }

    pub fn neg(&self) -> Self {
        Self {
            value: Float::with_val(self.prec(), -&self.value),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let bits = max(self.prec(), other.prec());
        let value = Float::with_val(bits, &self.value + &other.value);
        let e = Float::with_val(ERROR_BITS, &self.abs_error + &other.abs_error) + ulp(&value);
        Self {
            value,
            abs_error: e,
            terms: self.terms + other.terms,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let bits = max(self.prec(), other.prec());
        let value = Float::with_val(bits, &self.value * &other.value);
        let mut e = err(&self.value * &other.abs_error);
        e += err(&other.value * &self.abs_error);
        e += Float::with_val(ERROR_BITS, &self.abs_error * &other.abs_error);
        e += ulp(&value);
        Self {
            value,
            abs_error: e,
            terms: self.terms + other.terms,
        }
    }

    /// Division; the divisor must be bounded away from zero by its error.
    pub fn div(&self, other: &Self) -> Self {
        let bits = max(self.prec(), other.prec());
        let value = Float::with_val(bits, &self.value / &other.value);
        let floor = Float::with_val(ERROR_BITS, other.value.abs_ref()) - &other.abs_error;
        assert!(floor > 0, "divisor not bounded away from zero");
        let mut num = Float::with_val(ERROR_BITS, &self.abs_error);
        num += err(&value * &other.abs_error);
        let mut e = num / floor;
        e += ulp(&value);
        Self {
            value,
            abs_error: e,
            terms: self.terms + other.terms,
        }
    }

    /// Multiplication by an exact rational.
    pub fn scale(&self, q: &Rational) -> Self {
        let value = Float::with_val(self.prec(), &self.value * q);
        let qa = Float::with_val(ERROR_BITS, q).abs();
        let e = Float::with_val(ERROR_BITS, &self.abs_error * &qa) + ulp(&value);
        Self {
            value,
            abs_error: e,
            terms: self.terms,
        }
    }

    /// Integer power by repeated squaring (negative exponents via one
    /// division).
    pub fn powi(&self, exponent: i32) -> Self {
        let bits = self.prec();
        let mut result = Self::exact(Float::with_val(bits, 1));
        let mut base = self.clone();
        let mut n = exponent.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result.terms = self.terms;
        if exponent < 0 {
            Self::exact(Float::with_val(bits, 1)).div(&result)
        } else {
            result
        }
    }

    /// `|self - other|` at error precision.
    pub fn abs_diff(&self, other: &Self) -> Float {
        let bits = max(self.prec(), other.prec());
        Float::with_val(
            ERROR_BITS,
            Float::with_val(bits, &self.value - &other.value).abs(),
        )
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Re-rounds the value to `bits`, accounting for the extra rounding.
    pub fn round_to(&self, bits: u32) -> Self {
        if bits >= self.prec() {
            return self.clone();
        }
        let value = Float::with_val(bits, &self.value);
        let e = Float::with_val(ERROR_BITS, &self.abs_error) + ulp(&value);
        Self {
            value,
            abs_error: e,
            terms: self.terms,
        }
    }
}
