//! Decimal rendering that never prints digits the error bound does not
//! support.

use rug::ops::Pow;
use rug::{Float, Integer};

use super::{NumericValue, ERROR_BITS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rendered {
    pub text: String,
    /// Digits actually printed (places after the point, or significant
    /// digits in scientific form).
    pub digits: u32,
    /// Fewer digits than requested were justified by the error bound.
    pub truncated: bool,
}

/// `floor(-log10(2 e))`, or `None` for an exact value.
fn earned_places(abs_error: &Float) -> Option<i64> {
    if *abs_error == 0 {
        return None;
    }
    let twice = Float::with_val(ERROR_BITS, abs_error * 2u32);
    Some((-twice.log10()).floor().to_f64() as i64)
}

/// Round-half-even of `|x| * 10^shift` to an integer.
fn scaled_integer(x: &Float, shift: i64) -> Integer {
    let extra = (shift.unsigned_abs() as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64;
    let bits = x.prec() + extra;
    let ten = Float::with_val(bits, 10);
    let scale = Float::with_val(bits, ten.pow(shift as i32));
    let y = Float::with_val(bits, x.abs_ref()) * scale;
    y.to_integer().expect("finite value")
}

fn digits_with_point(int: &Integer, places: u32) -> String {
    let mut s = int.to_string();
    let places = places as usize;
    if s.len() <= places {
        s = format!("{}{}", "0".repeat(places + 1 - s.len()), s);
    }
    if places > 0 {
        s.insert(s.len() - places, '.');
    }
    s
}

/// Fixed-point rendering with `places` digits after the decimal point.
pub fn render_fixed(v: &NumericValue, places: u32) -> Rendered {
    let (places, truncated) = match earned_places(&v.abs_error) {
        Some(p) if p < places as i64 => (p.max(0) as u32, true),
        _ => (places, false),
    };
    let int = scaled_integer(&v.value, places as i64);
    let mut text = digits_with_point(&int, places);
    if v.value.is_sign_negative() && int != 0 {
        text.insert(0, '-');
    }
    Rendered {
        text,
        digits: places,
        truncated,
    }
}

/// Scientific rendering `d.ddd...e±x` with `sig` significant digits.
pub fn render_scientific(v: &NumericValue, sig: u32) -> Rendered {
    let sig = sig.max(1);
    if v.value.is_zero() {
        return Rendered {
            text: "0".into(),
            digits: sig,
            truncated: false,
        };
    }
    let mut exp = Float::with_val(ERROR_BITS, v.value.abs_ref())
        .log10()
        .floor()
        .to_f64() as i64;
    let (sig, truncated) = match earned_places(&v.abs_error) {
        // significant digits covered by the bound: places + exponent + 1
        Some(p) if p + exp + 1 < sig as i64 => ((p + exp + 1).max(1) as u32, true),
        _ => (sig, false),
    };
    let mut int = scaled_integer(&v.value, sig as i64 - 1 - exp);
    let upper = Integer::from(Integer::u_pow_u(10, sig));
    let lower = Integer::from(Integer::u_pow_u(10, sig - 1));
    if int >= upper {
        exp += 1;
        int = scaled_integer(&v.value, sig as i64 - 1 - exp);
    } else if int < lower {
        exp -= 1;
        int = scaled_integer(&v.value, sig as i64 - 1 - exp);
    }
    let mut mantissa = digits_with_point(&int, sig - 1);
    if v.value.is_sign_negative() {
        mantissa.insert(0, '-');
    }
    Rendered {
        text: format!("{mantissa}e{exp}"),
        digits: sig,
        truncated,
    }
}

/// Short rendering of a non-negative magnitude such as a residual.
pub fn render_magnitude(x: &Float) -> String {
    if x.is_zero() {
        return "0".into();
    }
    render_scientific(&NumericValue::exact(Float::with_val(ERROR_BITS, x)), 3).text
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nv(s: &str, err: f64) -> NumericValue {
        let v = Float::with_val(300, Float::parse(s).unwrap());
        NumericValue::new(v, Float::with_val(ERROR_BITS, err))
    }

    #[test]
    fn fixed_rounding() {
        let g = nv("0.91596559417721901505460351493238411", 1e-40);
        assert_eq!(render_fixed(&g, 10).text, "0.9159655942");
        assert_eq!(render_fixed(&g, 8).text, "0.91596559");
        let pi = nv("3.14159265358979323846264338327950288", 1e-40);
        assert_eq!(render_fixed(&pi, 20).text, "3.14159265358979323846");
        assert_eq!(render_fixed(&nv("-2.5", 0.0), 0).text, "-2");
        assert_eq!(render_fixed(&nv("0.125", 0.0), 2).text, "0.12");
        assert_eq!(render_fixed(&nv("0.375", 0.0), 2).text, "0.38");
        assert_eq!(render_fixed(&nv("-0.004", 0.0), 2).text, "0.00");
    }

    #[test]
    fn fixed_truncates_to_earned_digits() {
        let r = render_fixed(&nv("1.23456789", 1e-4), 8);
        assert!(r.truncated);
        assert_eq!(r.digits, 3);
        assert_eq!(r.text, "1.235");
    }

    #[test]
    fn scientific() {
        assert_eq!(
            render_scientific(&nv("0.000123456", 0.0), 3).text,
            "1.23e-4"
        );
        assert_eq!(render_scientific(&nv("-9.996", 0.0), 3).text, "-1.00e1");
        assert_eq!(render_scientific(&nv("1e-373", 0.0), 2).text, "1.0e-373");
        let r = render_scientific(&nv("1.23456789e-10", 1e-15), 8);
        assert!(r.truncated);
        assert_eq!(r.text, "1.2346e-10");
        assert_eq!(
            render_magnitude(&Float::with_val(64, 3.14159e-61)),
            "3.14e-61"
        );
    }
}
