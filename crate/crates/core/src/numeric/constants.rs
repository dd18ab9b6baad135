use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use rug::float::Constant as MpfrConstant;
use rug::Float;

use super::value::ulp;
use super::{NumericValue, PrecisionContext};

/// Fundamental constants needed by the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Pi,
    Ln2,
    LnPi,
}

static CACHE: LazyLock<RwLock<HashMap<(Constant, u32), Float>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// `pi`, `ln 2` or `ln pi`, correctly rounded at the context precision.
pub fn constant(c: Constant, ctx: &PrecisionContext) -> NumericValue {
    constant_bits(c, ctx.bits())
}

pub(crate) fn constant_bits(c: Constant, bits: u32) -> NumericValue {
    let key = (c, bits);
    if let Some(v) = CACHE.read().expect("constant cache poisoned").get(&key) {
        return with_bound(v.clone());
    }
    let value = match c {
        Constant::Pi => Float::with_val(bits, MpfrConstant::Pi),
        Constant::Ln2 => Float::with_val(bits, MpfrConstant::Log2),
        Constant::LnPi => Float::with_val(bits, MpfrConstant::Pi).ln(),
    };
    CACHE
        .write()
        .expect("constant cache poisoned")
        .insert(key, value.clone());
    with_bound(value)
}

fn with_bound(value: Float) -> NumericValue {
    // correctly rounded, plus one more ulp for ln(pi) computed from rounded pi
    let mut e = ulp(&value);
    e *= 2;
    NumericValue::new(value, e)
}
