use std::collections::BTreeMap;
use std::fmt;

use rug::{Integer, Rational};

use super::numbers::{euler_number, factorial, zeta_even_coefficient};
use crate::error::{domain, Result};

/// A constant that may appear in a closed form, besides powers of pi.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisConstant {
    One,
    Ln2,
    LnPi,
    /// `zeta(s)` for odd `s >= 3`.
    ZetaOdd(u32),
    /// `beta(s)` for even `s >= 2`; `BetaEven(2)` is Catalan's constant.
    BetaEven(u32),
}

impl BasisConstant {
    pub fn zeta_odd(s: u32) -> Result<Self> {
        if s < 3 || s.is_multiple_of(2) {
            return Err(domain(format!(
                "zeta basis needs an odd argument >= 3, got {s}"
            )));
        }
        Ok(Self::ZetaOdd(s))
    }

    pub fn beta_even(s: u32) -> Result<Self> {
        if s < 2 || s % 2 == 1 {
            return Err(domain(format!(
                "beta basis needs an even argument >= 2, got {s}"
            )));
        }
        Ok(Self::BetaEven(s))
    }

    pub fn catalan() -> Self {
        Self::BetaEven(2)
    }
}

impl fmt::Display for BasisConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::One => write!(f, "1"),
            Self::Ln2 => write!(f, "ln2"),
            Self::LnPi => write!(f, "ln(pi)"),
            Self::ZetaOdd(s) => write!(f, "zeta({s})"),
            Self::BetaEven(2) => write!(f, "G"),
            Self::BetaEven(s) => write!(f, "beta({s})"),
        }
    }
}

/// Exact linear combination `sum c * basis * pi^e` with rational `c`.
///
/// The term map is kept canonical: keys are unique and no stored coefficient
/// is zero, so structural equality is symbolic equality.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClosedForm {
    terms: BTreeMap<(BasisConstant, i32), Rational>,
}

impl ClosedForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// A single term `coeff * basis * pi^pi_exponent`.
    pub fn term(basis: BasisConstant, pi_exponent: i32, coeff: Rational) -> Self {
        let mut cf = Self::zero();
        cf.add_term(basis, pi_exponent, coeff);
        cf
    }

    pub fn rational(q: Rational) -> Self {
        Self::term(BasisConstant::One, 0, q)
    }

    pub fn add_term(&mut self, basis: BasisConstant, pi_exponent: i32, coeff: Rational) {
        if coeff == 0 {
            return;
        }
        let key = (basis, pi_exponent);
        let merged = match self.terms.remove(&key) {
            Some(existing) => existing + coeff,
            None => coeff,
        };
        if merged != 0 {
            self.terms.insert(key, merged);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, basis: BasisConstant, pi_exponent: i32) -> Option<&Rational> {
        self.terms.get(&(basis, pi_exponent))
    }

    /// Terms in canonical (sorted) order.
    pub fn terms(&self) -> impl Iterator<Item = (BasisConstant, i32, &Rational)> {
        self.terms.iter().map(|(&(b, e), c)| (b, e, c))
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        let mut out = Self::zero();
        for (b, e, c) in self.terms() {
            out.add_term(b, e, Rational::from(c * factor));
        }
        out
    }

    /// Multiplies every term by `pi^shift`.
    pub fn times_pi_power(&self, shift: i32) -> Self {
        let mut out = Self::zero();
        for (b, e, c) in self.terms() {
            out.add_term(b, e + shift, c.clone());
        }
        out
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, e, c)) in self.terms().enumerate() {
            let (sign, mag) = if *c < 0 {
                ("-", Rational::from(-c))
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{mag}")?;
            if b != BasisConstant::One {
                write!(f, "*{b}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "*pi")?,
                e => write!(f, "*pi^{e}")?,
            }
        }
        Ok(())
    }
}

/// `a + scale * b`, canonical.
pub fn closedform_combine(a: &ClosedForm, b: &ClosedForm, scale: &Rational) -> ClosedForm {
    let mut out = a.clone();
    for (basis, e, c) in b.terms() {
        out.add_term(basis, e, Rational::from(c * scale));
    }
    out
}

/// `zeta(2n)` as a rational multiple of `pi^{2n}`.
pub fn zeta_even_exact(n: u32) -> Result<ClosedForm> {
    if n < 1 {
        return Err(domain("even zeta value needs n >= 1"));
    }
    Ok(ClosedForm::term(
        BasisConstant::One,
        2 * n as i32,
        zeta_even_coefficient(n),
    ))
}

/// `beta(2n+1) = (-1)^n E_{2n} / (2^{2n+2} (2n)!) * pi^{2n+1}`.
pub fn beta_odd_exact(n: u32) -> ClosedForm {
    let e = euler_number(2 * n as usize);
    let den = (Integer::from(1) << (2 * n + 2)) * factorial(2 * n);
    let mut coeff = Rational::from((e, den));
    if n % 2 == 1 {
        coeff = -coeff;
    }
    ClosedForm::term(BasisConstant::One, 2 * n as i32 + 1, coeff)
}
