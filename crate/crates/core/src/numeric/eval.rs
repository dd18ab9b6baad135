use super::beta::beta_direct;
use super::constants::{constant, Constant};
use super::zeta::zeta_odd;
use super::{NumericValue, PrecisionContext};
use crate::error::Result;
use crate::exact::{BasisConstant, ClosedForm};

fn basis_value(b: BasisConstant, ctx: &PrecisionContext) -> Result<NumericValue> {
    Ok(match b {
        BasisConstant::One => NumericValue::exact(rug::Float::with_val(ctx.bits(), 1)),
        BasisConstant::Ln2 => constant(Constant::Ln2, ctx),
        BasisConstant::LnPi => constant(Constant::LnPi, ctx),
        BasisConstant::ZetaOdd(s) => zeta_odd(s, ctx)?,
        BasisConstant::BetaEven(s) => beta_direct(s, ctx)?,
    })
}

/// Numeric value of a closed form with propagated error bounds.
pub fn closedform_eval(cf: &ClosedForm, ctx: &PrecisionContext) -> Result<NumericValue> {
    let pi = constant(Constant::Pi, ctx);
    let mut total = NumericValue::zero(ctx.bits());
    for (basis, e, coeff) in cf.terms() {
        let mut term = basis_value(basis, ctx)?;
        if e != 0 {
            term = term.mul(&pi.powi(e));
        }
        total = total.add(&term.scale(coeff));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    #[test]
    fn examples() {
        let c = PrecisionContext::new(20).unwrap();
        let zero = closedform_eval(&ClosedForm::zero(), &c).unwrap();
        assert_eq!(zero.value, 0);
        assert_eq!(zero.abs_error, 0);

        let z2 = ClosedForm::term(BasisConstant::One, 2, Rational::from((1, 6)));
        let v = closedform_eval(&z2, &c).unwrap();
        assert_eq!(
            crate::numeric::render_fixed(&v, 20).text,
            "1.64493406684822643647"
        );
        assert!(v.abs_error < c.contract());

        let half_pi_ln2 = ClosedForm::term(BasisConstant::Ln2, 1, Rational::from((1, 2)));
        let v = closedform_eval(&half_pi_ln2, &c).unwrap();
        assert_eq!(
            crate::numeric::render_fixed(&v, 20).text,
            "1.08879304515180106525"
        );
    }
}
