//! Registry of checkable identities and the machinery behind them.
//!
//! Each [`Identity`] evaluates its two sides at a [`PrecisionContext`] and
//! yields an [`IdentityReport`]. The registry is built once, is immutable,
//! and its order is stable (it drives `verify all`).

mod checks;
mod report;
mod theorems;
mod zeta_series;

use std::sync::LazyLock;
use std::time::Instant;

use rug::{Float, Rational};

pub use checks::{
    kolbig_check, limit_approach_check, limit_approach_gaps, master_identity_check,
    odd_split_series, odd_split_series_accelerated, sine_series,
};
pub use report::{digits_agreed, IdentityReport, PASS_SLACK_DIGITS};
pub use theorems::{
    conversion_check, theorem1_beta, theorem1_beta_with, theorem1_finite_part,
    theorem1_series_direct, theorem2_check, theorem2_rhs, theorem2_rhs_numeric, SeriesRoute,
};
pub use zeta_series::{
    zeta_series_detailed, zeta_series_half_minus_quarter, zeta_series_sum, zeta_series_weighted,
    SeriesSum,
};

use crate::error::{Error, Result};
use crate::exact::{BasisConstant, ClosedForm};
use crate::numeric::{
    beta_direct, beta_via_hurwitz, closedform_eval, polygamma_quarter, NumericValue,
    PrecisionContext,
};

/// Largest `k` registered for the `theorem1:` and `theorem2:` families.
pub const THEOREM_K_MAX: u32 = 8;
/// Largest `n` registered for the polygamma relation.
pub const KOLBIG_N_MAX: u32 = 5;
/// Precision cap for the slowly converging `u = 101/100` split.
pub const SLOW_MASTER_MAX_DIGITS: u32 = 20;

type Evaluator = Box<dyn Fn(&PrecisionContext) -> Result<NumericValue> + Send + Sync>;

pub struct Identity {
    pub id: String,
    pub description: String,
    /// The identity written out, for listings.
    pub formula: String,
    lhs: Evaluator,
    rhs: Evaluator,
    /// Exact right-hand side when one exists; `rhs` evaluates it.
    pub exact_rhs: Option<ClosedForm>,
    /// Evaluate at no more than this many target digits.
    pub max_digits: Option<u32>,
}

/// Listing entry for [`registry_list`].
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct IdentityInfo {
    pub id: String,
    pub description: String,
    pub formula: String,
}

impl Identity {
    fn new(
        id: impl Into<String>,
        description: impl Into<String>,
        formula: impl Into<String>,
        lhs: Evaluator,
        rhs: Evaluator,
    ) -> Self {
        Self {
            id: id.into(),
            description: description.into(),
            formula: formula.into(),
            lhs,
            rhs,
            exact_rhs: None,
            max_digits: None,
        }
    }

    /// Identity whose right-hand side is a closed form.
    fn closed(
        id: impl Into<String>,
        description: impl Into<String>,
        formula: impl Into<String>,
        lhs: Evaluator,
        rhs: ClosedForm,
    ) -> Self {
        let cf = rhs.clone();
        let mut ident = Self::new(
            id,
            description,
            formula,
            lhs,
            Box::new(move |ctx| closedform_eval(&cf, ctx)),
        );
        ident.exact_rhs = Some(rhs);
        ident
    }

    /// Context actually used for a requested one, honouring `max_digits`.
    pub fn effective_context(&self, ctx: &PrecisionContext) -> PrecisionContext {
        match self.max_digits {
            Some(cap) if ctx.target_digits() > cap => {
                PrecisionContext::new(cap).expect("cap is a valid precision")
            }
            _ => *ctx,
        }
    }

    pub fn evaluate(&self, ctx: &PrecisionContext) -> Result<IdentityReport> {
        let ctx = self.effective_context(ctx);
        let start = Instant::now();
        let lhs = (self.lhs)(&ctx)?;
        let rhs = (self.rhs)(&ctx)?;
        Ok(IdentityReport::new(
            self.id.clone(),
            &ctx,
            lhs,
            rhs,
            start.elapsed(),
        ))
    }

    pub fn info(&self) -> IdentityInfo {
        IdentityInfo {
            id: self.id.clone(),
            description: self.description.clone(),
            formula: self.formula.clone(),
        }
    }

    pub fn evaluate_rhs(&self, ctx: &PrecisionContext) -> Result<NumericValue> {
        (self.rhs)(&self.effective_context(ctx))
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn half() -> Rational {
    q(1, 2)
}

fn quarter() -> Rational {
    q(1, 4)
}

/// `ln(pi/2)` as a closed form, scaled.
fn add_ln_pi_over_2(cf: &mut ClosedForm, c: Rational) {
    cf.add_term(BasisConstant::LnPi, 0, c.clone());
    cf.add_term(BasisConstant::Ln2, 0, -c);
}

fn build_registry() -> Vec<Identity> {
    let mut reg = Vec::new();

    // The Euler-type formula at k = 1, 2, 3 with its series summed term by term.
    let written = [
        ("eq12", "G = (pi/2) ln2 - (pi^3/2^4) sum_m (-1)^m pi^{2m} E_{2m+1}(1) / ((2m+3)! 2^{2m})"),
        (
            "eq13",
            "beta(4) = -pi^3 ln2/(3! 2^3) + (3/2^3) pi zeta(3) + (pi^5/2^6) sum_m (-1)^m pi^{2m} E_{2m+1}(1) / ((2m+5)! 2^{2m})",
        ),
        (
            "eq14",
            "beta(6) = pi^5 ln2/(5! 2^5) - pi^3 zeta(3)/2^6 + 15 pi zeta(5)/2^5 - (pi^7/2^8) sum_m (-1)^m pi^{2m} E_{2m+1}(1) / ((2m+7)! 2^{2m})",
        ),
    ];
    for (k, (id, formula)) in (1u32..).zip(written) {
        reg.push(Identity::new(
            id,
            format!(
                "Euler-type formula for beta({}) with the Euler-polynomial series",
                2 * k
            ),
            formula,
            Box::new(move |ctx| beta_direct(2 * k, ctx)),
            Box::new(move |ctx| theorem1_beta_with(k, SeriesRoute::EulerPolynomial, ctx)),
        ));
    }

    // sum zeta(2n) / (n (2n+1) 4^{2n}) = 2G/pi + ln(pi/2) - 1
    let mut rhs = ClosedForm::term(BasisConstant::catalan(), -1, q(2, 1));
    add_ln_pi_over_2(&mut rhs, q(1, 1));
    rhs.add_term(BasisConstant::One, 0, q(-1, 1));
    reg.push(Identity::closed(
        "eq18",
        "quarter-weighted series with summand 1/(n(2n+1)), twice the k = 1 engine value",
        "sum zeta(2n) / (n (2n+1) 4^{2n}) = 2G/pi + ln(pi/2) - 1",
        Box::new(|ctx| Ok(zeta_series_sum(1, &quarter(), ctx)?.scale(&q(2, 1)))),
        rhs,
    ));

    // k = 2, quarter weight
    let mut rhs = ClosedForm::term(BasisConstant::BetaEven(4), -3, q(-4, 1));
    rhs.add_term(BasisConstant::ZetaOdd(3), -2, q(2, 1));
    add_ln_pi_over_2(&mut rhs, q(1, 12));
    rhs.add_term(BasisConstant::One, 0, q(-11, 72));
    reg.push(Identity::closed(
        "eq20",
        "quarter-weighted zeta series, k = 2",
        "sum zeta(2n) / (2n...(2n+3) 4^{2n}) = -4 beta(4)/pi^3 + 2 zeta(3)/pi^2 + ln(pi/2)/12 - 11/72",
        Box::new(|ctx| zeta_series_sum(2, &quarter(), ctx)),
        rhs,
    ));

    // k = 3, half weight
    let mut rhs = ClosedForm::term(BasisConstant::ZetaOdd(3), -2, q(1, 12));
    rhs.add_term(BasisConstant::ZetaOdd(5), -4, q(-1, 2));
    rhs.add_term(BasisConstant::LnPi, 0, q(1, 240));
    rhs.add_term(BasisConstant::One, 0, q(-137, 14400));
    reg.push(Identity::closed(
        "eq23",
        "half-weighted zeta series, k = 3",
        "sum zeta(2n) / (2n...(2n+5) 2^{2n}) = zeta(3)/(12 pi^2) - zeta(5)/(2 pi^4) + ln(pi)/240 - 137/14400",
        Box::new(|ctx| zeta_series_sum(3, &half(), ctx)),
        rhs,
    ));

    // k = 3, quarter weight
    let mut rhs = ClosedForm::term(BasisConstant::ZetaOdd(3), -2, q(1, 3));
    rhs.add_term(BasisConstant::ZetaOdd(5), -4, q(-8, 1));
    rhs.add_term(BasisConstant::BetaEven(6), -5, q(16, 1));
    add_ln_pi_over_2(&mut rhs, q(1, 240));
    rhs.add_term(BasisConstant::One, 0, q(-137, 14400));
    reg.push(Identity::closed(
        "eq24",
        "quarter-weighted zeta series, k = 3",
        "sum zeta(2n) / (2n...(2n+5) 4^{2n}) = zeta(3)/(3 pi^2) - 8 zeta(5)/pi^4 + 16 beta(6)/pi^5 + ln(pi/2)/240 - 137/14400",
        Box::new(|ctx| zeta_series_sum(3, &quarter(), ctx)),
        rhs,
    ));

    let mut rhs = ClosedForm::term(BasisConstant::LnPi, 0, q(1, 2));
    rhs.add_term(BasisConstant::One, 0, q(-1, 2));
    reg.push(Identity::closed(
        "fujii-suzuki",
        "half-weighted zeta series, k = 1",
        "sum zeta(2n) / (2n (2n+1) 2^{2n}) = (ln(pi) - 1)/2",
        Box::new(|ctx| zeta_series_sum(1, &half(), ctx)),
        rhs,
    ));

    let mut rhs = ClosedForm::term(BasisConstant::ZetaOdd(3), -2, q(1, 2));
    rhs.add_term(BasisConstant::LnPi, 0, q(1, 12));
    rhs.add_term(BasisConstant::One, 0, q(-11, 72));
    reg.push(Identity::closed(
        "wilton",
        "half-weighted zeta series, k = 2",
        "sum zeta(2n) / (2n...(2n+3) 2^{2n}) = zeta(3)/(2 pi^2) + ln(pi)/12 - 11/72",
        Box::new(|ctx| zeta_series_sum(2, &half(), ctx)),
        rhs,
    ));

    for k in 1..=THEOREM_K_MAX {
        reg.push(Identity::new(
            format!("theorem1:k={k}"),
            format!("Euler-type formula for beta({}), series summed as zeta series", 2 * k),
            "beta(2k) = (-1)^{k+1} (pi/2)^{2k-1} ln2/(2k-1)! - (-1)^k sum_{m=1}^{k-1} (-1)^m (pi/2)^{2k-2m-1} (1 - 2^{-2m}) zeta(2m+1)/(2k-2m-1)! + (-1)^k pi^{2k+1}/2^{2k+2} sum_m (-1)^m pi^{2m} E_{2m+1}(1)/((2m+2k+1)! 2^{2m})",
            Box::new(move |ctx| beta_direct(2 * k, ctx)),
            Box::new(move |ctx| theorem1_beta(k, ctx)),
        ));
    }

    for k in 1..=THEOREM_K_MAX {
        reg.push(Identity::closed(
            format!("theorem2:k={k}"),
            format!("half-minus-quarter zeta series in terms of beta({})", 2 * k),
            "sum zeta(2n) (2^{-2n} - 4^{-2n}) / (2n...(2n+2k-1)) = (-1)^k 2^{2k-2} beta(2k)/pi^{2k-1} + k ln2/(2k)! + (1/2) sum_{m=1}^{k-1} (-1)^m (2^{2m} - 1) zeta(2m+1)/(pi^{2m} (2k-2m-1)!)",
            Box::new(move |ctx| {
                let h = zeta_series_sum(k, &half(), ctx)?;
                let qr = zeta_series_sum(k, &quarter(), ctx)?;
                Ok(h.sub(&qr))
            }),
            theorem2_rhs(k),
        ));
    }

    for n in 1..=KOLBIG_N_MAX {
        reg.push(Identity::new(
            format!("kolbig:n={n}"),
            format!("beta({}) from the polygamma value at 1/4", 2 * n),
            "beta(2n) = psi^{(2n-1)}(1/4) / (2 (2n-1)! 4^{2n-1}) - (2^{2n} - 1) |B_{2n}| pi^{2n} / (2 (2n)!)",
            Box::new(move |ctx| beta_direct(2 * n, ctx)),
            Box::new(move |ctx| Ok(kolbig_check(n, ctx)?.rhs)),
        ));
    }

    let mut rhs = ClosedForm::term(BasisConstant::One, 2, q(1, 1));
    rhs.add_term(BasisConstant::catalan(), 0, q(8, 1));
    reg.push(Identity::closed(
        "trigamma-quarter",
        "trigamma at 1/4",
        "psi'(1/4) = pi^2 + 8G",
        Box::new(|ctx| polygamma_quarter(1, ctx)),
        rhs,
    ));

    for (k, u, cap) in [
        (1u32, q(2, 1), None),
        (2, q(3, 2), None),
        (1, q(101, 100), Some(SLOW_MASTER_MAX_DIGITS)),
    ] {
        let (ul, ur) = (u.clone(), u.clone());
        let mut ident = Identity::new(
            format!("master:k={k},u={u}"),
            "sine-weighted series split into its odd terms",
            "sum_n (-1)^n sin(n pi/2) / (u^n n^{2k}) = sum_m (-1)^m / (u^{2m-1} (2m-1)^{2k})",
            Box::new(move |ctx| sine_series(k, &ul, ctx)),
            Box::new(move |ctx| odd_split_series(k, &ur, ctx)),
        );
        ident.max_digits = cap;
        reg.push(ident);
    }

    for s in 2..=8u32 {
        reg.push(Identity::new(
            format!("beta-hurwitz:s={s}"),
            format!("beta({s}) from two Hurwitz zeta values"),
            "beta(s) = [zeta(s, 1/4) - zeta(s, 3/4)] / 4^s",
            Box::new(move |ctx| beta_direct(s, ctx)),
            Box::new(move |ctx| beta_via_hurwitz(s, ctx)),
        ));
    }

    reg
}

static REGISTRY: LazyLock<Vec<Identity>> = LazyLock::new(build_registry);

pub fn registry() -> &'static [Identity] {
    &REGISTRY
}

/// Metadata for every registered identity, in registry order.
pub fn registry_list() -> Vec<IdentityInfo> {
    registry().iter().map(Identity::info).collect()
}

pub fn find(id: &str) -> Result<&'static Identity> {
    registry()
        .iter()
        .find(|i| i.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

pub fn verify(id: &str, ctx: &PrecisionContext) -> Result<IdentityReport> {
    find(id)?.evaluate(ctx)
}

/// Ids accepted by [`special_identity`].
pub const SPECIAL_IDS: [&str; 7] = ["eq12", "eq13", "eq14", "eq18", "eq20", "eq23", "eq24"];

/// One of the worked special cases: the three beta specializations and the
/// four explicit zeta-series closed forms.
pub fn special_identity(id: &str, ctx: &PrecisionContext) -> Result<IdentityReport> {
    if !SPECIAL_IDS.contains(&id) {
        return Err(Error::UnknownIdentity(id.to_string()));
    }
    verify(id, ctx)
}

/// `|a - b|` for two numeric values, at bookkeeping precision.
pub fn residual(a: &NumericValue, b: &NumericValue) -> Float {
    a.abs_diff(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing() {
        let list = registry_list();
        assert!(list.len() >= 20);
        let ids: Vec<&str> = list.iter().map(|i| i.id.as_str()).collect();
        assert!(ids.contains(&"eq12"));
        for k in 1..=THEOREM_K_MAX {
            assert!(ids.contains(&format!("theorem2:k={k}").as_str()));
        }
        let mut dedup = ids.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), ids.len(), "ids must be unique");
        assert_eq!(registry_list(), list, "order is stable");
    }

    #[test]
    fn unknown_ids() {
        let ctx = PrecisionContext::new(20).unwrap();
        assert!(matches!(
            verify("nosuch", &ctx),
            Err(Error::UnknownIdentity(_))
        ));
        assert!(matches!(
            special_identity("theorem2:k=1", &ctx),
            Err(Error::UnknownIdentity(_))
        ));
    }

    #[test]
    fn slow_master_case_is_capped() {
        let ctx = PrecisionContext::new(50).unwrap();
        let ident = find("master:k=1,u=101/100").unwrap();
        assert_eq!(
            ident.effective_context(&ctx).target_digits(),
            SLOW_MASTER_MAX_DIGITS
        );
    }

    #[test]
    fn special_cases_pass() {
        let ctx = PrecisionContext::new(30).unwrap();
        for id in SPECIAL_IDS {
            let r = special_identity(id, &ctx).unwrap();
            assert!(r.pass(), "{id}: {} digits", r.digits_agreed);
        }
    }
}
