use betazeta::conjecture::{sweep, Conjecture};
use betazeta::exact::{bernoulli, binomial_row, euler_number, harmonic, zeta_even_exact};
use betazeta::identities::{
    registry, theorem1_beta_with, theorem1_finite_part, theorem1_series_direct,
    zeta_series_half_minus_quarter, zeta_series_sum, SeriesRoute,
};
use betazeta::numeric::{
    beta_direct, closedform_eval, constant, hurwitz_zeta, pow10_neg, zeta_odd, Constant,
    NumericValue,
};
use betazeta::{PrecisionContext, Rational};
use proptest::prelude::*;
use rug::Float;

fn ctx(p: u32) -> PrecisionContext {
    PrecisionContext::new(p).unwrap()
}

fn eval_op(op: u8, arg: u32, c: &PrecisionContext) -> NumericValue {
    match op {
        0 => zeta_odd(2 * arg + 1, c).unwrap(),
        1 => beta_direct(arg, c).unwrap(),
        2 => hurwitz_zeta(arg + 1, &Rational::from((1, 4)), c).unwrap(),
        3 => constant(Constant::LnPi, c),
        _ => zeta_series_sum(arg.min(6), &Rational::from((1, 2)), c).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bernoulli_recurrence(n in 1usize..90) {
        let row = binomial_row(n + 1);
        let mut acc = Rational::new();
        for (k, c) in row.iter().enumerate().take(n + 1) {
            acc += Rational::from(c * &bernoulli(k));
        }
        prop_assert_eq!(acc, Rational::new());
    }

    #[test]
    fn euler_number_parity_and_sign(n in 1usize..45) {
        prop_assert_eq!(euler_number(2 * n - 1), 0);
        let e = euler_number(2 * n);
        prop_assert_eq!(e > 0, n % 2 == 0);
    }

    #[test]
    fn harmonic_steps(n in 2u32..600) {
        prop_assert_eq!(harmonic(n) - harmonic(n - 1), Rational::from((1, n)));
    }

    #[test]
    fn accuracy_contract(p in 10u32..70, op in 0u8..5, arg in 1u32..9) {
        let lo = eval_op(op, arg, &ctx(p));
        let hi = eval_op(op, arg, &ctx(p + 10));
        let d = lo.abs_diff(&hi);
        prop_assert!(d < pow10_neg(p), "op {op} arg {arg}: {d}");
        prop_assert!(lo.abs_error < pow10_neg(p));
    }

    #[test]
    fn odd_zeta_range_and_order(s in (1u32..150).prop_map(|m| 2 * m + 1)) {
        let c = ctx(30);
        let z = zeta_odd(s, &c).unwrap().value;
        let next = zeta_odd(s + 2, &c).unwrap().value;
        // zeta(s) - 1 ~ 2^{-s} is only resolvable while it exceeds 10^{-(P+g)}
        if (s as f64 + 3.0) * 2f64.log10() < c.working_digits() as f64 - 1.0 {
            prop_assert!(z > 1 && z < 1.21);
            prop_assert!(next < z);
        } else {
            // zeta(s) - 1 < 2^{1-s}
            let bound = Float::with_val(64, 1u32) >> (s as i32 - 1);
            prop_assert!(z >= 1 && next <= z);
            prop_assert!(Float::with_val(64, &z - 1u32) <= bound + c.tolerance());
        }
    }

    #[test]
    fn hurwitz_at_one_is_even_zeta(m in 1u32..12) {
        let c = ctx(40);
        let h = hurwitz_zeta(2 * m, &Rational::from(1), &c).unwrap();
        let z = closedform_eval(&zeta_even_exact(m).unwrap(), &c).unwrap();
        prop_assert!(h.abs_diff(&z) < c.contract());
    }

    #[test]
    fn series_engine_linear_in_weights(k in 1u32..7) {
        let c = ctx(40);
        let one_pass = zeta_series_half_minus_quarter(k, &c).unwrap();
        let two = zeta_series_sum(k, &Rational::from((1, 2)), &c)
            .unwrap()
            .sub(&zeta_series_sum(k, &Rational::from((1, 4)), &c).unwrap());
        prop_assert!(one_pass.abs_diff(&two) < pow10_neg(35));
    }
}

#[test]
fn registry_at_fifty_digits() {
    let c = ctx(50);
    for ident in registry() {
        let r = ident.evaluate(&c).unwrap();
        let floor = r.digits as i64 - 5;
        assert!(
            r.digits_agreed >= floor.min(45),
            "{}: {} digits",
            r.id,
            r.digits_agreed
        );
    }
}

#[test]
fn beta_routes_agree() {
    let c = ctx(50);
    for k in 1..=5 {
        let a = theorem1_beta_with(k, SeriesRoute::Conversion, &c).unwrap();
        let b = theorem1_beta_with(k, SeriesRoute::EulerPolynomial, &c).unwrap();
        assert!(a.abs_diff(&b) < pow10_neg(45), "k = {k}");
    }
}

#[test]
fn beta4_tail_rearrangement() {
    // beta(4) minus its ln2 and zeta(3) terms is pi^5/2^6 times the tail series
    let c = ctx(50);
    let rest = beta_direct(4, &c)
        .unwrap()
        .sub(&closedform_eval(&theorem1_finite_part(2), &c).unwrap());
    let pi5 = constant(Constant::Pi, &c).powi(5);
    let tail = theorem1_series_direct(2, &c)
        .unwrap()
        .mul(&pi5)
        .scale(&Rational::from((1, 64)));
    assert!(rest.abs_diff(&tail) < pow10_neg(45));
}

#[test]
fn sweep_split_matches_whole() {
    let c = ctx(30);
    let whole = sweep(Conjecture::Half, 1, 199, &c).unwrap();
    let a = sweep(Conjecture::Half, 1, 99, &c).unwrap();
    let b = sweep(Conjecture::Half, 101, 199, &c).unwrap();
    let parts: Vec<_> = a.results.iter().chain(&b.results).collect();
    assert_eq!(parts.len(), whole.results.len());
    for (p, w) in parts.iter().zip(&whole.results) {
        assert_eq!(p.n, w.n);
        assert_eq!(p.lhs.value, w.lhs.value);
        assert_eq!(p.rhs.value, w.rhs.value);
        assert_eq!(p.abs_diff, w.abs_diff);
    }
}

#[test]
fn quarter_passes_where_half_passes() {
    let c = ctx(30);
    let half = sweep(Conjecture::Half, 1, 99, &c).unwrap();
    let quarter = sweep(Conjecture::Quarter, 1, 99, &c).unwrap();
    for (h, q) in half.results.iter().zip(&quarter.results) {
        if h.pass() {
            assert!(q.pass(), "N = {}: rel {}", q.n, q.rel_diff);
        }
    }
}

#[test]
fn tail_doubling() {
    use betazeta::identities::zeta_series_detailed;
    let c = ctx(40);
    for (k, x) in [(1, (1, 2)), (3, (1, 4)), (5, (1, 2)), (2, (1, 4))] {
        let x = Rational::from(x);
        let base = zeta_series_detailed(k, &x, &c, None).unwrap();
        let twice = zeta_series_detailed(k, &x, &c, Some(2 * base.terms)).unwrap();
        let shift = Float::with_val(64, &base.value.value - &twice.value.value).abs();
        assert!(shift < base.tail_bound, "k = {k}, x = {x}");
    }
}
