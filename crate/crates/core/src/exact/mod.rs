//! Exact integer and rational combinatorics plus the symbolic
//! [`ClosedForm`] representation. Nothing in this module touches floating
//! point.

mod closed_form;
mod numbers;

pub use closed_form::{
    beta_odd_exact, closedform_combine, zeta_even_exact, BasisConstant, ClosedForm,
};
pub use numbers::{
    bernoulli, bernoulli_cached_len, binomial_row, euler_number, euler_poly, euler_poly_one_odd,
    factorial, harmonic, zeta_even_coefficient,
};
