//! Exact arithmetic: Laurent polynomials in `u = q^{1/4}`, truncated series
//! in `h = q - 1`, polynomials in the formal monomial `q^mu`, and the
//! q-combinatorics built on top of them.

mod laurent;
mod qnum;
mod series;

pub use laurent::LaurentPoly;
pub use qnum::{
    angle_factorial, cyclotomic, q_binomial, q_factorial, q_integer, reduce_mod_cyclotomic,
    reduce_mod_cyclotomic_q, subst_q_inverse, QKind,
};
pub use series::{
    general_binomial_series, h_adic_valuation, to_h_series, HSeries, MuPoly, PolyInMu,
};

pub(crate) use laurent::rat;
pub(crate) use qnum::q_integer_signed;
pub(crate) use series::require_integral_series;
