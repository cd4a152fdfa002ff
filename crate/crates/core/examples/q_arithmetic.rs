//! Exact q-arithmetic: q-integers, q-binomials, cyclotomic reduction and
//! expansion in h = q - 1.

use qknot::qarith::{
    angle_factorial, cyclotomic, q_binomial, q_integer, reduce_mod_cyclotomic_q, to_h_series,
    LaurentPoly, QKind,
};

fn main() -> qknot::Result<()> {
    println!("[3]        = {}", q_integer(3, QKind::Symmetric)?);
    println!("{{3}}        = {}", q_integer(3, QKind::AsymPlus)?);
    println!("{{3}}_-      = {}", q_integer(3, QKind::AsymMinus)?);
    println!("{{4 choose 2}} = {}", q_binomial(2, 2, QKind::AsymPlus)?);
    println!("Phi_6(q)   = {}", cyclotomic(6)?);
    println!("<4>!       = {}", angle_factorial(4)?);

    let p = LaurentPoly::from_q_terms([(7, 1), (-3, 2), (0, -1)]);
    println!("p          = {p}");
    println!("p mod Phi_5 = {}", reduce_mod_cyclotomic_q(&p, 5)?);
    println!("p in h     = {}", to_h_series(&p, 4)?);

    let quotient = LaurentPoly::from_q_terms([(6, 1), (0, -1)]).exact_div(&cyclotomic(3)?)?;
    println!("(q^6 - 1) / Phi_3 = {quotient}");
    println!("json: {}", quotient.to_json());
    Ok(())
}
