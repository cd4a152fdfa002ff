//! q-integers, q-factorials, q-binomials and cyclotomic polynomials.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::qarith::LaurentPoly;

/// Which family of q-numbers to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QKind {
    /// `[n] = (v^n - v^-n) / (v - v^-1)`.
    Symmetric,
    /// `{n} = (q^n - 1) / (q - 1)`.
    AsymPlus,
    /// `{n}_- = {n}` with `q -> q^-1`.
    AsymMinus,
}

impl QKind {
    /// The asymmetric kind matching a crossing sign.
    pub fn for_sign(sign: i64) -> Self {
        if sign > 0 {
            QKind::AsymPlus
        } else {
            QKind::AsymMinus
        }
    }
}

/// q-integer for any integer `n`; negative arguments follow the same closed
/// formula (`{-n} = -q^-n {n}`, `[-n] = -[n]`).
pub(crate) fn q_integer_signed(n: i64, kind: QKind) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::zero();
    }
    let m = n.abs();
    match kind {
        QKind::Symmetric => {
            let p = LaurentPoly::from_u_terms((0..m).map(|i| (2 * (m - 1 - 2 * i), 1)));
            if n > 0 {
                p
            } else {
                -p
            }
        }
        QKind::AsymPlus | QKind::AsymMinus => {
            let step = if kind == QKind::AsymPlus { 1 } else { -1 };
            if n > 0 {
                LaurentPoly::from_q_terms((0..m).map(|i| (step * i, 1)))
            } else {
                LaurentPoly::from_q_terms((1..=m).map(|i| (-step * i, -1)))
            }
        }
    }
}

pub fn q_integer(n: i64, kind: QKind) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::NegativeArgument(n));
    }
    Ok(q_integer_signed(n, kind))
}

pub fn q_factorial(n: i64, kind: QKind) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::NegativeArgument(n));
    }
    Ok((1..=n).map(|i| q_integer_signed(i, kind)).product())
}

/// Generalized q-binomial `prod_{i=1}^{l} {s+i} / {i}`, i.e. the binomial with
/// upper argument `s + l` and lower argument `l`. `s` may be negative.
pub fn q_binomial(s: i64, l: i64, kind: QKind) -> Result<LaurentPoly> {
    if l < 0 {
        return Err(Error::NegativeArgument(l));
    }
    if l == 0 {
        return Ok(LaurentPoly::one());
    }
    if -l <= s && s <= -1 {
        return Ok(LaurentPoly::zero());
    }
    let key = (s, l, kind);
    if let Some(hit) = binomial_cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let numerator: LaurentPoly = (1..=l).map(|i| q_integer_signed(s + i, kind)).product();
    let value = numerator.exact_div(&q_factorial(l, kind)?)?;
    binomial_cache().lock().unwrap().insert(key, value.clone());
    Ok(value)
}

type BinomialCache = Mutex<HashMap<(i64, i64, QKind), LaurentPoly>>;

fn binomial_cache() -> &'static BinomialCache {
    static CACHE: OnceLock<BinomialCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `q -> q^-1`.
pub fn subst_q_inverse(p: &LaurentPoly) -> LaurentPoly {
    p.subst_inverse()
}

/// The `l`-th cyclotomic polynomial, as a polynomial in `q`.
pub fn cyclotomic(l: i64) -> Result<LaurentPoly> {
    Ok(cyclotomic_in_unit(l)?.stretch(4))
}

impl LaurentPoly {
    /// Multiplies every exponent by `k` (`x -> x^k` on the exponent unit).
    pub(crate) fn stretch(&self, k: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(e * k, c.clone());
        }
        out
    }
}

/// `Phi_l` with exponents in the bare variable (stored in the `u` slot).
pub(crate) fn cyclotomic_in_unit(l: i64) -> Result<LaurentPoly> {
    if l < 1 {
        return Err(Error::InvalidArgument(format!(
            "cyclotomic index must be at least 1, got {l}"
        )));
    }
    static CACHE: OnceLock<Mutex<HashMap<i64, LaurentPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&l) {
        return Ok(hit.clone());
    }
    let mut value = LaurentPoly::from_u_terms([(l, 1), (0, -1)]);
    for d in 1..l {
        if l % d == 0 {
            value = value.exact_div(&cyclotomic_in_unit(d)?)?;
        }
    }
    cache.lock().unwrap().insert(l, value.clone());
    Ok(value)
}

/// `<l>! = prod_{p=1}^{l} Phi_p(q)`.
pub fn angle_factorial(l: i64) -> Result<LaurentPoly> {
    if l < 0 {
        return Err(Error::NegativeArgument(l));
    }
    (1..=l).map(cyclotomic).product()
}

/// Canonical representative of `p` in `Q[u] / Phi_n(u)`.
pub fn reduce_mod_cyclotomic(p: &LaurentPoly, n: i64) -> Result<LaurentPoly> {
    let phi = cyclotomic_in_unit(n)?;
    Ok(reduce_mod_monic(p, &phi, n))
}

/// Canonical representative of a pure `q`-polynomial in `Q[q] / Phi_k(q)`,
/// returned in `q` units.
pub fn reduce_mod_cyclotomic_q(p: &LaurentPoly, k: i64) -> Result<LaurentPoly> {
    if !p.is_q_poly() {
        return Err(Error::QuarterPowerPresent(p.clone()));
    }
    let mut in_q = LaurentPoly::zero();
    for (e, c) in p.terms() {
        in_q.add_term(e / 4, c.clone());
    }
    let phi = cyclotomic_in_unit(k)?;
    Ok(reduce_mod_monic(&in_q, &phi, k).stretch(4))
}

/// `phi` divides `x^n - 1`, so `x^n` is 1 in the quotient and negative
/// exponents can be lifted by multiples of `n` before dividing.
fn reduce_mod_monic(p: &LaurentPoly, phi: &LaurentPoly, n: i64) -> LaurentPoly {
    let mut lifted = LaurentPoly::zero();
    for (e, c) in p.terms() {
        lifted.add_term(e.rem_euclid(n), c.clone());
    }
    let deg = phi.max_exp().unwrap_or(0);
    // Schoolbook reduction from the top; phi is monic with min exponent 0.
    let mut rem = lifted;
    while let Some(top) = rem.max_exp() {
        if top < deg {
            break;
        }
        let c = rem.coeff(top);
        rem -= &phi.shift(top - deg).scale(&c);
    }
    rem
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_q_coeffs(coeffs)
    }

    #[test]
    fn q_integers() {
        assert_eq!(
            q_integer(3, QKind::Symmetric).unwrap(),
            LaurentPoly::from_u_terms([(-4, 1), (0, 1), (4, 1)])
        );
        assert_eq!(q_integer(3, QKind::AsymPlus).unwrap(), q(&[1, 1, 1]));
        assert_eq!(
            q_integer(3, QKind::AsymMinus).unwrap(),
            LaurentPoly::from_q_terms([(-2, 1), (-1, 1), (0, 1)])
        );
        for kind in [QKind::Symmetric, QKind::AsymPlus, QKind::AsymMinus] {
            assert!(q_integer(0, kind).unwrap().is_zero());
        }
        assert_eq!(q_integer(-1, QKind::AsymPlus), Err(Error::NegativeArgument(-1)));
    }

    #[test]
    fn asym_minus_is_shifted_plus() {
        for n in 1..8 {
            let plus = q_integer(n, QKind::AsymPlus).unwrap();
            let minus = q_integer(n, QKind::AsymMinus).unwrap();
            assert_eq!(minus, plus.shift(4 * (1 - n)));
            assert_eq!(minus, subst_q_inverse(&plus));
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(q_factorial(3, QKind::AsymPlus).unwrap(), q(&[1, 2, 2, 1]));
        assert!(q_factorial(0, QKind::Symmetric).unwrap().is_one());
        let asym = q_factorial(4, QKind::AsymPlus).unwrap();
        let sym = q_factorial(4, QKind::Symmetric).unwrap();
        assert_eq!(asym, sym.shift(2 * 6));
        assert!(q_factorial(-2, QKind::AsymPlus).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(q_binomial(2, 2, QKind::AsymPlus).unwrap(), q(&[1, 1, 2, 1, 1]));
        assert!(q_binomial(-1, 3, QKind::AsymPlus).unwrap().is_zero());
        for s in -6..6 {
            assert!(q_binomial(s, 0, QKind::AsymMinus).unwrap().is_one());
        }
        // s < -l: signed product of negative q-integers, still a Laurent polynomial.
        let b = q_binomial(-3, 1, QKind::AsymPlus).unwrap();
        assert_eq!(b, LaurentPoly::from_q_terms([(-2, -1), (-1, -1)]));
        assert!(q_binomial(1, -1, QKind::AsymPlus).is_err());
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap(), q(&[-1, 1]));
        assert_eq!(cyclotomic(2).unwrap(), q(&[1, 1]));
        assert_eq!(cyclotomic(4).unwrap(), q(&[1, 0, 1]));
        assert_eq!(cyclotomic(6).unwrap(), q(&[1, -1, 1]));
        assert_eq!(cyclotomic(12).unwrap(), q(&[1, 0, -1, 0, 1]));
        assert!(cyclotomic(0).is_err());
    }

    #[test]
    fn angle_factorials() {
        assert_eq!(angle_factorial(2).unwrap(), q(&[-1, 0, 1]));
        assert!(angle_factorial(0).unwrap().is_one());
        assert_eq!(angle_factorial(3).unwrap(), &q(&[-1, 0, 1]) * &q(&[1, 1, 1]));
    }

    #[test]
    fn reductions() {
        let p = LaurentPoly::from_u_terms([(4, 1), (0, -1)]);
        assert!(reduce_mod_cyclotomic(&p, 4).unwrap().is_zero());
        assert!(reduce_mod_cyclotomic(&LaurentPoly::q_pow(1), 1).unwrap().is_one());
        assert!(reduce_mod_cyclotomic(&q(&[1, 1, 1]), 12).unwrap().is_zero());
        assert!(reduce_mod_cyclotomic_q(&q(&[1, 1, 1]), 3).unwrap().is_zero());
        // q^-1 = q^2 mod Phi_3 = -1 - q.
        assert_eq!(
            reduce_mod_cyclotomic_q(&LaurentPoly::q_pow(-1), 3).unwrap(),
            q(&[-1, -1])
        );
        assert!(reduce_mod_cyclotomic_q(&LaurentPoly::u_pow(1), 3).is_err());
    }
}
