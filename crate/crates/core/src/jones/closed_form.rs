//! Known closed forms for the trefoil and figure-8 knot, used as independent
//! reference values.

use crate::error::Result;
use crate::qarith::{reduce_mod_cyclotomic_q, LaurentPoly};

/// `(q^a; q^step)_k = prod_{i<k} (1 - q^{a + step*i})`.
pub fn pochhammer(a: i64, step: i64, k: i64) -> LaurentPoly {
    (0..k)
        .map(|i| LaurentPoly::from_q_terms([(0, 1), (a + step * i, -1)]))
        .product()
}

/// `q * sum_l q^{-(l+1) mu} (q^{1-mu}; q)_l`.
pub fn trefoil(mu: i64) -> LaurentPoly {
    (0..mu)
        .map(|l| pochhammer(1 - mu, 1, l).shift(4 * (1 - (l + 1) * mu)))
        .sum()
}

/// `sum_k (-1)^k q^{-k(k+3)/2} q^{-k mu} (q^{mu+1}; q)_k (q^{mu-1}; q^-1)_k`.
pub fn trefoil_alternating(mu: i64) -> LaurentPoly {
    (0..mu)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let p = &pochhammer(mu + 1, 1, k) * &pochhammer(mu - 1, -1, k);
            p.scale(&crate::qarith::rat(sign))
                .shift(4 * (-k * (k + 3) / 2 - k * mu))
        })
        .sum()
}

/// `sum_k q^{k mu} (q^{-mu-1}; q^-1)_k (q^{1-mu}; q)_k`.
pub fn figure8(mu: i64) -> LaurentPoly {
    (0..mu)
        .map(|k| (&pochhammer(-mu - 1, -1, k) * &pochhammer(1 - mu, 1, k)).shift(4 * k * mu))
        .sum()
}

/// `q * sum_l (1-q)...(1-q^l)` modulo `Phi_k(q)`.
pub fn trefoil_kashaev(k: i64) -> Result<LaurentPoly> {
    let sum: LaurentPoly = (0..k).map(|l| pochhammer(1, 1, l).shift(4)).sum();
    reduce_mod_cyclotomic_q(&sum, k)
}

/// `sum_k (q^-1; q^-1)_k (q; q)_k` modulo `Phi_k(q)`.
pub fn figure8_kashaev(k: i64) -> Result<LaurentPoly> {
    let sum: LaurentPoly = (0..k)
        .map(|i| &pochhammer(-1, -1, i) * &pochhammer(1, 1, i))
        .sum();
    reduce_mod_cyclotomic_q(&sum, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::builtin;
    use crate::jones::{colored_jones, kashaev};

    #[test]
    fn state_sum_matches_closed_forms() {
        let t = builtin("trefoil").unwrap();
        let e = builtin("figure8").unwrap();
        for mu in 1..6 {
            let jt = colored_jones(&t, mu).unwrap();
            assert_eq!(jt, trefoil(mu), "mu={mu}");
            assert_eq!(jt, trefoil_alternating(mu), "mu={mu}");
            assert_eq!(colored_jones(&e, mu).unwrap(), figure8(mu), "mu={mu}");
        }
        for k in 1..8 {
            assert_eq!(kashaev(&t, k).unwrap(), trefoil_kashaev(k).unwrap(), "K={k}");
            assert_eq!(kashaev(&e, k).unwrap(), figure8_kashaev(k).unwrap(), "K={k}");
        }
    }
}
