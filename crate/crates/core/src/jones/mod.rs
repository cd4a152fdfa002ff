//! The state sum for the colored Jones function of a zero-framed knot.

pub mod closed_form;

use crate::diagram::{states_in_box, states_with_total_at_most, EnhancedGaussDiagram, StateVector};
use crate::error::{Error, Result};
use crate::qarith::{
    q_binomial, reduce_mod_cyclotomic_q, LaurentPoly, MuPoly, PolyInMu, QKind,
};

/// One summand of the state sum as a polynomial in `q^mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateTerm {
    pub state: Vec<u32>,
    pub value: MuPoly,
}

struct StateData {
    c0: i64,
    d: i64,
    s: Vec<i64>,
    sigma: Vec<i64>,
}

fn state_data(d: &EnhancedGaussDiagram, l: &StateVector) -> Result<StateData> {
    Ok(StateData {
        c0: d.c0_of_l(l)?,
        d: d.d_of_l(l)?,
        s: d.s_vector(l),
        sigma: d.signs().iter().map(|s| s.value()).collect(),
    })
}

/// `q^{c0} * prod_j [s_j + l_j choose l_j]_{sigma_j}`, the part independent of `mu`.
fn constant_part(data: &StateData, l: &StateVector) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::q_pow(data.c0);
    for j in 0..l.len() {
        let b = q_binomial(data.s[j], l[j] as i64, QKind::for_sign(data.sigma[j]))?;
        if b.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        out *= &b;
    }
    Ok(out)
}

/// The summand for state `l`: zero when the level walk is invalid.
pub fn state_term(d: &EnhancedGaussDiagram, l: &StateVector) -> Result<StateTerm> {
    let zero = StateTerm {
        state: l.to_vec(),
        value: MuPoly::zero(),
    };
    if !d.is_valid_state(l) {
        return Ok(zero);
    }
    let data = state_data(d, l)?;
    let constant = constant_part(&data, l)?;
    if constant.is_zero() {
        return Ok(zero);
    }
    let mut value = MuPoly::monomial(data.d, constant);
    for j in 0..l.len() {
        let sigma = data.sigma[j];
        for p in 1..=l[j] as i64 {
            let mut factor = MuPoly::monomial(sigma, LaurentPoly::q_pow(-sigma * (data.s[j] + p)));
            factor.add_term(0, &LaurentPoly::constant(-1));
            value = &value * &factor;
        }
    }
    Ok(StateTerm {
        state: l.to_vec(),
        value,
    })
}

/// Value of the summand at an integer color, without building the `MuPoly`.
fn state_value_at(d: &EnhancedGaussDiagram, l: &StateVector, mu: i64) -> Result<LaurentPoly> {
    let data = state_data(d, l)?;
    let mut value = constant_part(&data, l)?;
    if value.is_zero() {
        return Ok(value);
    }
    value = value.shift(4 * data.d * mu);
    for j in 0..l.len() {
        let sigma = data.sigma[j];
        for p in 1..=l[j] as i64 {
            let e = sigma * (mu - data.s[j] - p);
            if e == 0 {
                return Ok(LaurentPoly::zero());
            }
            value *= &LaurentPoly::from_q_terms([(e, 1), (0, -1)]);
        }
    }
    Ok(value)
}

/// Sums `f(item)` over `items` on up to `workers` threads. Each worker takes a
/// contiguous slice and the partial sums are added in slice order.
pub(crate) fn parallel_sum<I, T, F>(items: &[I], workers: usize, zero: T, f: F) -> Result<T>
where
    I: Sync,
    T: Send + Sync + Clone + for<'a> std::ops::AddAssign<&'a T>,
    F: Fn(&I) -> Result<T> + Sync,
{
    let workers = workers.max(1).min(items.len().max(1));
    let serial = |chunk: &[I]| -> Result<T> {
        let mut acc = zero.clone();
        for item in chunk {
            acc += &f(item)?;
        }
        Ok(acc)
    };
    if workers == 1 {
        return serial(items);
    }
    let chunk = items.len().div_ceil(workers);
    let partials: Vec<Result<T>> = std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| scope.spawn(move || serial(c)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("state-sum worker panicked"))
            .collect()
    });
    let mut total = zero;
    for part in partials {
        total += &part?;
    }
    Ok(total)
}

fn check_color(mu: i64) -> Result<()> {
    if mu < 1 {
        return Err(Error::InvalidArgument(format!("color must be at least 1, got {mu}")));
    }
    Ok(())
}

/// Zero-framed colored Jones polynomial `J'(mu)` in `q`.
pub fn colored_jones(d: &EnhancedGaussDiagram, mu: i64) -> Result<LaurentPoly> {
    colored_jones_with_workers(d, mu, 1)
}

pub fn colored_jones_with_workers(
    d: &EnhancedGaussDiagram,
    mu: i64,
    workers: usize,
) -> Result<LaurentPoly> {
    check_color(mu)?;
    let states = states_in_box(d, mu as u32);
    parallel_sum(&states, workers, LaurentPoly::zero(), |l| state_value_at(d, l, mu))
}

/// Sum of all state terms with `sum_j l_j <= total`, as a polynomial in `q^mu`.
pub fn truncated_state_sum(d: &EnhancedGaussDiagram, total: u32, workers: usize) -> Result<MuPoly> {
    let states = states_with_total_at_most(d, total);
    parallel_sum(&states, workers, MuPoly::zero(), |l| Ok(state_term(d, l)?.value))
}

/// Coefficients of `h^0 .. h^order` of the colored Jones function, each a
/// polynomial in `mu`.
pub fn jones_h_series(d: &EnhancedGaussDiagram, order: usize) -> Result<Vec<PolyInMu>> {
    truncated_state_sum(d, order as u32, 1)?.h_expansion(order)
}

/// Kashaev invariant: the state sum at color `k` read at a primitive `k`-th
/// root of unity, as the canonical representative modulo `Phi_k(q)`.
pub fn kashaev(d: &EnhancedGaussDiagram, k: i64) -> Result<LaurentPoly> {
    kashaev_with_workers(d, k, 1)
}

pub fn kashaev_with_workers(d: &EnhancedGaussDiagram, k: i64, workers: usize) -> Result<LaurentPoly> {
    check_color(k)?;
    let states = states_in_box(d, k as u32);
    let total = parallel_sum(&states, workers, LaurentPoly::zero(), |l| {
        let data = state_data(d, l)?;
        let mut term = LaurentPoly::q_pow(data.c0);
        for j in 0..l.len() {
            let (s, lj, sigma) = (data.s[j], l[j] as i64, data.sigma[j]);
            term *= &q_binomial(s, lj, QKind::AsymPlus)?;
            term *= &q_binomial(s, lj, QKind::AsymMinus)?;
            for p in 1..=lj {
                term *= &LaurentPoly::from_q_terms([(-sigma * p, 1), (0, -1)]);
            }
            if term.is_zero() {
                break;
            }
        }
        Ok(term)
    })?;
    reduce_mod_cyclotomic_q(&total, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::builtin;
    use crate::qarith::{q_factorial, to_h_series};

    fn q(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_q_terms(terms.iter().copied())
    }

    #[test]
    fn trefoil_state_terms() {
        let t = builtin("trefoil").unwrap();
        let term = state_term(&t, &[0, 0, 0]).unwrap().value;
        assert_eq!(term, MuPoly::monomial(-1, LaurentPoly::q_pow(1)));
        let term = state_term(&t, &[0, 1, 0]).unwrap().value;
        let mut expected = MuPoly::monomial(-2, LaurentPoly::q_pow(1));
        expected.add_term(-3, &-LaurentPoly::q_pow(2));
        assert_eq!(term, expected);
        assert!(state_term(&t, &[1, 0, 0]).unwrap().value.is_zero());
    }

    #[test]
    fn state_terms_are_integral_and_match_direct_evaluation() {
        for name in ["trefoil", "figure8"] {
            let d = builtin(name).unwrap();
            for l in states_with_total_at_most(&d, 5) {
                let term = state_term(&d, &l).unwrap().value;
                assert!(term.is_integral());
                for mu in 1..5 {
                    assert_eq!(term.eval_at(mu), state_value_at(&d, &l, mu).unwrap());
                }
            }
        }
    }

    #[test]
    fn small_colors() {
        let t = builtin("trefoil").unwrap();
        let e = builtin("figure8").unwrap();
        let u = builtin("unknot").unwrap();
        assert_eq!(colored_jones(&t, 2).unwrap(), q(&[(-1, 1), (-3, 1), (-4, -1)]));
        assert_eq!(
            colored_jones(&e, 2).unwrap(),
            q(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)])
        );
        assert_eq!(
            colored_jones(&t, 3).unwrap(),
            q(&[(-2, 1), (-5, 1), (-7, -1), (-8, 1), (-9, -1), (-10, -1), (-11, 1)])
        );
        for mu in 1..5 {
            assert!(colored_jones(&u, mu).unwrap().is_one());
            assert!(colored_jones(&t, 1).unwrap().is_one());
        }
        assert!(colored_jones(&t, 0).is_err());
    }

    #[test]
    fn h_series_low_orders() {
        for name in ["unknot", "trefoil", "figure8"] {
            let d = builtin(name).unwrap();
            let series = jones_h_series(&d, 4).unwrap();
            assert_eq!(series[0], PolyInMu::from_ints(&[1]), "{name}");
            assert!(series[1].is_zero(), "{name}");
            for (n, c) in series.iter().enumerate() {
                assert!(c.degree().unwrap_or(0) <= n, "{name} h^{n}");
            }
            // Specialization to integer colors.
            for mu in 2..5 {
                let direct = to_h_series(&colored_jones(&d, mu).unwrap(), 4).unwrap();
                for n in 0..=4 {
                    assert_eq!(&series[n].eval_int(mu), direct.coeff(n), "{name} mu={mu} h^{n}");
                }
            }
        }
    }

    #[test]
    fn state_terms_divisible_by_h_powers_and_factorials() {
        for name in ["trefoil", "figure8"] {
            let d = builtin(name).unwrap();
            for l in states_with_total_at_most(&d, 4) {
                let total: usize = l.iter().map(|x| *x as usize).sum();
                let exp = state_term(&d, &l).unwrap().value.h_expansion(total).unwrap();
                for c in &exp[..total] {
                    assert!(c.is_zero(), "{name} {l:?}");
                }
                let fact: LaurentPoly = l
                    .iter()
                    .zip(d.signs())
                    .map(|(lj, s)| q_factorial(*lj as i64, QKind::for_sign(s.value())).unwrap())
                    .product();
                for mu in 1..6 {
                    let v = state_value_at(&d, &l, mu).unwrap();
                    assert!(fact.divides(&v), "{name} {l:?} mu={mu}");
                }
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let e = builtin("figure8").unwrap();
        let one = colored_jones_with_workers(&e, 5, 1).unwrap();
        for w in [2, 3, 4, 7] {
            assert_eq!(colored_jones_with_workers(&e, 5, w).unwrap(), one);
        }
    }

    #[test]
    fn kashaev_values() {
        for name in crate::diagram::BUILTIN_NAMES {
            let d = builtin(name).unwrap();
            assert!(kashaev(&d, 1).unwrap().is_one());
            for k in 2..7 {
                let direct = reduce_mod_cyclotomic_q(&colored_jones(&d, k).unwrap(), k).unwrap();
                assert_eq!(kashaev(&d, k).unwrap(), direct, "{name} K={k}");
            }
        }
        let e = builtin("figure8").unwrap();
        for k in 2..8 {
            let rep = kashaev(&e, k).unwrap();
            assert_eq!(reduce_mod_cyclotomic_q(&rep.subst_inverse(), k).unwrap(), rep);
        }
    }
}
