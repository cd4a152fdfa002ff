//! WRT invariants and the Ohtsuki series of integer homology spheres obtained
//! by `+1` or `-1` surgery on a knot.

mod audit;

pub use audit::{
    bounds_audit, congruence_probe, corollary_audit, lemma1_audit, lemma2_audit, lemma3_audit,
    lemma_divisibility_audit, theorem2_term_audit, AuditRecord, AuditReport, CongruenceRow,
};

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use crate::diagram::{states_in_box, states_with_total_at_most, EnhancedGaussDiagram};
use crate::error::{Error, Result};
use crate::jones::{colored_jones, parallel_sum, state_term};
use crate::oracle::{builtin_word, evaluate_tangle, framing_factor, TangleWord};
use crate::qarith::{
    q_integer, reduce_mod_cyclotomic, reduce_mod_cyclotomic_q, require_integral_series,
    to_h_series, HSeries, LaurentPoly, MuPoly, QKind,
};

fn check_framing(f: i64) -> Result<()> {
    if f != 1 && f != -1 {
        return Err(Error::InvalidArgument(format!("framing must be +1 or -1, got {f}")));
    }
    Ok(())
}

fn check_level(k: i64) -> Result<()> {
    if k < 1 || k % 2 == 0 {
        return Err(Error::InvalidArgument(format!("level must be an odd positive integer, got {k}")));
    }
    Ok(())
}

/// `phi_f(q^{m mu}) = (q^{-f(m+1)^2} + q^{-f(m-1)^2} - 2 q^{-f m^2}) / (2 q^{-f} - 2)`.
pub fn phi_monomial(m: i64, f: i64) -> Result<LaurentPoly> {
    check_framing(f)?;
    static CACHE: OnceLock<Mutex<HashMap<(i64, i64), LaurentPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(m, f)) {
        return Ok(hit.clone());
    }
    let numer = LaurentPoly::from_q_terms([
        (-f * (m + 1) * (m + 1), 1),
        (-f * (m - 1) * (m - 1), 1),
        (-f * m * m, -2),
    ]);
    let denom = LaurentPoly::from_q_terms([(-f, 2), (0, -2)]);
    let value = numer.exact_div(&denom)?;
    cache.lock().unwrap().insert((m, f), value.clone());
    Ok(value)
}

/// Linear extension of `phi_f` to polynomials in `q^mu`.
pub fn phi_apply(p: &MuPoly, f: i64) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for (m, c) in p.terms() {
        out += &(c * &phi_monomial(m, f)?);
    }
    Ok(out)
}

/// The Ohtsuki series `sum_m lambda_m h^m` truncated at `h^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OhtsukiSeries {
    pub series: HSeries,
    pub framing: i64,
    pub order: usize,
    pub knot: Option<String>,
}

impl OhtsukiSeries {
    pub fn lambdas(&self) -> Vec<BigInt> {
        self.series
            .integer_coeffs()
            .expect("integrality is checked on construction")
    }
}

/// Ohtsuki series of `f`-surgery on the knot, from all states with
/// `sum_j l_j <= 2 * order`.
pub fn ohtsuki_series(d: &EnhancedGaussDiagram, f: i64, order: usize) -> Result<OhtsukiSeries> {
    ohtsuki_series_with_workers(d, f, order, 1)
}

pub fn ohtsuki_series_with_workers(
    d: &EnhancedGaussDiagram,
    f: i64,
    order: usize,
    workers: usize,
) -> Result<OhtsukiSeries> {
    check_framing(f)?;
    let states = states_with_total_at_most(d, 2 * order as u32);
    let series = parallel_sum(&states, workers, HSeries::zero(order), |l| {
        let term = state_term(d, l)?.value;
        to_h_series(&phi_apply(&term, f)?, order)
    })?;
    let lambdas = require_integral_series(&series, "Ohtsuki series")?;
    if lambdas[0] != BigInt::from(1) {
        return Err(Error::IntegralityViolation(format!(
            "leading Ohtsuki coefficient is {}, expected 1",
            lambdas[0]
        )));
    }
    Ok(OhtsukiSeries {
        series,
        framing: f,
        order,
        knot: d.name().map(str::to_string),
    })
}

/// The cyclotomic WRT sum over states with `l_j < k`, before reduction;
/// coefficients may be
/// half-integers.
pub fn theorem2_polynomial(d: &EnhancedGaussDiagram, f: i64, k: i64, workers: usize) -> Result<LaurentPoly> {
    check_framing(f)?;
    check_level(k)?;
    let states = states_in_box(d, k as u32);
    parallel_sum(&states, workers, LaurentPoly::zero(), |l| {
        phi_apply(&state_term(d, l)?.value, f)
    })
}

/// `Z_K(M)` as the canonical representative modulo `Phi_K(q)`.
pub fn wrt_theorem2(d: &EnhancedGaussDiagram, f: i64, k: i64) -> Result<LaurentPoly> {
    wrt_theorem2_with_workers(d, f, k, 1)
}

pub fn wrt_theorem2_with_workers(d: &EnhancedGaussDiagram, f: i64, k: i64, workers: usize) -> Result<LaurentPoly> {
    let reduced = theorem2_rational(d, f, k, workers)?;
    require_integral_representative(&reduced, k)
}

fn theorem2_rational(d: &EnhancedGaussDiagram, f: i64, k: i64, workers: usize) -> Result<LaurentPoly> {
    reduce_mod_cyclotomic_q(&theorem2_polynomial(d, f, k, workers)?, k)
}

fn require_integral_representative(reduced: &LaurentPoly, k: i64) -> Result<LaurentPoly> {
    if !reduced.is_integral() {
        return Err(Error::IntegralityViolation(format!(
            "WRT representative at level {k} is not integral: {reduced}"
        )));
    }
    Ok(reduced.clone())
}

/// Where the colored Jones values in the direct WRT sum come from.
#[derive(Clone, Debug)]
pub enum JonesReference<'a> {
    /// The state sum of a diagram.
    StateSum(&'a EnhancedGaussDiagram),
    /// A framed 1-tangle word, divided by the framing factor of its writhe.
    Tangle(&'a TangleWord),
    /// Precomputed `J'(1), J'(2), ...`.
    Values(&'a [LaurentPoly]),
}

impl JonesReference<'_> {
    fn value(&self, mu: i64) -> Result<LaurentPoly> {
        match self {
            JonesReference::StateSum(d) => colored_jones(d, mu),
            JonesReference::Tangle(w) => {
                let framed = evaluate_tangle(w, mu as usize)?;
                framed.exact_div(&framing_factor(mu, w.writhe()))
            }
            JonesReference::Values(v) => v
                .get(mu as usize - 1)
                .cloned()
                .ok_or_else(|| Error::InvalidArgument(format!("no reference value for color {mu}"))),
        }
    }
}

/// Reference for a built-in knot: its hand-built tangle word.
pub fn builtin_reference(name: &str) -> Result<TangleWord> {
    builtin_word(name)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WrtVerification {
    /// `4K`: the identity is checked in `Z[u] / Phi_{4K}(u)`.
    pub modulus: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WrtValue {
    pub level: i64,
    /// `Z_K(M)` modulo `Phi_K(q)`, in `q` units.
    pub value: LaurentPoly,
    /// The same value as a polynomial in `u`, reduced modulo `Phi_{4K}(u)`.
    pub representative: LaurentPoly,
    pub verification: WrtVerification,
}

/// Checks `sum_mu q^{f mu^2/4} [mu]^2 J'(mu) = Z * sum_mu q^{f mu^2/4} [mu]^2`
/// in `Z[u] / Phi_{4K}(u)`, where `Z` comes from the cyclotomic sum on `d` and
/// `J'` from `reference`.
pub fn wrt_direct_check(
    d: &EnhancedGaussDiagram,
    f: i64,
    k: i64,
    reference: &JonesReference<'_>,
) -> Result<WrtValue> {
    check_framing(f)?;
    check_level(k)?;
    let z = theorem2_rational(d, f, k, 1)?;
    let mut numer = LaurentPoly::zero();
    let mut denom = LaurentPoly::zero();
    for mu in 1..k {
        let weight = &LaurentPoly::u_pow(f * mu * mu) * &q_integer(mu, QKind::Symmetric)?.pow(2);
        numer += &(&weight * &reference.value(mu)?);
        denom += &weight;
    }
    let modulus = 4 * k;
    let representative = reduce_mod_cyclotomic(&z, modulus)?;
    let diff = &numer - &(&z * &denom);
    let holds = reduce_mod_cyclotomic(&diff, modulus)?.is_zero();
    if !holds {
        return Err(Error::OracleMismatch(format!(
            "direct WRT sum disagrees with the cyclotomic sum at level {k}, framing {f:+}"
        )));
    }
    let z = require_integral_representative(&z, k)?;
    Ok(WrtValue {
        level: k,
        value: z,
        representative,
        verification: WrtVerification { modulus, holds },
    })
}
