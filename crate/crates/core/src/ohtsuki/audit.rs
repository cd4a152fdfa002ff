use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{ohtsuki_series, phi_apply, theorem2_polynomial};
use crate::diagram::{states_with_total_at_most, EnhancedGaussDiagram, StateVector};
use crate::error::Result;
use crate::jones::state_term;
use crate::qarith::{angle_factorial, cyclotomic, h_adic_valuation, to_h_series, LaurentPoly, MuPoly};

/// One audited instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditRecord {
    pub check: String,
    pub location: Vec<i64>,
    pub bound: String,
    pub observed: String,
    pub pass: bool,
}

/// A batch of audited instances of one check. Only failing records are kept
/// alongside a count of everything examined, plus any summary records.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub check: String,
    pub cases: usize,
    pub records: Vec<AuditRecord>,
}

impl AuditReport {
    fn new(check: &str) -> Self {
        Self {
            check: check.to_string(),
            ..Self::default()
        }
    }

    fn push(&mut self, record: AuditRecord, keep_passing: bool) {
        self.cases += 1;
        if keep_passing || !record.pass {
            self.records.push(record);
        }
    }

    pub fn pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn merge(&mut self, other: AuditReport) {
        self.cases += other.cases;
        self.records.extend(other.records);
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("audit reports always serialize")
    }
}

/// `q^{a mu} prod_i (q^{mu - c_i} - 1)`.
fn chain(a: i64, shifts: impl IntoIterator<Item = i64>) -> MuPoly {
    let mut p = MuPoly::monomial(a, LaurentPoly::one());
    for c in shifts {
        let mut factor = MuPoly::monomial(1, LaurentPoly::q_pow(-c));
        factor.add_term(0, &LaurentPoly::constant(-1));
        p = &p * &factor;
    }
    p
}

fn ceil_half(n: i64) -> usize {
    ((n + 1) / 2) as usize
}

fn h_divisible(p: &LaurentPoly, k: usize) -> (bool, String) {
    match h_adic_valuation(p) {
        None => (true, "zero".into()),
        Some(v) => (v >= k, v.to_string()),
    }
}

/// `phi_f(q^{a mu} prod_{p=1}^{l} (q^{mu-b-p} - 1))` is divisible by `Phi_l(q)`
/// for `1 <= l <= max_l`, `|a|, |b| <= range`.
pub fn lemma1_audit(max_l: i64, range: i64) -> Result<AuditReport> {
    let mut report = AuditReport::new("lemma1");
    for f in [1, -1] {
        for l in 1..=max_l {
            let phi_l = cyclotomic(l)?;
            for a in -range..=range {
                for b in -range..=range {
                    let value = phi_apply(&chain(a, (1..=l).map(|p| b + p)), f)?;
                    let pass = phi_l.divides(&value);
                    report.push(
                        AuditRecord {
                            check: "lemma1".into(),
                            location: vec![f, l, a, b],
                            bound: format!("Phi_{l}(q) | phi"),
                            observed: if pass { "divisible".into() } else { value.to_string() },
                            pass,
                        },
                        false,
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Same family as [`lemma1_audit`], divisibility by `<l>!`.
pub fn corollary_audit(max_l: i64, range: i64) -> Result<AuditReport> {
    let mut report = AuditReport::new("corollary");
    for f in [1, -1] {
        for l in 1..=max_l {
            let fact = angle_factorial(l)?;
            for a in -range..=range {
                for b in -range..=range {
                    let value = phi_apply(&chain(a, (1..=l).map(|p| b + p)), f)?;
                    let pass = fact.divides(&value);
                    report.push(
                        AuditRecord {
                            check: "corollary".into(),
                            location: vec![f, l, a, b],
                            bound: format!("<{l}>! | phi"),
                            observed: if pass { "divisible".into() } else { value.to_string() },
                            pass,
                        },
                        false,
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Non-decreasing sequences of length `len` with entries in `[lo, hi]`.
fn multisets(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(len: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().copied().unwrap_or(lo);
        for b in start..=hi {
            cur.push(b);
            go(len, lo, hi, cur, out);
            cur.pop();
        }
    }
    go(len, lo, hi, &mut cur, &mut out);
    out
}

/// `phi_f(q^{a mu} prod_j (q^{mu - b_j} - 1))` is divisible by `h^{ceil(l/2)}`
/// for every multiset of `l <= max_l` shifts in `[-range, range]`.
pub fn lemma2_audit(max_l: i64, range: i64) -> Result<AuditReport> {
    let mut report = AuditReport::new("lemma2");
    for f in [1, -1] {
        for l in 0..=max_l {
            let need = ceil_half(l);
            for bs in multisets(l as usize, -range, range) {
                for a in -range..=range {
                    let value = phi_apply(&chain(a, bs.iter().copied()), f)?;
                    let (pass, observed) = h_divisible(&value, need);
                    let mut location = vec![f, a];
                    location.extend(&bs);
                    report.push(
                        AuditRecord {
                            check: "lemma2".into(),
                            location,
                            bound: format!("h^{need}"),
                            observed,
                            pass,
                        },
                        false,
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Two consecutive chains of lengths `l1, l2` with `l1 + l2 <= max_total`:
/// divisibility by `h^{ceil((l1+l2)/2)} <max(l1,l2)>!`.
pub fn lemma3_audit(max_total: i64, range: i64) -> Result<AuditReport> {
    let mut report = AuditReport::new("lemma3");
    for f in [1, -1] {
        for l1 in 0..=max_total {
            for l2 in 0..=(max_total - l1) {
                let need = ceil_half(l1 + l2);
                let fact = angle_factorial(l1.max(l2))?;
                for a in -range..=range {
                    for b1 in -range..=range {
                        for b2 in -range..=range {
                            let shifts = (1..=l1).map(|p| b1 + p).chain((1..=l2).map(|p| b2 + p));
                            let value = phi_apply(&chain(a, shifts), f)?;
                            let (h_ok, valuation) = h_divisible(&value, need);
                            let pass = h_ok && fact.divides(&value);
                            report.push(
                                AuditRecord {
                                    check: "lemma3".into(),
                                    location: vec![f, l1, l2, a, b1, b2],
                                    bound: format!("h^{need} <{}>!", l1.max(l2)),
                                    observed: format!("h-valuation {valuation}"),
                                    pass,
                                },
                                false,
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Divisibility of one summand of the cyclotomic WRT sum by `h^{ceil(sum l / 2)} <max l>!`.
pub fn lemma_divisibility_audit(d: &EnhancedGaussDiagram, f: i64, l: &StateVector) -> Result<AuditRecord> {
    let total: i64 = l.iter().map(|&x| x as i64).sum();
    let max = l.iter().copied().max().unwrap_or(0) as i64;
    let need = ceil_half(total);
    let value = phi_apply(&state_term(d, l)?.value, f)?;
    let (h_ok, valuation) = h_divisible(&value, need);
    let fact_ok = angle_factorial(max)?.divides(&value);
    let mut location = vec![f];
    location.extend(l.iter().map(|&x| x as i64));
    Ok(AuditRecord {
        check: "theorem2_term".into(),
        location,
        bound: format!("h^{need} <{max}>!"),
        observed: format!("h-valuation {valuation}, <{max}>! divides: {fact_ok}"),
        pass: h_ok && fact_ok,
    })
}

/// [`lemma_divisibility_audit`] over every state with `sum l <= max_total`.
pub fn theorem2_term_audit(d: &EnhancedGaussDiagram, f: i64, max_total: u32) -> Result<AuditReport> {
    let mut report = AuditReport::new("theorem2_term");
    for l in states_with_total_at_most(d, max_total) {
        report.push(lemma_divisibility_audit(d, f, &l)?, false);
    }
    Ok(report)
}

/// Records the exponents `(alpha, beta)` of every monomial of
/// `q^{c0} q^{d mu} prod_j prod_p (q^{sigma_j (mu - s_j - p)} - 1)` over the
/// states of the order-`n` series, and checks
/// `|alpha| <= 2N(1 + max|q_j|) + b/2` and
/// `|beta| <= (16c + 10)N^2 + 2N(2 + max|q_j|) + b/2`.
///
/// One summary record per inequality carries the maxima; failing states get
/// their own records.
pub fn bounds_audit(d: &EnhancedGaussDiagram, f: i64, n: i64) -> Result<AuditReport> {
    super::check_framing(f)?;
    let mut report = AuditReport::new("bounds");
    let c = d.crossings() as i64;
    let b = d.blobs().len() as i64;
    let max_q = d.linking_coefficients()?.iter().map(|x| x.abs()).max().unwrap_or(0);
    let twice_alpha_bound = 2 * (2 * n * (1 + max_q)) + b;
    let twice_beta_bound = 2 * ((16 * c + 10) * n * n + 2 * n * (2 + max_q)) + b;
    let mut max_alpha = 0;
    let mut max_beta = 0;
    for l in states_with_total_at_most(d, 2 * n.max(0) as u32) {
        let s = d.s_vector(&l);
        let mut monomials = BTreeSet::from([(d.d_of_l(&l)?, d.c0_of_l(&l)?)]);
        for j in 0..l.len() {
            let sigma = d.sign(j + 1);
            for p in 1..=l[j] as i64 {
                let shifted: Vec<_> = monomials
                    .iter()
                    .map(|&(alpha, beta)| (alpha + sigma, beta - sigma * (s[j] + p)))
                    .collect();
                monomials.extend(shifted);
            }
        }
        let alpha = monomials.iter().map(|m| m.0.abs()).max().unwrap_or(0);
        let beta = monomials.iter().map(|m| m.1.abs()).max().unwrap_or(0);
        max_alpha = max_alpha.max(alpha);
        max_beta = max_beta.max(beta);
        let pass = 2 * alpha <= twice_alpha_bound && 2 * beta <= twice_beta_bound;
        report.push(
            AuditRecord {
                check: "bounds_state".into(),
                location: l.iter().map(|&x| x as i64).collect(),
                bound: format!("|alpha| <= {}, |beta| <= {}", half(twice_alpha_bound), half(twice_beta_bound)),
                observed: format!("|alpha| = {alpha}, |beta| = {beta}"),
                pass,
            },
            false,
        );
    }
    report.records.push(AuditRecord {
        check: "bounds_alpha".into(),
        location: vec![],
        bound: half(twice_alpha_bound),
        observed: max_alpha.to_string(),
        pass: 2 * max_alpha <= twice_alpha_bound,
    });
    report.records.push(AuditRecord {
        check: "bounds_beta".into(),
        location: vec![],
        bound: half(twice_beta_bound),
        observed: max_beta.to_string(),
        pass: 2 * max_beta <= twice_beta_bound,
    });
    Ok(report)
}

fn half(twice: i64) -> String {
    if twice % 2 == 0 {
        (twice / 2).to_string()
    } else {
        format!("{}.5", twice / 2)
    }
}

/// One coefficient comparison of the congruence probe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceRow {
    pub level: i64,
    pub m: usize,
    /// `a_{m,K}` modulo `K`, from the unreduced cyclotomic sum.
    pub wrt_coeff: Option<i64>,
    /// `lambda_m` modulo `K`.
    pub ohtsuki_coeff: i64,
    pub agrees: bool,
}

fn mod_prime(c: &num_rational::BigRational, k: i64) -> Option<i64> {
    let kb = BigInt::from(k);
    let den = c.denom().mod_floor(&kb);
    if den.is_zero() {
        return None;
    }
    let inv = den.modpow(&(&kb - 2), &kb);
    let v = (c.numer().mod_floor(&kb) * inv).mod_floor(&kb);
    Some(i64::try_from(v).expect("residue fits"))
}

/// Compares the `h`-expansion of the cyclotomic WRT sum at prime level `k`
/// (taken before cyclotomic reduction) with the Ohtsuki coefficients modulo
/// `k`, for `m <= order`.
pub fn congruence_probe(d: &EnhancedGaussDiagram, f: i64, k: i64, order: usize) -> Result<Vec<CongruenceRow>> {
    let series = ohtsuki_series(d, f, order)?;
    let lambdas = series.lambdas();
    let raw = theorem2_polynomial(d, f, k, 1)?;
    let expansion = to_h_series(&raw, order)?;
    let kb = BigInt::from(k);
    Ok((0..=order)
        .map(|m| {
            let wrt_coeff = mod_prime(expansion.coeff(m), k);
            let lam = i64::try_from(lambdas[m].mod_floor(&kb)).expect("residue fits");
            CongruenceRow {
                level: k,
                m,
                wrt_coeff,
                ohtsuki_coeff: lam,
                agrees: wrt_coeff == Some(lam),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::builtin;

    #[test]
    fn lemma_grids_small() {
        assert!(lemma1_audit(4, 2).unwrap().pass());
        assert!(corollary_audit(4, 2).unwrap().pass());
        assert!(lemma2_audit(4, 1).unwrap().pass());
        assert!(lemma3_audit(3, 1).unwrap().pass());
    }

    #[test]
    fn lemma1_spec_instance() {
        let value = phi_apply(&chain(0, [1, 2]), 1).unwrap();
        assert!(cyclotomic(2).unwrap().divides(&value));
    }

    #[test]
    fn state_divisibility() {
        let t = builtin("trefoil").unwrap();
        for f in [1, -1] {
            assert!(lemma_divisibility_audit(&t, f, &[0, 0, 0]).unwrap().pass);
            assert!(lemma_divisibility_audit(&t, f, &[0, 3, 0]).unwrap().pass);
            assert!(theorem2_term_audit(&t, f, 6).unwrap().pass());
        }
    }

    #[test]
    fn bounds_on_builtins() {
        for name in ["unknot", "trefoil", "figure8"] {
            let d = builtin(name).unwrap();
            let r = bounds_audit(&d, 1, 4).unwrap();
            assert!(r.pass(), "{name}: {:?}", r.failures().collect::<Vec<_>>());
        }
        let json = bounds_audit(&builtin("trefoil").unwrap(), 1, 2).unwrap().to_json();
        assert_eq!(json["check"], "bounds");
        assert!(json["records"][0].get("location").is_some());
    }

    #[test]
    fn residues() {
        let half = num_rational::BigRational::new(1.into(), 2.into());
        assert_eq!(mod_prime(&half, 5), Some(3));
        assert_eq!(mod_prime(&half.abs(), 7), Some(4));
    }
}
