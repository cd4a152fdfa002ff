use clap::ValueEnum;
use serde::Serialize;

use super::Format;
use crate::diagram::{builtin, states_with_total_at_most, EnhancedGaussDiagram};
use crate::error::Result;
use crate::jones::closed_form;
use crate::jones::{colored_jones, kashaev};
use crate::ohtsuki::{
    bounds_audit, congruence_probe, corollary_audit, lemma1_audit, lemma2_audit, lemma3_audit,
    theorem2_term_audit, wrt_direct_check, AuditReport, JonesReference,
};
use crate::oracle::{
    b_mu_closed_form, b_mu_matrix_element, builtin_word, central_element, evaluate_tangle,
    framing_factor, irrep_relations_hold, ribbon_scalar, yang_baxter_holds,
};
use crate::qarith::{
    cyclotomic, q_binomial, q_integer, reduce_mod_cyclotomic_q, to_h_series, LaurentPoly, QKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Golden,
    Qarith,
    Oracle,
    Lemmas,
    Audits,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

struct Runner {
    suite: &'static str,
    outcomes: Vec<CheckOutcome>,
}

impl Runner {
    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) {
        let (pass, detail) = f().unwrap_or_else(|e| (false, e.to_string()));
        self.outcomes.push(CheckOutcome {
            suite: self.suite,
            name: name.into(),
            pass,
            detail,
        });
    }

    fn audit(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<AuditReport>) {
        self.check(name, || {
            let report = f()?;
            let failed = report.failures().count();
            let detail = match report.failures().next() {
                None => format!("{} cases", report.cases),
                Some(first) => format!("{failed} of {} cases fail, first at {:?}", report.cases, first.location),
            };
            Ok((failed == 0, detail))
        });
    }
}

fn knot(name: &str, corrupt: bool) -> Result<EnhancedGaussDiagram> {
    let d = builtin(name)?;
    if corrupt && !d.blobs().is_empty() {
        d.with_flipped_blob(0)
    } else {
        Ok(d)
    }
}

fn all_equal(pairs: impl IntoIterator<Item = Result<(LaurentPoly, LaurentPoly)>>) -> Result<(bool, String)> {
    let mut n = 0;
    for pair in pairs {
        let (a, b) = pair?;
        if a != b {
            return Ok((false, format!("{a} != {b}")));
        }
        n += 1;
    }
    Ok((true, format!("{n} values")))
}

/// Runs one suite (or every suite) and collects one outcome per check.
pub fn run_suite(suite: Suite, corrupt: bool) -> Result<Vec<CheckOutcome>> {
    let suites = match suite {
        Suite::All => vec![Suite::Golden, Suite::Qarith, Suite::Oracle, Suite::Lemmas, Suite::Audits],
        s => vec![s],
    };
    let mut outcomes = Vec::new();
    for s in suites {
        let mut r = Runner {
            suite: name_of(s),
            outcomes: Vec::new(),
        };
        match s {
            Suite::Golden => golden(&mut r, corrupt)?,
            Suite::Qarith => qarith(&mut r),
            Suite::Oracle => oracle(&mut r, corrupt)?,
            Suite::Lemmas => lemmas(&mut r, corrupt)?,
            Suite::Audits => audits(&mut r, corrupt)?,
            Suite::All => unreachable!(),
        }
        outcomes.extend(r.outcomes);
    }
    Ok(outcomes)
}

fn name_of(s: Suite) -> &'static str {
    match s {
        Suite::Golden => "golden",
        Suite::Qarith => "qarith",
        Suite::Oracle => "oracle",
        Suite::Lemmas => "lemmas",
        Suite::Audits => "audits",
        Suite::All => "all",
    }
}

fn golden(r: &mut Runner, corrupt: bool) -> Result<()> {
    let t = knot("trefoil", corrupt)?;
    let e = knot("figure8", corrupt)?;
    r.check("trefoil closed form, mu 1..8", || {
        all_equal((1..=8).map(|mu| Ok((colored_jones(&t, mu)?, closed_form::trefoil(mu)))))
    });
    r.check("trefoil alternating form, mu 1..6", || {
        all_equal((1..=6).map(|mu| Ok((colored_jones(&t, mu)?, closed_form::trefoil_alternating(mu)))))
    });
    r.check("figure-8 closed form, mu 1..6", || {
        all_equal((1..=6).map(|mu| Ok((colored_jones(&e, mu)?, closed_form::figure8(mu)))))
    });
    r.check("classical Jones polynomials", || {
        all_equal([
            Ok((colored_jones(&t, 2)?, LaurentPoly::from_q_terms([(-1, 1), (-3, 1), (-4, -1)]))),
            Ok((
                colored_jones(&e, 2)?,
                LaurentPoly::from_q_terms([(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]),
            )),
        ])
    });
    r.check("figure-8 amphichirality, mu 2..6", || {
        all_equal((2..=6).map(|mu| {
            let j = colored_jones(&e, mu)?;
            Ok((j.subst_inverse(), j))
        }))
    });
    r.check("Kashaev invariants, K 3, 5, 7", || {
        all_equal([3, 5, 7].into_iter().flat_map(|k| {
            [
                kashaev(&t, k).and_then(|a| Ok((a, closed_form::trefoil_kashaev(k)?))),
                kashaev(&e, k).and_then(|a| Ok((a, closed_form::figure8_kashaev(k)?))),
            ]
        }))
    });
    Ok(())
}

fn qarith(r: &mut Runner) {
    r.check("q-Pascal rule, both kinds", || {
        let mut pairs = Vec::new();
        for kind in [QKind::AsymPlus, QKind::AsymMinus] {
            let q = match kind {
                QKind::AsymPlus => 1,
                _ => -1,
            };
            for s in 1..=6 {
                for l in 1..=6 {
                    let rhs = &q_binomial(s, l - 1, kind)? + &q_binomial(s - 1, l, kind)?.shift(4 * q * l);
                    pairs.push(Ok((q_binomial(s, l, kind)?, rhs)));
                }
            }
        }
        all_equal(pairs)
    });
    r.check("product of Phi_d over d | n is q^n - 1", || {
        all_equal((1..=12).map(|n| {
            let prod: LaurentPoly = (1..=n).filter(|d| n % d == 0).map(|d| cyclotomic(d).unwrap()).product();
            Ok((prod, LaurentPoly::from_q_terms([(n, 1), (0, -1)])))
        }))
    });
    r.check("symmetric q-integers are bar-invariant", || {
        all_equal((0..=8).map(|n| {
            let p = q_integer(n, QKind::Symmetric)?;
            Ok((p.subst_inverse(), p))
        }))
    });
    r.check("h-expansion is multiplicative", || {
        let a = LaurentPoly::from_q_terms([(3, 2), (-2, -1), (0, 1)]);
        let b = LaurentPoly::from_q_terms([(-5, 1), (1, 4)]);
        let lhs = to_h_series(&(&a * &b), 6)?;
        let rhs = &to_h_series(&a, 6)? * &to_h_series(&b, 6)?;
        Ok((lhs == rhs, lhs.to_string()))
    });
    r.check("q^K reduces to 1 modulo Phi_K", || {
        all_equal((1..=9).map(|k| Ok((reduce_mod_cyclotomic_q(&LaurentPoly::q_pow(k), k)?, LaurentPoly::one()))))
    });
}

fn oracle(r: &mut Runner, corrupt: bool) -> Result<()> {
    for name in ["trefoil", "figure8"] {
        let d = knot(name, corrupt)?;
        let word = builtin_word(name)?;
        r.check(format!("{name}: tangle word equals state sum, mu 2..3"), || {
            all_equal((2..=3).map(|mu| {
                let framed = evaluate_tangle(&word, mu as usize)?;
                Ok((framed.exact_div(&framing_factor(mu, word.writhe()))?, colored_jones(&d, mu)?))
            }))
        });
        r.check(format!("{name}: closed-form B^mu, sum l <= 4, mu <= 5"), || {
            let mut pairs = Vec::new();
            for l in states_with_total_at_most(&d, 4) {
                for mu in 1..=5 {
                    pairs.push(Ok((b_mu_closed_form(&d, &l, mu), b_mu_matrix_element(&d, &l, mu as usize)?)));
                }
            }
            all_equal(pairs)
        });
        for f in [1, -1] {
            r.check(format!("{name}: direct WRT ratio, framing {f:+}, K 3 and 5"), || {
                for k in [3, 5] {
                    wrt_direct_check(&d, f, k, &JonesReference::Tangle(&word))?;
                }
                Ok((true, "identity holds".into()))
            });
        }
    }
    r.check("Yang-Baxter equation on Lambda_2^3", || Ok((yang_baxter_holds(2)?, String::new())));
    r.check("irrep relations, mu <= 6", || {
        let ok = (1..=6).map(irrep_relations_hold).collect::<Result<Vec<_>>>()?;
        Ok((ok.iter().all(|x| *x), String::new()))
    });
    r.check("central element acts by the ribbon scalar, mu <= 4", || {
        all_equal((1..=4).map(|mu| {
            let f = central_element(mu)?;
            Ok((f.scalar_value().unwrap_or_else(LaurentPoly::zero), ribbon_scalar(mu as i64)))
        }))
    });
    Ok(())
}

fn lemmas(r: &mut Runner, corrupt: bool) -> Result<()> {
    r.audit("Phi_l divides phi of a chain, l <= 6, |a|, |b| <= 3", || lemma1_audit(6, 3));
    r.audit("<l>! divides phi of a chain, l <= 6, |a|, |b| <= 3", || corollary_audit(6, 3));
    r.audit("h-divisibility of phi of a product, l <= 6, |a|, |b_j| <= 3", || lemma2_audit(6, 3));
    r.audit("combined divisibility of two chains, l1 + l2 <= 6, |a|, |b| <= 3", || lemma3_audit(6, 3));
    for name in ["trefoil", "figure8"] {
        let d = knot(name, corrupt)?;
        for f in [1, -1] {
            r.audit(format!("{name}: cyclotomic-sum terms, framing {f:+}, sum l <= 6"), || {
                theorem2_term_audit(&d, f, 6)
            });
        }
    }
    Ok(())
}

fn audits(r: &mut Runner, corrupt: bool) -> Result<()> {
    for name in ["unknot", "trefoil", "figure8"] {
        let d = knot(name, corrupt)?;
        r.check(format!("{name}: a^mu parity, sum l <= 6"), || {
            let states = states_with_total_at_most(&d, 6);
            let bad = states.iter().find(|l| {
                let (lin, constant) = d.a_mu_exponent(l);
                let total: i64 = l.iter().map(|&x| x as i64).sum();
                (lin - total).rem_euclid(2) != 0 || constant.rem_euclid(2) != 0
            });
            Ok(match bad {
                None => (true, format!("{} states", states.len())),
                Some(l) => (false, format!("state {l:?}")),
            })
        });
        for f in [1, -1] {
            r.audit(format!("{name}: alpha and beta bounds, N = 4, framing {f:+}"), || bounds_audit(&d, f, 4));
        }
    }
    for name in ["trefoil", "figure8"] {
        let d = knot(name, corrupt)?;
        for k in [5, 7] {
            r.check(format!("{name}: congruence probe at K = {k} (informational)"), || {
                let rows = congruence_probe(&d, -1, k, 3)?;
                let agree: Vec<String> = rows
                    .iter()
                    .map(|row| format!("m={}:{}", row.m, if row.agrees { "agrees" } else { "differs" }))
                    .collect();
                Ok((true, agree.join(" ")))
            });
        }
    }
    Ok(())
}

/// Text: one `PASS`/`FAIL` line per check and a summary; JSON: an array of
/// outcomes.
pub fn render(outcomes: &[CheckOutcome], format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string(outcomes).expect("outcomes serialize")),
        Format::Text => {
            let mut s = String::new();
            for o in outcomes {
                let tag = if o.pass { "PASS" } else { "FAIL" };
                s += &format!("{tag} {}/{}", o.suite, o.name);
                if !o.detail.is_empty() {
                    s += &format!(": {}", o.detail);
                }
                s.push('\n');
            }
            let failed = outcomes.iter().filter(|o| !o.pass).count();
            s += &format!("{} checks, {failed} failed\n", outcomes.len());
            s
        }
    }
}
