//! One line per acceptance criterion. Runs as a plain binary so the lines
//! show up in `cargo test` output; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use qknot::diagram::{builtin, states_with_total_at_most, BUILTIN_NAMES};
use qknot::error::Error;
use qknot::jones::{closed_form, colored_jones, kashaev};
use qknot::ohtsuki::{
    bounds_audit, builtin_reference, corollary_audit, lemma1_audit, lemma2_audit, lemma3_audit,
    ohtsuki_series_with_workers, theorem2_term_audit, wrt_direct_check, JonesReference,
};
use qknot::oracle::{
    b_mu_closed_form, b_mu_matrix_element, builtin_word, central_element, evaluate_tangle,
    framing_factor, irrep, ribbon_scalar, yang_baxter_holds,
};
use qknot::qarith::{reduce_mod_cyclotomic_q, LaurentPoly};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: u64) -> Outcome {
    let took = start.elapsed();
    ensure(took < Duration::from_secs(limit), || format!("took {took:.1?}, limit {limit} s"))
}

fn err(e: Error) -> String {
    e.to_string()
}

fn golden_values() -> Outcome {
    let start = Instant::now();
    let t = builtin("trefoil").map_err(err)?;
    let e = builtin("figure8").map_err(err)?;
    for mu in 1..=8 {
        let j = colored_jones(&t, mu).map_err(err)?;
        ensure(j == closed_form::trefoil(mu), || format!("trefoil mu={mu}"))?;
        if mu <= 6 {
            ensure(j == closed_form::trefoil_alternating(mu), || format!("trefoil alternating mu={mu}"))?;
            ensure(colored_jones(&e, mu).map_err(err)? == closed_form::figure8(mu), || format!("figure8 mu={mu}"))?;
        }
    }
    within(start, 10)
}

fn classical_specialization() -> Outcome {
    let t = builtin("trefoil").map_err(err)?;
    let e = builtin("figure8").map_err(err)?;
    let jt = colored_jones(&t, 2).map_err(err)?;
    ensure(jt == LaurentPoly::from_q_terms([(-1, 1), (-3, 1), (-4, -1)]), || format!("trefoil: {jt}"))?;
    let je = colored_jones(&e, 2).map_err(err)?;
    let expected = LaurentPoly::from_q_terms([(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]);
    ensure(je == expected, || format!("figure8: {je}"))?;
    for mu in 2..=6 {
        let j = colored_jones(&e, mu).map_err(err)?;
        ensure(j.subst_inverse() == j, || format!("figure8 not amphichiral at mu={mu}"))?;
    }
    Ok(())
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    for name in ["trefoil", "figure8"] {
        let word = builtin_word(name).map_err(err)?;
        let d = builtin(name).map_err(err)?;
        for mu in 2..=4 {
            let framed = evaluate_tangle(&word, mu as usize).map_err(err)?;
            let value = framed.exact_div(&framing_factor(mu, word.writhe())).map_err(err)?;
            ensure(value == colored_jones(&d, mu).map_err(err)?, || format!("{name} mu={mu}"))?;
        }
    }
    within(start, 60)
}

fn b_mu_cross_check() -> Outcome {
    for name in BUILTIN_NAMES {
        let d = builtin(name).map_err(err)?;
        for l in states_with_total_at_most(&d, 4) {
            for mu in 1..=5 {
                let direct = b_mu_matrix_element(&d, &l, mu as usize).map_err(err)?;
                ensure(b_mu_closed_form(&d, &l, mu) == direct, || format!("{name} l={l:?} mu={mu}"))?;
            }
        }
    }
    Ok(())
}

fn quantum_group_sanity() -> Outcome {
    ensure(yang_baxter_holds(2).map_err(err)?, || "Yang-Baxter".into())?;
    for mu in 1..=6 {
        let v = irrep(mu).map_err(err)?;
        let commutator = &(&v.x * &v.y) - &(&v.y * &v.x);
        ensure(commutator == v.bracket_h(), || format!("[X,Y] != [H] at mu={mu}"))?;
    }
    for mu in 1..=4 {
        let f = central_element(mu).map_err(err)?;
        ensure(f.scalar_value() == Some(ribbon_scalar(mu as i64)), || format!("central element at mu={mu}"))?;
    }
    Ok(())
}

fn lemma_suite() -> Outcome {
    let start = Instant::now();
    for report in [
        lemma1_audit(6, 3).map_err(err)?,
        corollary_audit(6, 3).map_err(err)?,
        lemma2_audit(6, 3).map_err(err)?,
        lemma3_audit(6, 3).map_err(err)?,
    ] {
        ensure(report.pass(), || format!("{}: first failure {:?}", report.check, report.failures().next()))?;
    }
    within(start, 60)
}

fn theorem2_divisibility() -> Outcome {
    for name in BUILTIN_NAMES {
        let d = builtin(name).map_err(err)?;
        for f in [1, -1] {
            let report = theorem2_term_audit(&d, f, 6).map_err(err)?;
            ensure(report.pass(), || format!("{name} f={f}: {:?}", report.failures().next()))?;
        }
    }
    Ok(())
}

fn ohtsuki_series() -> Outcome {
    for name in ["trefoil", "figure8"] {
        let d = builtin(name).map_err(err)?;
        let start = Instant::now();
        for f in [1, -1] {
            let one = ohtsuki_series_with_workers(&d, f, 8, 1).map_err(err)?;
            let four = ohtsuki_series_with_workers(&d, f, 8, 4).map_err(err)?;
            ensure(one.series.is_integral(), || format!("{name} f={f}: non-integral"))?;
            ensure(one.lambdas()[0] == BigInt::from(1), || format!("{name} f={f}: lambda_0"))?;
            ensure(one == four, || format!("{name} f={f}: 1 and 4 workers differ"))?;
        }
        within(start, 120)?;
    }
    Ok(())
}

fn wrt_identity() -> Outcome {
    let start = Instant::now();
    for name in ["trefoil", "figure8"] {
        let d = builtin(name).map_err(err)?;
        let word = builtin_reference(name).map_err(err)?;
        for f in [1, -1] {
            for k in [3, 5, 7] {
                let v = wrt_direct_check(&d, f, k, &JonesReference::Tangle(&word)).map_err(err)?;
                ensure(v.verification.holds, || format!("{name} f={f} K={k}"))?;
            }
        }
    }
    let bad = builtin("trefoil").and_then(|t| t.with_flipped_blob(0)).map_err(err)?;
    let word = builtin_reference("trefoil").map_err(err)?;
    let control = wrt_direct_check(&bad, -1, 5, &JonesReference::Tangle(&word));
    ensure(matches!(control, Err(Error::OracleMismatch(_))), || format!("negative control passed: {control:?}"))?;
    within(start, 120)
}

fn parity_and_bounds() -> Outcome {
    for name in BUILTIN_NAMES {
        let d = builtin(name).map_err(err)?;
        for l in states_with_total_at_most(&d, 6) {
            let (lin, constant) = d.a_mu_exponent(&l);
            let total: i64 = l.iter().map(|&x| x as i64).sum();
            ensure((lin - total).rem_euclid(2) == 0 && constant.rem_euclid(2) == 0, || {
                format!("{name} l={l:?}: a^mu = {lin} mu + {constant}")
            })?;
        }
    }
    for name in ["trefoil", "figure8"] {
        let d = builtin(name).map_err(err)?;
        for f in [1, -1] {
            let report = bounds_audit(&d, f, 4).map_err(err)?;
            ensure(report.pass(), || format!("{name} f={f}: {:?}", report.failures().next()))?;
        }
    }
    Ok(())
}

fn kashaev_values() -> Outcome {
    let t = builtin("trefoil").map_err(err)?;
    for k in [3, 5, 7] {
        let sum: LaurentPoly = (0..k).map(|l| closed_form::pochhammer(1, 1, l).shift(4)).sum();
        let expected = reduce_mod_cyclotomic_q(&sum, k).map_err(err)?;
        ensure(kashaev(&t, k).map_err(err)? == expected, || format!("K={k}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("golden colored Jones values", golden_values),
        ("classical specialization and amphichirality", classical_specialization),
        ("tangle oracle equals state sum", oracle_equivalence),
        ("closed-form B^mu cross-check", b_mu_cross_check),
        ("quantum group sanity", quantum_group_sanity),
        ("divisibility grids for phi", lemma_suite),
        ("divisibility of each cyclotomic-sum term", theorem2_divisibility),
        ("Ohtsuki series at order 8", ohtsuki_series),
        ("WRT identity and negative control", wrt_identity),
        ("parity and exponent bound audits", parity_and_bounds),
        ("Kashaev invariants", kashaev_values),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        match result {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({took:.2?}): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
