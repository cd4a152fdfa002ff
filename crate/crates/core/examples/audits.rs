//! Divisibility lemmas, per-state divisibility and exponent bounds, printed
//! as JSON reports.

use qknot::diagram::builtin;
use qknot::ohtsuki::{
    bounds_audit, congruence_probe, corollary_audit, lemma1_audit, lemma2_audit, lemma3_audit,
    lemma_divisibility_audit,
};

fn main() -> qknot::Result<()> {
    for report in [lemma1_audit(5, 2)?, corollary_audit(5, 2)?, lemma2_audit(4, 2)?, lemma3_audit(4, 1)?] {
        println!("{}: {} cases, pass = {}", report.check, report.cases, report.pass());
    }

    let t = builtin("trefoil")?;
    let record = lemma_divisibility_audit(&t, 1, &[0, 3, 0])?;
    println!("{}", serde_json::to_string_pretty(&record).unwrap());

    let bounds = bounds_audit(&builtin("figure8")?, -1, 4)?;
    for r in bounds.records.iter().filter(|r| r.location.is_empty()) {
        println!("{}: observed {} within {}", r.check, r.observed, r.bound);
    }

    for row in congruence_probe(&t, 1, 7, 3)? {
        println!("{}", serde_json::to_string(&row).unwrap());
    }
    Ok(())
}
