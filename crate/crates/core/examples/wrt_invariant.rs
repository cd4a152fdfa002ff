//! WRT invariants of +-1 surgery at odd levels, checked against the direct
//! Gauss-sum ratio built from independent colored Jones values.

use qknot::diagram::builtin;
use qknot::error::Error;
use qknot::ohtsuki::{builtin_reference, wrt_direct_check, wrt_theorem2, JonesReference};

fn main() -> qknot::Result<()> {
    for name in ["trefoil", "figure8"] {
        let d = builtin(name)?;
        let word = builtin_reference(name)?;
        for f in [1, -1] {
            for k in [3, 5, 7] {
                let v = wrt_direct_check(&d, f, k, &JonesReference::Tangle(&word))?;
                println!("{name}, f = {f:+}, K = {k}: Z = {}  (checked mod Phi_{}(u))", v.value, v.verification.modulus);
            }
        }
    }

    // A diagram with one blob flipped no longer matches the tangle.
    let bad = builtin("trefoil")?.with_flipped_blob(0)?;
    let word = builtin_reference("trefoil")?;
    match wrt_direct_check(&bad, -1, 5, &JonesReference::Tangle(&word)) {
        Err(Error::OracleMismatch(msg)) => println!("corrupted diagram rejected: {msg}"),
        other => println!("unexpected: {other:?}"),
    }
    println!("even level: {:?}", wrt_theorem2(&builtin("trefoil")?, 1, 4).unwrap_err());
    Ok(())
}
