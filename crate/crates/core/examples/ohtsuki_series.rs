//! Ohtsuki series of the integer homology spheres obtained by +1 and -1
//! surgery on the built-in knots.

use qknot::diagram::builtin;
use qknot::ohtsuki::{ohtsuki_series_with_workers, phi_monomial};

fn main() -> qknot::Result<()> {
    println!("phi_-1(q^mu) = {}", phi_monomial(1, -1)?);
    println!("phi_+1(q^2mu) = {}", phi_monomial(2, 1)?);
    for name in ["trefoil", "figure8"] {
        let d = builtin(name)?;
        for f in [1, -1] {
            let s = ohtsuki_series_with_workers(&d, f, 6, 4)?;
            println!("{name}, framing {f:+}: {}", s.series);
        }
    }
    Ok(())
}
