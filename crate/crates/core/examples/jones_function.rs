//! The colored Jones function as a power series in h = q - 1 whose
//! coefficients are polynomials in the color mu.

use qknot::diagram::builtin;
use qknot::jones::jones_h_series;

fn main() -> qknot::Result<()> {
    for name in ["trefoil", "figure8"] {
        let d = builtin(name)?;
        println!("{name}:");
        for (k, coeff) in jones_h_series(&d, 4)?.iter().enumerate() {
            println!("  h^{k}: {coeff}");
        }
    }
    Ok(())
}
