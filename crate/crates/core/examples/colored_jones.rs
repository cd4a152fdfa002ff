//! Colored Jones polynomials of the built-in knots from the state sum,
//! compared against independent closed forms.

use qknot::diagram::builtin;
use qknot::jones::{closed_form, colored_jones, state_term};

fn main() -> qknot::Result<()> {
    let trefoil = builtin("trefoil")?;
    let figure8 = builtin("figure8")?;
    for mu in 1..=4 {
        let jt = colored_jones(&trefoil, mu)?;
        let je = colored_jones(&figure8, mu)?;
        println!("J'(trefoil, {mu}) = {jt}");
        println!("J'(figure8, {mu}) = {je}");
        assert_eq!(jt, closed_form::trefoil(mu));
        assert_eq!(je, closed_form::figure8(mu));
    }

    // Each state contributes a polynomial in the formal monomial q^mu.
    let term = state_term(&trefoil, &[0, 2, 0])?;
    println!("state (0,2,0) of the trefoil: {}", term.value);
    Ok(())
}
