//! Kashaev invariants: the color-K Jones polynomial at a primitive K-th root
//! of unity, as a canonical representative modulo Phi_K(q).

use qknot::diagram::builtin;
use qknot::jones::{closed_form, kashaev_with_workers};

fn main() -> qknot::Result<()> {
    let trefoil = builtin("trefoil")?;
    let figure8 = builtin("figure8")?;
    for k in [2, 3, 5, 7, 9] {
        let t = kashaev_with_workers(&trefoil, k, 2)?;
        let e = kashaev_with_workers(&figure8, k, 2)?;
        assert_eq!(t, closed_form::trefoil_kashaev(k)?);
        assert_eq!(e, closed_form::figure8_kashaev(k)?);
        println!("K = {k}: trefoil {t}   figure8 {e}");
    }
    Ok(())
}
