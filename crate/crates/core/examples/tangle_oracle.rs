//! Brute-force Reshetikhin-Turaev evaluation of 1-tangle words in the
//! color-mu irreducible module, and the algebra behind it.

use qknot::diagram::builtin;
use qknot::jones::colored_jones;
use qknot::oracle::{
    builtin_word, central_element, evaluate_tangle, framing_factor, parse_tangle_word, r_matrix,
    ribbon_scalar, yang_baxter_holds,
};

const KINK: &str = "\
in d
cup_right 2
x+ 1 dd
cap_left 2
";

fn main() -> qknot::Result<()> {
    println!("R on Lambda_2 x Lambda_2:\n{:?}", r_matrix(2, 2, 1)?);
    println!("Yang-Baxter on Lambda_2: {}", yang_baxter_holds(2)?);
    for mu in 1..=3 {
        let f = central_element(mu)?;
        println!("central element in Lambda_{mu}: {}", f.scalar_value().unwrap());
        assert_eq!(f.scalar_value(), Some(ribbon_scalar(mu as i64)));
    }

    let kink = parse_tangle_word(KINK)?;
    println!("positive kink, mu = 3: {}", evaluate_tangle(&kink, 3)?);

    for name in ["trefoil", "figure8"] {
        let word = builtin_word(name)?;
        let d = builtin(name)?;
        for mu in 2..=3 {
            let framed = evaluate_tangle(&word, mu as usize)?;
            let value = framed.exact_div(&framing_factor(mu, word.writhe()))?;
            assert_eq!(value, colored_jones(&d, mu)?);
            println!("{name}, mu = {mu}: {value} (writhe {})", word.writhe());
        }
    }
    Ok(())
}
