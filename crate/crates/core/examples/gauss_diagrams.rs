//! Reading enhanced Gauss diagrams: linking coefficients, realizability
//! warnings, state vectors and their level walks.

use qknot::diagram::{builtin, parse_egd, states_with_total_at_most};

const TWIST: &str = "\
# five alternating crossings
knot five
crossings 5
sign 1 +1
sign 2 +1
sign 3 +1
sign 4 +1
sign 5 +1
sequence 1o 2u 3o 4u 5o 1u 2o 3u 4o 5u
blob 2 -1
";

fn main() -> qknot::Result<()> {
    let d = parse_egd(TWIST)?;
    println!("{} crossings, writhe {}", d.crossings(), d.writhe());
    match d.linking_coefficients() {
        Ok(q) => println!("q_j = {q:?}"),
        Err(e) => println!("not a zero-framed diagram: {e}"),
    }
    for w in d.warnings() {
        println!("warning: {w}");
    }

    let t = builtin("trefoil")?;
    print!("{}", t.to_egd_string());
    for l in states_with_total_at_most(&t, 3) {
        let walk = t.level_walk(&l);
        println!(
            "l = {l:?}: s = {:?}, levels = {:?}, d = {}, c0 = {}",
            t.s_vector(&l),
            walk.levels,
            t.d_of_l(&l)?,
            t.c0_of_l(&l)?
        );
    }
    let invalid = [1, 0, 0];
    println!("l = {invalid:?} valid? {}", t.is_valid_state(&invalid));
    Ok(())
}
