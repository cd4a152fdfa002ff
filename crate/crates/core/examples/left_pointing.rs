//! Turning a Gauss diagram with left-pointing crossings into an enhanced
//! Gauss diagram by inserting a pair of blobs around each flagged overpass.

use qknot::diagram::{convert_left_pointing, parse_egd, MarkedGaussDiagram};
use qknot::jones::colored_jones;

const CHORDS: &str = "\
crossings 3
sign 1 +1
sign 2 +1
sign 3 +1
sequence 1o 2u 3o 1u 2o 3u
blob 2 -1
";

fn main() -> qknot::Result<()> {
    let diagram = parse_egd(CHORDS)?;
    for flags in [vec![false, false, false], vec![true, false, false], vec![true, true, true]] {
        let enhanced = convert_left_pointing(&MarkedGaussDiagram {
            diagram: diagram.clone(),
            left_pointing: flags.clone(),
        })?;
        println!("left-pointing {flags:?}:");
        for b in enhanced.blobs() {
            println!("  blob after position {} with K^{}", b.position, 2 * b.delta.value());
        }
        println!("  J'(2) = {}", colored_jones(&enhanced, 2)?);
    }
    Ok(())
}
