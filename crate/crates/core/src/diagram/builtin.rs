use super::{parse_egd, EnhancedGaussDiagram};
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: [&str; 3] = ["unknot", "trefoil", "figure8"];

const UNKNOT: &str = "\
knot unknot
crossings 0
sequence
";

// The blob position is the only placement of a single K^{-2} blob for which
// d(0,l,0) = -1-2l, c0(0,l,0) = 1 + l/2 + l^2/2, and the state sum reproduces
// q * sum_l q^{-(l+1)mu} (q^{1-mu}; q)_l.
const TREFOIL: &str = "\
knot trefoil
crossings 3
sign 1 +1
sign 2 +1
sign 3 +1
sequence 1o 2u 3o 1u 2o 3u
blob 2 -1
";

// Endpoint order and blobs found by exhaustive search over sequences with
// sigma = (+,-,+,-) and two K^{-2} blobs. This is the unique choice giving
// q = (-1,1,-1,1), s(1) = s(4) = l-m, s(2) = s(3) = 0, d = l+m+1, the stated
// c0(l,m), and the closed form sum_k q^{k mu} (q^{-mu-1}; q^-1)_k (q^{1-mu}; q)_k.
const FIGURE8: &str = "\
knot figure8
crossings 4
sign 1 +1
sign 2 -1
sign 3 +1
sign 4 -1
sequence 1o 2u 4o 1u 3o 4u 2o 3u
blob 2 -1
blob 3 -1
";

/// One of the built-in diagrams: `unknot`, `trefoil` or `figure8`.
pub fn builtin(name: &str) -> Result<EnhancedGaussDiagram> {
    let text = match name {
        "unknot" => UNKNOT,
        "trefoil" => TREFOIL,
        "figure8" | "figure-8" | "4_1" => FIGURE8,
        "3_1" => TREFOIL,
        _ => return Err(Error::UnknownKnot(name.to_string())),
    };
    parse_egd(text)
}
