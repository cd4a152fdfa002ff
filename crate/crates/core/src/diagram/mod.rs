//! Enhanced Gauss diagrams of long knots and the combinatorial quantities of
//! the state sum: levels `s(j)`, linking coefficients `q_j`, the exponents
//! `d(l)` and `c^0(l)`, and level walks.

mod builtin;
mod format;

pub use builtin::{builtin, BUILTIN_NAMES};
pub use format::parse_egd;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// One point on the circle: crossing index (1-based) and whether the strand
/// passes over (`Plus`, outward arrow) or under (`Minus`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Endpoint {
    pub crossing: usize,
    pub side: Sign,
}

/// A `K^{2 delta}` mark placed after `position` points of the sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Blob {
    pub position: usize,
    pub delta: Sign,
}

/// Assignment of a non-negative integer `l_j` to every crossing.
pub type StateVector = [u32];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EnhancedGaussDiagram {
    name: Option<String>,
    signs: Vec<Sign>,
    endpoints: Vec<Endpoint>,
    blobs: Vec<Blob>,
    /// 1-based positions of the over/under endpoint of each crossing.
    over_pos: Vec<usize>,
    under_pos: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    /// Number of segments between the two endpoints of a crossing is even.
    EvenChordSpan { crossing: usize, span: usize },
    /// `b + c` is odd.
    OddBlobPlusCrossingCount { blobs: usize, crossings: usize },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::EvenChordSpan { crossing, span } => write!(
                f,
                "p_j parity violates realizability: crossing {crossing} spans {span} segments"
            ),
            Warning::OddBlobPlusCrossingCount { blobs, crossings } => write!(
                f,
                "b + c parity violates realizability: {blobs} blobs + {crossings} crossings is odd"
            ),
        }
    }
}

/// Result of walking the endpoint sequence with a state vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelWalk {
    pub valid: bool,
    /// Level before the first endpoint and after each endpoint.
    pub levels: Vec<i64>,
}

fn half_exact(twice: i64) -> Option<i64> {
    (twice % 2 == 0).then_some(twice / 2)
}

impl EnhancedGaussDiagram {
    /// Validates and builds a diagram. Crossings are numbered from 1.
    pub fn new(signs: Vec<Sign>, endpoints: Vec<Endpoint>, blobs: Vec<Blob>) -> Result<Self> {
        let c = signs.len();
        if endpoints.len() != 2 * c {
            return Err(Error::Validation(format!(
                "endpoint sequence has {} entries, expected 2c = {}",
                endpoints.len(),
                2 * c
            )));
        }
        let mut over_pos = vec![0usize; c];
        let mut under_pos = vec![0usize; c];
        for (idx, ep) in endpoints.iter().enumerate() {
            if ep.crossing == 0 || ep.crossing > c {
                return Err(Error::Validation(format!(
                    "endpoint {} refers to crossing {} outside 1..={c}",
                    idx + 1,
                    ep.crossing
                )));
            }
            let slot = match ep.side {
                Sign::Plus => &mut over_pos[ep.crossing - 1],
                Sign::Minus => &mut under_pos[ep.crossing - 1],
            };
            if *slot != 0 {
                let what = if ep.side == Sign::Plus { "overpass" } else { "underpass" };
                return Err(Error::Validation(format!(
                    "each crossing must appear exactly once as overpass and once as underpass: \
                     crossing {} appears twice as {what}",
                    ep.crossing
                )));
            }
            *slot = idx + 1;
        }
        for blob in &blobs {
            if blob.position > 2 * c {
                return Err(Error::Validation(format!(
                    "blob position {} exceeds sequence length {}",
                    blob.position,
                    2 * c
                )));
            }
        }
        Ok(Self {
            name: None,
            signs,
            endpoints,
            blobs,
            over_pos,
            under_pos,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn crossings(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn sign(&self, crossing: usize) -> i64 {
        self.signs[crossing - 1].value()
    }

    pub fn endpoints(&self) -> &[Endpoint] {
        &self.endpoints
    }

    pub fn blobs(&self) -> &[Blob] {
        &self.blobs
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|s| s.value()).sum()
    }

    pub fn blob_sum(&self) -> i64 {
        self.blobs.iter().map(|b| b.delta.value()).sum()
    }

    pub fn over_position(&self, crossing: usize) -> usize {
        self.over_pos[crossing - 1]
    }

    pub fn under_position(&self, crossing: usize) -> usize {
        self.under_pos[crossing - 1]
    }

    /// Realizability warnings (odd chord spans, even `b + c`).
    pub fn warnings(&self) -> Vec<Warning> {
        let mut out = Vec::new();
        for j in 1..=self.crossings() {
            let span = self.over_pos[j - 1].abs_diff(self.under_pos[j - 1]);
            if span.is_multiple_of(2) {
                out.push(Warning::EvenChordSpan { crossing: j, span });
            }
        }
        if (self.blobs.len() + self.crossings()) % 2 == 1 {
            out.push(Warning::OddBlobPlusCrossingCount {
                blobs: self.blobs.len(),
                crossings: self.crossings(),
            });
        }
        out
    }

    /// Same chords and signs with one blob's exponent negated.
    pub fn with_flipped_blob(&self, index: usize) -> Result<Self> {
        let mut blobs = self.blobs.clone();
        let blob = blobs
            .get_mut(index)
            .ok_or_else(|| Error::InvalidArgument(format!("no blob with index {index}")))?;
        blob.delta = blob.delta.flip();
        let mut d = Self::new(self.signs.clone(), self.endpoints.clone(), blobs)?;
        d.name = self.name.clone();
        Ok(d)
    }

    fn check_state(&self, l: &StateVector) {
        assert_eq!(
            l.len(),
            self.crossings(),
            "state vector length must equal the number of crossings"
        );
    }

    fn l_at(&self, l: &StateVector, position: usize) -> i64 {
        let ep = self.endpoints[position - 1];
        ep.side.value() * l[ep.crossing - 1] as i64
    }

    /// Prefix sums `P[p] = sum_{k <= p} eps_k l_{j(k)}` for `p = 0..=2c`.
    pub fn prefix_sums(&self, l: &StateVector) -> Vec<i64> {
        self.check_state(l);
        let mut out = Vec::with_capacity(self.endpoints.len() + 1);
        let mut acc = 0;
        out.push(0);
        for p in 1..=self.endpoints.len() {
            acc += self.l_at(l, p);
            out.push(acc);
        }
        out
    }

    /// `s(j) = -sum_{i < j-} eps_i l_{j(i)}`: level at the start of the `Y`
    /// run contributed by the underpass of crossing `j`.
    pub fn s_vector(&self, l: &StateVector) -> Vec<i64> {
        let prefix = self.prefix_sums(l);
        (1..=self.crossings())
            .map(|j| -prefix[self.under_pos[j - 1] - 1])
            .collect()
    }

    /// The integers `q_j = (sum_{i>j+} sigma_i - sum_{i>j-} sigma_i - sigma_j) / 2`.
    pub fn linking_coefficients(&self) -> Result<Vec<i64>> {
        let n = self.endpoints.len();
        // suffix[p] = sum of sigma over positions > p
        let mut suffix = vec![0i64; n + 1];
        for p in (1..=n).rev() {
            suffix[p - 1] = suffix[p] + self.sign(self.endpoints[p - 1].crossing);
        }
        (1..=self.crossings())
            .map(|j| {
                let twice =
                    suffix[self.over_pos[j - 1]] - suffix[self.under_pos[j - 1]] - self.sign(j);
                half_exact(twice).ok_or(Error::NonIntegralLinking { crossing: j, twice })
            })
            .collect()
    }

    /// Coefficient of `mu` in `c^mu(l)`:
    /// `d(l) = sum_j q_j l_j - (sum_a delta_a)/2 - (sum_j sigma_j)/2`.
    pub fn d_of_l(&self, l: &StateVector) -> Result<i64> {
        self.check_state(l);
        let q = self.linking_coefficients()?;
        let twice = 2 * q.iter().zip(l).map(|(qj, lj)| qj * *lj as i64).sum::<i64>()
            - self.blob_sum()
            - self.writhe();
        half_exact(twice).ok_or_else(|| Error::NonIntegralExponent {
            name: "d(l)",
            twice,
            state: l.to_vec(),
        })
    }

    /// Twice the constant term of `c^mu(l)`, before the `-d(l)` shift.
    fn c0_twice_without_d(&self, l: &StateVector) -> i64 {
        let prefix = self.prefix_sums(l);
        let mut twice = 0i64;
        for blob in &self.blobs {
            twice -= 2 * blob.delta.value() * prefix[blob.position];
        }
        twice -= self
            .signs
            .iter()
            .zip(l)
            .map(|(s, lj)| s.value() * *lj as i64)
            .sum::<i64>();
        // -1/2 sum_i sum_{k<i} sigma_i eps_i eps_k l_i l_k
        for i in 1..=self.endpoints.len() {
            let sigma_i = self.sign(self.endpoints[i - 1].crossing);
            twice -= sigma_i * self.l_at(l, i) * prefix[i - 1];
        }
        // + sum_j sigma_j (sum_{i<j-} eps_i l_i)(sum_{k<j+} eps_k l_k)
        for j in 1..=self.crossings() {
            twice += 2
                * self.sign(j)
                * prefix[self.under_pos[j - 1] - 1]
                * prefix[self.over_pos[j - 1] - 1];
        }
        twice
    }

    /// Constant term `c^0(l)` of `c^mu(l) = d(l) mu + c^0(l)`.
    pub fn c0_of_l(&self, l: &StateVector) -> Result<i64> {
        let d = self.d_of_l(l)?;
        let twice = self.c0_twice_without_d(l) - 2 * d;
        half_exact(twice).ok_or_else(|| Error::NonIntegralExponent {
            name: "c0(l)",
            twice,
            state: l.to_vec(),
        })
    }

    /// The framing-corrected exponent `a^mu(l)` in `v` units, returned as
    /// `(coefficient of mu, constant)`.
    pub fn a_mu_exponent(&self, l: &StateVector) -> (i64, i64) {
        let prefix = self.prefix_sums(l);
        // a^mu = quad + lambda * lin with lambda = mu - 1.
        let mut lin = -self.blob_sum();
        let mut quad = 0i64;
        for i in 1..=self.endpoints.len() {
            let sigma_i = self.sign(self.endpoints[i - 1].crossing);
            quad -= sigma_i * self.l_at(l, i) * prefix[i - 1];
        }
        for blob in &self.blobs {
            quad -= 2 * blob.delta.value() * prefix[blob.position];
        }
        for j in 1..=self.crossings() {
            let sigma = self.sign(j);
            let before_under = prefix[self.under_pos[j - 1] - 1];
            let before_over = prefix[self.over_pos[j - 1] - 1];
            lin += sigma * (-1 + before_under + before_over);
            quad += 2 * sigma * before_under * before_over;
        }
        (lin, quad - lin)
    }

    /// Walks the sequence: an overpass lowers the level by `l_j`, an
    /// underpass raises it. Valid iff the level never goes negative and the
    /// walk returns to 0.
    pub fn level_walk(&self, l: &StateVector) -> LevelWalk {
        let prefix = self.prefix_sums(l);
        let levels: Vec<i64> = prefix.iter().map(|p| -p).collect();
        let valid = levels.iter().all(|&x| x >= 0) && levels.last() == Some(&0);
        LevelWalk { valid, levels }
    }

    pub fn is_valid_state(&self, l: &StateVector) -> bool {
        self.check_state(l);
        let mut level = 0i64;
        for p in 1..=self.endpoints.len() {
            level -= self.l_at(l, p);
            if level < 0 {
                return false;
            }
        }
        level == 0
    }

    /// Diagram with the basepoint moved forward by `shift` endpoints; blobs
    /// travel with the circle.
    pub fn rotated(&self, shift: usize) -> Result<Self> {
        let n = self.endpoints.len();
        if n == 0 {
            return Ok(self.clone());
        }
        let shift = shift % n;
        let mut endpoints = self.endpoints[shift..].to_vec();
        endpoints.extend_from_slice(&self.endpoints[..shift]);
        let blobs = self
            .blobs
            .iter()
            .map(|b| Blob {
                position: if b.position >= shift {
                    b.position - shift
                } else {
                    b.position + n - shift
                },
                delta: b.delta,
            })
            .collect();
        Self::new(self.signs.clone(), endpoints, blobs)
    }
}

/// A Gauss diagram whose left-pointing crossings are flagged instead of
/// carrying blobs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedGaussDiagram {
    pub diagram: EnhancedGaussDiagram,
    pub left_pointing: Vec<bool>,
}

/// Replaces each left-pointing flag by a `K^{2 sigma}` blob just before and a
/// `K^{-2 sigma}` blob just after the overpass endpoint of that crossing.
pub fn convert_left_pointing(marked: &MarkedGaussDiagram) -> Result<EnhancedGaussDiagram> {
    let d = &marked.diagram;
    if marked.left_pointing.len() != d.crossings() {
        return Err(Error::Validation(format!(
            "{} left-pointing flags for {} crossings",
            marked.left_pointing.len(),
            d.crossings()
        )));
    }
    let mut blobs = d.blobs.clone();
    for (idx, _) in marked.left_pointing.iter().enumerate().filter(|(_, f)| **f) {
        let j = idx + 1;
        let p = d.over_position(j);
        let sigma = d.signs[idx];
        blobs.push(Blob { position: p - 1, delta: sigma });
        blobs.push(Blob { position: p, delta: sigma.flip() });
    }
    let mut out = EnhancedGaussDiagram::new(d.signs.clone(), d.endpoints.clone(), blobs)?;
    out.name = d.name.clone();
    Ok(out)
}

/// All state vectors with `sum_j l_j <= total` and a valid level walk, in
/// lexicographic order.
pub fn states_with_total_at_most(d: &EnhancedGaussDiagram, total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; d.crossings()];
    fn rec(
        d: &EnhancedGaussDiagram,
        idx: usize,
        remaining: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if idx == current.len() {
            if d.is_valid_state(current) {
                out.push(current.clone());
            }
            return;
        }
        for v in 0..=remaining {
            current[idx] = v;
            rec(d, idx + 1, remaining - v, current, out);
        }
        current[idx] = 0;
    }
    rec(d, 0, total, &mut current, &mut out);
    out
}

/// All state vectors in the box `[0, bound)^c` with a valid level walk, in
/// lexicographic order.
pub fn states_in_box(d: &EnhancedGaussDiagram, bound: u32) -> Vec<Vec<u32>> {
    let c = d.crossings();
    let mut out = Vec::new();
    if bound == 0 {
        return out;
    }
    let mut current = vec![0u32; c];
    loop {
        if d.is_valid_state(&current) {
            out.push(current.clone());
        }
        let mut idx = c;
        loop {
            if idx == 0 {
                return out;
            }
            idx -= 1;
            current[idx] += 1;
            if current[idx] < bound {
                break;
            }
            current[idx] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> EnhancedGaussDiagram {
        builtin("trefoil").unwrap()
    }

    fn figure8() -> EnhancedGaussDiagram {
        builtin("figure8").unwrap()
    }

    #[test]
    fn trefoil_s_vector() {
        let d = trefoil();
        for (l1, l2, l3) in [(0, 0, 0), (1, 2, 3), (0, 5, 0), (2, 1, 0)] {
            let s = d.s_vector(&[l1, l2, l3]);
            let (l1, l2, l3) = (l1 as i64, l2 as i64, l3 as i64);
            assert_eq!(s, vec![l2 - l1 - l3, -l1, -l3]);
        }
    }

    #[test]
    fn figure8_s_vector() {
        let d = figure8();
        for l in 0..5u32 {
            for m in 0..5u32 {
                let diff = l as i64 - m as i64;
                assert_eq!(d.s_vector(&[0, l, 0, m]), vec![diff, 0, 0, diff]);
            }
        }
    }

    #[test]
    fn linking_coefficients_match_worked_examples() {
        assert_eq!(trefoil().linking_coefficients().unwrap()[1], -2);
        assert_eq!(figure8().linking_coefficients().unwrap(), vec![-1, 1, -1, 1]);
        assert!(builtin("unknot").unwrap().linking_coefficients().unwrap().is_empty());
    }

    #[test]
    fn exponents_match_worked_examples() {
        let t = trefoil();
        let e = figure8();
        for l in 0..6u32 {
            let li = l as i64;
            assert_eq!(t.d_of_l(&[0, l, 0]).unwrap(), -1 - 2 * li);
            // 1 + l/2 + l^2/2
            assert_eq!(t.c0_of_l(&[0, l, 0]).unwrap(), 1 + (li + li * li) / 2);
            for m in 0..6u32 {
                let mi = m as i64;
                assert_eq!(e.d_of_l(&[0, l, 0, m]).unwrap(), li + mi + 1);
                let twice = -3 * li * li + 2 * li * mi - mi * mi - 5 * li + mi - 2;
                assert_eq!(2 * e.c0_of_l(&[0, l, 0, m]).unwrap(), twice);
            }
        }
        // l = 0: d = -(sum delta + writhe)/2 and c0 = -d.
        assert_eq!(t.d_of_l(&[0, 0, 0]).unwrap(), -1);
        assert_eq!(t.c0_of_l(&[0, 0, 0]).unwrap(), 1);
    }

    #[test]
    fn a_mu_is_consistent_with_c_mu() {
        for d in [trefoil(), figure8()] {
            for l in states_with_total_at_most(&d, 5) {
                let (lin, constant) = d.a_mu_exponent(&l);
                let sigma_l: i64 = d.signs().iter().zip(&l).map(|(s, x)| s.value() * *x as i64).sum();
                // c^mu = a^mu / 2 - mu * sum sigma_j l_j / 2
                assert_eq!(lin - sigma_l, 2 * d.d_of_l(&l).unwrap());
                assert_eq!(constant, 2 * d.c0_of_l(&l).unwrap());
            }
        }
        let (lin, constant) = trefoil().a_mu_exponent(&[0, 1, 0]);
        // c^mu(1) = -3 mu + 2
        assert_eq!(((lin - 1) / 2, constant / 2), (-3, 2));
    }

    #[test]
    fn level_walks() {
        let t = trefoil();
        let w = t.level_walk(&[0, 2, 0]);
        assert!(w.valid);
        assert_eq!(w.levels, vec![0, 0, 2, 2, 2, 0, 0]);
        let w = t.level_walk(&[1, 0, 0]);
        assert!(!w.valid);
        assert_eq!(w.levels[1], -1);
        let w = t.level_walk(&[0, 0, 0]);
        assert!(w.valid && w.levels.iter().all(|&x| x == 0));
    }

    #[test]
    fn single_crossing_support_valid_iff_underpass_first() {
        for d in [trefoil(), figure8()] {
            for j in 1..=d.crossings() {
                let mut l = vec![0u32; d.crossings()];
                l[j - 1] = 2;
                let expected = d.under_position(j) < d.over_position(j);
                assert_eq!(d.level_walk(&l).valid, expected, "crossing {j}");
            }
        }
    }

    #[test]
    fn corrupted_diagram_has_nonintegral_exponent() {
        // A single blob on an otherwise empty circle: d = -1/2.
        let d = EnhancedGaussDiagram::new(vec![], vec![], vec![Blob { position: 0, delta: Sign::Plus }])
            .unwrap();
        assert!(matches!(d.d_of_l(&[]), Err(Error::NonIntegralExponent { .. })));
        // Chords with even spans: q_j become half-integers.
        let bad = EnhancedGaussDiagram::new(
            vec![Sign::Plus, Sign::Plus],
            vec![
                Endpoint { crossing: 1, side: Sign::Plus },
                Endpoint { crossing: 2, side: Sign::Plus },
                Endpoint { crossing: 1, side: Sign::Minus },
                Endpoint { crossing: 2, side: Sign::Minus },
            ],
            vec![],
        )
        .unwrap();
        assert!(matches!(bad.linking_coefficients(), Err(Error::NonIntegralLinking { .. })));
    }

    #[test]
    fn parity_claim_on_builtins() {
        for name in BUILTIN_NAMES {
            let d = builtin(name).unwrap();
            for l in states_with_total_at_most(&d, 6) {
                let (lin, constant) = d.a_mu_exponent(&l);
                let total: i64 = l.iter().map(|x| *x as i64).sum();
                assert_eq!((lin - total).rem_euclid(2), 0, "{name} {l:?}");
                assert_eq!(constant.rem_euclid(2), 0, "{name} {l:?}");
            }
        }
    }

    #[test]
    fn left_pointing_conversion() {
        let base = EnhancedGaussDiagram::new(
            vec![Sign::Plus, Sign::Minus],
            vec![
                Endpoint { crossing: 1, side: Sign::Plus },
                Endpoint { crossing: 2, side: Sign::Minus },
                Endpoint { crossing: 1, side: Sign::Minus },
                Endpoint { crossing: 2, side: Sign::Plus },
            ],
            vec![],
        )
        .unwrap();
        let converted = convert_left_pointing(&MarkedGaussDiagram {
            diagram: base.clone(),
            left_pointing: vec![true, true],
        })
        .unwrap();
        assert_eq!(
            converted.blobs(),
            &[
                Blob { position: 0, delta: Sign::Plus },
                Blob { position: 1, delta: Sign::Minus },
                Blob { position: 3, delta: Sign::Minus },
                Blob { position: 4, delta: Sign::Plus },
            ]
        );
        let unchanged = convert_left_pointing(&MarkedGaussDiagram {
            diagram: base.clone(),
            left_pointing: vec![false, false],
        })
        .unwrap();
        assert_eq!(unchanged, base);
    }

    #[test]
    fn warnings_on_even_spans() {
        assert!(trefoil().warnings().is_empty());
        assert!(figure8().warnings().is_empty());
        let d = EnhancedGaussDiagram::new(
            vec![Sign::Plus, Sign::Plus],
            vec![
                Endpoint { crossing: 1, side: Sign::Plus },
                Endpoint { crossing: 2, side: Sign::Plus },
                Endpoint { crossing: 1, side: Sign::Minus },
                Endpoint { crossing: 2, side: Sign::Minus },
            ],
            vec![],
        )
        .unwrap();
        let w = d.warnings();
        assert!(w.contains(&Warning::EvenChordSpan { crossing: 1, span: 2 }));
    }

    #[test]
    fn state_enumerations() {
        let t = trefoil();
        let states = states_with_total_at_most(&t, 3);
        assert_eq!(states, vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 2, 0], vec![0, 3, 0]]);
        assert_eq!(states_in_box(&t, 3), vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 2, 0]]);
        let u = builtin("unknot").unwrap();
        assert_eq!(states_in_box(&u, 4), vec![Vec::<u32>::new()]);
    }
}
