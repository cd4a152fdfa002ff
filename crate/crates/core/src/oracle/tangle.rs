//! Tangle words and their evaluation.
//!
//! A word is a list of slices read from the first line to the last, acting on
//! a row of oriented points. `d` points carry `Lambda_mu`, `u` points its dual.
//! Positions are 1-based.
//!
//! ```text
//! in d            # boundary points before the first slice (default: d)
//! cup_right 2     # insert d u at positions 2, 3
//! x+ 1 dd         # positive crossing of points 1, 2, both oriented d
//! cap_left 2      # close the d u pair at positions 2, 3
//! ```
//!
//! Slices: `cup_right p` inserts `d u`, `cup_left p` inserts `u d`,
//! `cap_right p` closes `u d`, `cap_left p` closes `d u`. Left-oriented
//! caps carry `K^2` and left-oriented cups `K^-2`. `x+ p ab` / `x- p ab` cross the
//! points at `p, p+1`, whose orientations must be `a` and `b`.

use std::collections::BTreeMap;
use std::fmt;

use super::{irrep, permutation, r_matrix_on, Matrix, Module};
use crate::error::{Error, Result};
use crate::qarith::LaurentPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Down,
    Up,
}

impl Orientation {
    fn letter(self) -> char {
        match self {
            Orientation::Down => 'd',
            Orientation::Up => 'u',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        match c {
            'd' => Some(Orientation::Down),
            'u' => Some(Orientation::Up),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slice {
    CupRight(usize),
    CupLeft(usize),
    CapRight(usize),
    CapLeft(usize),
    Crossing {
        sign: i64,
        position: usize,
        left: Orientation,
        right: Orientation,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleWord {
    pub input: Vec<Orientation>,
    pub slices: Vec<Slice>,
}

impl TangleWord {
    /// Sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        self.slices
            .iter()
            .map(|s| match s {
                Slice::Crossing { sign, .. } => *sign,
                _ => 0,
            })
            .sum()
    }

    /// Boundary orientations after all slices, checking that every slice fits.
    pub fn output(&self) -> Result<Vec<Orientation>> {
        let mut points = self.input.clone();
        for (idx, slice) in self.slices.iter().enumerate() {
            apply_shape(&mut points, slice).map_err(|m| {
                Error::MalformedTangle(format!("slice {} ({slice}): {m}", idx + 1))
            })?;
        }
        Ok(points)
    }
}

fn apply_shape(points: &mut Vec<Orientation>, slice: &Slice) -> std::result::Result<(), String> {
    use Orientation::{Down, Up};
    let n = points.len();
    let pair_at = |p: usize| -> std::result::Result<(Orientation, Orientation), String> {
        if p == 0 || p + 1 > n {
            return Err(format!("position {p} needs points {p} and {} but only {n} exist", p + 1));
        }
        Ok((points[p - 1], points[p]))
    };
    match *slice {
        Slice::CupRight(p) | Slice::CupLeft(p) => {
            if p == 0 || p > n + 1 {
                return Err(format!("cannot insert at position {p} among {n} points"));
            }
            let pair = if matches!(slice, Slice::CupRight(_)) { [Down, Up] } else { [Up, Down] };
            points.splice(p - 1..p - 1, pair);
        }
        Slice::CapRight(p) | Slice::CapLeft(p) => {
            let expected = if matches!(slice, Slice::CapRight(_)) { (Up, Down) } else { (Down, Up) };
            let found = pair_at(p)?;
            if found != expected {
                return Err(format!(
                    "expects {}{} but the points are {}{}",
                    expected.0.letter(),
                    expected.1.letter(),
                    found.0.letter(),
                    found.1.letter()
                ));
            }
            points.drain(p - 1..=p);
        }
        Slice::Crossing { position, left, right, .. } => {
            let found = pair_at(position)?;
            if found != (left, right) {
                return Err(format!(
                    "declared {}{} but the points are {}{}",
                    left.letter(),
                    right.letter(),
                    found.0.letter(),
                    found.1.letter()
                ));
            }
            points.swap(position - 1, position);
        }
    }
    Ok(())
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slice::CupRight(p) => write!(f, "cup_right {p}"),
            Slice::CupLeft(p) => write!(f, "cup_left {p}"),
            Slice::CapRight(p) => write!(f, "cap_right {p}"),
            Slice::CapLeft(p) => write!(f, "cap_left {p}"),
            Slice::Crossing { sign, position, left, right } => {
                let s = if *sign > 0 { '+' } else { '-' };
                write!(f, "x{s} {position} {}{}", left.letter(), right.letter())
            }
        }
    }
}

impl fmt::Display for TangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let input: String = self
            .input
            .iter()
            .map(|o| o.letter().to_string())
            .collect::<Vec<_>>()
            .join(" ");
        writeln!(f, "in {input}")?;
        for s in &self.slices {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

fn malformed(line: usize, msg: impl fmt::Display) -> Error {
    Error::MalformedTangle(format!("line {line}: {msg}"))
}

pub fn parse_tangle_word(text: &str) -> Result<TangleWord> {
    let mut input = None;
    let mut slices = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let position = |tok: Option<&&str>| -> Result<usize> {
            let tok = tok.ok_or_else(|| malformed(line, "missing position"))?;
            tok.parse().map_err(|_| malformed(line, format!("bad position `{tok}`")))
        };
        let slice = match tokens[0] {
            "in" => {
                if input.is_some() || !slices.is_empty() {
                    return Err(malformed(line, "`in` must come first and only once"));
                }
                let points = tokens[1..]
                    .iter()
                    .flat_map(|t| t.chars())
                    .map(|c| Orientation::from_letter(c).ok_or_else(|| malformed(line, format!("bad orientation `{c}`"))))
                    .collect::<Result<Vec<_>>>()?;
                input = Some(points);
                continue;
            }
            "cup_right" => Slice::CupRight(position(tokens.get(1))?),
            "cup_left" => Slice::CupLeft(position(tokens.get(1))?),
            "cap_right" => Slice::CapRight(position(tokens.get(1))?),
            "cap_left" => Slice::CapLeft(position(tokens.get(1))?),
            "x+" | "x-" => {
                let orient = tokens
                    .get(2)
                    .ok_or_else(|| malformed(line, "crossing needs two orientations"))?;
                let letters: Vec<Orientation> = orient
                    .chars()
                    .map(Orientation::from_letter)
                    .collect::<Option<_>>()
                    .filter(|v: &Vec<Orientation>| v.len() == 2)
                    .ok_or_else(|| malformed(line, format!("bad orientations `{orient}`")))?;
                Slice::Crossing {
                    sign: if tokens[0] == "x+" { 1 } else { -1 },
                    position: position(tokens.get(1))?,
                    left: letters[0],
                    right: letters[1],
                }
            }
            other => return Err(malformed(line, format!("unknown slice `{other}`"))),
        };
        slices.push(slice);
    }
    let word = TangleWord {
        input: input.unwrap_or_else(|| vec![Orientation::Down]),
        slices,
    };
    word.output()?;
    Ok(word)
}

pub const BUILTIN_WORDS: [&str; 5] = ["unknot", "kink+", "kink-", "trefoil", "figure8"];

/// Hand-built 1-tangle words whose closures are the built-in knots.
pub fn builtin_word(name: &str) -> Result<TangleWord> {
    let text = match name {
        "unknot" => "in d\n",
        "kink+" => "cup_right 2\nx+ 1 dd\ncap_left 2\n",
        "kink-" => "cup_right 2\nx- 1 dd\ncap_left 2\n",
        "trefoil" => "cup_right 2\nx+ 1 dd\nx+ 1 dd\nx+ 1 dd\ncap_left 2\n",
        // Braid s1 s2^-1 s1 s2^-1 on three strands, two of them closed.
        "figure8" => "cup_right 2\ncup_right 3\nx+ 1 dd\nx- 2 dd\nx+ 1 dd\nx- 2 dd\ncap_left 3\ncap_left 2\n",
        _ => return Err(Error::UnknownKnot(name.to_string())),
    };
    parse_tangle_word(text)
}

type Key = Vec<u8>;
type Vector = BTreeMap<Key, LaurentPoly>;

fn add_into(v: &mut Vector, key: Key, c: LaurentPoly) {
    if c.is_zero() {
        return;
    }
    let entry = v.entry(key.clone()).or_default();
    *entry += &c;
    if entry.is_zero() {
        v.remove(&key);
    }
}

struct Evaluator {
    mu: usize,
    down: Module,
    up: Module,
    k_sq: Vec<LaurentPoly>,
    k_sq_inv: Vec<LaurentPoly>,
    crossing_cache: BTreeMap<(i64, Orientation, Orientation), Matrix>,
}

impl Evaluator {
    fn new(mu: usize) -> Result<Self> {
        let down = irrep(mu)?;
        let up = down.dual();
        let k_sq = down.h.iter().map(|h| LaurentPoly::u_pow(2 * h)).collect();
        let k_sq_inv = down.h.iter().map(|h| LaurentPoly::u_pow(-2 * h)).collect();
        Ok(Self { mu, down, up, k_sq, k_sq_inv, crossing_cache: BTreeMap::new() })
    }

    fn module(&self, o: Orientation) -> &Module {
        match o {
            Orientation::Down => &self.down,
            Orientation::Up => &self.up,
        }
    }

    /// Slash crossings act as `P R`, backslash crossings as `R^-1 P`.
    fn crossing(&mut self, sign: i64, left: Orientation, right: Orientation) -> Result<&Matrix> {
        let key = (sign, left, right);
        if !self.crossing_cache.contains_key(&key) {
            let slash = (sign > 0) == (left == right);
            let (a, b) = (self.module(left), self.module(right));
            let p = permutation(self.mu, self.mu);
            let m = if slash {
                &p * &r_matrix_on(a, b, 1)?
            } else {
                &r_matrix_on(b, a, -1)? * &p
            };
            self.crossing_cache.insert(key, m);
        }
        Ok(&self.crossing_cache[&key])
    }

    fn apply(&mut self, v: &Vector, slice: &Slice) -> Result<Vector> {
        let mu = self.mu;
        let mut out = Vector::new();
        match *slice {
            Slice::CupRight(p) | Slice::CupLeft(p) => {
                let left = matches!(slice, Slice::CupLeft(_));
                for (key, c) in v {
                    for i in 0..mu {
                        let mut k = key.clone();
                        k.splice(p - 1..p - 1, [i as u8, i as u8]);
                        let w = if left { c * &self.k_sq_inv[i] } else { c.clone() };
                        add_into(&mut out, k, w);
                    }
                }
            }
            Slice::CapRight(p) | Slice::CapLeft(p) => {
                // For cap_left the V index is the first of the pair.
                let left = matches!(slice, Slice::CapLeft(_));
                for (key, c) in v {
                    if key[p - 1] != key[p] {
                        continue;
                    }
                    let i = key[p - 1] as usize;
                    let mut k = key.clone();
                    k.drain(p - 1..=p);
                    let w = if left { c * &self.k_sq[i] } else { c.clone() };
                    add_into(&mut out, k, w);
                }
            }
            Slice::Crossing { sign, position, left, right } => {
                let m = self.crossing(sign, left, right)?.clone();
                let p = position;
                for (key, c) in v {
                    let col = key[p - 1] as usize * mu + key[p] as usize;
                    for row in 0..mu * mu {
                        let e = m.get(row, col);
                        if e.is_zero() {
                            continue;
                        }
                        let mut k = key.clone();
                        k[p - 1] = (row / mu) as u8;
                        k[p] = (row % mu) as u8;
                        add_into(&mut out, k, c * e);
                    }
                }
            }
        }
        Ok(out)
    }
}

fn index_to_key(mut idx: usize, len: usize, mu: usize) -> Key {
    let mut key = vec![0u8; len];
    for slot in key.iter_mut().rev() {
        *slot = (idx % mu) as u8;
        idx /= mu;
    }
    key
}

fn key_to_index(key: &[u8], mu: usize) -> usize {
    key.iter().fold(0, |acc, d| acc * mu + *d as usize)
}

/// The linear map of a tangle word between the tensor products of its
/// boundary modules. Points are ordered with the first point as the slowest
/// index.
pub fn evaluate_morphism(word: &TangleWord, mu: usize) -> Result<Matrix> {
    let output = word.output()?;
    let mut ev = Evaluator::new(mu)?;
    let n_in = word.input.len();
    let dim_in = mu.pow(n_in as u32);
    let dim_out = mu.pow(output.len() as u32);
    let mut m = Matrix::zeros(dim_out, dim_in);
    for col in 0..dim_in {
        let mut v = Vector::new();
        v.insert(index_to_key(col, n_in, mu), LaurentPoly::one());
        for slice in &word.slices {
            v = ev.apply(&v, slice)?;
        }
        for (key, c) in v {
            m.set(key_to_index(&key, mu), col, c);
        }
    }
    Ok(m)
}

/// The scalar by which a 1-tangle word acts on `Lambda_mu`. The full matrix
/// is checked to be scalar.
pub fn evaluate_tangle(word: &TangleWord, mu: usize) -> Result<LaurentPoly> {
    let down = vec![Orientation::Down];
    if word.input != down || word.output()? != down {
        return Err(Error::MalformedTangle(
            "a 1-tangle must have a single d point at both ends".into(),
        ));
    }
    let m = evaluate_morphism(word, mu)?;
    m.scalar_value()
        .ok_or_else(|| Error::OracleMismatch(format!("tangle evaluation is not scalar: {m:?}")))
}
