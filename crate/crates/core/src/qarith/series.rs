use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qarith::laurent::rat;
use crate::qarith::LaurentPoly;

/// Truncated power series in `h = q - 1`, exact through `h^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSeries {
    order: usize,
    coeffs: Vec<BigRational>,
}

impl HSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<BigRational>) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        Self { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, or `None` if any is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Lowest power of `h` with a non-zero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot extend a truncated series");
        Self::from_coeffs(order, self.coeffs[..=order].to_vec())
    }
}

impl<'a> Add<&'a HSeries> for &'a HSeries {
    type Output = HSeries;
    fn add(self, rhs: &HSeries) -> HSeries {
        let order = self.order.min(rhs.order);
        let coeffs = (0..=order).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect();
        HSeries { order, coeffs }
    }
}

impl AddAssign<&HSeries> for HSeries {
    fn add_assign(&mut self, rhs: &HSeries) {
        *self = &*self + rhs;
    }
}

impl<'a> Mul<&'a HSeries> for &'a HSeries {
    type Output = HSeries;
    fn mul(self, rhs: &HSeries) -> HSeries {
        let order = self.order.min(rhs.order);
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        HSeries { order, coeffs }
    }
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let abs = c.abs();
            let var = if n == 1 { "h".to_string() } else { format!("h^{n}") };
            match n {
                0 => write!(f, "{sep}{abs}")?,
                _ if abs.is_one() => write!(f, "{sep}{var}")?,
                _ => write!(f, "{sep}{abs}*{var}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(h^{})", self.order + 1)
    }
}

/// `binom(e, n)` for any integer `e`, as an exact rational.
pub(crate) fn general_binomial(e: i64, n: usize) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..n as i64 {
        num *= BigInt::from(e - t);
        den *= BigInt::from(t + 1);
    }
    BigRational::new(num, den)
}

/// Expands a pure `q`-polynomial in `h = q - 1` up to `h^order`.
pub fn to_h_series(p: &LaurentPoly, order: usize) -> Result<HSeries> {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    for (e, c) in p.q_terms()? {
        for (n, slot) in coeffs.iter_mut().enumerate() {
            let b = general_binomial(e, n);
            if !b.is_zero() {
                *slot += &c * b;
            }
        }
    }
    Ok(HSeries { order, coeffs })
}

/// Dense polynomial in the color `mu` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyInMu {
    coeffs: Vec<BigRational>,
}

impl PolyInMu {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, mu: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * mu + c)
    }

    pub fn eval_int(&self, mu: i64) -> BigRational {
        self.eval(&rat(mu))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add_scaled(&mut self, other: &Self, c: &BigRational) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigRational::zero());
        }
        for (slot, x) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *slot += x * c;
        }
        self.trim();
    }
}

impl<'a> Mul<&'a PolyInMu> for &'a PolyInMu {
    type Output = PolyInMu;
    fn mul(self, rhs: &PolyInMu) -> PolyInMu {
        if self.is_zero() || rhs.is_zero() {
            return PolyInMu::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PolyInMu::from_coeffs(coeffs)
    }
}

impl fmt::Display for PolyInMu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let abs = c.abs();
            let var = match k {
                0 => String::new(),
                1 => "mu".to_string(),
                _ => format!("mu^{k}"),
            };
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{sep}{abs}")?,
                (_, true) => write!(f, "{sep}{var}")?,
                _ => write!(f, "{sep}{abs}*{var}")?,
            }
        }
        Ok(())
    }
}

/// Coefficients of `h^0..h^order` in `(1+h)^{alpha*mu + beta}`: the
/// generalized binomials `binom(alpha*mu + beta, n)` as polynomials in `mu`.
pub fn general_binomial_series(alpha: i64, beta: i64, order: usize) -> Vec<PolyInMu> {
    let mut out = Vec::with_capacity(order + 1);
    let mut running = PolyInMu::from_ints(&[1]);
    out.push(running.clone());
    for n in 1..=order {
        let t = n as i64 - 1;
        let factor = PolyInMu::from_ints(&[beta - t, alpha]);
        running = &running * &factor;
        running = running.scale(&BigRational::new(BigInt::one(), BigInt::from(n)));
        out.push(running.clone());
    }
    out
}

/// Finite sum of `coeff(m) * q^{m mu}` with Laurent-polynomial coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MuPoly {
    terms: BTreeMap<i64, LaurentPoly>,
}

impl MuPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(LaurentPoly::one())
    }

    pub fn constant(c: LaurentPoly) -> Self {
        Self::monomial(0, c)
    }

    /// `c * q^{m mu}`.
    pub fn monomial(m: i64, c: LaurentPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &LaurentPoly)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: i64) -> LaurentPoly {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: i64, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (m, x) in self.terms.iter() {
            out.add_term(*m, &(x * c));
        }
        out
    }

    /// Substitutes an integer color: `q^{m mu} -> q^{m * mu}`.
    pub fn eval_at(&self, mu: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in self.terms.iter() {
            out += &c.shift(4 * m * mu);
        }
        out
    }

    /// `q -> q^-1` everywhere, including `q^mu -> q^-mu`.
    pub fn subst_q_inverse(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms.iter() {
            out.add_term(-m, &c.subst_inverse());
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(LaurentPoly::is_integral)
    }

    /// Expansion in `h` with polynomial-in-`mu` coefficients, through `h^order`.
    pub fn h_expansion(&self, order: usize) -> Result<Vec<PolyInMu>> {
        let mut out = vec![PolyInMu::zero(); order + 1];
        let mut cache: BTreeMap<(i64, i64), Vec<PolyInMu>> = BTreeMap::new();
        for (m, c) in self.terms.iter() {
            for (beta, coeff) in c.q_terms()? {
                let series = cache
                    .entry((*m, beta))
                    .or_insert_with(|| general_binomial_series(*m, beta, order));
                for (slot, term) in out.iter_mut().zip(series.iter()) {
                    slot.add_scaled(term, &coeff);
                }
            }
        }
        Ok(out)
    }
}

impl<'a> Add<&'a MuPoly> for &'a MuPoly {
    type Output = MuPoly;
    fn add(self, rhs: &MuPoly) -> MuPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&MuPoly> for MuPoly {
    fn add_assign(&mut self, rhs: &MuPoly) {
        for (m, c) in rhs.terms.iter() {
            self.add_term(*m, c);
        }
    }
}

impl<'a> Mul<&'a MuPoly> for &'a MuPoly {
    type Output = MuPoly;
    fn mul(self, rhs: &MuPoly) -> MuPoly {
        let mut out = MuPoly::zero();
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in rhs.terms.iter() {
                out.add_term(m1 + m2, &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for MuPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*q^({m}mu)")?;
        }
        Ok(())
    }
}

/// Smallest exponent of `h` dividing a pure `q`-polynomial. `None` for the
/// zero polynomial.
pub fn h_adic_valuation(p: &LaurentPoly) -> Option<usize> {
    let (lo, hi) = (p.min_exp()?, p.max_exp()?);
    if !p.is_q_poly() {
        let h = LaurentPoly::from_q_coeffs(&[-1, 1]);
        let mut cur = p.clone();
        let mut k = 0;
        while let Ok(next) = cur.exact_div(&h) {
            cur = next;
            k += 1;
        }
        return Some(k);
    }
    // Dense coefficients in q; dividing by q - 1 is a suffix sum, and the
    // remainder is the value at q = 1.
    let mut coeffs = vec![BigRational::zero(); ((hi - lo) / 4 + 1) as usize];
    for (e, c) in p.terms() {
        coeffs[((e - lo) / 4) as usize] = c.clone();
    }
    let mut k = 0;
    while coeffs.len() > 1 {
        let mut acc = BigRational::zero();
        for c in coeffs.iter_mut().rev() {
            acc += &*c;
            *c = acc.clone();
        }
        if !coeffs[0].is_zero() {
            break;
        }
        coeffs.remove(0);
        k += 1;
    }
    Some(k)
}

/// Integer value of a rational that must be integral.
#[cfg(test)]
pub(crate) fn as_i64(c: &BigRational) -> Option<i64> {
    if c.is_integer() {
        num_traits::ToPrimitive::to_i64(&c.to_integer())
    } else {
        None
    }
}

pub(crate) fn require_integral_series(s: &HSeries, what: &str) -> Result<Vec<BigInt>> {
    s.integer_coeffs()
        .ok_or_else(|| Error::IntegralityViolation(format!("{what}: {s}")))
}
