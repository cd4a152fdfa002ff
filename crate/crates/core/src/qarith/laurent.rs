use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Exact Laurent polynomial in `u`, where `q = u^4` and `v = u^2`.
///
/// Terms are kept in a sorted map without zero coefficients, so structural
/// equality is equality of polynomials.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, rat(c))
    }

    /// `c * u^exp`.
    pub fn monomial(exp: i64, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    pub fn u_pow(e: i64) -> Self {
        Self::monomial(e, BigRational::one())
    }

    pub fn v_pow(e: i64) -> Self {
        Self::u_pow(2 * e)
    }

    pub fn q_pow(e: i64) -> Self {
        Self::u_pow(4 * e)
    }

    /// Builds a polynomial from `(u-exponent, integer coefficient)` pairs.
    pub fn from_u_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, rat(c));
        }
        p
    }

    /// Builds a polynomial from `(q-exponent, integer coefficient)` pairs.
    pub fn from_q_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        Self::from_u_terms(terms.into_iter().map(|(e, c)| (4 * e, c)))
    }

    /// Polynomial with coefficients `coeffs[k]` on `q^k`.
    pub fn from_q_coeffs(coeffs: &[i64]) -> Self {
        Self::from_q_terms(coeffs.iter().enumerate().map(|(k, &c)| (k as i64, c)))
    }

    pub fn add_term(&mut self, exp: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// All exponents divisible by 4: a Laurent polynomial in `q`.
    pub fn is_q_poly(&self) -> bool {
        self.terms.keys().all(|e| e.rem_euclid(4) == 0)
    }

    /// All exponents divisible by 2: a Laurent polynomial in `v`.
    pub fn is_v_poly(&self) -> bool {
        self.terms.keys().all(|e| e.rem_euclid(2) == 0)
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// `u -> u^{-1}`, hence `q -> q^{-1}`.
    pub fn subst_inverse(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / divisor` in `Q[u, u^-1]`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (quotient, remainder) = self.div_rem_laurent(divisor)?;
        if remainder.is_zero() {
            Ok(quotient)
        } else {
            Err(Error::NonDivisible { remainder })
        }
    }

    pub fn divides(&self, dividend: &Self) -> bool {
        matches!(dividend.div_rem_laurent(self), Ok((_, r)) if r.is_zero())
    }

    /// Long division after normalising both operands to genuine polynomials
    /// with non-zero constant term. The remainder is zero iff `divisor`
    /// divides `self` in the Laurent ring.
    fn div_rem_laurent(&self, divisor: &Self) -> Result<(Self, Self)> {
        let (Some(dmin), Some(dmax)) = (divisor.min_exp(), divisor.max_exp()) else {
            return Err(Error::InvalidArgument("division by zero polynomial".into()));
        };
        let Some(amin) = self.min_exp() else {
            return Ok((Self::zero(), Self::zero()));
        };
        let dlead = divisor.terms[&dmax].clone();
        let ddeg = dmax - dmin;
        // Work on self * u^{-amin} and divisor * u^{-dmin}.
        let mut rem: BTreeMap<i64, BigRational> =
            self.terms.iter().map(|(e, c)| (e - amin, c.clone())).collect();
        let mut quot = BTreeMap::new();
        while let Some((&top, _)) = rem.iter().next_back() {
            if top < ddeg {
                break;
            }
            let c = &rem[&top] / &dlead;
            let shift = top - ddeg;
            for (e, dc) in divisor.terms.iter() {
                let key = e - dmin + shift;
                let delta = &c * dc;
                let entry = rem.entry(key).or_insert_with(BigRational::zero);
                *entry -= delta;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert(shift, c);
        }
        let quotient = Self { terms: quot }.shift(amin - dmin);
        let remainder = Self { terms: rem }.shift(amin);
        Ok((quotient, remainder))
    }

    /// Terms with exponents read in `q` units; fails on quarter powers.
    pub fn q_terms(&self) -> Result<Vec<(i64, BigRational)>> {
        if !self.is_q_poly() {
            return Err(Error::QuarterPowerPresent(self.clone()));
        }
        Ok(self.terms.iter().map(|(e, c)| (e / 4, c.clone())).collect())
    }

    /// Value at `u = 1`.
    pub fn eval_at_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!([e, format!("{}/{}", c.numer(), c.denom())]))
            .collect();
        json!({ "unit": "u", "terms": terms })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidArgument(format!("polynomial JSON: {m}"));
        if value.get("unit").and_then(Value::as_str) != Some("u") {
            return Err(bad("unit must be \"u\""));
        }
        let terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing terms"))?;
        let mut p = Self::zero();
        for t in terms {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("term"))?;
            let e = pair[0].as_i64().ok_or_else(|| bad("exponent"))?;
            let s = pair[1].as_str().ok_or_else(|| bad("coefficient"))?;
            let c = parse_rational(s).ok_or_else(|| bad("coefficient"))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

fn render_unit(e: i64) -> String {
    let (var, k) = if e % 4 == 0 {
        ("q", e / 4)
    } else if e % 2 == 0 {
        ("v", e / 2)
    } else {
        ("u", e)
    };
    if k == 1 {
        var.to_string()
    } else {
        format!("{var}^{k}")
    }
}

/// Canonical rendering: increasing exponent, `q`/`v`/`u` units chosen per
/// term, e.g. `-q^-4 + q^-3 + q^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *e == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", render_unit(*e))?;
            } else {
                write!(f, "{abs}*{}", render_unit(*e))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, c.clone());
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -(self.clone())
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut terms: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in rhs.terms.iter() {
                let entry = terms.entry(e1 + e2).or_insert_with(BigRational::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| acc * p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_q_coeffs(coeffs)
    }

    #[test]
    fn renders_in_mixed_units() {
        let p = LaurentPoly::from_q_terms([(-4, -1), (-3, 1), (-1, 1)]);
        assert_eq!(p.to_string(), "-q^-4 + q^-3 + q^-1");
        assert_eq!(LaurentPoly::from_u_terms([(-2, 1), (0, 1), (3, -2)]).to_string(), "v^-1 + 1 - 2*u^3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let half = LaurentPoly::monomial(4, BigRational::new(1.into(), 2.into()));
        assert_eq!(half.to_string(), "1/2*q");
    }

    #[test]
    fn json_round_trip() {
        let p = LaurentPoly::from_u_terms([(-3, 2), (8, -1)]).scale(&BigRational::new(1.into(), 3.into()));
        let v = p.to_json();
        assert_eq!(v["terms"][0], json!([-3, "2/3"]));
        assert_eq!(LaurentPoly::from_json(&v).unwrap(), p);
    }

    #[test]
    fn exact_division_examples() {
        assert_eq!(q(&[-1, 0, 1]).exact_div(&q(&[-1, 1])).unwrap(), q(&[1, 1]));
        assert_eq!(q(&[1, -2, 0, 0, 1]).exact_div(&q(&[-1, 1])).unwrap(), q(&[-1, 1, 1, 1]));
        assert!(matches!(
            q(&[1, 0, 1]).exact_div(&q(&[-1, 1])),
            Err(Error::NonDivisible { .. })
        ));
        // Laurent quotient.
        let a = LaurentPoly::from_q_terms([(-3, 1), (-1, -1)]);
        let b = LaurentPoly::from_q_terms([(0, 1), (2, -1)]);
        assert_eq!(a.exact_div(&b).unwrap(), LaurentPoly::q_pow(-3));
    }

    #[test]
    fn predicates() {
        let p = LaurentPoly::from_u_terms([(4, 1), (-8, 3)]);
        assert!(p.is_q_poly() && p.is_v_poly() && p.is_integral());
        assert!(!LaurentPoly::u_pow(2).is_q_poly());
        assert!(LaurentPoly::u_pow(2).is_v_poly());
        assert!(!LaurentPoly::monomial(0, BigRational::new(1.into(), 2.into())).is_integral());
    }

    #[test]
    fn subst_inverse_is_involution() {
        let p = q(&[0, -1, 0, 1]);
        assert_eq!(p.subst_inverse().subst_inverse(), p);
        assert_eq!(q(&[1, 1]).subst_inverse(), LaurentPoly::from_q_terms([(-1, 1), (0, 1)]));
    }
}
