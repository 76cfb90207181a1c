//! Sparse Laurent polynomials over `Z` or `Z/pZ`.
//!
//! A [`LaurentPoly`] stores its nonzero terms sorted by exponent, with every
//! coefficient reduced into the canonical range of its [`CoeffRing`]. Two
//! polynomials are equal exactly when their stored terms are identical, so
//! derived `PartialEq`/`Hash` are structural and exact.
//!
//! Text form: terms in increasing exponent order, `+`/`-` separated, the
//! exponent omitted for `t^1` and the bare coefficient for `t^0`:
//! `t^-2+1+2t^3`. The zero polynomial renders as `0`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient ring: the integers (modulus 0) or `Z/pZ` for `p >= 2`.
///
/// `p` need not be prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct CoeffRing {
    modulus: u64,
}

impl CoeffRing {
    pub const INTEGERS: CoeffRing = CoeffRing { modulus: 0 };

    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 1 {
            return Err(Error::InvalidModulus);
        }
        Ok(CoeffRing { modulus })
    }

    /// `Z/pZ`; panics on `p == 1`.
    pub fn modp(p: u64) -> Self {
        Self::new(p).expect("modulus 1 is not a ring")
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_integers(self) -> bool {
        self.modulus == 0
    }

    pub fn reduce(self, c: BigInt) -> BigInt {
        if self.modulus == 0 {
            c
        } else {
            c.mod_floor(&BigInt::from(self.modulus))
        }
    }

    fn check_same(self, other: CoeffRing) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.modulus,
                right: other.modulus,
            })
        }
    }
}

impl TryFrom<u64> for CoeffRing {
    type Error = Error;

    fn try_from(modulus: u64) -> Result<Self> {
        CoeffRing::new(modulus)
    }
}

impl From<CoeffRing> for u64 {
    fn from(ring: CoeffRing) -> u64 {
        ring.modulus
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "Z")
        } else {
            write!(f, "Z/{}", self.modulus)
        }
    }
}

/// Degree of a Laurent polynomial; the zero polynomial has degree `NegInfinity`.
///
/// Variant order makes `NegInfinity` the least element, so
/// `NegInfinity >= NegInfinity` holds while `NegInfinity > NegInfinity` does not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    ring: CoeffRing,
    /// Sorted by exponent, strictly increasing, no zero coefficients.
    terms: Vec<(i64, BigInt)>,
}

impl LaurentPoly {
    pub fn zero(ring: CoeffRing) -> Self {
        LaurentPoly {
            ring,
            terms: Vec::new(),
        }
    }

    pub fn one(ring: CoeffRing) -> Self {
        Self::monomial(ring, 1, 0)
    }

    /// `coeff * t^exp`.
    pub fn monomial(ring: CoeffRing, coeff: impl Into<BigInt>, exp: i64) -> Self {
        let c = ring.reduce(coeff.into());
        if c.is_zero() {
            Self::zero(ring)
        } else {
            LaurentPoly {
                ring,
                terms: vec![(exp, c)],
            }
        }
    }

    /// `t^exp`.
    pub fn t_pow(ring: CoeffRing, exp: i64) -> Self {
        Self::monomial(ring, 1, exp)
    }

    /// `(-t)^exp`.
    pub fn neg_t_pow(ring: CoeffRing, exp: i64) -> Self {
        let sign = if exp.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(ring, sign, exp)
    }

    /// Builds the canonical polynomial from an arbitrary exponent/coefficient
    /// list: duplicate exponents are summed, coefficients reduced, zeros dropped.
    pub fn from_terms<I, C>(ring: CoeffRing, raw: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in raw {
            *acc.entry(e).or_default() += c.into();
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: CoeffRing, acc: BTreeMap<i64, BigInt>) -> Self {
        let terms = acc
            .into_iter()
            .map(|(e, c)| (e, ring.reduce(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        LaurentPoly { ring, terms }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .last()
            .map_or(Degree::NegInfinity, |(e, _)| Degree::Finite(*e))
    }

    /// Smallest exponent present, `None` for zero.
    pub fn low_degree(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.ring.check_same(other.ring)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.ring.check_same(other.ring)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.ring.check_same(other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ring));
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return Ok(self.mul_monomial(c, *e));
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return Ok(other.mul_monomial(c, *e));
        }
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                *acc.entry(ea + eb).or_default() += ca * cb;
            }
        }
        Ok(Self::from_map(self.ring, acc))
    }

    /// `self * coeff * t^exp`.
    pub fn mul_monomial(&self, coeff: &BigInt, exp: i64) -> LaurentPoly {
        let c = self.ring.reduce(coeff.clone());
        if c.is_zero() {
            return Self::zero(self.ring);
        }
        let terms = if c.is_one() {
            self.terms.iter().map(|(e, a)| (e + exp, a.clone())).collect()
        } else {
            self.terms
                .iter()
                .map(|(e, a)| (e + exp, self.ring.reduce(a * &c)))
                .filter(|(_, a)| !a.is_zero())
                .collect()
        };
        LaurentPoly {
            ring: self.ring,
            terms,
        }
    }

    /// Reduces an integer polynomial into `target` (identity when the rings agree).
    pub fn reduce_to(&self, target: CoeffRing) -> Result<LaurentPoly> {
        if self.ring == target {
            return Ok(self.clone());
        }
        if !self.ring.is_integers() {
            return Err(Error::RingMismatch {
                left: self.ring.modulus,
                right: target.modulus,
            });
        }
        Ok(Self::from_terms(target, self.terms.iter().cloned()))
    }

    fn merge(&self, other: &LaurentPoly, subtract: bool) -> LaurentPoly {
        let ring = self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let neg = |c: &BigInt| if subtract { ring.reduce(-c) } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                Ordering::Less => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((*eb, neg(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract {
                        ring.reduce(ca - cb)
                    } else {
                        ring.reduce(ca + cb)
                    };
                    if !c.is_zero() {
                        out.push((*ea, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(e, c)| (*e, neg(c))));
        LaurentPoly { ring, terms: out }
    }

    /// Parses the text form produced by `Display`. Whitespace is ignored and an
    /// optional `*` may separate coefficient and `t`.
    pub fn parse(text: &str, ring: CoeffRing) -> Result<LaurentPoly> {
        let err = |reason: &str| Error::ParsePoly {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(err("empty input"));
        }
        let mut raw: Vec<(i64, BigInt)> = Vec::new();
        let mut pos = 0;
        let read_digits = |pos: &mut usize| -> Option<String> {
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start < *pos).then(|| chars[start..*pos].iter().collect())
        };
        while pos < chars.len() {
            let mut negative = false;
            if chars[pos] == '+' || chars[pos] == '-' {
                negative = chars[pos] == '-';
                pos += 1;
            } else if pos != 0 {
                return Err(err("expected `+` or `-` between terms"));
            }
            let coeff = read_digits(&mut pos);
            if coeff.is_some() && pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                if pos >= chars.len() || chars[pos] != 't' {
                    return Err(err("`*` must be followed by `t`"));
                }
            }
            let mut exp = 0i64;
            let has_t = pos < chars.len() && chars[pos] == 't';
            if has_t {
                pos += 1;
                exp = 1;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    let paren = pos < chars.len() && chars[pos] == '(';
                    if paren {
                        pos += 1;
                    }
                    let mut exp_neg = false;
                    if pos < chars.len() && (chars[pos] == '-' || chars[pos] == '+') {
                        exp_neg = chars[pos] == '-';
                        pos += 1;
                    }
                    let digits = read_digits(&mut pos).ok_or_else(|| err("missing exponent"))?;
                    exp = digits.parse::<i64>().map_err(|_| err("exponent overflow"))?;
                    if exp_neg {
                        exp = -exp;
                    }
                    if paren {
                        if pos >= chars.len() || chars[pos] != ')' {
                            return Err(err("unclosed `(` in exponent"));
                        }
                        pos += 1;
                    }
                }
            }
            if coeff.is_none() && !has_t {
                return Err(err("expected a coefficient or `t`"));
            }
            let mut c = match coeff {
                Some(d) => d.parse::<BigInt>().map_err(|_| err("bad coefficient"))?,
                None => BigInt::one(),
            };
            if negative {
                c = -c;
            }
            raw.push((exp, c));
        }
        Ok(Self::from_terms(ring, raw))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let term = if *e == 0 {
                c.to_string()
            } else {
                let coeff = if c.is_one() {
                    String::new()
                } else if (-c).is_one() {
                    "-".to_string()
                } else {
                    c.to_string()
                };
                if *e == 1 {
                    format!("{coeff}t")
                } else {
                    format!("{coeff}t^{e}")
                }
            };
            if i > 0 && !term.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;

            /// Panics when the coefficient rings differ; use the `checked_*`
            /// methods to get an error instead.
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("coefficient ring mismatch")
            }
        }

        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;

            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        let ring = self.ring;
        LaurentPoly {
            ring,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, ring.reduce(-c)))
                .collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> CoeffRing {
        CoeffRing::INTEGERS
    }

    fn p(text: &str, ring: CoeffRing) -> LaurentPoly {
        LaurentPoly::parse(text, ring).unwrap()
    }

    #[test]
    fn modulus_one_rejected() {
        assert_eq!(CoeffRing::new(1), Err(Error::InvalidModulus));
        assert!(CoeffRing::new(0).is_ok());
        assert!(CoeffRing::new(6).is_ok());
    }

    #[test]
    fn normalize_examples() {
        assert!(LaurentPoly::from_terms(CoeffRing::modp(2), [(0, 2)]).is_zero());
        assert!(LaurentPoly::from_terms(CoeffRing::modp(5), [(4, 5)]).is_zero());
        let q = LaurentPoly::from_terms(z(), [(-2, 1), (3, 1)]);
        assert_eq!(q.terms().len(), 2);
        assert_eq!(q.to_string(), "t^-2+t^3");
        // negative residues land in [0, p)
        let r = LaurentPoly::from_terms(CoeffRing::modp(3), [(1, -1)]);
        assert_eq!(r.coeff(1), BigInt::from(2));
    }

    #[test]
    fn add_examples() {
        let m2 = CoeffRing::modp(2);
        assert!((p("t+1", m2) + p("t+1", m2)).is_zero());
        assert_eq!(p("t+1", m2) + p("t", m2), LaurentPoly::one(m2));
        let m3 = CoeffRing::modp(3);
        assert!((p("2t^2", m3) + p("t^2", m3)).is_zero());
    }

    #[test]
    fn mul_examples() {
        let m3 = CoeffRing::modp(3);
        assert_eq!(p("-t", m3) * p("-t", m3), p("t^2", m3));
        let m2 = CoeffRing::modp(2);
        assert_eq!(p("1+t", m2) * p("1+t", m2), p("1+t^2", m2));
        assert_eq!(p("1-t", z()) * p("1+t", z()), p("1-t^2", z()));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = LaurentPoly::one(CoeffRing::modp(2));
        let b = LaurentPoly::one(CoeffRing::modp(3));
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch { .. })));
        assert!(matches!(a.checked_mul(&b), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(LaurentPoly::zero(z()).degree(), Degree::NegInfinity);
        assert_eq!(p("t^-2+t^3", z()).degree(), Degree::Finite(3));
        assert_eq!(
            LaurentPoly::from_terms(CoeffRing::modp(5), [(4, 5)]).degree(),
            Degree::NegInfinity
        );
    }

    #[test]
    fn neg_infinity_ordering() {
        let ninf = Degree::NegInfinity;
        assert!(ninf < Degree::Finite(i64::MIN));
        assert!(!(ninf >= Degree::Finite(-100)));
        assert!(!(ninf > ninf));
        assert!(ninf >= ninf);
    }

    #[test]
    fn render_and_parse() {
        assert_eq!(p("1+2t^3+t^-2", CoeffRing::modp(5)).to_string(), "t^-2+1+2t^3");
        assert_eq!(p(" 3 t ^ - 1 - 2 ", z()).to_string(), "3t^-1-2");
        assert_eq!(p("-t", z()).to_string(), "-t");
        assert_eq!(p("0", z()).to_string(), "0");
        assert_eq!(p("2*t^(−1)".replace('−', "-").as_str(), z()).to_string(), "2t^-1");
        assert_eq!(p("-t", CoeffRing::modp(3)).to_string(), "2t");
        for bad in ["", "t^", "2+", "x", "2t t"] {
            assert!(LaurentPoly::parse(bad, z()).is_err(), "{bad:?} parsed");
        }
    }

    #[test]
    fn reduce_from_integers() {
        let q = p("3t^-1-2+5t", z());
        assert_eq!(q.reduce_to(CoeffRing::modp(2)).unwrap().to_string(), "t^-1+t");
        assert!(q
            .reduce_to(CoeffRing::modp(2))
            .unwrap()
            .reduce_to(CoeffRing::modp(3))
            .is_err());
    }

    #[test]
    fn neg_t_powers() {
        assert_eq!(LaurentPoly::neg_t_pow(z(), 3).to_string(), "-t^3");
        assert_eq!(LaurentPoly::neg_t_pow(z(), -2).to_string(), "t^-2");
        assert_eq!(LaurentPoly::neg_t_pow(z(), -1).to_string(), "-t^-1");
    }
}
