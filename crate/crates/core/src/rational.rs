//! Rationals extended by a single point at infinity.
//!
//! Surgery coefficients live in Q ∪ {∞}. Values are kept reduced with a
//! nonnegative denominator, so `1/0` is the unique infinite value, `0/1`
//! the unique zero, and structural equality is value equality.

use crate::error::{Error, Result};
use crate::Scalar;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

/// A reduced fraction `num/den` with `den >= 0`; `den == 0` encodes ∞.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtendedRational<T> {
    num: T,
    den: T,
}

impl<T: Scalar> ExtendedRational<T> {
    /// Builds the reduced form of `num/den`. `0/0` is rejected; any other
    /// pair with zero denominator collapses to the infinite value.
    pub fn new(num: T, den: T) -> Result<Self> {
        if num.is_zero() && den.is_zero() {
            return Err(Error::InvalidRational("0/0".to_owned()));
        }
        let mut r = ExtendedRational { num, den };
        r.reduce();
        Ok(r)
    }

    /// Convenience constructor from machine integer literals.
    /// Panics on `0/0`; intended for constants and tests.
    pub fn of(num: i64, den: i64) -> Self {
        Self::new(T::from(num), T::from(den)).expect("0/0 literal")
    }

    pub fn from_integer(n: T) -> Self {
        ExtendedRational { num: n, den: T::one() }
    }

    pub fn zero() -> Self {
        Self::from_integer(T::zero())
    }

    pub fn infinity() -> Self {
        ExtendedRational { num: T::one(), den: T::zero() }
    }

    fn reduce(&mut self) {
        if self.den.is_zero() {
            self.num = T::one();
            return;
        }
        if self.num.is_zero() {
            self.den = T::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.clone() / g.clone();
            self.den = self.den.clone() / g;
        }
        if self.den.is_negative() {
            self.num = -self.num.clone();
            self.den = -self.den.clone();
        }
    }

    pub fn numerator(&self) -> &T {
        &self.num
    }

    pub fn denominator(&self) -> &T {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero() && !self.den.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a scalar, if it is an integer.
    pub fn integer_value(&self) -> Result<T> {
        if self.is_integer() {
            Ok(self.num.clone())
        } else {
            Err(Error::NotAnInteger(self.to_string()))
        }
    }

    /// `1/x`, with `1/0 = ∞` and `1/∞ = 0`.
    pub fn recip(&self) -> Self {
        let mut r = ExtendedRational { num: self.den.clone(), den: self.num.clone() };
        r.reduce();
        r
    }

    /// Largest integer `<= self`. Finite values only.
    pub fn floor_int(&self) -> Result<T> {
        if self.is_infinite() {
            return Err(Error::NotFinite);
        }
        Ok(self.num.div_floor(&self.den))
    }

    /// Fractional part in `[0, 1)`. Finite values only.
    pub fn fract_mod1(&self) -> Result<Self> {
        let f = self.floor_int()?;
        Ok(self.clone() - ExtendedRational::from_integer(f))
    }

    /// Short human form used in graph labels: `7`, `14/5`, `inf`.
    pub fn compact(&self) -> String {
        if self.is_infinite() {
            "inf".to_owned()
        } else if self.is_integer() {
            self.num.to_string()
        } else {
            format!("{}/{}", self.num, self.den)
        }
    }
}

impl<T: Scalar> fmt::Display for ExtendedRational<T> {
    /// Canonical interchange form: always `num/den`, or `inf`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl<T: Scalar> fmt::Debug for ExtendedRational<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Scalar> FromStr for ExtendedRational<T> {
    type Err = Error;

    /// Accepts `a`, `a/b`, and `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidRational(s.to_owned());
        if s == "inf" {
            return Ok(Self::infinity());
        }
        let parse = |part: &str| -> Result<T> {
            let part = part.trim();
            if part.is_empty() {
                return Err(bad());
            }
            T::from_str_radix(part, 10).map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(Self::from_integer(parse(s)?)),
            Some((a, b)) => Self::new(parse(a)?, parse(b)?).map_err(|_| bad()),
        }
    }
}

impl<T: Scalar> Serialize for ExtendedRational<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de, T: Scalar> Deserialize<'de> for ExtendedRational<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// The infinite value absorbs addition; only `recip` maps back out of it.
impl<T: Scalar> Add for ExtendedRational<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.is_infinite() || rhs.is_infinite() {
            return Self::infinity();
        }
        let num = self.num * rhs.den.clone() + rhs.num * self.den.clone();
        let mut r = ExtendedRational { num, den: self.den * rhs.den };
        r.reduce();
        r
    }
}

impl<T: Scalar> Neg for ExtendedRational<T> {
    type Output = Self;

    fn neg(self) -> Self {
        ExtendedRational { num: -self.num, den: self.den }
    }
}

impl<T: Scalar> Sub for ExtendedRational<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> PartialOrd for ExtendedRational<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for ExtendedRational<T> {
    /// Total order on Q with ∞ as the greatest element.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => {
                (self.num.clone() * other.den.clone()).cmp(&(other.num.clone() * self.den.clone()))
            }
        }
    }
}

/// One inverse slam-dunk step: the value `n - 1/r` a chain neighbor with
/// integer framing `n` absorbs when a leaf framed `r` is dunked into it.
///
/// `r = ∞` yields `n` (the leaf is a cancelling meridian);
/// `r = 0` is undefined.
pub fn slam_dunk_value<T: Scalar>(
    n: &ExtendedRational<T>,
    r: &ExtendedRational<T>,
) -> Result<ExtendedRational<T>> {
    let _ = n.integer_value()?;
    if r.is_zero() {
        return Err(Error::SlamDunkZeroCoefficient);
    }
    Ok(n.clone() - r.recip())
}

/// Collapses a linear chain hanging off `target` by repeated slam-dunks,
/// starting at the free leaf (last entry). Every entry except possibly
/// the leaf must be an integer, and no intermediate value may hit 0.
///
/// `chain_collapse(t, [c1, .., ck]) = t - 1/(c1 - 1/(c2 - ... - 1/ck))`.
pub fn chain_collapse<T: Scalar>(
    target: &ExtendedRational<T>,
    chain: &[ExtendedRational<T>],
) -> Result<ExtendedRational<T>> {
    let _ = target.integer_value()?;
    let in_chain = |e| match e {
        Error::SlamDunkZeroCoefficient => Error::ChainCollapseZeroCoefficient,
        other => other,
    };
    let Some((leaf, inner)) = chain.split_last() else {
        return Ok(target.clone());
    };
    let mut acc = leaf.clone();
    for c in inner.iter().rev() {
        acc = slam_dunk_value(c, &acc).map_err(in_chain)?;
    }
    slam_dunk_value(target, &acc).map_err(in_chain)
}

/// Expands a finite rational into the integer chain that collapses back
/// onto it: the result `[c1, .., ck]` satisfies
/// `chain_collapse(c1, [c2, .., ck]) == r`, taking continued fraction
/// digits by flooring, so every entry after the first is at most -2.
pub fn rational_to_chain<T: Scalar>(r: &ExtendedRational<T>) -> Result<Vec<T>> {
    if r.is_infinite() {
        return Err(Error::NotFinite);
    }
    let mut chain = Vec::new();
    let mut cur = r.clone();
    loop {
        let c = cur.floor_int()?;
        let frac = cur.fract_mod1()?;
        chain.push(c);
        if frac.is_zero() {
            return Ok(chain);
        }
        // cur = c - 1/next  =>  next = -1/frac, again finite and non-integral
        // with a strictly smaller denominator, so this terminates.
        cur = -frac.recip();
    }
}
