//! Canonical nonnegative rationals.
//!
//! Every value is kept in lowest terms with a positive denominator; zero is
//! `0/1`. Subtraction is the only operation that can leave the nonnegative
//! rationals, so it comes in two flavours: [`ExactRational::checked_sub`]
//! refuses negative results and [`ExactRational::signed_sub`] hands back a
//! signed [`BigRational`] the caller has to deal with explicitly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A nonnegative rational number in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactRational {
    num: BigUint,
    den: BigUint,
}

impl ExactRational {
    /// Builds `num/den` in lowest terms. Fails when `den` is zero.
    pub fn new(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Result<Self> {
        let num = num.into();
        let den = den.into();
        if den.is_zero() {
            return Err(Error::Domain("denominator must be at least 1".into()));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: BigUint, den: BigUint) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        if g.is_one() {
            Self { num, den }
        } else {
            Self {
                num: num / &g,
                den: den / g,
            }
        }
    }

    pub fn zero() -> Self {
        Self {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(BigUint::one())
    }

    pub fn from_integer(n: impl Into<BigUint>) -> Self {
        Self {
            num: n.into(),
            den: BigUint::one(),
        }
    }

    /// `1/d`; fails for `d = 0`.
    pub fn reciprocal_of(d: impl Into<BigUint>) -> Result<Self> {
        Self::new(BigUint::one(), d)
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    /// The coprime pair `(n(q), d(q))`.
    pub fn num_den(&self) -> (BigUint, BigUint) {
        (self.num.clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn floor(&self) -> BigUint {
        &self.num / &self.den
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self {
                num: self.den.clone(),
                den: self.num.clone(),
            })
        }
    }

    /// `self - other` when the result stays nonnegative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let lhs = &self.num * &other.den;
        let rhs = &other.num * &self.den;
        if lhs < rhs {
            return None;
        }
        Some(Self::reduced(lhs - rhs, &self.den * &other.den))
    }

    /// `self - other` as a signed rational.
    pub fn signed_sub(&self, other: &Self) -> BigRational {
        self.to_signed() - other.to_signed()
    }

    pub fn to_signed(&self) -> BigRational {
        BigRational::new(
            BigInt::from_biguint(Sign::Plus, self.num.clone()),
            BigInt::from_biguint(Sign::Plus, self.den.clone()),
        )
    }

    /// Accepts a signed rational if it is nonnegative.
    pub fn from_signed(value: &BigRational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::Domain(format!(
                "{value} is negative; Puiseux monoids live in the nonnegative rationals"
            )));
        }
        let num = value.numer().magnitude().clone();
        let den = value.denom().magnitude().clone();
        Self::new(num, den)
    }

    pub fn scale_int(&self, k: &BigUint) -> Self {
        Self::reduced(&self.num * k, self.den.clone())
    }

    pub fn div_exact(&self, other: &Self) -> Result<Self> {
        let inv = other
            .recip()
            .ok_or_else(|| Error::Domain("division by zero".into()))?;
        Ok(self * &inv)
    }

    /// `self * l` as an integer, if `d(self)` divides `l`.
    pub fn times_integer(&self, l: &BigUint) -> Option<BigUint> {
        let (quot, rem) = l.div_rem(&self.den);
        rem.is_zero().then(|| quot * &self.num)
    }

    /// Lossy small-value accessor used for display-only heuristics.
    pub fn to_u64_pair(&self) -> Option<(u64, u64)> {
        Some((self.num.to_u64()?, self.den.to_u64()?))
    }
}

impl Default for ExactRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<u64> for ExactRational {
    fn from(n: u64) -> Self {
        Self::from_integer(n)
    }
}

impl Ord for ExactRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for ExactRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&ExactRational> for &ExactRational {
    type Output = ExactRational;

    fn add(self, rhs: &ExactRational) -> ExactRational {
        if self.den == rhs.den {
            return ExactRational::reduced(&self.num + &rhs.num, self.den.clone());
        }
        ExactRational::reduced(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Add for ExactRational {
    type Output = ExactRational;

    fn add(self, rhs: ExactRational) -> ExactRational {
        &self + &rhs
    }
}

impl AddAssign<&ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &ExactRational) {
        *self = &*self + rhs;
    }
}

impl Mul<&ExactRational> for &ExactRational {
    type Output = ExactRational;

    fn mul(self, rhs: &ExactRational) -> ExactRational {
        ExactRational::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Mul for ExactRational {
    type Output = ExactRational;

    fn mul(self, rhs: ExactRational) -> ExactRational {
        &self * &rhs
    }
}

impl Mul<&BigUint> for &ExactRational {
    type Output = ExactRational;

    fn mul(self, rhs: &BigUint) -> ExactRational {
        self.scale_int(rhs)
    }
}

impl std::iter::Sum for ExactRational {
    fn sum<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_digits(s: &str, what: &str, literal: &str) -> Result<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!(
            "malformed rational literal `{literal}`: {what} must be a nonempty run of decimal digits"
        )));
    }
    Ok(s.parse::<BigUint>().expect("digits parse"))
}

/// Literal syntax: `a/b` or `a`, decimal digits only, no signs or whitespace.
impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((n, d)) => {
                let num = parse_digits(n, "numerator", s)?;
                let den = parse_digits(d, "denominator", s)?;
                if den.is_zero() {
                    return Err(Error::Parse(format!(
                        "malformed rational literal `{s}`: zero denominator"
                    )));
                }
                Self::new(num, den)
            }
            None => Ok(Self::from_integer(parse_digits(s, "integer", s)?)),
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Convenience constructor for literals known to be valid.
pub fn rat(num: u64, den: u64) -> ExactRational {
    ExactRational::new(num, den).expect("nonzero denominator")
}
