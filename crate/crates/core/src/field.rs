//! Exact scalar fields: the rationals and small prime fields.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// An exact field. Every representation matrix in this crate has entries in
/// one of these.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// `0` for the rationals.
    const CHARACTERISTIC: u64;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_i64(v: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Exact rational number.
///
/// Backed by `i128` numerators and denominators with checked arithmetic:
/// an overflow panics instead of wrapping.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q(Ratio<i128>);

impl Q {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        Q(Ratio::new(num, den))
    }

    pub fn int(v: i64) -> Self {
        Q(Ratio::from_integer(v as i128))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Integer value, if the denominator is one.
    pub fn to_integer(&self) -> Option<i128> {
        self.is_integer().then(|| self.numer())
    }

    pub fn abs(&self) -> Q {
        Q(self.0.abs())
    }

    pub fn half() -> Q {
        Q::new(1, 2)
    }

    /// True when the reduced denominator is a power of two (including 1).
    pub fn has_dyadic_denominator(&self) -> bool {
        let d = self.denom();
        d > 0 && (d & (d - 1)) == 0
    }
}

impl Default for Q {
    fn default() -> Self {
        Q::int(0)
    }
}

impl From<i64> for Q {
    fn from(v: i64) -> Self {
        Q::int(v)
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Add for Q {
    type Output = Q;
    fn add(self, rhs: Q) -> Q {
        Q(self.0.checked_add(&rhs.0).expect("rational overflow in add"))
    }
}

impl Sub for Q {
    type Output = Q;
    fn sub(self, rhs: Q) -> Q {
        Q(self.0.checked_sub(&rhs.0).expect("rational overflow in sub"))
    }
}

impl Mul for Q {
    type Output = Q;
    fn mul(self, rhs: Q) -> Q {
        Q(self.0.checked_mul(&rhs.0).expect("rational overflow in mul"))
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl<'a> Add<&'a Q> for &'a Q {
    type Output = Q;
    fn add(self, rhs: &Q) -> Q {
        self.clone() + rhs.clone()
    }
}

impl<'a> Mul<&'a Q> for &'a Q {
    type Output = Q;
    fn mul(self, rhs: &Q) -> Q {
        self.clone() * rhs.clone()
    }
}

impl Serialize for Q {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let parse = |t: &str| t.trim().parse::<i128>().map_err(serde::de::Error::custom);
        match s.split_once('/') {
            Some((a, b)) => {
                let den = parse(b)?;
                if den == 0 {
                    return Err(serde::de::Error::custom("zero denominator"));
                }
                Ok(Q::new(parse(a)?, den))
            }
            None => Ok(Q(Ratio::from_integer(parse(&s)?))),
        }
    }
}

impl Field for Q {
    const CHARACTERISTIC: u64 = 0;

    fn zero() -> Self {
        Q(Ratio::zero())
    }
    fn one() -> Self {
        Q(Ratio::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Q(self.0.recip())
    }
    fn from_i64(v: i64) -> Self {
        Q::int(v)
    }
}

/// The prime field with `P` elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf<const P: u64>(u64);

pub type F2 = Gf<2>;
pub type F3 = Gf<3>;
pub type F5 = Gf<5>;
pub type F7 = Gf<7>;

impl<const P: u64> Gf<P> {
    pub fn new(v: u64) -> Self {
        Gf(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// All field elements in increasing order of representative.
    pub fn elements() -> impl Iterator<Item = Self> {
        (0..P).map(Gf)
    }
}

impl<const P: u64> fmt::Debug for Gf<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Gf<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Gf<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Gf((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Gf<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Gf((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Gf<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Gf((self.0 * rhs.0) % P)
    }
}

impl<const P: u64> Neg for Gf<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Gf((P - self.0) % P)
    }
}

impl<const P: u64> Field for Gf<P> {
    const CHARACTERISTIC: u64 = P;

    fn zero() -> Self {
        Gf(0)
    }
    fn one() -> Self {
        Gf(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        // Fermat: a^(P-2)
        let mut base = self.0;
        let mut exp = P - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            exp >>= 1;
        }
        Gf(acc)
    }
    fn from_i64(v: i64) -> Self {
        Gf(v.rem_euclid(P as i64) as u64)
    }
}

/// Runtime choice of scalar field, used by the command line and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverses() {
        for a in F5::elements().skip(1) {
            assert!((a * a.inv()).is_one());
        }
        for a in F7::elements().skip(1) {
            assert!((a * a.inv()).is_one());
        }
        assert_eq!(F2::from_i64(-1), F2::one());
    }

    #[test]
    fn rational_display_and_serde() {
        let h = Q::new(-2, 4);
        assert_eq!(h.to_string(), "-1/2");
        let s = serde_json::to_string(&h).unwrap();
        let back: Q = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
        assert!(Q::new(3, 8).has_dyadic_denominator());
        assert!(!Q::new(1, 6).has_dyadic_denominator());
    }
}
