//! The coefficient-field abstraction shared by polynomials and series.

use super::rational::{rational_nth_root, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt::{Debug, Display};

/// Exact field arithmetic. Implementations must never approximate.
pub trait Field: Clone + PartialEq + Debug + Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;
    /// An n-th root inside the field, if one exists.
    fn nth_root(&self, n: u32) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    /// Unit that scales a nonzero coefficient vector to a canonical size
    /// during Euclid: the inverse leading coefficient by default.
    fn normalizer(coeffs: &[Self]) -> Self {
        coeffs.iter().rev().find(|c| !c.is_zero()).and_then(|c| c.inv()).unwrap_or_else(Self::one)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn nth_root(&self, n: u32) -> Option<Self> {
        rational_nth_root(self, n)
    }
    /// Makes the coefficients coprime integers.
    fn normalizer(coeffs: &[Self]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        if num.is_zero() {
            return <Rational as One>::one();
        }
        Rational::new(den, num)
    }
}
