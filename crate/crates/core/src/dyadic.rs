//! Exact dyadic rationals `numerator / 2^exponent`.
//!
//! Every quantity in the above-average analysis (asat, conditional
//! expectations, excesses) has a power-of-two denominator, so this type is
//! closed under everything the crate needs and never rounds.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// A rational number with a power-of-two denominator.
///
/// Always normalized: the numerator is odd, or it is zero and the exponent is
/// zero. Normalization makes structural equality coincide with numeric
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self { num: n.into(), exp: 0 }
    }

    /// `num / 2^exp`, normalized.
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        let mut d = Self { num: num.into(), exp };
        d.normalize();
        d
    }

    /// `1 - 2^-r`, the probability that a uniformly random assignment
    /// satisfies a clause of width `r`.
    pub fn one_minus_pow2_neg(r: u32) -> Self {
        Self::new((BigInt::one() << r) - 1, r)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0);
        let shift = tz.min(u64::from(self.exp)) as u32;
        if shift > 0 {
            self.num >>= shift;
            self.exp -= shift;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn denominator(&self) -> BigInt {
        BigInt::one() << self.exp
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Multiplies by `2^k`.
    pub fn mul_pow2(&self, k: u32) -> Self {
        if k >= self.exp {
            Self { num: &self.num << (k - self.exp), exp: 0 }
        } else {
            Self { num: self.num.clone(), exp: self.exp - k }
        }
    }

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> BigInt {
        let (q, r) = self.num.div_mod_floor(&self.denominator());
        if r.is_zero() {
            q
        } else {
            q + 1
        }
    }

    pub fn floor(&self) -> BigInt {
        self.num.div_floor(&self.denominator())
    }

    /// The numerator after scaling both operands to the common exponent.
    fn aligned(&self, exp: u32) -> BigInt {
        &self.num << (exp - self.exp)
    }

    /// Exact decimal expansion. Terminates since `1/2^e = 5^e / 10^e`.
    pub fn to_decimal_string(&self) -> String {
        if self.exp == 0 {
            return self.num.to_string();
        }
        let scaled = self.num.abs() * num_traits::pow(BigInt::from(5u8), self.exp as usize);
        let digits = scaled.to_string();
        let width = self.exp as usize;
        let padded = if digits.len() <= width {
            format!("{}{}", "0".repeat(width + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int_part, frac_part) = padded.split_at(padded.len() - width);
        let sign = if self.num.sign() == Sign::Minus { "-" } else { "" };
        format!("{sign}{int_part}.{frac_part}")
    }

    /// `numerator/denominator`, always with an explicit denominator.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.num, self.denominator())
    }

    pub fn to_f64(&self) -> f64 {
        self.num.to_f64().unwrap_or(f64::NAN) / 2f64.powi(self.exp as i32)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.denominator())
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({self})")
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let exp = self.exp.max(other.exp);
        self.aligned(exp).cmp(&other.aligned(exp))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigInt> for Dyadic {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl Add<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let exp = self.exp.max(rhs.exp);
        Dyadic::new(self.aligned(exp) + rhs.aligned(exp), exp)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl AddAssign<&Dyadic> for Dyadic {
    fn add_assign(&mut self, rhs: &Dyadic) {
        *self = &*self + rhs;
    }
}

impl AddAssign for Dyadic {
    fn add_assign(&mut self, rhs: Dyadic) {
        *self = &*self + &rhs;
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { num: -self.num, exp: self.exp }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { num: -&self.num, exp: self.exp }
    }
}

impl Sub<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let exp = self.exp.max(rhs.exp);
        Dyadic::new(self.aligned(exp) - rhs.aligned(exp), exp)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl SubAssign<&Dyadic> for Dyadic {
    fn sub_assign(&mut self, rhs: &Dyadic) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Self {
        iter.fold(Dyadic::zero(), |acc, x| acc + x)
    }
}
