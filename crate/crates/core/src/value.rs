// SPDX-License-Identifier: Apache-2.0

//! Exact values taken by residue symbols and by the sequence `a_n`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// An element of `{0, 1, i, -1, -i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SymbolValue {
    Zero,
    One,
    I,
    MinusOne,
    MinusI,
}

impl SymbolValue {
    /// `i^k` for `k` taken mod 4.
    pub fn from_power_of_i(k: u32) -> Self {
        match k % 4 {
            0 => SymbolValue::One,
            1 => SymbolValue::I,
            2 => SymbolValue::MinusOne,
            _ => SymbolValue::MinusI,
        }
    }

    /// Real value of a symbol known to be in `{-1, 0, 1}`.
    pub fn from_sign(s: i32) -> Self {
        match s.signum() {
            0 => SymbolValue::Zero,
            1 => SymbolValue::One,
            _ => SymbolValue::MinusOne,
        }
    }

    /// Exponent `k` with `self = i^k`, or `None` for zero.
    pub fn log_i(self) -> Option<u32> {
        match self {
            SymbolValue::Zero => None,
            SymbolValue::One => Some(0),
            SymbolValue::I => Some(1),
            SymbolValue::MinusOne => Some(2),
            SymbolValue::MinusI => Some(3),
        }
    }

    pub fn is_zero(self) -> bool {
        self == SymbolValue::Zero
    }

    pub fn is_real(self) -> bool {
        matches!(self, SymbolValue::Zero | SymbolValue::One | SymbolValue::MinusOne)
    }

    /// `(re, im)` as small integers.
    pub fn parts(self) -> (i32, i32) {
        match self {
            SymbolValue::Zero => (0, 0),
            SymbolValue::One => (1, 0),
            SymbolValue::I => (0, 1),
            SymbolValue::MinusOne => (-1, 0),
            SymbolValue::MinusI => (0, -1),
        }
    }

    /// Real value as `i32`; panics on `±i`.
    pub fn to_sign(self) -> i32 {
        assert!(self.is_real(), "symbol value {self} is not real");
        self.parts().0
    }

    /// Multiplicative inverse on the unit circle; zero stays zero.
    pub fn inverse(self) -> Self {
        match self.log_i() {
            None => SymbolValue::Zero,
            Some(k) => SymbolValue::from_power_of_i((4 - k) % 4),
        }
    }

    pub fn conj(self) -> Self {
        self.inverse()
    }

    pub fn pow(self, e: u32) -> Self {
        match self.log_i() {
            None if e == 0 => SymbolValue::One,
            None => SymbolValue::Zero,
            Some(k) => SymbolValue::from_power_of_i(((k as u64 * e as u64) % 4) as u32),
        }
    }

    /// `self / other` when `other` is nonzero.
    pub fn ratio(self, other: SymbolValue) -> Option<SymbolValue> {
        if other.is_zero() {
            None
        } else {
            Some(self * other.inverse())
        }
    }
}

impl Mul for SymbolValue {
    type Output = SymbolValue;
    fn mul(self, rhs: SymbolValue) -> SymbolValue {
        match (self.log_i(), rhs.log_i()) {
            (Some(a), Some(b)) => SymbolValue::from_power_of_i(a + b),
            _ => SymbolValue::Zero,
        }
    }
}

impl MulAssign for SymbolValue {
    fn mul_assign(&mut self, rhs: SymbolValue) {
        *self = *self * rhs;
    }
}

impl std::iter::Product for SymbolValue {
    fn product<I: Iterator<Item = SymbolValue>>(iter: I) -> SymbolValue {
        iter.fold(SymbolValue::One, |acc, x| acc * x)
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SymbolValue::Zero => "0",
            SymbolValue::One => "1",
            SymbolValue::I => "i",
            SymbolValue::MinusOne => "-1",
            SymbolValue::MinusI => "-i",
        };
        f.write_str(s)
    }
}

/// A Gaussian integer divided by 4.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QuarterGauss {
    pub re: BigInt,
    pub im: BigInt,
}

impl QuarterGauss {
    pub const DENOMINATOR: u32 = 4;

    pub fn zero() -> Self {
        Self::default()
    }

    /// The value `n` (numerator `4n`).
    pub fn from_integer(n: i64) -> Self {
        QuarterGauss {
            re: BigInt::from(n) * 4,
            im: BigInt::zero(),
        }
    }

    /// `s / 4` for a single symbol value.
    pub fn quarter_of(s: SymbolValue) -> Self {
        let (re, im) = s.parts();
        QuarterGauss {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, k: i64) -> Self {
        QuarterGauss {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    /// Exact integer value if the number is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        let four = BigInt::from(4);
        if self.im.is_zero() && (&self.re % &four).is_zero() {
            Some(&self.re / four)
        } else {
            None
        }
    }

    /// Exact symbol value if the number is one of `0, ±1, ±i`.
    pub fn as_symbol(&self) -> Option<SymbolValue> {
        let four = BigInt::from(4);
        let re = &self.re;
        let im = &self.im;
        if re.is_zero() && im.is_zero() {
            return Some(SymbolValue::Zero);
        }
        if im.is_zero() && re.abs() == four {
            return Some(if re.is_positive() { SymbolValue::One } else { SymbolValue::MinusOne });
        }
        if re.is_zero() && im.abs() == four {
            return Some(if im.is_positive() { SymbolValue::I } else { SymbolValue::MinusI });
        }
        None
    }

    /// `|value|` as a float.
    pub fn magnitude(&self) -> f64 {
        let re = bigint_to_f64(&self.re);
        let im = bigint_to_f64(&self.im);
        re.hypot(im) / 4.0
    }

    /// Canonical text form `re/4` or `re/4+im/4i`.
    pub fn fraction_string(&self) -> String {
        if self.im.is_zero() {
            format!("{}/4", self.re)
        } else if self.im.is_negative() {
            format!("{}/4-{}/4i", self.re, -&self.im)
        } else {
            format!("{}/4+{}/4i", self.re, self.im)
        }
    }
}

impl Serialize for QuarterGauss {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuarterGauss", 3)?;
        st.serialize_field("num_re", &self.re.to_string())?;
        st.serialize_field("num_im", &self.im.to_string())?;
        st.serialize_field("den", &Self::DENOMINATOR)?;
        st.end()
    }
}

pub(crate) fn bigint_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

impl Add for QuarterGauss {
    type Output = QuarterGauss;
    fn add(mut self, rhs: QuarterGauss) -> QuarterGauss {
        self += rhs;
        self
    }
}

impl AddAssign for QuarterGauss {
    fn add_assign(&mut self, rhs: QuarterGauss) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl<'a> AddAssign<&'a QuarterGauss> for QuarterGauss {
    fn add_assign(&mut self, rhs: &'a QuarterGauss) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl std::iter::Sum for QuarterGauss {
    fn sum<I: Iterator<Item = QuarterGauss>>(iter: I) -> QuarterGauss {
        iter.fold(QuarterGauss::zero(), |acc, x| acc + x)
    }
}

impl Mul<SymbolValue> for &QuarterGauss {
    type Output = QuarterGauss;
    fn mul(self, s: SymbolValue) -> QuarterGauss {
        match s {
            SymbolValue::Zero => QuarterGauss::zero(),
            SymbolValue::One => self.clone(),
            SymbolValue::MinusOne => QuarterGauss {
                re: -&self.re,
                im: -&self.im,
            },
            SymbolValue::I => QuarterGauss {
                re: -&self.im,
                im: self.re.clone(),
            },
            SymbolValue::MinusI => QuarterGauss {
                re: self.im.clone(),
                im: -&self.re,
            },
        }
    }
}

impl fmt::Display for QuarterGauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fraction_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [SymbolValue; 5] = [
        SymbolValue::Zero,
        SymbolValue::One,
        SymbolValue::I,
        SymbolValue::MinusOne,
        SymbolValue::MinusI,
    ];

    #[test]
    fn closed_under_multiplication() {
        for a in ALL {
            for b in ALL {
                let (ar, ai) = a.parts();
                let (br, bi) = b.parts();
                let (pr, pi) = (a * b).parts();
                assert_eq!((pr, pi), (ar * br - ai * bi, ar * bi + ai * br));
            }
        }
    }

    #[test]
    fn inverse_and_pow() {
        assert_eq!(SymbolValue::I.inverse(), SymbolValue::MinusI);
        assert_eq!(SymbolValue::I.pow(2), SymbolValue::MinusOne);
        assert_eq!(SymbolValue::Zero.pow(0), SymbolValue::One);
        assert_eq!(SymbolValue::MinusI.pow(3), SymbolValue::I);
        for a in ALL.into_iter().filter(|a| !a.is_zero()) {
            assert_eq!(a * a.inverse(), SymbolValue::One);
        }
    }

    #[test]
    fn quarter_gauss_text() {
        let mut q = QuarterGauss::zero();
        for _ in 0..4 {
            q += QuarterGauss::quarter_of(SymbolValue::One);
        }
        assert_eq!(q.fraction_string(), "4/4");
        assert_eq!(q.as_symbol(), Some(SymbolValue::One));
        let z = &q * SymbolValue::MinusI;
        assert_eq!(z.fraction_string(), "0/4-4/4i");
        assert_eq!(QuarterGauss::from_integer(-1).as_integer(), Some(BigInt::from(-1)));
    }
}
