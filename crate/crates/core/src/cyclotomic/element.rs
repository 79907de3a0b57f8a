// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An element `a + b·ζ + c·ζ² + d·ζ³` of `Z[ζ8]`, with `ζ⁴ = −1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CycInt {
    coords: [BigInt; 4],
}

/// Automorphisms of `Q(ζ8)`: `σ` fixes `Q(i)`, `τ` fixes `Q(√2)`, `στ` fixes `Q(√−2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Automorphism {
    Id,
    Sigma,
    Tau,
    SigmaTau,
}

/// `w·τ(w) = u + v·√2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UVPair {
    pub u: BigInt,
    pub v: BigInt,
}

impl UVPair {
    pub fn norm(&self) -> BigInt {
        &self.u * &self.u - BigInt::from(2) * &self.v * &self.v
    }

    /// The pair of `ε²·w`: `(3u + 4v, 2u + 3v)`.
    pub fn times_epsilon_squared(&self) -> UVPair {
        UVPair {
            u: &self.u * 3 + &self.v * 4,
            v: &self.u * 2 + &self.v * 3,
        }
    }

    pub fn over_epsilon_squared(&self) -> UVPair {
        UVPair {
            u: &self.u * 3 - &self.v * 4,
            v: &self.v * 3 - &self.u * 2,
        }
    }
}

impl CycInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        CycInt {
            coords: [a.into(), b.into(), c.into(), d.into()],
        }
    }

    pub fn from_coords(coords: [BigInt; 4]) -> Self {
        CycInt { coords }
    }

    pub fn from_i64s(c: [i64; 4]) -> Self {
        CycInt::new(c[0], c[1], c[2], c[3])
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        CycInt::new(n, 0, 0, 0)
    }

    pub fn zero() -> Self {
        CycInt::from_i64s([0, 0, 0, 0])
    }

    pub fn one() -> Self {
        CycInt::from_i64s([1, 0, 0, 0])
    }

    /// `ζ8`.
    pub fn zeta() -> Self {
        CycInt::from_i64s([0, 1, 0, 0])
    }

    /// `i = ζ8²`.
    pub fn i() -> Self {
        CycInt::from_i64s([0, 0, 1, 0])
    }

    /// `√2 = ζ8 − ζ8³`.
    pub fn sqrt2() -> Self {
        CycInt::from_i64s([0, 1, 0, -1])
    }

    /// `√−2 = ζ8 + ζ8³`.
    pub fn sqrt_minus2() -> Self {
        CycInt::from_i64s([0, 1, 0, 1])
    }

    /// The fundamental unit `ε = 1 + √2`.
    pub fn epsilon() -> Self {
        CycInt::from_i64s([1, 1, 0, -1])
    }

    /// `ε⁻¹ = √2 − 1`.
    pub fn epsilon_inverse() -> Self {
        CycInt::from_i64s([-1, 1, 0, -1])
    }

    /// `1 + ζ8`, the prime above 2.
    pub fn two_prime() -> Self {
        CycInt::from_i64s([1, 1, 0, 0])
    }

    pub fn coords(&self) -> &[BigInt; 4] {
        &self.coords
    }

    pub fn a(&self) -> &BigInt {
        &self.coords[0]
    }
    pub fn b(&self) -> &BigInt {
        &self.coords[1]
    }
    pub fn c(&self) -> &BigInt {
        &self.coords[2]
    }
    pub fn d(&self) -> &BigInt {
        &self.coords[3]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `(w) + (2) = (1)`; equivalent to `a + b + c + d` odd.
    pub fn is_odd(&self) -> bool {
        let s: BigInt = self.coords.iter().sum();
        s.is_odd()
    }

    /// Whether every coordinate is divisible by `n`.
    pub fn divisible_by_int(&self, n: &BigInt) -> bool {
        self.coords.iter().all(|x| (x % n).is_zero())
    }

    pub fn scale(&self, k: &BigInt) -> CycInt {
        CycInt {
            coords: self.coords.clone().map(|x| x * k),
        }
    }

    /// Exact division by a rational integer; `None` if it does not divide.
    pub fn div_int(&self, n: &BigInt) -> Option<CycInt> {
        if n.is_zero() || !self.divisible_by_int(n) {
            return None;
        }
        Some(CycInt {
            coords: self.coords.clone().map(|x| x / n),
        })
    }

    /// Coordinates modulo `m`, each in `[0, m)`.
    pub fn mod_int(&self, m: &BigInt) -> CycInt {
        CycInt {
            coords: self.coords.clone().map(|x| x.mod_floor(m)),
        }
    }

    pub fn galois(&self, aut: Automorphism) -> CycInt {
        let [a, b, c, d] = &self.coords;
        match aut {
            Automorphism::Id => self.clone(),
            Automorphism::Sigma => CycInt::new(a.clone(), -b, c.clone(), -d),
            Automorphism::SigmaTau => CycInt::new(a.clone(), d.clone(), -c, b.clone()),
            Automorphism::Tau => CycInt::new(a.clone(), -d, -c, -b),
        }
    }

    pub fn sigma(&self) -> CycInt {
        self.galois(Automorphism::Sigma)
    }
    pub fn tau(&self) -> CycInt {
        self.galois(Automorphism::Tau)
    }
    pub fn sigma_tau(&self) -> CycInt {
        self.galois(Automorphism::SigmaTau)
    }

    /// `u = a²+b²+c²+d²`, `v = ab − ad + bc + cd`.
    pub fn uv(&self) -> UVPair {
        let [a, b, c, d] = &self.coords;
        UVPair {
            u: a * a + b * b + c * c + d * d,
            v: a * b - a * d + b * c + c * d,
        }
    }

    /// Absolute norm to `Q`; positive for every nonzero element.
    pub fn norm(&self) -> BigInt {
        self.uv().norm()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// `σ(x)·τ(x)·στ(x)`, so that `x·conjugate_product(x) = Norm(x)`.
    pub fn conjugate_product(&self) -> CycInt {
        &(&self.sigma() * &self.tau()) * &self.sigma_tau()
    }

    /// `self / y` if `y` divides `self` in `Z[ζ8]`.
    pub fn div_exact(&self, y: &CycInt) -> Option<CycInt> {
        if y.is_zero() {
            return None;
        }
        let n = y.norm();
        (self * &y.conjugate_product()).div_int(&n)
    }

    pub fn divides(&self, x: &CycInt) -> bool {
        x.div_exact(self).is_some()
    }

    pub fn pow(&self, mut e: u32) -> CycInt {
        let mut base = self.clone();
        let mut acc = CycInt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `ζ8^j · self` for any integer `j`.
    pub fn times_zeta_pow(&self, j: i64) -> CycInt {
        let j = j.rem_euclid(8) as usize;
        let mut out = self.clone();
        for _ in 0..j {
            let [a, b, c, d] = out.coords;
            out = CycInt::from_coords([-d, a, b, c]);
        }
        out
    }

    /// `ε^k · self` for any integer `k`.
    pub fn times_epsilon_pow(&self, k: i64) -> CycInt {
        let unit = if k >= 0 { CycInt::epsilon() } else { CycInt::epsilon_inverse() };
        self * &unit.pow(k.unsigned_abs() as u32)
    }

    /// Largest coordinate in absolute value.
    pub fn max_abs_coord(&self) -> BigInt {
        self.coords.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Coordinates as `i64` if they all fit.
    pub fn to_i64s(&self) -> Option<[i64; 4]> {
        use num_traits::ToPrimitive;
        let [a, b, c, d] = &self.coords;
        Some([a.to_i64()?, b.to_i64()?, c.to_i64()?, d.to_i64()?])
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        let [a, b, c, d] = &self.coords;
        let [e, f, g, h] = &rhs.coords;
        CycInt::new(a + e, b + f, c + g, d + h)
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        let [a, b, c, d] = &self.coords;
        let [e, f, g, h] = &rhs.coords;
        CycInt::new(a - e, b - f, c - g, d - h)
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        let [a0, a1, a2, a3] = &self.coords;
        let [b0, b1, b2, b3] = &rhs.coords;
        // ζ⁴ = −1 folds degrees 4..6 back with a sign flip.
        let c0 = a0 * b0 - (a1 * b3 + a2 * b2 + a3 * b1);
        let c1 = a0 * b1 + a1 * b0 - (a2 * b3 + a3 * b2);
        let c2 = a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3;
        let c3 = a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0;
        CycInt::from_coords([c0, c1, c2, c3])
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            coords: self.coords.clone().map(|x| -x),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycInt {
            type Output = CycInt;
            fn $m(self, rhs: CycInt) -> CycInt {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.coords;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.coords;
        write!(f, "{a},{b},{c},{d}")
    }
}

impl std::str::FromStr for CycInt {
    type Err = crate::Error;

    /// Parses `"a,b,c,d"`.
    fn from_str(s: &str) -> crate::Result<CycInt> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return crate::error::invalid(format!("expected four comma-separated integers, got {s:?}"));
        }
        let mut coords: [BigInt; 4] = Default::default();
        for (slot, p) in coords.iter_mut().zip(parts) {
            *slot = p
                .trim()
                .parse()
                .map_err(|_| crate::Error::InvalidArgument(format!("bad integer {p:?}")))?;
        }
        Ok(CycInt::from_coords(coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: [i64; 4]) -> CycInt {
        CycInt::from_i64s(v)
    }

    #[test]
    fn zeta_times_zeta_cubed() {
        assert_eq!(&c([0, 1, 0, 0]) * &c([0, 0, 0, 1]), c([-1, 0, 0, 0]));
    }

    #[test]
    fn epsilon_squared() {
        let e = CycInt::epsilon();
        assert_eq!(&e * &e, c([3, 2, 0, -2]));
        assert_eq!(&e * &CycInt::epsilon_inverse(), CycInt::one());
    }

    #[test]
    fn w_tau_w() {
        let w = c([1, 2, 0, 0]);
        assert_eq!(&w * &w.tau(), c([5, 2, 0, -2]));
    }

    #[test]
    fn galois_examples() {
        let w = c([1, 2, 0, 0]);
        assert_eq!(w.sigma(), c([1, -2, 0, 0]));
        assert_eq!(w.sigma_tau(), c([1, 0, 0, 2]));
        assert_eq!(w.tau(), c([1, 0, 0, -2]));
    }

    #[test]
    fn norm_and_uv_examples() {
        let uv = c([1, 2, 0, 0]).uv();
        assert_eq!((uv.u.clone(), uv.v.clone()), (5.into(), 2.into()));
        assert_eq!(uv.norm(), 17.into());
        let uv = CycInt::epsilon().uv();
        assert_eq!((uv.u.clone(), uv.v.clone(), uv.norm()), (3.into(), 2.into(), 1.into()));
        assert_eq!(CycInt::one().uv(), UVPair { u: 1.into(), v: 0.into() });
    }

    #[test]
    fn constants_square_correctly() {
        assert_eq!(&CycInt::sqrt2() * &CycInt::sqrt2(), CycInt::from_int(2));
        assert_eq!(&CycInt::sqrt_minus2() * &CycInt::sqrt_minus2(), CycInt::from_int(-2));
        assert_eq!(&CycInt::i() * &CycInt::i(), CycInt::from_int(-1));
        assert_eq!(CycInt::two_prime().norm(), 2.into());
    }

    #[test]
    fn zeta_shift_matches_multiplication() {
        let w = c([3, -1, 4, 1]);
        for j in -9..9 {
            assert_eq!(w.times_zeta_pow(j), &w * &CycInt::zeta().pow(j.rem_euclid(8) as u32));
        }
    }

    #[test]
    fn exact_division() {
        let w = c([1, 2, 0, 0]);
        let z = c([2, -1, 3, 1]);
        assert_eq!((&w * &z).div_exact(&w), Some(z.clone()));
        assert_eq!(c([1, 0, 0, 0]).div_exact(&w), None);
    }

    #[test]
    fn parse_roundtrip() {
        let w: CycInt = "1,-2,0,7".parse().unwrap();
        assert_eq!(w, c([1, -2, 0, 7]));
        assert!("1,2,3".parse::<CycInt>().is_err());
        assert!("1,2,x,4".parse::<CycInt>().is_err());
    }
}
