// SPDX-License-Identifier: Apache-2.0

//! The quadratic subrings `Z[i]`, `Z[√2]`, `Z[√−2]` of `Z[ζ8]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::element::{Automorphism, CycInt};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subring {
    /// `Z[i]`, `i = ζ8²`.
    Gauss,
    /// `Z[√2]`, `√2 = ζ8 − ζ8³`.
    Root2,
    /// `Z[√−2]`, `√−2 = ζ8 + ζ8³`.
    RootMinus2,
}

impl Subring {
    /// `θ² = D`.
    pub fn discriminant_square(self) -> i64 {
        match self {
            Subring::Gauss => -1,
            Subring::Root2 => 2,
            Subring::RootMinus2 => -2,
        }
    }

    /// The automorphism of `Q(ζ8)` fixing this subring pointwise.
    pub fn fixing_automorphism(self) -> Automorphism {
        match self {
            Subring::Gauss => Automorphism::Sigma,
            Subring::Root2 => Automorphism::Tau,
            Subring::RootMinus2 => Automorphism::SigmaTau,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Subring::Gauss => "Z[i]",
            Subring::Root2 => "Z[sqrt2]",
            Subring::RootMinus2 => "Z[sqrt-2]",
        }
    }

    /// The prime above 2: `1 + i`, `√2` or `√−2`.
    pub fn even_prime(self) -> SubringElem {
        match self {
            Subring::Gauss => SubringElem::new(self, 1, 1),
            _ => SubringElem::new(self, 0, 1),
        }
    }

    /// Primes above the rational prime `p`, one per ideal.
    pub fn primes_above(self, p: u64) -> Vec<SubringElem> {
        if p == 2 {
            return vec![self.even_prime()];
        }
        let d = self.discriminant_square().rem_euclid(p as i64) as u64;
        match crate::arith::sqrt_mod(d, p) {
            Some(s) => {
                let pi = SubringElem::from_int(self, p).gcd(&SubringElem::new(self, s, 1));
                let conj = pi.conj();
                if conj.divides(&pi) {
                    vec![pi]
                } else {
                    vec![pi, conj]
                }
            }
            None => vec![SubringElem::from_int(self, p)],
        }
    }

    pub fn contains(self, x: &CycInt) -> bool {
        x.galois(self.fixing_automorphism()) == *x
    }
}

/// `x + y·θ` in one of the quadratic subrings.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubringElem {
    pub ring: Subring,
    pub x: BigInt,
    pub y: BigInt,
}

fn round_nearest(n: &BigInt, d: &BigInt) -> BigInt {
    // d > 0; halves round up, the remainder bound has slack either way.
    let two = BigInt::from(2u32);
    (n * &two + d).div_floor(&(d * &two))
}

impl SubringElem {
    pub fn new(ring: Subring, x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        SubringElem {
            ring,
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn from_int(ring: Subring, n: impl Into<BigInt>) -> Self {
        SubringElem::new(ring, n, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Embedding into `Z[ζ8]`.
    pub fn embed(&self) -> CycInt {
        let (x, y) = (self.x.clone(), self.y.clone());
        match self.ring {
            Subring::Gauss => CycInt::new(x, 0, y, 0),
            Subring::Root2 => CycInt::new(x, y.clone(), 0, -y),
            Subring::RootMinus2 => CycInt::new(x, y.clone(), 0, y),
        }
    }

    /// Extraction from `Z[ζ8]`; fails unless the coordinate pattern matches.
    pub fn extract(ring: Subring, w: &CycInt) -> Result<SubringElem> {
        let [a, b, c, d] = w.coords();
        let ok = match ring {
            Subring::Gauss => b.is_zero() && d.is_zero(),
            Subring::Root2 => c.is_zero() && *d == -b,
            Subring::RootMinus2 => c.is_zero() && d == b,
        };
        if !ok {
            return Err(Error::NotInSubring(ring.name()));
        }
        let y = if ring == Subring::Gauss { c.clone() } else { b.clone() };
        Ok(SubringElem::new(ring, a.clone(), y))
    }

    /// `x² − D·y²`; negative values occur in `Z[√2]`.
    pub fn norm(&self) -> BigInt {
        &self.x * &self.x - BigInt::from(self.ring.discriminant_square()) * &self.y * &self.y
    }

    /// `x − y·θ`.
    pub fn conj(&self) -> SubringElem {
        SubringElem::new(self.ring, self.x.clone(), -&self.y)
    }

    pub fn mul(&self, o: &SubringElem) -> SubringElem {
        assert_eq!(self.ring, o.ring);
        let dsq = BigInt::from(self.ring.discriminant_square());
        SubringElem::new(
            self.ring,
            &self.x * &o.x + dsq * &self.y * &o.y,
            &self.x * &o.y + &self.y * &o.x,
        )
    }

    pub fn sub(&self, o: &SubringElem) -> SubringElem {
        SubringElem::new(self.ring, &self.x - &o.x, &self.y - &o.y)
    }

    pub fn pow(&self, mut e: u32) -> SubringElem {
        let mut base = self.clone();
        let mut acc = SubringElem::from_int(self.ring, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    /// `self / o` if the quotient lies in the ring.
    pub fn div_exact(&self, o: &SubringElem) -> Option<SubringElem> {
        if o.is_zero() {
            return None;
        }
        let n = o.norm();
        let num = self.mul(&o.conj());
        if (&num.x % &n).is_zero() && (&num.y % &n).is_zero() {
            Some(SubringElem::new(self.ring, &num.x / &n, &num.y / &n))
        } else {
            None
        }
    }

    pub fn divides(&self, o: &SubringElem) -> bool {
        o.div_exact(self).is_some()
    }

    /// Division with remainder, `|Norm(r)| < |Norm(o)|`; every coordinate-wise
    /// rounding error has norm at most 3/4 in these three rings.
    pub fn div_rem(&self, o: &SubringElem) -> (SubringElem, SubringElem) {
        let n = o.norm();
        let num = self.mul(&o.conj());
        let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
        let an = n.abs();
        let q = SubringElem::new(
            self.ring,
            round_nearest(&(&num.x * &sign), &an),
            round_nearest(&(&num.y * &sign), &an),
        );
        let r = self.sub(&q.mul(o));
        debug_assert!(r.norm().abs() < an);
        (q, r)
    }

    /// Removes every factor of the prime above 2; returns `(odd part, k)`
    /// with `self = unit · θ₂^k · odd part`.
    pub fn split_even(&self) -> (SubringElem, u32) {
        let two = self.ring.even_prime();
        let mut x = self.clone();
        let mut k = 0;
        while !x.is_zero() {
            match x.div_exact(&two) {
                Some(q) => {
                    x = q;
                    k += 1;
                }
                None => break,
            }
        }
        (x, k)
    }

    /// Prime factorization up to a unit, ordered by rational prime.
    pub fn factor(&self) -> Result<Vec<(SubringElem, u32)>> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("cannot factor zero".into()));
        }
        let n = self.norm().abs().to_biguint().expect("absolute value");
        let mut rest = self.clone();
        let mut out = Vec::new();
        for (p, _) in crate::arith::factor_integer(&n) {
            let p = p.to_u64().ok_or_else(|| Error::TooLarge("prime factor above 2^64".into()))?;
            for pi in self.ring.primes_above(p) {
                let mut e = 0;
                while let Some(q) = rest.div_exact(&pi) {
                    rest = q;
                    e += 1;
                }
                if e > 0 {
                    out.push((pi, e));
                }
            }
        }
        debug_assert!(rest.is_unit());
        Ok(out)
    }

    pub fn gcd(&self, o: &SubringElem) -> SubringElem {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a
    }
}

impl fmt::Debug for SubringElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = match self.ring {
            Subring::Gauss => "i",
            Subring::Root2 => "√2",
            Subring::RootMinus2 => "√−2",
        };
        write!(f, "{}+{}{}", self.x, self.y, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_examples() {
        let e = SubringElem::new(Subring::Root2, 5, 2);
        assert_eq!(e.embed(), CycInt::from_i64s([5, 2, 0, -2]));
        let i = SubringElem::extract(Subring::Gauss, &CycInt::i()).unwrap();
        assert_eq!((i.x, i.y), (0.into(), 1.into()));
        assert_eq!(
            SubringElem::extract(Subring::Root2, &CycInt::from_i64s([1, 1, 0, 0])),
            Err(Error::NotInSubring("Z[sqrt2]"))
        );
    }

    #[test]
    fn embedding_is_multiplicative() {
        for ring in [Subring::Gauss, Subring::Root2, Subring::RootMinus2] {
            let x = SubringElem::new(ring, 3, -7);
            let y = SubringElem::new(ring, -2, 5);
            assert_eq!(x.mul(&y).embed(), &x.embed() * &y.embed());
            assert_eq!(SubringElem::extract(ring, &x.embed()).unwrap(), x);
            assert!(ring.contains(&x.embed()));
            assert_eq!(x.embed().norm(), x.norm() * x.norm());
        }
    }

    #[test]
    fn factorization_reconstructs() {
        let cases = [
            SubringElem::new(Subring::Gauss, 1, 7),
            SubringElem::new(Subring::Gauss, 12, -16),
            SubringElem::new(Subring::Root2, 5, 2),
            SubringElem::new(Subring::Root2, 18, 4),
            SubringElem::new(Subring::RootMinus2, 9, -6),
            SubringElem::new(Subring::RootMinus2, 1, 1),
        ];
        for x in cases {
            let f = x.factor().unwrap();
            let prod = f.iter().fold(SubringElem::from_int(x.ring, 1), |acc, (p, e)| acc.mul(&p.pow(*e)));
            let u = x.div_exact(&prod).expect("product divides");
            assert!(u.is_unit(), "{x:?} {f:?}");
        }
        let (odd, k) = SubringElem::new(Subring::Gauss, 12, -16).split_even();
        assert_eq!(k, 4);
        assert_eq!(odd.norm(), 25.into());
    }

    #[test]
    fn gcd_in_gaussian_integers() {
        let a = SubringElem::new(Subring::Gauss, 4, 1); // norm 17
        let b = SubringElem::new(Subring::Gauss, 2, 3); // norm 13
        let g = a.mul(&b).gcd(&a.mul(&SubringElem::new(Subring::Gauss, 1, 1)));
        assert_eq!(g.norm().abs(), 17.into());
        assert!(g.divides(&a) && a.divides(&g));
    }
}
