// SPDX-License-Identifier: Apache-2.0

//! Prime-ideal factorization in `Z[ζ8]`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use super::element::{Automorphism, CycInt};
use super::euclid::euclid_gcd;
use super::field::{FieldModulus, ResidueField};
use crate::domain::canonical_generator;
use crate::{Error, Result};

/// One prime-power factor `𝔭^e` of an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactor {
    /// Canonical generator of `𝔭`.
    pub generator: CycInt,
    pub exponent: u32,
    /// `None` for the ramified prime `(1 + ζ8)`.
    pub field: Option<ResidueField>,
    /// Rational prime below `𝔭`.
    pub p: u64,
}

impl PrimeFactor {
    /// Absolute norm `p^f` of the prime.
    pub fn prime_norm(&self) -> u128 {
        self.field.map_or(2, |f| f.order())
    }

    pub fn is_even(&self) -> bool {
        self.field.is_none()
    }
}

/// `x = unit · ∏ generator^exponent`, factors sorted by `(norm, generator)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealFactorization {
    pub factors: Vec<PrimeFactor>,
    pub unit: CycInt,
}

/// Canonical generator of the prime ideal attached to a residue field.
pub fn prime_generator(field: &ResidueField) -> Result<CycInt> {
    let p = field.p();
    let local = match field.modulus() {
        FieldModulus::Linear { root } => &CycInt::zeta() - &CycInt::from_int(root),
        // ζ² + aζ + b
        FieldModulus::Quadratic { a, b } => CycInt::new(b, a, 1, 0),
    };
    let g = euclid_gcd(&CycInt::from_int(p), &local)?;
    debug_assert_eq!(g.norm(), BigInt::from(field.order()));
    canonical_generator(&g)
}

fn even_generator() -> CycInt {
    canonical_generator(&CycInt::two_prime()).expect("1 + ζ is nonzero")
}

/// Factors the principal ideal `(x)`.
pub fn factor_ideal(x: &CycInt) -> Result<IdealFactorization> {
    if x.is_zero() {
        return Err(Error::InvalidArgument("cannot factor the zero ideal".into()));
    }
    let norm = x.norm().to_biguint().expect("norm of a nonzero element is positive");
    let mut rest = x.clone();
    let mut factors = Vec::new();
    for (p, k) in crate::arith::factor_integer(&norm) {
        let p = p
            .to_u64()
            .ok_or_else(|| Error::TooLarge(format!("prime factor {p} of the norm exceeds 64 bits")))?;
        if p == 2 {
            // 2 is totally ramified: v_(1+ζ)(x) = v_2(Norm x).
            let g = even_generator();
            for _ in 0..k {
                rest = rest.div_exact(&g).expect("(1+ζ) divides an element of even norm");
            }
            factors.push(PrimeFactor {
                generator: g,
                exponent: k,
                field: None,
                p: 2,
            });
            continue;
        }
        let mut accounted = 0;
        for field in ResidueField::all_above(p)? {
            if accounted == k {
                break;
            }
            if !field.reduce(&rest).is_zero() {
                continue;
            }
            let g = prime_generator(&field)?;
            let mut e = 0;
            while field.reduce(&rest).is_zero() {
                rest = rest.div_exact(&g).expect("prime generator divides an element it reduces to zero");
                e += 1;
            }
            accounted += e * field.degree();
            factors.push(PrimeFactor {
                generator: g,
                exponent: e,
                field: Some(field),
                p,
            });
        }
        debug_assert_eq!(accounted, k, "valuations must account for p^{k} in the norm");
    }
    debug_assert!(rest.is_unit());
    let mut out = IdealFactorization { factors, unit: rest };
    out.sort();
    Ok(out)
}

impl IdealFactorization {
    pub fn unit_ideal() -> Self {
        IdealFactorization {
            factors: Vec::new(),
            unit: CycInt::one(),
        }
    }

    fn sort(&mut self) {
        self.factors.sort_by(|x, y| {
            (x.prime_norm(), &x.generator).cmp(&(y.prime_norm(), &y.generator))
        });
    }

    pub fn is_odd(&self) -> bool {
        self.factors.iter().all(|f| !f.is_even())
    }

    /// Ideal norm `∏ Norm(𝔭)^e`.
    pub fn norm(&self) -> BigUint {
        self.factors
            .iter()
            .map(|f| BigUint::from(f.prime_norm()).pow(f.exponent))
            .product()
    }

    /// `unit · ∏ generator^exponent`.
    pub fn product(&self) -> CycInt {
        self.factors
            .iter()
            .fold(self.unit.clone(), |acc, f| &acc * &f.generator.pow(f.exponent))
    }

    /// Factorization of the product of two elements.
    pub fn mul(&self, other: &IdealFactorization) -> IdealFactorization {
        let mut factors = self.factors.clone();
        for f in &other.factors {
            match factors.iter_mut().find(|g| g.generator == f.generator) {
                Some(g) => g.exponent += f.exponent,
                None => factors.push(f.clone()),
            }
        }
        let mut out = IdealFactorization {
            factors,
            unit: &self.unit * &other.unit,
        };
        out.sort();
        out
    }

    /// Factorization of `aut(x)` given that of `x`.
    pub fn galois(&self, aut: Automorphism) -> Result<IdealFactorization> {
        let mut unit = self.unit.galois(aut);
        let mut factors = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            let image = f.generator.galois(aut);
            let generator = canonical_generator(&image)?;
            let correction = image.div_exact(&generator).expect("associates divide each other");
            unit = &unit * &correction.pow(f.exponent);
            let field = match f.field {
                None => None,
                Some(_) => Some(ResidueField::of_prime_generator(&generator)?),
            };
            factors.push(PrimeFactor {
                generator,
                exponent: f.exponent,
                field,
                p: f.p,
            });
        }
        let mut out = IdealFactorization { factors, unit };
        out.sort();
        Ok(out)
    }

    /// `𝔫 = 𝔭^l` for a single prime with `l >= 1`.
    pub fn as_prime_power(&self) -> Option<(&PrimeFactor, u32)> {
        match self.factors.as_slice() {
            [f] => Some((f, f.exponent)),
            _ => None,
        }
    }

    /// Whether the ideal of `self` divides the ideal of `other`.
    pub fn divides(&self, other: &IdealFactorization) -> bool {
        self.factors.iter().all(|f| {
            other
                .factors
                .iter()
                .any(|g| g.generator == f.generator && g.exponent >= f.exponent)
        })
    }
}

/// A nonzero ideal of `Z[ζ8]`, held by its canonical generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrincipalIdeal {
    generator: CycInt,
    norm: BigUint,
}

impl PrincipalIdeal {
    pub fn new(x: &CycInt) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::InvalidArgument("the zero ideal is not allowed".into()));
        }
        let generator = canonical_generator(x)?;
        let norm = generator.norm().to_biguint().expect("positive norm");
        Ok(PrincipalIdeal { generator, norm })
    }

    /// Wraps an element already known to be canonical.
    pub(crate) fn from_canonical(generator: CycInt) -> Self {
        let norm = generator.norm().to_biguint().expect("positive norm");
        PrincipalIdeal { generator, norm }
    }

    pub fn unit() -> Self {
        PrincipalIdeal::new(&CycInt::one()).expect("one is nonzero")
    }

    pub fn generator(&self) -> &CycInt {
        &self.generator
    }

    pub fn norm(&self) -> &BigUint {
        &self.norm
    }

    pub fn is_odd(&self) -> bool {
        self.generator.is_odd()
    }

    pub fn factor(&self) -> Result<IdealFactorization> {
        factor_ideal(&self.generator)
    }

    pub fn divides(&self, other: &PrincipalIdeal) -> bool {
        self.generator.divides(&other.generator)
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.norm.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: [i64; 4]) -> CycInt {
        CycInt::from_i64s(v)
    }

    #[test]
    fn seventeen_splits_completely() {
        let f = factor_ideal(&CycInt::from_int(17)).unwrap();
        assert_eq!(f.factors.len(), 4);
        assert!(f.factors.iter().all(|p| p.exponent == 1 && p.prime_norm() == 17));
        let mut roots: Vec<u64> = f
            .factors
            .iter()
            .map(|p| match p.field.unwrap().modulus() {
                FieldModulus::Linear { root } => root,
                _ => unreachable!(),
            })
            .collect();
        roots.sort();
        assert_eq!(roots, vec![2, 8, 9, 15]);
        assert_eq!(f.product(), CycInt::from_int(17));
    }

    #[test]
    fn unit_has_empty_factorization() {
        let f = factor_ideal(&CycInt::epsilon()).unwrap();
        assert!(f.factors.is_empty());
        assert_eq!(f.unit, CycInt::epsilon());
    }

    #[test]
    fn prime_of_norm_17() {
        let w = c([1, 2, 0, 0]);
        let f = factor_ideal(&w).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].exponent, 1);
        assert!(f.factors[0].generator.divides(&w) && w.divides(&f.factors[0].generator));
        assert_eq!(f.product(), w);
    }

    #[test]
    fn three_is_two_primes_of_norm_nine() {
        let f = factor_ideal(&CycInt::from_int(3)).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.iter().all(|p| p.prime_norm() == 9));
    }

    #[test]
    fn even_and_composite() {
        let x = &(&c([1, 1, 0, 0]).pow(5) * &c([1, 2, 0, 0]).pow(2)) * &CycInt::from_int(21);
        let f = factor_ideal(&x).unwrap();
        assert_eq!(f.product(), x);
        assert_eq!(f.factors[0].p, 2);
        assert_eq!(f.factors[0].exponent, 5);
    }

    #[test]
    fn zero_rejected() {
        assert!(factor_ideal(&CycInt::zero()).is_err());
        assert!(PrincipalIdeal::new(&CycInt::zero()).is_err());
    }

    #[test]
    fn merged_and_conjugated_factorizations() {
        let w = c([3, 1, 0, 2]);
        let z = c([1, -2, 1, 1]);
        let fw = factor_ideal(&w).unwrap();
        let fz = factor_ideal(&z).unwrap();
        let merged = fw.mul(&fz);
        assert_eq!(merged.product(), &w * &z);
        for aut in [Automorphism::Sigma, Automorphism::Tau, Automorphism::SigmaTau] {
            let g = fw.galois(aut).unwrap();
            assert_eq!(g.product(), w.galois(aut));
            assert_eq!(g, factor_ideal(&w.galois(aut)).unwrap());
        }
    }
}
