// SPDX-License-Identifier: Apache-2.0

//! Residue fields `Z[ζ8]/𝔭` for odd primes `𝔭`.
//!
//! `X⁴ + 1` never stays irreducible modulo an odd prime `p`: it splits into
//! linear factors when `p ≡ 1 (mod 8)` and into two quadratics otherwise, so
//! every odd prime of `Z[ζ8]` has residue degree 1 or 2. The factor is fixed
//! explicitly from `p mod 8`:
//!
//! * `p ≡ 1`: roots `r, r³, r⁵, r⁷` with `r = c^((p−1)/8)` of order 8,
//! * `p ≡ 5`: `X² ∓ s` with `s² = −1`,
//! * `p ≡ 3`: `X² ± sX − 1` with `s² = −2`,
//! * `p ≡ 7`: `X² ± sX + 1` with `s² = 2`.

use num_bigint::BigInt;

use super::element::CycInt;
use crate::arith::{bigint_mod_u64, mul_mod, pow_mod, sqrt_mod};
use crate::value::SymbolValue;
use crate::{Error, Result};

/// How `ζ8` is realised in the residue field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldModulus {
    /// `F_p` with `ζ8 ↦ root`.
    Linear { root: u64 },
    /// `F_p[X]/(X² + aX + b)` with `ζ8 ↦ X`.
    Quadratic { a: u64, b: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueField {
    p: u64,
    modulus: FieldModulus,
}

/// Element `c0 + c1·X` of a residue field (`c1 = 0` in the linear case).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fq {
    pub c0: u64,
    pub c1: u64,
}

impl Fq {
    pub fn is_zero(self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }
}

impl ResidueField {
    /// All residue fields above the odd prime `p`, in a fixed order.
    pub fn all_above(p: u64) -> Result<Vec<ResidueField>> {
        if p < 3 || p % 2 == 0 || !crate::arith::is_prime_u64(p) {
            return Err(Error::InvalidModulus(format!("{p} is not an odd prime")));
        }
        let neg = |x: u64| (p - x % p) % p;
        let fields = match p % 8 {
            1 => {
                let r = (2..p)
                    .map(|c| pow_mod(c, ((p - 1) / 8) as u128, p))
                    .find(|&r| pow_mod(r, 4, p) == p - 1)
                    .expect("p ≡ 1 mod 8 has a primitive 8th root of unity");
                let mut roots: Vec<u64> = [1u128, 3, 5, 7].iter().map(|&e| pow_mod(r, e, p)).collect();
                roots.sort_unstable();
                roots
                    .into_iter()
                    .map(|root| ResidueField {
                        p,
                        modulus: FieldModulus::Linear { root },
                    })
                    .collect()
            }
            5 => {
                let s = sqrt_mod(p - 1, p).expect("−1 is a square mod p ≡ 5 (8)");
                vec![(0, neg(s)), (0, s)]
                    .into_iter()
                    .map(|(a, b)| ResidueField {
                        p,
                        modulus: FieldModulus::Quadratic { a, b },
                    })
                    .collect()
            }
            3 => {
                let s = sqrt_mod(p - 2, p).expect("−2 is a square mod p ≡ 3 (8)");
                let one = neg(1);
                let mut f = vec![(s, one), (neg(s), one)];
                f.sort_unstable();
                f.into_iter()
                    .map(|(a, b)| ResidueField {
                        p,
                        modulus: FieldModulus::Quadratic { a, b },
                    })
                    .collect()
            }
            _ => {
                let s = sqrt_mod(2, p).expect("2 is a square mod p ≡ 7 (8)");
                let mut f = vec![(s, 1), (neg(s), 1)];
                f.sort_unstable();
                f.into_iter()
                    .map(|(a, b)| ResidueField {
                        p,
                        modulus: FieldModulus::Quadratic { a, b },
                    })
                    .collect()
            }
        };
        Ok(fields)
    }

    /// The residue field of the prime ideal generated by `m`.
    pub fn of_prime_generator(m: &CycInt) -> Result<ResidueField> {
        use num_traits::ToPrimitive;
        let norm = m.norm();
        let not_prime = || Error::InvalidModulus(format!("{m:?} does not generate an odd prime ideal"));
        let n = norm.to_u64().ok_or_else(|| Error::TooLarge(format!("norm {norm} exceeds 64 bits")))?;
        let fs = crate::arith::factor_u64(n);
        let (p, f) = match fs.as_slice() {
            [(p, f)] if *p != 2 => (*p, *f),
            _ => return Err(not_prime()),
        };
        let expected_degree = if p % 8 == 1 { 1 } else { 2 };
        if f != expected_degree {
            return Err(not_prime());
        }
        ResidueField::all_above(p)?
            .into_iter()
            .find(|field| field.reduce(m).is_zero())
            .ok_or_else(not_prime)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> FieldModulus {
        self.modulus
    }

    pub fn degree(&self) -> u32 {
        match self.modulus {
            FieldModulus::Linear { .. } => 1,
            FieldModulus::Quadratic { .. } => 2,
        }
    }

    /// Field size `q = p^f`.
    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.degree())
    }

    pub fn zero(&self) -> Fq {
        Fq::default()
    }

    pub fn one(&self) -> Fq {
        Fq { c0: 1, c1: 0 }
    }

    pub fn from_u64(&self, x: u64) -> Fq {
        Fq { c0: x % self.p, c1: 0 }
    }

    /// Image of `ζ8`.
    pub fn zeta_image(&self) -> Fq {
        match self.modulus {
            FieldModulus::Linear { root } => Fq { c0: root, c1: 0 },
            FieldModulus::Quadratic { .. } => Fq { c0: 0, c1: 1 },
        }
    }

    /// Image of `i = ζ8²`.
    pub fn i_image(&self) -> Fq {
        let z = self.zeta_image();
        self.mul(z, z)
    }

    pub fn add(&self, x: Fq, y: Fq) -> Fq {
        let p = self.p;
        let s = |a: u64, b: u64| {
            let t = a + b;
            if t >= p {
                t - p
            } else {
                t
            }
        };
        Fq {
            c0: s(x.c0, y.c0),
            c1: s(x.c1, y.c1),
        }
    }

    pub fn neg(&self, x: Fq) -> Fq {
        let p = self.p;
        Fq {
            c0: (p - x.c0) % p,
            c1: (p - x.c1) % p,
        }
    }

    pub fn mul(&self, x: Fq, y: Fq) -> Fq {
        let p = self.p;
        match self.modulus {
            FieldModulus::Linear { .. } => Fq {
                c0: mul_mod(x.c0, y.c0, p),
                c1: 0,
            },
            FieldModulus::Quadratic { a, b } => {
                // X² = −aX − b
                let t0 = mul_mod(x.c0, y.c0, p);
                let t1 = (mul_mod(x.c0, y.c1, p) + mul_mod(x.c1, y.c0, p)) % p;
                let t2 = mul_mod(x.c1, y.c1, p);
                let c0 = (t0 + p - mul_mod(t2, b, p)) % p;
                let c1 = (t1 + p - mul_mod(t2, a, p)) % p;
                Fq { c0, c1 }
            }
        }
    }

    pub fn pow(&self, mut x: Fq, mut e: u128) -> Fq {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        acc
    }

    /// Image of an element of `Z[ζ8]`.
    pub fn reduce(&self, x: &CycInt) -> Fq {
        let z = self.zeta_image();
        // Horner in ζ: ((d ζ + c) ζ + b) ζ + a
        let coords: Vec<u64> = x.coords().iter().map(|c| bigint_mod_u64(c, self.p)).collect();
        let mut acc = self.from_u64(coords[3]);
        for &c in coords[..3].iter().rev() {
            acc = self.add(self.mul(acc, z), self.from_u64(c));
        }
        acc
    }

    pub fn reduce_int(&self, x: &BigInt) -> Fq {
        self.from_u64(bigint_mod_u64(x, self.p))
    }

    /// Index of an element in `[0, q)`, used for table lookups.
    pub fn index(&self, x: Fq) -> usize {
        (x.c0 + self.p * x.c1) as usize
    }

    /// Identifies a 4th root of unity with `{1, i, −1, −i}` through the image of `i`.
    pub fn root_of_unity_symbol(&self, t: Fq) -> Option<SymbolValue> {
        let i = self.i_image();
        let one = self.one();
        if t == one {
            Some(SymbolValue::One)
        } else if t == i {
            Some(SymbolValue::I)
        } else if t == self.neg(one) {
            Some(SymbolValue::MinusOne)
        } else if t == self.neg(i) {
            Some(SymbolValue::MinusI)
        } else {
            None
        }
    }

    /// Quartic character `x^((q−1)/4)` as a symbol value.
    pub fn quartic_character(&self, x: Fq) -> SymbolValue {
        if x.is_zero() {
            return SymbolValue::Zero;
        }
        let t = self.pow(x, (self.order() - 1) / 4);
        self.root_of_unity_symbol(t).expect("power (q−1)/4 is a 4th root of unity")
    }

    /// Quadratic character relative to a subfield of size `sub_order`:
    /// `x^((sub_order−1)/2)` for `x` lying in that subfield.
    pub fn quadratic_character_in(&self, x: Fq, sub_order: u128) -> SymbolValue {
        if x.is_zero() {
            return SymbolValue::Zero;
        }
        let t = self.pow(x, (sub_order - 1) / 2);
        if t == self.one() {
            SymbolValue::One
        } else {
            debug_assert_eq!(t, self.neg(self.one()));
            SymbolValue::MinusOne
        }
    }

    pub fn quadratic_character(&self, x: Fq) -> SymbolValue {
        self.quadratic_character_in(x, self.order())
    }
}
