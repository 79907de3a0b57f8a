// SPDX-License-Identifier: Apache-2.0

//! The complete character sum `f(w) = Σ_{ζ mod N} γ₁(w, ζ)·γ₃(w, ζ)`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::twists::Modulus;
use crate::arith::factor_u64;
use crate::cyclotomic::{CycInt, Fq, ResidueField};
use crate::symbols::{symbol_components, SymbolComponent, SymbolRing};
use crate::{Error, Result};

/// Largest `Norm w` accepted by [`f_char_sum`].
pub const DEFAULT_F_CEILING: u64 = 50;

pub fn f_char_sum(w: &CycInt) -> Result<BigInt> {
    f_char_sum_with_ceiling(w, DEFAULT_F_CEILING)
}

/// Both symbols depend on `ζ` only through its residues modulo the primes
/// `p | N`, so the sum over `[0, N)⁴` factors by the CRT into
/// `(N / rad N)⁴ · Π_p Σ_{x ∈ F_p⁴} T_p(x)`.
pub fn f_char_sum_with_ceiling(w: &CycInt, ceiling: u64) -> Result<BigInt> {
    let wm = Modulus::new(w)?;
    let n = w
        .norm()
        .to_u64()
        .filter(|&n| n <= ceiling)
        .ok_or_else(|| Error::TooLarge(format!("Norm {w:?} exceeds {ceiling}")))?;
    let gamma1 = symbol_components(&wm.fact, SymbolRing::M)?;
    let gamma3 = symbol_components(&wm.norm_form, SymbolRing::ROOT2)?;
    let mut total = BigInt::one();
    let mut radical = 1u64;
    for (p, _) in factor_u64(n) {
        radical *= p;
        let table = local_table(p, &gamma1, &gamma3);
        total *= table.iter().map(|&x| x as i64).sum::<i64>();
    }
    Ok(total * BigInt::from(n / radical).pow(4))
}

/// Character value of one component on each element of its residue field.
fn char_values(c: &SymbolComponent) -> Vec<i8> {
    let f = c.field;
    let q = f.order() as usize;
    let mut out = vec![0i8; q];
    for c1 in 0..if f.degree() == 2 { f.p() } else { 1 } {
        for c0 in 0..f.p() {
            let x = Fq { c0, c1 };
            // Only the subfield of order `sub_order` is ever looked up.
            if c.sub_order < f.order() && f.pow(x, c.sub_order) != x {
                continue;
            }
            out[f.index(x)] = f.quadratic_character_in(x, c.sub_order).pow(c.exponent).to_sign() as i8;
        }
    }
    out
}

/// Image of `x₀ + x₁ζ + x₂ζ² + x₃ζ³` for residues `xᵢ ∈ [0, p)`.
fn image(f: &ResidueField, powers: &[Fq; 4], x: [u64; 4]) -> Fq {
    let mut acc = f.zero();
    for (xi, zi) in x.iter().zip(powers) {
        acc = f.add(acc, f.mul(f.from_u64(*xi), *zi));
    }
    acc
}

/// `T_p(x) = Π γ₁-components · Π γ₃-components above p`, indexed by
/// `x₀p³ + x₁p² + x₂p + x₃`.
fn local_table(p: u64, gamma1: &[SymbolComponent], gamma3: &[SymbolComponent]) -> Vec<i8> {
    let size = (p as usize).pow(4);
    let mut table = vec![1i8; size];
    let neg = |x: u64| (p - x) % p;
    let mut apply = |c: &SymbolComponent, both: bool| {
        let f = c.field;
        let chars = char_values(c);
        let z = f.zeta_image();
        let z2 = f.mul(z, z);
        let powers = [f.one(), z, z2, f.mul(z2, z)];
        let mut idx = 0;
        for a in 0..p {
            for b in 0..p {
                for cc in 0..p {
                    for d in 0..p {
                        // σ(x) = (a, −b, c, −d), στ(x) = (a, d, −c, b)
                        let mut y = image(&f, &powers, [a, neg(b), cc, neg(d)]);
                        if both {
                            y = f.mul(y, image(&f, &powers, [a, d, neg(cc), b]));
                        }
                        table[idx] *= chars[f.index(y)];
                        idx += 1;
                    }
                }
            }
        }
    };
    for c in gamma1.iter().filter(|c| c.field.p() == p) {
        apply(c, false);
    }
    for c in gamma3.iter().filter(|c| c.field.p() == p) {
        apply(c, true);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve_lab::twists::{gamma1, gamma3};

    /// The defining sum, term by term.
    fn brute(w: &CycInt) -> i64 {
        let n = w.norm().to_i64().unwrap();
        let wm = Modulus::new(w).unwrap();
        let mut s = 0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let z = CycInt::from_i64s([a, b, c, d]);
                        let g1 = super::super::twists::gamma1_m(&wm, &z).unwrap();
                        let g3 = super::super::twists::gamma3_m(&wm, &z).unwrap();
                        s += (g1 * g3).to_sign() as i64;
                    }
                }
            }
        }
        s
    }

    #[test]
    fn small_values() {
        assert_eq!(f_char_sum(&CycInt::one()).unwrap(), BigInt::one());
        let w = CycInt::from_i64s([1, 2, 0, 0]);
        assert_eq!(w.norm(), BigInt::from(17));
        assert_eq!(f_char_sum(&w).unwrap(), BigInt::from(0));
        assert!(matches!(f_char_sum(&CycInt::from_i64s([1, 1, 0, 0])), Err(Error::InvalidArgument(_))));
        assert!(matches!(f_char_sum(&CycInt::from_i64s([7, 0, 0, 0])), Err(Error::TooLarge(_))));
        // gamma1/gamma3 are reachable through the public API too.
        assert!(gamma1(&w, &CycInt::one()).is_ok() && gamma3(&w, &CycInt::one()).is_ok());
    }

    #[test]
    fn matches_definition() {
        for w in [[1, 2, 0, 0], [1, 0, 0, 2], [-2, -2, -1, 0]] {
            let w = CycInt::from_i64s(w);
            assert_eq!(f_char_sum(&w).unwrap(), BigInt::from(brute(&w)), "{w:?}");
        }
    }

    #[test]
    fn multiplicative_on_coprime_norms() {
        // Squarefull norms 289 and 81; f vanishes on every odd norm up to 50.
        let a = CycInt::from_i64s([1, 2, 0, 0]);
        let b = CycInt::from_i64s([-2, -2, -1, 0]);
        let (a2, b2) = (&a * &a, &b * &b);
        let fa = f_char_sum_with_ceiling(&a2, 300).unwrap();
        let fb = f_char_sum_with_ceiling(&b2, 300).unwrap();
        assert_ne!(fa, BigInt::from(0));
        assert_ne!(fb, BigInt::from(0));
        let fab = f_char_sum_with_ceiling(&(&a2 * &b2), 30_000).unwrap();
        assert_eq!(fab, fa * fb);
    }
}
