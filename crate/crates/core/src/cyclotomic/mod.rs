// SPDX-License-Identifier: Apache-2.0

//! Exact arithmetic in `Z[ζ8]`.

mod element;
mod euclid;
mod factor;
mod field;
mod subring;

pub use element::{Automorphism, CycInt, UVPair};
pub use euclid::{coprime, div_rem, euclid_gcd, extended_gcd, remainder_norms};
pub use factor::{factor_ideal, prime_generator, IdealFactorization, PrimeFactor, PrincipalIdeal};
pub use field::{FieldModulus, Fq, ResidueField};
pub use subring::{Subring, SubringElem};

/// Resultant of `a + bx + cx² + dx³` and `x⁴ + 1`, equal to the norm.
pub fn resultant_norm(w: &CycInt) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    // Product over the four roots of x⁴ + 1 equals the determinant of the
    // multiplication-by-w matrix in the basis 1, ζ, ζ², ζ³.
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(4);
    let mut col = w.clone();
    for _ in 0..4 {
        m.push(col.coords().to_vec());
        col = col.times_zeta_pow(1);
    }
    determinant(m)
}

fn determinant(mut m: Vec<Vec<num_bigint::BigInt>>) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    // Bareiss fraction-free elimination.
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant_norm(&CycInt::from_i64s([1, 2, 0, 0])), 17.into());
        assert_eq!(resultant_norm(&CycInt::epsilon()), 1.into());
        assert_eq!(resultant_norm(&CycInt::from_int(3)), 81.into());
    }
}
