// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::element::CycInt;
use crate::{Error, Result};

fn round_ties_even(n: &BigInt, d: &BigInt) -> BigInt {
    let (fl, r) = n.div_mod_floor(d);
    let twice: BigInt = &r * 2u32;
    match twice.cmp(d) {
        std::cmp::Ordering::Greater => fl + 1,
        std::cmp::Ordering::Equal if fl.is_odd() => fl + 1,
        _ => fl,
    }
}

/// One division step `x = q·y + r` with `Norm(r) < Norm(y)`.
pub fn div_rem(x: &CycInt, y: &CycInt) -> Result<(CycInt, CycInt)> {
    if y.is_zero() {
        return Err(Error::InvalidArgument("division by zero".into()));
    }
    let n = y.norm();
    let numer = x * &y.conjugate_product();
    let q0 = CycInt::from_coords(numer.coords().clone().map(|c| round_ties_even(&c, &n)));
    let r0 = x - &(&q0 * y);
    if r0.norm() < n {
        return Ok((q0, r0));
    }
    let mut best: Option<(BigInt, CycInt, CycInt)> = None;
    for code in 0..81i64 {
        let offs = [code % 3 - 1, code / 3 % 3 - 1, code / 9 % 3 - 1, code / 27 - 1];
        let q = &q0 + &CycInt::from_i64s(offs);
        let r = x - &(&q * y);
        let rn = r.norm();
        if best.as_ref().is_none_or(|(bn, _, _)| rn < *bn) {
            best = Some((rn, q, r));
        }
    }
    match best {
        Some((rn, q, r)) if rn < n => Ok((q, r)),
        _ => Err(Error::EuclidStalled),
    }
}

/// Generator of the ideal `(x, y)`.
pub fn euclid_gcd(x: &CycInt, y: &CycInt) -> Result<CycInt> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::InvalidArgument("gcd(0, 0) is undefined".into()));
    }
    let (mut a, mut b) = (x.clone(), y.clone());
    while !b.is_zero() {
        let (_, r) = div_rem(&a, &b)?;
        a = b;
        b = r;
    }
    Ok(a)
}

/// `(g, s, t)` with `s·x + t·y = g` and `(g) = (x, y)`.
pub fn extended_gcd(x: &CycInt, y: &CycInt) -> Result<(CycInt, CycInt, CycInt)> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::InvalidArgument("gcd(0, 0) is undefined".into()));
    }
    let (mut r0, mut r1) = (x.clone(), y.clone());
    let (mut s0, mut s1) = (CycInt::one(), CycInt::zero());
    let (mut t0, mut t1) = (CycInt::zero(), CycInt::one());
    while !r1.is_zero() {
        let (q, r) = div_rem(&r0, &r1)?;
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    Ok((r0, s0, t0))
}

/// Norms of the successive remainders of a Euclidean run, starting with `Norm(y)`.
pub fn remainder_norms(x: &CycInt, y: &CycInt) -> Result<Vec<BigInt>> {
    let (mut a, mut b) = (x.clone(), y.clone());
    let mut out = Vec::new();
    while !b.is_zero() {
        out.push(b.norm());
        let (_, r) = div_rem(&a, &b)?;
        a = b;
        b = r;
    }
    Ok(out)
}

/// Whether `x` and `y` generate the unit ideal.
pub fn coprime(x: &CycInt, y: &CycInt) -> Result<bool> {
    Ok(euclid_gcd(x, y)?.norm().is_one())
}
