// SPDX-License-Identifier: Apache-2.0

//! The symbol `[w] = (g/w)₄ · (2h/g)` and the sequence `a_𝔫` built from it.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::cyclotomic::{factor_ideal, prime_generator, CycInt, IdealFactorization, PrimeFactor, PrincipalIdeal, ResidueField};
use crate::symbols::{kronecker, quartic_symbol_factored};
use crate::{Error, QuarterGauss, Result, SymbolValue};

/// `g = u + v`, `h = u + 2v`, so that `2g² − h² = Norm(w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GHPair {
    pub g: BigInt,
    pub h: BigInt,
}

fn require_odd(w: &CycInt) -> Result<()> {
    if w.is_odd() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{w:?} is even")))
    }
}

pub fn gh_of(w: &CycInt) -> Result<GHPair> {
    require_odd(w)?;
    let uv = w.uv();
    let g = &uv.u + &uv.v;
    let h = &uv.u + &uv.v * 2u32;
    // 2g = (a + b)² + (b + c)² + (c + d)² + (d − a)² > 0.
    assert!(g.is_positive(), "g must be positive for {w:?}");
    assert_eq!(&g * &g * 2u32 - &h * &h, uv.norm());
    Ok(GHPair { g, h })
}

/// `(−1/g) = 1`.
pub fn sat_8p(w: &CycInt) -> Result<bool> {
    let gh = gh_of(w)?;
    Ok(kronecker(&BigInt::from(-1), &gh.g) == SymbolValue::One)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bracket {
    pub total: SymbolValue,
    /// `(g/w)₄` in `Z[ζ8]`.
    pub part1: SymbolValue,
    /// `(2h/g)`.
    pub part2: SymbolValue,
}

/// `[w]`, with the factorization of `(w)` supplied by the caller.
pub fn bracket_factored(w: &CycInt, fact: &IdealFactorization) -> Result<Bracket> {
    let gh = gh_of(w)?;
    let part1 = quartic_symbol_factored(&CycInt::from_int(gh.g.clone()), fact)?;
    let part2 = kronecker(&(gh.h * 2u32), &gh.g);
    Ok(Bracket {
        total: part1 * part2,
        part1,
        part2,
    })
}

pub fn bracket(w: &CycInt) -> Result<Bracket> {
    require_odd(w)?;
    bracket_factored(w, &factor_ideal(w)?)
}

/// The four terms `[εᵏw]`, `k = 0..3`, sharing one factorization.
pub fn epsilon_terms(w: &CycInt, fact: &IdealFactorization) -> Result<[SymbolValue; 4]> {
    let mut out = [SymbolValue::Zero; 4];
    let mut x = w.clone();
    let eps = CycInt::epsilon();
    for slot in &mut out {
        *slot = bracket_factored(&x, fact)?.total;
        x = &x * &eps;
    }
    Ok(out)
}

/// `a_𝔫` evaluated on the generator `w` of `𝔫` with known factorization.
pub fn a_of_generator(w: &CycInt, fact: &IdealFactorization) -> Result<QuarterGauss> {
    if !w.is_odd() {
        return Ok(QuarterGauss::zero());
    }
    if !sat_8p(w)? {
        return Ok(QuarterGauss::zero());
    }
    Ok(epsilon_terms(w, fact)?.into_iter().map(QuarterGauss::quarter_of).sum())
}

pub fn a_ideal(n: &PrincipalIdeal) -> Result<QuarterGauss> {
    if !n.is_odd() {
        return Ok(QuarterGauss::zero());
    }
    a_of_generator(n.generator(), &n.factor()?)
}

/// Outcome of comparing `a_𝔭` with `e_p` on the four primes above `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub p: u64,
    pub e_p: i8,
    /// `a_𝔭` as an integer when real and integral, per prime above `p`.
    pub values: Vec<Option<i64>>,
    /// Whether the four `[εᵏw]` coincided on each prime that satisfies the
    /// 8-rank condition.
    pub terms_equal: bool,
}

impl AgreementReport {
    pub fn ok(&self) -> bool {
        self.terms_equal && self.values.iter().all(|v| *v == Some(i64::from(self.e_p)))
    }

    /// `got` summarises the disagreeing value for mismatch listings.
    pub fn got(&self) -> String {
        match self.values.iter().find(|v| **v != Some(i64::from(self.e_p))) {
            Some(Some(v)) => v.to_string(),
            Some(None) => "non-integral".into(),
            None => self.e_p.to_string(),
        }
    }
}

/// Evaluates `a_𝔭` on each prime of norm `p` and compares with `e_p`.
pub fn agreement_check(p: u64, e_p: i8) -> Result<AgreementReport> {
    if p % 8 != 1 {
        return Err(Error::InvalidArgument(format!("{p} is not 1 mod 8")));
    }
    let mut values = Vec::with_capacity(4);
    let mut terms_equal = true;
    for field in ResidueField::all_above(p)? {
        let w = prime_generator(&field)?;
        let fact = IdealFactorization {
            factors: vec![PrimeFactor {
                generator: w.clone(),
                exponent: 1,
                field: Some(field),
                p,
            }],
            unit: CycInt::one(),
        };
        let a = a_of_generator(&w, &fact)?;
        if sat_8p(&w)? {
            let t = epsilon_terms(&w, &fact)?;
            terms_equal &= t.iter().all(|x| *x == t[0]);
        }
        values.push(a.as_integer().and_then(|x| x.to_i64()));
    }
    Ok(AgreementReport {
        p,
        e_p,
        values,
        terms_equal,
    })
}
