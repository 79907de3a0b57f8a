// SPDX-License-Identifier: Apache-2.0

use crate::cyclotomic::{factor_ideal, Automorphism, CycInt, IdealFactorization};
use crate::symbols::{quad_symbol_factored, SymbolRing};
use crate::{Error, Result, SymbolValue};

/// An odd element together with the factorizations of `(w)` and `(w·τ(w))`.
#[derive(Debug, Clone)]
pub(crate) struct Modulus {
    pub w: CycInt,
    pub fact: IdealFactorization,
    pub norm_form: IdealFactorization,
}

impl Modulus {
    pub fn new(w: &CycInt) -> Result<Self> {
        if !w.is_odd() {
            return Err(Error::InvalidArgument(format!("{w:?} is even")));
        }
        Self::from_factorization(w.clone(), factor_ideal(w)?)
    }

    pub fn from_factorization(w: CycInt, fact: IdealFactorization) -> Result<Self> {
        let norm_form = fact.mul(&fact.galois(Automorphism::Tau)?);
        Ok(Modulus { w, fact, norm_form })
    }

    pub fn times(&self, other: &Modulus) -> Result<Modulus> {
        let w = &self.w * &other.w;
        let fact = self.fact.mul(&other.fact);
        let norm_form = self.norm_form.mul(&other.norm_form);
        Ok(Modulus { w, fact, norm_form })
    }
}

fn sigma_sigmatau(z: &CycInt) -> CycInt {
    &z.sigma() * &z.sigma_tau()
}

pub(crate) fn gamma1_m(w: &Modulus, z: &CycInt) -> Result<SymbolValue> {
    quad_symbol_factored(&z.sigma(), &w.fact, SymbolRing::M)
}

pub(crate) fn gamma3_m(w: &Modulus, z: &CycInt) -> Result<SymbolValue> {
    quad_symbol_factored(&sigma_sigmatau(z), &w.norm_form, SymbolRing::ROOT2)
}

pub(crate) fn gamma2_m(w: &Modulus, z: &CycInt) -> Result<SymbolValue> {
    quad_symbol_factored(&sigma_sigmatau(&(&w.w * z)), &w.norm_form, SymbolRing::ROOT2)
}

pub(crate) fn m_m(w: &Modulus) -> Result<SymbolValue> {
    gamma2_m(w, &CycInt::one())
}

/// `γ₁(w, z) = (σ(z)/w)₂` in `Z[ζ8]`.
pub fn gamma1(w: &CycInt, z: &CycInt) -> Result<SymbolValue> {
    require_odd(z)?;
    gamma1_m(&Modulus::new(w)?, z)
}

/// `γ₂(w, z) = (σ(wz)στ(wz) / wτ(w))₂` in `Z[√2]`.
pub fn gamma2(w: &CycInt, z: &CycInt) -> Result<SymbolValue> {
    require_odd(z)?;
    gamma2_m(&Modulus::new(w)?, z)
}

/// `γ₃(w, z) = (σ(z)στ(z) / wτ(w))₂` in `Z[√2]`.
pub fn gamma3(w: &CycInt, z: &CycInt) -> Result<SymbolValue> {
    require_odd(z)?;
    gamma3_m(&Modulus::new(w)?, z)
}

/// `m(w) = γ₂(w, 1)`.
pub fn m_of(w: &CycInt) -> Result<SymbolValue> {
    m_m(&Modulus::new(w)?)
}

fn require_odd(z: &CycInt) -> Result<()> {
    if z.is_odd() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{z:?} is even")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Twists {
    pub gamma1: SymbolValue,
    pub gamma2: SymbolValue,
    pub gamma3: SymbolValue,
    pub m: SymbolValue,
}

/// All three twists and `m(w)`; fails if `γ₂ ≠ m(w)·γ₃`.
pub fn twists(w: &CycInt, z: &CycInt) -> Result<Twists> {
    require_odd(z)?;
    let wm = Modulus::new(w)?;
    let t = Twists {
        gamma1: gamma1_m(&wm, z)?,
        gamma2: gamma2_m(&wm, z)?,
        gamma3: gamma3_m(&wm, z)?,
        m: m_m(&wm)?,
    };
    if t.gamma2 != t.m * t.gamma3 {
        return Err(Error::OracleDisagreement(format!("γ₂ ≠ m·γ₃ at ({w:?}, {z:?})")));
    }
    Ok(t)
}
