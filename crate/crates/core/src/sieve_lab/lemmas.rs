// SPDX-License-Identifier: Apache-2.0

//! Verification of the twisted multiplicativity of `[w]₁`, `[w]₂` and the
//! twists `γ₁`, `γ₂`, `γ₃`.
//!
//! Statements that hold up to a factor depending only on `w, z mod 2¹⁰` are
//! checked by drawing `w = ρ + 2¹⁰·δ` for a few fixed residues `ρ` and
//! requiring the ratio to be constant on every bucket.

use rayon::prelude::*;

use super::twists::{gamma1_m, gamma2_m, gamma3_m, m_m, Modulus};
use crate::cyclotomic::{euclid_gcd, CycInt, PrincipalIdeal};
use crate::lw::{a_ideal, a_of_generator, bracket_factored, sat_8p};
use crate::report::{BucketTally, SuiteReport};
use crate::sampling::{self, SuiteRng};
use crate::{Result, SymbolValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaSuite {
    Lmw1,
    Lmw2,
    Lpw1Sym,
    Lpw1Mult,
    Lpw2Sym,
    Lpw2Mult,
    Gamma3Sym,
}

impl LemmaSuite {
    pub const ALL: [LemmaSuite; 7] = [
        LemmaSuite::Lmw1,
        LemmaSuite::Lmw2,
        LemmaSuite::Lpw1Sym,
        LemmaSuite::Lpw1Mult,
        LemmaSuite::Lpw2Sym,
        LemmaSuite::Lpw2Mult,
        LemmaSuite::Gamma3Sym,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaSuite::Lmw1 => "LMW1",
            LemmaSuite::Lmw2 => "LMW2",
            LemmaSuite::Lpw1Sym => "LPW1_SYM",
            LemmaSuite::Lpw1Mult => "LPW1_MULT",
            LemmaSuite::Lpw2Sym => "LPW2_SYM",
            LemmaSuite::Lpw2Mult => "LPW2_MULT",
            LemmaSuite::Gamma3Sym => "GAMMA3_SYM",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }
}

/// Result of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outcome {
    Pass,
    Fail,
    Skip,
    /// A value that must agree with every other value in the same bucket.
    Bucket(SymbolValue),
}

/// Tallies outcomes in sample order; evaluation errors count as failures.
pub(crate) fn tally<K: Eq + std::hash::Hash + Copy>(report: &mut SuiteReport, results: Vec<(K, Result<Outcome>)>) {
    let mut buckets = BucketTally::new();
    for (key, r) in results {
        match r {
            Ok(Outcome::Pass) => {}
            Ok(Outcome::Skip) => report.skips += 1,
            Ok(Outcome::Bucket(v)) => report.check(buckets.record(key, v)),
            Ok(Outcome::Fail) | Err(_) => report.failures += 1,
        }
    }
    report.buckets = buckets.len() as u64;
}

const BUCKET_MODULUS: i64 = 1 << 10;
const REPS_PER_SIDE: usize = 3;

fn small_reps(rng: &mut SuiteRng, count: usize) -> Vec<[i64; 4]> {
    let mut reps: Vec<[i64; 4]> = Vec::new();
    while reps.len() < count {
        let c = sampling::odd(rng, 6).to_i64s().expect("small coordinates");
        if !reps.contains(&c) {
            reps.push(c);
        }
    }
    reps
}

/// Pairs `(w, z)` drawn as lifts of fixed residues mod `2¹⁰`.
fn bucketed_pairs(rng: &mut SuiteRng, trials: u64) -> Vec<((usize, usize), (CycInt, CycInt))> {
    let wr = small_reps(rng, REPS_PER_SIDE);
    let zr = small_reps(rng, REPS_PER_SIDE);
    (0..trials)
        .map(|_| {
            use rand::Rng;
            let (i, j) = (rng.gen_range(0..wr.len()), rng.gen_range(0..zr.len()));
            let w = sampling::lift(rng, wr[i], BUCKET_MODULUS, 1);
            let z = sampling::lift(rng, zr[j], BUCKET_MODULUS, 1);
            ((i, j), (w, z))
        })
        .collect()
}

fn ratio_outcome(num: SymbolValue, den: &[SymbolValue]) -> Outcome {
    let d: SymbolValue = den.iter().copied().product();
    match num.ratio(d) {
        Some(r) if !num.is_zero() => Outcome::Bucket(r),
        _ => Outcome::Skip,
    }
}

fn lmw1(w: &CycInt, z: &CycInt) -> Result<Outcome> {
    let (wm, zm) = (Modulus::new(w)?, Modulus::new(z)?);
    let wz = wm.times(&zm)?;
    let b_wz = bracket_factored(&wz.w, &wz.fact)?.part1;
    let coprime = euclid_gcd(w, &z.sigma_tau())?.is_unit();
    if !coprime {
        return Ok(if b_wz.is_zero() { Outcome::Pass } else { Outcome::Fail });
    }
    let b_w = bracket_factored(w, &wm.fact)?.part1;
    let b_z = bracket_factored(z, &zm.fact)?.part1;
    Ok(ratio_outcome(b_wz, &[b_w, b_z, gamma1_m(&wm, z)?]))
}

fn lmw2(w: &CycInt, z: &CycInt) -> Result<Outcome> {
    let (wm, zm) = (Modulus::new(w)?, Modulus::new(z)?);
    let wz = wm.times(&zm)?;
    let b_wz = bracket_factored(&wz.w, &wz.fact)?.part2;
    let b_w = bracket_factored(w, &wm.fact)?.part2;
    let b_z = bracket_factored(z, &zm.fact)?.part2;
    Ok(ratio_outcome(b_wz, &[b_w, b_z, gamma2_m(&wm, z)?]))
}

fn symmetric(w: &CycInt, z: &CycInt, third: bool) -> Result<Outcome> {
    let (wm, zm) = (Modulus::new(w)?, Modulus::new(z)?);
    let (a, b) = if third {
        (gamma3_m(&wm, z)?, gamma3_m(&zm, w)?)
    } else {
        (gamma1_m(&wm, z)?, gamma1_m(&zm, w)?)
    };
    Ok(ratio_outcome(a, &[b]))
}

fn exact(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn lpw1_mult(xs: &[CycInt; 3]) -> Result<Outcome> {
    let [w, z1, z2] = xs;
    let wm = Modulus::new(w)?;
    let left = gamma1_m(&wm, &(z1 * z2))? == gamma1_m(&wm, z1)? * gamma1_m(&wm, z2)?;
    // Multiplicativity in the modulus: (w·z1, z2) against (w, z2)(z1, z2).
    let z1m = Modulus::new(z1)?;
    let right = gamma1_m(&wm.times(&z1m)?, z2)? == gamma1_m(&wm, z2)? * gamma1_m(&z1m, z2)?;
    Ok(exact(left && right))
}

fn lpw2_sym(xs: &[CycInt; 3]) -> Result<Outcome> {
    let [w, z, _] = xs;
    let (wm, zm) = (Modulus::new(w)?, Modulus::new(z)?);
    Ok(exact(gamma2_m(&wm, z)? * gamma2_m(&zm, w)? == m_m(&wm.times(&zm)?)?))
}

fn lpw2_mult(xs: &[CycInt; 3]) -> Result<Outcome> {
    let [w, z1, z2] = xs;
    let wm = Modulus::new(w)?;
    let lhs = gamma2_m(&wm, &(z1 * z2))?;
    Ok(exact(lhs == m_m(&wm)? * gamma2_m(&wm, z1)? * gamma2_m(&wm, z2)?))
}

/// Runs one lemma suite; the report counts failures, skipped samples with a
/// vanishing factor, and the number of buckets.
pub fn lemma_suite(suite: LemmaSuite, trials: u64, seed: u64) -> SuiteReport {
    let mut rng = sampling::rng(seed);
    let mut report = SuiteReport::new(suite.name(), trials);
    match suite {
        LemmaSuite::Lmw1 | LemmaSuite::Lmw2 | LemmaSuite::Lpw1Sym | LemmaSuite::Gamma3Sym => {
            let samples = bucketed_pairs(&mut rng, trials);
            let results = samples
                .par_iter()
                .map(|(key, (w, z))| {
                    let r = match suite {
                        LemmaSuite::Lmw1 => lmw1(w, z),
                        LemmaSuite::Lmw2 => lmw2(w, z),
                        LemmaSuite::Lpw1Sym => symmetric(w, z, false),
                        _ => symmetric(w, z, true),
                    };
                    (*key, r)
                })
                .collect();
            tally(&mut report, results);
        }
        LemmaSuite::Lpw1Mult | LemmaSuite::Lpw2Sym | LemmaSuite::Lpw2Mult => {
            let samples: Vec<[CycInt; 3]> = (0..trials)
                .map(|_| [0; 3].map(|_| sampling::odd(&mut rng, 6)))
                .collect();
            let results = samples
                .par_iter()
                .map(|xs| {
                    let r = match suite {
                        LemmaSuite::Lpw1Mult => lpw1_mult(xs),
                        LemmaSuite::Lpw2Sym => lpw2_sym(xs),
                        _ => lpw2_mult(xs),
                    };
                    ((), r)
                })
                .collect();
            tally(&mut report, results);
        }
    }
    report
}

/// Generator-independence checks for `[w]` and `a_𝔫`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSuite {
    /// `[ε⁴w] = [w]`.
    EpsilonFourth,
    /// `[ζ8·w] = [w]`.
    Zeta,
    /// `(−1/g)` is constant on `ζ8^j·ε^k·w`, `j < 8`, `k < 4`.
    EightRankOrbit,
    /// `a_𝔫` agrees on two random generators of `𝔫`.
    AIdeal,
}

impl UnitSuite {
    pub const ALL: [UnitSuite; 4] = [UnitSuite::EpsilonFourth, UnitSuite::Zeta, UnitSuite::EightRankOrbit, UnitSuite::AIdeal];

    pub fn name(self) -> &'static str {
        match self {
            UnitSuite::EpsilonFourth => "UNIT_ACTION",
            UnitSuite::Zeta => "ZETA_INVARIANCE",
            UnitSuite::EightRankOrbit => "L8P_ORBIT",
            UnitSuite::AIdeal => "A_GENERATOR",
        }
    }
}

fn unit_trial(suite: UnitSuite, w: &CycInt, unit: (i64, i64)) -> Result<Outcome> {
    let wm = Modulus::new(w)?;
    let base = bracket_factored(w, &wm.fact)?.total;
    Ok(match suite {
        UnitSuite::EpsilonFourth => exact(bracket_factored(&w.times_epsilon_pow(4), &wm.fact)?.total == base),
        UnitSuite::Zeta => exact(bracket_factored(&w.times_zeta_pow(1), &wm.fact)?.total == base),
        UnitSuite::EightRankOrbit => {
            let s = sat_8p(w)?;
            let mut ok = true;
            for j in 0..8 {
                for k in 0..4 {
                    ok &= sat_8p(&w.times_zeta_pow(j).times_epsilon_pow(k))? == s;
                }
            }
            exact(ok)
        }
        UnitSuite::AIdeal => {
            let other = w.times_zeta_pow(unit.0).times_epsilon_pow(unit.1);
            let a = a_of_generator(&other, &wm.fact)?;
            exact(a == a_ideal(&PrincipalIdeal::new(w)?)?)
        }
    })
}

pub fn unit_action_suite(suite: UnitSuite, trials: u64, seed: u64) -> SuiteReport {
    use rand::Rng;
    let mut rng = sampling::rng(seed);
    let mut report = SuiteReport::new(suite.name(), trials);
    let samples: Vec<(CycInt, (i64, i64))> = (0..trials)
        .map(|_| (sampling::odd(&mut rng, 8), (rng.gen_range(0..8), rng.gen_range(-6..=6))))
        .collect();
    let results = samples.par_iter().map(|(w, u)| ((), unit_trial(suite, w, *u))).collect();
    tally(&mut report, results);
    report
}
