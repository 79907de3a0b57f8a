// SPDX-License-Identifier: Apache-2.0

//! Exact evaluation of `S(X)`, the type I sums `A(X, 𝔡)` and the type II
//! sums `B(M, N)`, and the verification suites for the twisted
//! multiplicativity of `[w]`.

mod char_sum;
mod identities;
mod lemmas;
mod twists;

pub use char_sum::{f_char_sum, f_char_sum_with_ceiling, DEFAULT_F_CEILING};
pub use identities::{identity_suite, FactorizationRecord, IdentitySuite};
pub use lemmas::{lemma_suite, unit_action_suite, LemmaSuite, UnitSuite};
pub use twists::{gamma1, gamma2, gamma3, m_of, twists, Twists};

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{big_omega, primes_up_to};
use crate::class_oracle::{ep_from_h, ClassCache};
use crate::cyclotomic::{IdealFactorization, PrincipalIdeal};
use crate::domain::enumerate_ideals;
use crate::lw::a_of_generator;
use crate::{sampling, Error, QuarterGauss, Result};

/// `Λ(𝔫) = log Norm 𝔭` if `𝔫 = 𝔭^l` with `l ≥ 1`, else 0.
pub fn von_mangoldt(n: &PrincipalIdeal) -> Result<f64> {
    let fact = n.factor()?;
    Ok(match fact.as_prime_power() {
        Some((f, _)) => (f.prime_norm() as f64).ln(),
        None => 0.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SumKind {
    SPrime,
    SIdeal,
    Type1,
    Type2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SMode {
    Prime,
    Ideal,
}

/// Coefficients `α_𝔪`, `β_𝔫` of a type II sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plugin {
    Ones,
    /// `(−1)^Ω(Norm 𝔪)`.
    OmegaSign,
    /// Independent `±1` drawn from a seeded stream, `α` before `β`.
    Seeded(u64),
}

impl Plugin {
    pub fn id(&self) -> String {
        match self {
            Plugin::Ones => "ONES".into(),
            Plugin::OmegaSign => "OMEGA_SIGN".into(),
            Plugin::Seeded(s) => format!("SEEDED({s})"),
        }
    }
}

/// `Σ a_𝔭` over the prime powers `𝔭^l` with a given `(Norm 𝔭, l)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimePowerTerm {
    pub prime_norm: u128,
    pub power: u32,
    pub sum: QuarterGauss,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumReport {
    pub kind: SumKind,
    pub x: Option<u64>,
    pub m: Option<u64>,
    pub n: Option<u64>,
    /// Generator of `𝔡` as `a,b,c,d`.
    pub d: Option<String>,
    pub plugin: Option<String>,
    pub seed: Option<u64>,
    /// Exact value; absent for the log-weighted ideal sum.
    pub value: Option<QuarterGauss>,
    /// `(re, im)` of the log-weighted ideal sum, 6 decimals.
    pub weighted: Option<(String, String)>,
    pub prime_power_terms: Vec<PrimePowerTerm>,
    pub term_count: u64,
    /// `|value| / term_count` to 6 decimals (`0` for an empty sum).
    pub normalized: String,
    /// The `±1` coefficient stream of a seeded plugin, `α` then `β`.
    pub stream: Option<String>,
}

impl SumReport {
    fn new(kind: SumKind) -> Self {
        SumReport {
            kind,
            x: None,
            m: None,
            n: None,
            d: None,
            plugin: None,
            seed: None,
            value: None,
            weighted: None,
            prime_power_terms: Vec::new(),
            term_count: 0,
            normalized: format!("{:.6}", 0.0),
            stream: None,
        }
    }

    fn set_value(&mut self, v: QuarterGauss) {
        self.normalized = normalized(v.magnitude(), self.term_count);
        self.value = Some(v);
    }
}

fn normalized(mag: f64, count: u64) -> String {
    format!("{:.6}", if count == 0 { 0.0 } else { mag / count as f64 })
}

/// Odd ideals of norm `≤ x` with their factorizations.
fn odd_ideals(x: u64) -> Result<Vec<(PrincipalIdeal, IdealFactorization)>> {
    enumerate_ideals(x, true)
        .par_iter()
        .map(|p| {
            let ideal = PrincipalIdeal::from_canonical(p.to_cyc());
            let fact = ideal.factor()?;
            Ok((ideal, fact))
        })
        .collect()
}

/// `S(X) = Σ_{p ≤ X} e_p` (prime mode) or `Σ_{Norm 𝔫 ≤ X} a_𝔫 Λ(𝔫)`.
pub fn sum_s(x: u64, mode: SMode, cache: &mut ClassCache) -> Result<SumReport> {
    if x < 2 {
        return Err(Error::InvalidArgument("X must be at least 2".into()));
    }
    match mode {
        SMode::Prime => {
            cache.ensure(x)?;
            let mut report = SumReport::new(SumKind::SPrime);
            report.x = Some(x);
            let primes = primes_up_to(x);
            report.term_count = primes.len() as u64;
            let s: i64 = primes
                .iter()
                .filter(|&&p| p % 8 == 1)
                .map(|&p| i64::from(ep_from_h(cache.get(p).expect("cache covers X"))))
                .sum();
            report.set_value(QuarterGauss::from_integer(s));
            Ok(report)
        }
        SMode::Ideal => sum_s_ideal(x),
    }
}

fn sum_s_ideal(x: u64) -> Result<SumReport> {
    let mut report = SumReport::new(SumKind::SIdeal);
    report.x = Some(x);
    let terms: Vec<Option<(u128, u32, QuarterGauss)>> = odd_ideals(x)?
        .par_iter()
        .map(|(ideal, fact)| {
            let Some((f, l)) = fact.as_prime_power() else { return Ok(None) };
            let a = a_of_generator(ideal.generator(), fact)?;
            Ok(Some((f.prime_norm(), l, a)))
        })
        .collect::<Result<_>>()?;
    let mut groups: BTreeMap<(u128, u32), QuarterGauss> = BTreeMap::new();
    for (q, l, a) in terms.into_iter().flatten() {
        report.term_count += 1;
        *groups.entry((q, l)).or_default() += a;
    }
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for (&(q, l), sum) in &groups {
        let log = round_sig((q as f64).ln(), 15);
        re += sum.re.to_f64().unwrap_or(f64::NAN) / 4.0 * log;
        im += sum.im.to_f64().unwrap_or(f64::NAN) / 4.0 * log;
        report.prime_power_terms.push(PrimePowerTerm {
            prime_norm: q,
            power: l,
            sum: sum.clone(),
        });
    }
    report.weighted = Some((format!("{re:.6}"), format!("{im:.6}")));
    report.normalized = normalized(re.hypot(im), report.term_count);
    Ok(report)
}

fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let scale = 10f64.powi(digits - 1 - x.abs().log10().floor() as i32);
    (x * scale).round() / scale
}

/// `A(X, 𝔡) = Σ a_𝔫` over ideals of norm `≤ X` divisible by `𝔡`.
pub fn type1_a(x: u64, d: &PrincipalIdeal) -> Result<SumReport> {
    let mut report = SumReport::new(SumKind::Type1);
    report.x = Some(x);
    report.d = Some(d.generator().to_string());
    let dn = d.norm().clone();
    let values: Vec<QuarterGauss> = odd_ideals(x)?
        .par_iter()
        .filter(|(ideal, _)| (ideal.norm() % &dn).to_u64() == Some(0) && d.divides(ideal))
        .map(|(ideal, fact)| a_of_generator(ideal.generator(), fact))
        .collect::<Result<_>>()?;
    report.term_count = values.len() as u64;
    report.set_value(values.into_iter().sum());
    Ok(report)
}

fn coefficients(plugin: Plugin, ideals: &[(PrincipalIdeal, IdealFactorization)], rng: Option<&mut sampling::SuiteRng>) -> Vec<i64> {
    match plugin {
        Plugin::Ones => vec![1; ideals.len()],
        Plugin::OmegaSign => ideals
            .iter()
            .map(|(i, _)| if big_omega(i.norm()) % 2 == 0 { 1 } else { -1 })
            .collect(),
        Plugin::Seeded(_) => {
            let rng = rng.expect("seeded plugin has a stream");
            ideals.iter().map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect()
        }
    }
}

/// `B(M, N) = Σ_{Norm 𝔪 ≤ M} Σ_{Norm 𝔫 ≤ N} α_𝔪 β_𝔫 a_{𝔪𝔫}`; even ideals
/// contribute nothing since `a` vanishes on them.
pub fn type2_b(m: u64, n: u64, plugin: Plugin) -> Result<SumReport> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("M and N must be positive".into()));
    }
    let mut report = SumReport::new(SumKind::Type2);
    report.m = Some(m);
    report.n = Some(n);
    report.plugin = Some(plugin.id());
    let all = odd_ideals(m.max(n))?;
    let small: Vec<_> = all.iter().filter(|(i, _)| i.norm() <= &m.into()).cloned().collect();
    let large: Vec<_> = all.iter().filter(|(i, _)| i.norm() <= &n.into()).cloned().collect();
    let mut rng = match plugin {
        Plugin::Seeded(s) => {
            report.seed = Some(s);
            Some(sampling::rng(s))
        }
        _ => None,
    };
    let alpha = coefficients(plugin, &small, rng.as_mut());
    let beta = coefficients(plugin, &large, rng.as_mut());
    if rng.is_some() {
        let sign = |v: &i64| if *v > 0 { '+' } else { '-' };
        let a: String = alpha.iter().map(sign).collect();
        let b: String = beta.iter().map(sign).collect();
        report.stream = Some(format!("{a}|{b}"));
    }
    let rows: Vec<QuarterGauss> = small
        .par_iter()
        .zip(alpha.par_iter())
        .map(|((wi, wf), &al)| {
            let mut row = QuarterGauss::zero();
            for ((zi, zf), &be) in large.iter().zip(&beta) {
                let prod = wi.generator() * zi.generator();
                let a = a_of_generator(&prod, &wf.mul(zf))?;
                row += a.scale(al * be);
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    report.term_count = (small.len() * large.len()) as u64;
    report.set_value(rows.into_iter().sum());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CycInt;

    fn ideal(c: [i64; 4]) -> PrincipalIdeal {
        PrincipalIdeal::new(&CycInt::from_i64s(c)).unwrap()
    }

    #[test]
    fn von_mangoldt_examples() {
        assert!((von_mangoldt(&ideal([1, 2, 0, 0])).unwrap() - 17f64.ln()).abs() < 1e-12);
        assert_eq!(von_mangoldt(&PrincipalIdeal::unit()).unwrap(), 0.0);
        assert_eq!(von_mangoldt(&ideal([3, 0, 0, 0])).unwrap(), 0.0);
        assert!((von_mangoldt(&ideal([9, 0, 0, 0])).unwrap()).abs() < 1e-12);
        let p2 = CycInt::from_i64s([1, 2, 0, 0]).pow(2);
        assert!((von_mangoldt(&PrincipalIdeal::new(&p2).unwrap()).unwrap() - 17f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn s_examples() {
        let mut cache = ClassCache::in_memory();
        let s = |x, c: &mut ClassCache| sum_s(x, SMode::Prime, c).unwrap().value.unwrap();
        assert_eq!(s(100, &mut cache), QuarterGauss::from_integer(-1));
        assert_eq!(s(16, &mut cache), QuarterGauss::from_integer(0));
        let r = sum_s(8, SMode::Ideal, &mut cache).unwrap();
        assert_eq!(r.weighted, Some(("0.000000".into(), "0.000000".into())));
        assert!(r.prime_power_terms.is_empty());
    }

    #[test]
    fn type1_examples() {
        let one = PrincipalIdeal::unit();
        assert_eq!(type1_a(8, &one).unwrap().value.unwrap(), QuarterGauss::from_integer(1));
        let a = type1_a(80, &ideal([3, 0, 0, 0])).unwrap();
        assert_eq!((a.value.unwrap(), a.term_count), (QuarterGauss::zero(), 0));
        assert!(type1_a(17, &ideal([1, 2, 0, 0])).unwrap().value.unwrap().is_zero());
    }

    #[test]
    fn type1_is_cumulative() {
        let one = PrincipalIdeal::unit();
        let ideals = odd_ideals(400).unwrap();
        let mut norms: Vec<u64> = ideals.iter().map(|(i, _)| i.norm().to_u64().unwrap()).collect();
        norms.dedup();
        for x in norms {
            let acc: QuarterGauss = ideals
                .iter()
                .filter(|(i, _)| i.norm() <= &x.into())
                .map(|(i, f)| a_of_generator(i.generator(), f).unwrap())
                .sum();
            assert_eq!(type1_a(x, &one).unwrap().value.unwrap(), acc, "X = {x}");
        }
    }

    #[test]
    fn type2_examples() {
        for plugin in [Plugin::Ones, Plugin::OmegaSign] {
            assert_eq!(type2_b(8, 8, plugin).unwrap().value.unwrap(), QuarterGauss::from_integer(1));
        }
        assert_eq!(type2_b(1, 1, Plugin::Ones).unwrap().value.unwrap(), QuarterGauss::from_integer(1));
        let r1 = type2_b(60, 40, Plugin::Seeded(9)).unwrap();
        let r2 = type2_b(60, 40, Plugin::Seeded(9)).unwrap();
        assert_eq!(r1, r2);
        assert!(r1.stream.is_some());
    }

    #[test]
    fn type2_with_unit_factor_is_type1() {
        // B(1, N) with unit coefficients sums a_𝔫 over Norm 𝔫 ≤ N.
        let b = type2_b(1, 300, Plugin::Ones).unwrap().value.unwrap();
        let a = type1_a(300, &PrincipalIdeal::unit()).unwrap().value.unwrap();
        assert_eq!(a, b);
    }
}
