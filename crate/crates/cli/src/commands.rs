// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use rayon::prelude::*;
use sedecim::arith::primes_up_to;
use sedecim::class_oracle::{class_number_forms, ep_from_h, hasse8_check, ClassCache};
use sedecim::cyclotomic::PrincipalIdeal;
use sedecim::domain::domain_suite;
use sedecim::lw::agreement_check;
use sedecim::report::SuiteReport;
use sedecim::sieve_lab::{
    identity_suite, lemma_suite, sum_s, type1_a, type2_b, unit_action_suite, IdentitySuite, LemmaSuite, Plugin, SMode,
    UnitSuite,
};
use sedecim::symbols::{reciprocity_probe, ReciprocityLaw};
use sedecim::CycInt;

use crate::output::{emit, sum_report};
use crate::{Failure, ModeArg, PluginArg, SumCommand};

pub const DENSITY_HEADER: &str = "X,primes,count_1mod8,count8,count16,ratio16,S_X";

fn open_cache(path: Option<&Path>) -> Result<ClassCache, Failure> {
    Ok(match path {
        Some(p) => ClassCache::open(p)?,
        None => ClassCache::in_memory(),
    })
}

/// `10⁴, 10⁵, …` up to `x_max`, then `x_max` itself.
fn checkpoints(x_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut x = 10_000u64;
    while x <= x_max {
        out.push(x);
        x = match x.checked_mul(10) {
            Some(next) => next,
            None => break,
        };
    }
    if out.last() != Some(&x_max) {
        out.push(x_max);
    }
    out
}

pub fn density(x_max: u64, cache: Option<&Path>, out: Option<&Path>) -> Result<(), Failure> {
    if x_max < 100 {
        return Err(Failure::Usage(format!("--x-max must be at least 100, got {x_max}")));
    }
    let mut cache = open_cache(cache)?;
    cache.ensure(x_max)?;
    let primes = primes_up_to(x_max);
    let mut text = String::from(DENSITY_HEADER);
    text.push('\n');
    let (mut n, mut c1, mut c8, mut c16, mut s) = (0u64, 0u64, 0u64, 0u64, 0i64);
    let mut it = primes.iter().peekable();
    for x in checkpoints(x_max) {
        while let Some(&&p) = it.peek().filter(|&&&p| p <= x) {
            it.next();
            n += 1;
            if p == 2 {
                continue;
            }
            let h = cache.get(p).ok_or_else(|| Failure::Usage(format!("cache does not cover {p}")))?;
            c1 += u64::from(p % 8 == 1);
            c8 += u64::from(h % 8 == 0);
            c16 += u64::from(h % 16 == 0);
            if p % 8 == 1 {
                s += i64::from(ep_from_h(h));
            }
        }
        let ratio = if n == 0 { 0.0 } else { c16 as f64 / n as f64 };
        text.push_str(&format!("{x},{n},{c1},{c8},{c16},{ratio:.6},{s}\n"));
    }
    emit(&text, out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub p: u64,
    pub expected: String,
    pub got: String,
}

fn check_prime(p: u64, h: u64) -> Vec<Mismatch> {
    let mut bad = Vec::new();
    let mut push = |expected: String, got: String| bad.push(Mismatch { p, expected, got });
    let one_mod_8 = p % 8 == 1;
    if (h % 4 == 0) != one_mod_8 {
        push(format!("4|h={one_mod_8}"), format!("4|h={}", h % 4 == 0));
    }
    if !one_mod_8 {
        return bad;
    }
    match hasse8_check(p) {
        Ok(hasse) if hasse != (h % 8 == 0) => push(format!("hasse8={}", h % 8 == 0), format!("hasse8={hasse}")),
        Ok(_) => {}
        Err(e) => push("hasse8=consistent".into(), e.to_string()),
    }
    let e_p = ep_from_h(h);
    match agreement_check(p, e_p) {
        Ok(r) if r.ok() => {}
        Ok(r) => push(e_p.to_string(), r.got()),
        Err(e) => push(e_p.to_string(), e.to_string()),
    }
    bad
}

pub fn criterion(p_max: u64, cache: Option<&Path>) -> Result<(), Failure> {
    if p_max < 17 {
        return Err(Failure::Usage(format!("--p-max must be at least 17, got {p_max}")));
    }
    let mut cache = open_cache(cache)?;
    cache.ensure(p_max)?;
    let primes: Vec<(u64, u64)> = primes_up_to(p_max)
        .into_iter()
        .filter(|&p| p > 2)
        .map(|p| cache.get(p).map(|h| (p, h)).ok_or_else(|| Failure::Usage(format!("cache does not cover {p}"))))
        .collect::<Result<_, _>>()?;
    let mismatches: Vec<Mismatch> = primes.par_iter().flat_map_iter(|&(p, h)| check_prime(p, h)).collect();
    let checked = primes.iter().filter(|(p, _)| p % 8 == 1).count();
    let mut text = String::new();
    for m in &mismatches {
        text.push_str(&format!("{},{},{}\n", m.p, m.expected, m.got));
    }
    text.push_str(&format!("primes_checked={checked}\nmismatches={}\n", mismatches.len()));
    emit(&text, None)?;
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

pub fn sums(kind: SumCommand) -> Result<(), Failure> {
    let (report, output) = match kind {
        SumCommand::Type1 { x, d, output } => {
            if x == 0 {
                return Err(Failure::Usage("--x must be positive".into()));
            }
            let gen: CycInt = d.parse()?;
            let mut report = type1_a(x, &PrincipalIdeal::new(&gen)?)?;
            report.d = Some(gen.to_string());
            (report, output)
        }
        SumCommand::Type2 { m, n, plugin, seed, output } => {
            let plugin = match plugin {
                PluginArg::Ones => Plugin::Ones,
                PluginArg::OmegaSign => Plugin::OmegaSign,
                PluginArg::Seeded => Plugin::Seeded(seed),
            };
            (type2_b(m, n, plugin)?, output)
        }
        SumCommand::S { x, mode, cache, output } => {
            let mut cache = open_cache(cache.as_deref())?;
            let mode = match mode {
                ModeArg::Prime => SMode::Prime,
                ModeArg::Ideal => SMode::Ideal,
            };
            (sum_s(x, mode, &mut cache)?, output)
        }
    };
    emit(&sum_report(&report, output.format)?, output.out.as_deref())
}

/// Every suite in a `verify` group, in output order.
pub fn suite_group(name: &str, trials: u64, seed: u64) -> Option<Vec<SuiteReport>> {
    let symbols = || {
        [ReciprocityLaw::QuadM, ReciprocityLaw::QuarticM, ReciprocityLaw::QuarticPeriod]
            .into_iter()
            .map(|l| reciprocity_probe(l, trials, seed))
            .collect::<Vec<_>>()
    };
    let lemmas = || {
        let mut v: Vec<SuiteReport> = LemmaSuite::ALL.into_iter().map(|s| lemma_suite(s, trials, seed)).collect();
        v.extend(UnitSuite::ALL.into_iter().map(|s| unit_action_suite(s, trials, seed)));
        v
    };
    let identities = || IdentitySuite::ALL.into_iter().map(|s| identity_suite(s, trials, seed)).collect::<Vec<_>>();
    Some(match name {
        "symbols" => symbols(),
        "lemmas" => lemmas(),
        "identities" => identities(),
        "domain" => domain_suite(trials, seed),
        "all" => {
            let mut v = symbols();
            v.extend(lemmas());
            v.extend(identities());
            v.extend(domain_suite(trials, seed));
            v
        }
        _ => return None,
    })
}

pub fn verify(suite: &str, trials: u64, seed: u64) -> Result<(), Failure> {
    if trials == 0 {
        return Err(Failure::Usage("--trials must be positive".into()));
    }
    let reports = suite_group(suite, trials, seed).ok_or_else(|| {
        Failure::Usage(format!("unknown suite {suite:?}; expected symbols, lemmas, identities, domain or all"))
    })?;
    let mut text = String::from("name,trials,failures,skips\n");
    for r in &reports {
        text.push_str(&r.csv_line());
        text.push('\n');
    }
    emit(&text, None)?;
    if reports.iter().all(SuiteReport::passed) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

pub fn class_number(p: u64) -> Result<(), Failure> {
    let h = class_number_forms(p)?;
    emit(&format!("{h}\n"), None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checkpoint_grid() {
        assert_eq!(checkpoints(100), vec![100]);
        assert_eq!(checkpoints(10_000), vec![10_000]);
        assert_eq!(checkpoints(1_000_000), vec![10_000, 100_000, 1_000_000]);
        assert_eq!(checkpoints(250_000), vec![10_000, 100_000, 250_000]);
    }

    #[test]
    fn small_primes_have_no_mismatches() {
        for (p, h) in [(17, 4), (41, 8), (73, 4), (257, 16), (3, 1), (5, 2), (7, 1)] {
            assert!(check_prime(p, h).is_empty(), "{p}");
        }
        assert_eq!(check_prime(17, 8).len(), 2);
    }
}
