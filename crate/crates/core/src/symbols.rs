// SPDX-License-Identifier: Apache-2.0

//! Quadratic and quartic residue symbols, computed by Euler's criterion in
//! the residue fields of `Z[ζ8]`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::arith::pow_mod;
use crate::cyclotomic::{factor_ideal, Automorphism, CycInt, FieldModulus, IdealFactorization, ResidueField, Subring};
use crate::report::{BucketTally, SuiteReport};
use crate::sampling;
use crate::{Error, Result, SymbolValue};

/// Kronecker symbol `(a/n)` for machine integers.
pub fn kronecker_i64(a: i64, n: i64) -> SymbolValue {
    let (mut a, mut n) = (i128::from(a), i128::from(n));
    if n == 0 {
        return SymbolValue::from_sign((a.abs() == 1) as i32);
    }
    let mut s = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            s = -s;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return SymbolValue::Zero;
        }
        n >>= twos;
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            s = -s;
        }
    }
    // Jacobi symbol with odd positive n.
    a = a.rem_euclid(n);
    while a != 0 {
        let t = a.trailing_zeros();
        a >>= t;
        if t % 2 == 1 && matches!(n % 8, 3 | 5) {
            s = -s;
        }
        if a % 4 == 3 && n % 4 == 3 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    SymbolValue::from_sign(if n == 1 { s } else { 0 })
}

/// Kronecker symbol `(a/n)`.
pub fn kronecker(a: &BigInt, n: &BigInt) -> SymbolValue {
    if let (Some(x), Some(y)) = (a.to_i64(), n.to_i64()) {
        return kronecker_i64(x, y);
    }
    if n.is_zero() {
        return SymbolValue::from_sign((a.abs().is_one()) as i32);
    }
    let mut s = 1;
    let mut n = n.clone();
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            s = -s;
        }
    }
    let twos = n.trailing_zeros().unwrap_or(0);
    if twos > 0 {
        if a.is_even() {
            return SymbolValue::Zero;
        }
        n >>= twos;
        let a8 = a.mod_floor(&BigInt::from(8)).to_u32().unwrap_or(0);
        if twos % 2 == 1 && matches!(a8, 3 | 5) {
            s = -s;
        }
    }
    let mut a = a.mod_floor(&n);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        let t = a.trailing_zeros().unwrap_or(0);
        a >>= t;
        let n8 = n.mod_floor(&eight).to_u32().unwrap_or(0);
        if t % 2 == 1 && matches!(n8, 3 | 5) {
            s = -s;
        }
        if a.mod_floor(&four) == BigInt::from(3) && n.mod_floor(&four) == BigInt::from(3) {
            s = -s;
        }
        std::mem::swap(&mut a, &mut n);
        a = a.mod_floor(&n);
    }
    SymbolValue::from_sign(if n.is_one() { s } else { 0 })
}

/// The ring in which a quadratic symbol is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolRing {
    /// `Z[ζ8]` itself.
    M,
    Sub(Subring),
}

impl SymbolRing {
    pub const GAUSS: SymbolRing = SymbolRing::Sub(Subring::Gauss);
    pub const ROOT2: SymbolRing = SymbolRing::Sub(Subring::Root2);
    pub const ROOTM2: SymbolRing = SymbolRing::Sub(Subring::RootMinus2);

    fn contains(self, x: &CycInt) -> bool {
        match self {
            SymbolRing::M => true,
            SymbolRing::Sub(s) => s.contains(x),
        }
    }
}

fn require_odd(fact: &IdealFactorization) -> Result<()> {
    if fact.is_odd() {
        Ok(())
    } else {
        Err(Error::InvalidModulus("modulus is even".into()))
    }
}

/// `k` with `ρ(ζ8) = ζ8^k`.
fn zeta_exponent(aut: Automorphism) -> u64 {
    match aut {
        Automorphism::Id => 1,
        Automorphism::Sigma => 5,
        Automorphism::Tau => 7,
        Automorphism::SigmaTau => 3,
    }
}

/// One prime `𝔭` of the symbol's ring dividing the modulus, realised inside
/// the residue field of a prime `𝔓 | 𝔭` of `Z[ζ8]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolComponent {
    pub field: ResidueField,
    /// `Norm 𝔭`; the symbol is `x^((Norm 𝔭 − 1)/2)` for `x ∈ F_𝔭 ⊂ F_𝔓`.
    pub sub_order: u128,
    pub exponent: u32,
}

/// The primes of `ring` dividing `(β)`, each once. Primes of `Z[ζ8]` above a
/// prime of the subring are visited once per `Gal(M/K)`-orbit.
pub fn symbol_components(beta: &IdealFactorization, ring: SymbolRing) -> Result<Vec<SymbolComponent>> {
    require_odd(beta)?;
    let rho = match ring {
        SymbolRing::M => None,
        SymbolRing::Sub(s) => Some(s.fixing_automorphism()),
    };
    let mut seen: HashSet<(u64, u64)> = HashSet::new();
    let mut out = Vec::with_capacity(beta.factors.len());
    for f in &beta.factors {
        let field = f.field.expect("odd prime has a residue field");
        let p = field.p();
        let q = field.order();
        let sub_order = match rho {
            None => q,
            Some(r) => {
                let k = zeta_exponent(r);
                match field.modulus() {
                    FieldModulus::Linear { root } => {
                        let partner = pow_mod(root, k as u128, p);
                        if !seen.insert((p, root.min(partner))) {
                            continue;
                        }
                        q
                    }
                    // Frobenius at p acts as ζ ↦ ζ^p and generates the
                    // decomposition group of a degree-2 prime.
                    FieldModulus::Quadratic { .. } if p % 8 == k => p as u128,
                    FieldModulus::Quadratic { .. } => {
                        if !seen.insert((p, 0)) {
                            continue;
                        }
                        q
                    }
                }
            }
        };
        out.push(SymbolComponent {
            field,
            sub_order,
            exponent: f.exponent,
        });
    }
    Ok(out)
}

/// `(α/β)₂` in `ring`, with `(β)` given by its factorization in `Z[ζ8]`.
pub fn quad_symbol_factored(alpha: &CycInt, beta: &IdealFactorization, ring: SymbolRing) -> Result<SymbolValue> {
    let mut acc = SymbolValue::One;
    for c in symbol_components(beta, ring)? {
        let s = c.field.quadratic_character_in(c.field.reduce(alpha), c.sub_order);
        if s.is_zero() {
            return Ok(SymbolValue::Zero);
        }
        acc *= s.pow(c.exponent);
    }
    Ok(acc)
}

/// `(α/β)₂` in `ring`; both arguments must lie in `ring`.
pub fn quad_symbol(alpha: &CycInt, beta: &CycInt, ring: SymbolRing) -> Result<SymbolValue> {
    for x in [alpha, beta] {
        if !ring.contains(x) {
            let SymbolRing::Sub(s) = ring else { unreachable!() };
            return Err(Error::NotInSubring(s.name()));
        }
    }
    if beta.is_zero() {
        return Err(Error::InvalidModulus("modulus is zero".into()));
    }
    quad_symbol_factored(alpha, &factor_ideal(beta)?, ring)
}

/// `(α/β)₄` in `Z[ζ8]` with `(β)` given by its factorization.
pub fn quartic_symbol_factored(alpha: &CycInt, beta: &IdealFactorization) -> Result<SymbolValue> {
    require_odd(beta)?;
    let mut acc = SymbolValue::One;
    for f in &beta.factors {
        let field = f.field.expect("odd prime has a residue field");
        let s = field.quartic_character(field.reduce(alpha));
        if s.is_zero() {
            return Ok(SymbolValue::Zero);
        }
        acc *= s.pow(f.exponent);
    }
    Ok(acc)
}

pub fn quartic_symbol(alpha: &CycInt, beta: &CycInt) -> Result<SymbolValue> {
    if beta.is_zero() {
        return Err(Error::InvalidModulus("modulus is zero".into()));
    }
    quartic_symbol_factored(alpha, &factor_ideal(beta)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReciprocityLaw {
    QuadM,
    QuarticM,
    QuarticPeriod,
}

impl ReciprocityLaw {
    pub fn name(self) -> &'static str {
        match self {
            ReciprocityLaw::QuadM => "QUAD_M",
            ReciprocityLaw::QuarticM => "QUARTIC_M",
            ReciprocityLaw::QuarticPeriod => "QUARTIC_PERIOD",
        }
    }
}

const PROBE_REPS: usize = 5;

/// Checks a reciprocity law on seeded samples.
///
/// The two reciprocity laws draw `α`, `β` as lifts `ρ + m·δ` of a few fixed
/// residues `ρ` mod `m`, so that every bucket `(α mod m, β mod m)` is hit many
/// times, and require the reciprocity factor to be constant per bucket.
pub fn reciprocity_probe(law: ReciprocityLaw, trials: u64, seed: u64) -> SuiteReport {
    let mut rng = sampling::rng(seed);
    let mut report = SuiteReport::new(law.name(), trials);
    match law {
        ReciprocityLaw::QuadM | ReciprocityLaw::QuarticM => {
            let m = if law == ReciprocityLaw::QuadM { 8 } else { 16 };
            let reps = sampling::representatives(&mut rng, m, PROBE_REPS);
            let samples: Vec<(usize, usize, CycInt, CycInt)> = (0..trials)
                .map(|_| {
                    let (i, j) = (rng.gen_range(0..reps.len()), rng.gen_range(0..reps.len()));
                    let a = sampling::lift(&mut rng, reps[i], m, 1);
                    let b = sampling::lift(&mut rng, reps[j], m, 1);
                    (i, j, a, b)
                })
                .collect();
            let results: Vec<Result<Option<SymbolValue>>> = samples
                .par_iter()
                .map(|(_, _, a, b)| {
                    let (ab, ba) = if law == ReciprocityLaw::QuadM {
                        (quad_symbol(a, b, SymbolRing::M)?, quad_symbol(b, a, SymbolRing::M)?)
                    } else {
                        (quartic_symbol(a, b)?, quartic_symbol(b, a)?)
                    };
                    Ok(ab.ratio(ba))
                })
                .collect();
            let mut tally = BucketTally::new();
            for ((i, j, _, _), r) in samples.iter().zip(results) {
                match r {
                    Ok(Some(mu)) if !mu.is_zero() => report.check(tally.record((*i, *j), mu)),
                    Ok(_) => report.skips += 1,
                    Err(_) => report.failures += 1,
                }
            }
            report.buckets = tally.len() as u64;
        }
        ReciprocityLaw::QuarticPeriod => {
            let samples: Vec<(CycInt, CycInt, CycInt)> = (0..trials)
                .map(|_| {
                    let a = sampling::nonzero(&mut rng, 3);
                    let b = sampling::odd(&mut rng, 5);
                    let delta = sampling::nonzero(&mut rng, 1);
                    let b2 = &b + &(&a * &delta).scale(&BigInt::from(16));
                    (a, b, b2)
                })
                .collect();
            let results: Vec<Result<bool>> = samples
                .par_iter()
                .map(|(a, b, b2)| Ok(quartic_symbol(a, b)? == quartic_symbol(a, b2)?))
                .collect();
            for r in results {
                report.check(matches!(r, Ok(true)));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::SubringElem;

    fn w17() -> CycInt {
        CycInt::from_i64s([1, 2, 0, 0])
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_i64(-1, 7), SymbolValue::MinusOne);
        assert_eq!(kronecker_i64(18, 7), SymbolValue::One);
        assert_eq!(kronecker_i64(5, 41), SymbolValue::One);
        assert_eq!(kronecker_i64(2, 3), SymbolValue::MinusOne);
        assert_eq!(kronecker_i64(3, 2), SymbolValue::MinusOne);
        assert_eq!(kronecker_i64(-1, -1), SymbolValue::MinusOne);
        assert_eq!(kronecker_i64(4, 0), SymbolValue::Zero);
        assert_eq!(kronecker_i64(-1, 0), SymbolValue::One);
    }

    #[test]
    fn kronecker_matches_squares_below_500() {
        for p in crate::arith::primes_up_to(500).into_iter().filter(|&p| p > 2) {
            let squares: HashSet<u64> = (1..p).map(|x| x * x % p).collect();
            for a in 0..p {
                let expect = if a == 0 { 0 } else if squares.contains(&a) { 1 } else { -1 };
                assert_eq!(kronecker_i64(a as i64, p as i64).to_sign(), expect, "({a}/{p})");
            }
        }
    }

    #[test]
    fn big_and_small_kronecker_agree() {
        let mut rng = sampling::rng(5);
        let shift = BigInt::one() << 70;
        for _ in 0..2000 {
            let a: i64 = rng.gen_range(-10_000..10_000);
            let b: i64 = rng.gen_range(-10_000..10_000);
            let n: i64 = rng.gen_range(-10_000..10_000);
            assert_eq!(kronecker(&a.into(), &n.into()), kronecker_i64(a, n));
            let (ba, bb) = (BigInt::from(a) * &shift + 1, BigInt::from(b) * &shift - 1);
            let bn = BigInt::from(n) * &shift + 3;
            assert_eq!(kronecker(&(&ba * &bb), &bn), kronecker(&ba, &bn) * kronecker(&bb, &bn));
        }
        // 2^89 − 1 and 1000003 are primes, both 3 mod 4.
        let p = (BigInt::one() << 89) - 1;
        let q = BigInt::from(1_000_003);
        assert_eq!(kronecker(&p, &q) * kronecker(&q, &p), SymbolValue::MinusOne);
    }

    #[test]
    fn symbol_examples() {
        assert_eq!(quad_symbol(&CycInt::i(), &w17(), SymbolRing::M).unwrap(), SymbolValue::One);
        assert_eq!(quad_symbol(&CycInt::from_int(3), &w17(), SymbolRing::M).unwrap(), SymbolValue::MinusOne);
        let top = SubringElem::new(Subring::Root2, 5, -2).embed();
        let bot = SubringElem::new(Subring::Root2, 5, 2).embed();
        assert_eq!(quad_symbol(&top, &bot, SymbolRing::ROOT2).unwrap(), SymbolValue::MinusOne);
        assert_eq!(quartic_symbol(&CycInt::from_int(7), &w17()).unwrap(), SymbolValue::MinusI);
        assert_eq!(quartic_symbol(&CycInt::i(), &w17()).unwrap(), SymbolValue::One);
        assert_eq!(quartic_symbol(&CycInt::from_int(5), &CycInt::epsilon()).unwrap(), SymbolValue::One);
        assert!(matches!(quartic_symbol(&CycInt::one(), &CycInt::two_prime()), Err(Error::InvalidModulus(_))));
        assert!(matches!(
            quad_symbol(&CycInt::zeta(), &bot, SymbolRing::ROOT2),
            Err(Error::NotInSubring(_))
        ));
    }

    #[test]
    fn rational_arguments_in_subrings() {
        // (a/π) in Z[i] equals (a/5) for π = 2 + i above 5.
        let pi = CycInt::new(2, 0, 1, 0);
        for a in 1..5 {
            let s = quad_symbol(&CycInt::from_int(a), &pi, SymbolRing::GAUSS).unwrap();
            assert_eq!(s, kronecker_i64(a, 5));
        }
        // 3 is inert in Z[i] and Z[√2]; F_3 ⊂ F_9 consists of squares.
        assert_eq!(quad_symbol(&CycInt::from_int(2), &CycInt::from_int(3), SymbolRing::GAUSS).unwrap(), SymbolValue::One);
        assert_eq!(quad_symbol(&CycInt::from_int(-1), &CycInt::from_int(3), SymbolRing::ROOT2).unwrap(), SymbolValue::One);
        // 3 = (1 + √−2)(1 − √−2) splits, so (−1/(1 + √−2)) = (−1/3).
        let pi3 = SubringElem::new(Subring::RootMinus2, 1, 1).embed();
        assert_eq!(quad_symbol(&CycInt::from_int(-1), &pi3, SymbolRing::ROOTM2).unwrap(), SymbolValue::MinusOne);
        assert_eq!(quad_symbol(&CycInt::from_int(-1), &CycInt::from_int(3), SymbolRing::ROOTM2).unwrap(), SymbolValue::One);
    }

    #[test]
    fn quartic_squares_to_quadratic_and_zero_iff_common_factor() {
        let mut rng = sampling::rng(11);
        for _ in 0..300 {
            let a = sampling::nonzero(&mut rng, 4);
            let b = sampling::odd(&mut rng, 4);
            let q4 = quartic_symbol(&a, &b).unwrap();
            assert_eq!(q4 * q4, quad_symbol(&a, &b, SymbolRing::M).unwrap());
            let g = crate::cyclotomic::euclid_gcd(&a, &b).unwrap();
            assert_eq!(q4.is_zero(), !g.is_unit());
        }
    }

    #[test]
    fn multiplicative_in_both_arguments() {
        let mut rng = sampling::rng(12);
        for ring in [SymbolRing::M, SymbolRing::GAUSS, SymbolRing::ROOT2, SymbolRing::ROOTM2] {
            let pick = |rng: &mut sampling::SuiteRng, odd: bool| loop {
                let x = if odd { sampling::odd(rng, 4) } else { sampling::nonzero(rng, 4) };
                let y = match ring {
                    SymbolRing::M => x,
                    SymbolRing::Sub(s) => {
                        let [a, b, c, _] = x.coords().clone();
                        let e = if s == Subring::Gauss { SubringElem::new(s, a, c) } else { SubringElem::new(s, a, b) };
                        e.embed()
                    }
                };
                if !y.is_zero() && (!odd || y.is_odd()) {
                    break y;
                }
            };
            for _ in 0..60 {
                let (a, a2) = (pick(&mut rng, false), pick(&mut rng, false));
                let (b, b2) = (pick(&mut rng, true), pick(&mut rng, true));
                let s = |x: &CycInt, y: &CycInt| quad_symbol(x, y, ring).unwrap();
                assert_eq!(s(&(&a * &a2), &b), s(&a, &b) * s(&a2, &b), "{ring:?}");
                assert_eq!(s(&a, &(&b * &b2)), s(&a, &b) * s(&a, &b2), "{ring:?}");
            }
        }
    }

    #[test]
    fn probes_pass_small() {
        for law in [ReciprocityLaw::QuadM, ReciprocityLaw::QuarticM, ReciprocityLaw::QuarticPeriod] {
            let r = reciprocity_probe(law, 200, 1);
            assert_eq!(r.failures, 0, "{r:?}");
        }
    }
}
