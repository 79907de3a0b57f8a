// SPDX-License-Identifier: Apache-2.0

//! A fundamental domain for `⟨ε⟩`, `ε = 1 + √2`, acting on `Z[ζ8] ∖ {0}`.
//!
//! With `w·τ(w) = u + v√2` put `R(w) = (u + v√2)/(u − v√2)`. Multiplying `w`
//! by `ε` multiplies `R` by `ε⁴`, so the slab `1 ≤ R < ε⁴` holds exactly one
//! element of every `⟨ε⟩`-orbit. In coordinates: `v ≥ 0` and `2u − 3v > 0`.

use num_bigint::{BigInt, BigUint};
use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive};
use rand::Rng;
use rayon::prelude::*;

use crate::cyclotomic::{CycInt, UVPair};
use crate::error::invalid;
use crate::report::SuiteReport;
use crate::sampling;
use crate::Result;

/// Enumeration parameters; the box is `|aᵢ| ≤ C·X^{1/4}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DomainParams {
    pub c_num: u64,
    pub c_den: u64,
}

impl Default for DomainParams {
    fn default() -> Self {
        DomainParams { c_num: 2, c_den: 1 }
    }
}

impl DomainParams {
    pub fn doubled(self) -> Self {
        DomainParams {
            c_num: self.c_num * 2,
            c_den: self.c_den,
        }
    }

    /// Largest integer `B` with `B ≤ C·X^{1/4}`, i.e. `(B·den)⁴ ≤ num⁴·X`.
    pub fn box_bound(&self, x: u64) -> i64 {
        let rhs = BigUint::from(self.c_num).pow(4) * BigUint::from(x);
        let fits = |b: u64| (BigUint::from(b) * self.c_den).pow(4) <= rhs;
        let mut hi = 1u64;
        while fits(hi) {
            hi *= 2;
        }
        let mut lo = 0u64;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if fits(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo as i64
    }
}

fn uv_in_domain(uv: &UVPair) -> bool {
    !uv.v.is_negative() && (&uv.u * 2u32 - &uv.v * 3u32).is_positive()
}

/// Exact membership test.
pub fn in_domain(w: &CycInt) -> Result<bool> {
    if w.is_zero() {
        return invalid("in_domain of zero");
    }
    Ok(uv_in_domain(&w.uv()))
}

/// `ln x` for `x > 0` without overflowing `f64`.
fn ln_pos(x: &BigInt) -> f64 {
    let shift = x.bits().saturating_sub(64);
    (x >> shift).to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Floating estimate of `ln R(w)`; only used to start the exact search.
fn ln_ratio(uv: &UVPair) -> f64 {
    let n = uv.norm();
    let av = uv.v.abs();
    let shift = uv.u.bits().max(av.bits()).saturating_sub(60);
    let (uf, vf) = (
        (&uv.u >> shift).to_f64().unwrap_or(0.0),
        (&av >> shift).to_f64().unwrap_or(0.0),
    );
    let ln_big = (uf + vf * std::f64::consts::SQRT_2).ln() + shift as f64 * std::f64::consts::LN_2;
    let ln_n = ln_pos(&n);
    // ln R = ±(2·ln(u + |v|√2) − ln N).
    let r = 2.0 * ln_big - ln_n;
    if uv.v.is_negative() {
        -r
    } else {
        r
    }
}

/// Returns `(ε^k·w, k)` with `ε^k·w ∈ 𝒟`; `k` is unique.
pub fn reduce_to_domain(w: &CycInt) -> Result<(CycInt, i64)> {
    if w.is_zero() {
        return invalid("reduce_to_domain of zero");
    }
    let mut uv = w.uv();
    let step = 4.0 * std::f64::consts::SQRT_2.ln_1p();
    let est = ln_ratio(&uv);
    let mut k = if est.is_finite() { -(est / step).floor() as i64 } else { 0 };
    if k != 0 {
        uv = w.times_epsilon_pow(k).uv();
    }
    loop {
        if uv.v.is_negative() {
            uv = uv.times_epsilon_squared();
            k += 1;
        } else if !(&uv.u * 2u32 - &uv.v * 3u32).is_positive() {
            uv = uv.over_epsilon_squared();
            k -= 1;
        } else {
            break;
        }
    }
    Ok((w.times_epsilon_pow(k), k))
}

/// The lexicographically least of the eight torsion multiples of the reduced
/// element. Equal for two inputs iff they generate the same ideal.
pub fn canonical_generator(x: &CycInt) -> Result<CycInt> {
    let (r, _) = reduce_to_domain(x)?;
    Ok((1..8).map(|j| r.times_zeta_pow(j)).fold(r.clone(), |best, c| if c < best { c } else { best }))
}

/// Membership and norm of an `i64` point; `None` when outside `𝒟` or zero.
fn point_norm(p: [i64; 4]) -> Option<u128> {
    let [a, b, c, d] = p.map(i128::from);
    let u = a * a + b * b + c * c + d * d;
    let v = a * b - a * d + b * c + c * d;
    if u == 0 || v < 0 || 2 * u - 3 * v <= 0 {
        return None;
    }
    Some((u * u - 2 * v * v) as u128)
}

/// One element of `𝒟(X)` in machine integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DomainPoint {
    pub norm: u64,
    pub coords: [i64; 4],
}

impl DomainPoint {
    pub fn to_cyc(&self) -> CycInt {
        CycInt::from_i64s(self.coords)
    }
}

/// `𝒟(X)` as machine points, ascending by `(norm, a, b, c, d)`.
pub fn enumerate_domain_points(x: u64, odd_only: bool, params: DomainParams) -> Vec<DomainPoint> {
    let bound = params.box_bound(x);
    // Inside 𝒟, u² < ε⁴·Norm < 34·Norm; a valid necessary condition that
    // prunes the box without affecting the result.
    let u_max = ((34.0 * x as f64).sqrt().ceil() as i64).max(1);
    let mut out: Vec<DomainPoint> = (-bound..=bound)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut local = Vec::new();
            let ra = u_max - a * a;
            if ra < 0 {
                return local.into_iter();
            }
            for b in -bound..=bound {
                let rb = ra - b * b;
                if rb < 0 {
                    continue;
                }
                for c in -bound..=bound {
                    let rc = rb - c * c;
                    if rc < 0 {
                        continue;
                    }
                    let dmax = bound.min(rc.isqrt());
                    for d in -dmax..=dmax {
                        if odd_only && (a + b + c + d) % 2 == 0 {
                            continue;
                        }
                        let p = [a, b, c, d];
                        if let Some(n) = point_norm(p) {
                            if n >= 1 && n <= x as u128 {
                                local.push(DomainPoint { norm: n as u64, coords: p });
                            }
                        }
                    }
                }
            }
            local.into_iter()
        })
        .collect();
    out.sort_unstable();
    out
}

/// `𝒟(X)`: every `w ∈ 𝒟` with `1 ≤ Norm(w) ≤ X`, odd norms only if asked.
pub fn enumerate_domain(x: u64, odd_only: bool) -> Vec<CycInt> {
    enumerate_domain_points(x, odd_only, DomainParams::default())
        .iter()
        .map(DomainPoint::to_cyc)
        .collect()
}

/// Whether a domain point is the canonical generator of its ideal.
pub fn is_canonical_point(p: &DomainPoint) -> bool {
    let mut q = p.coords;
    for _ in 1..8 {
        let [a, b, c, d] = q;
        q = [-d, a, b, c];
        if q < p.coords {
            return false;
        }
    }
    true
}

/// Canonical generators of all ideals of norm `≤ X`, ascending by norm.
pub fn enumerate_ideals(x: u64, odd_only: bool) -> Vec<DomainPoint> {
    enumerate_domain_points(x, odd_only, DomainParams::default())
        .into_iter()
        .filter(is_canonical_point)
        .collect()
}

/// Norm bound for the exhaustive parts of [`domain_suite`].
pub const DOMAIN_SUITE_X: u64 = 10_000;

fn torsion_orbit(p: [i64; 4]) -> [[i64; 4]; 8] {
    let mut out = [p; 8];
    for j in 1..8 {
        let [a, b, c, d] = out[j - 1];
        out[j] = [-d, a, b, c];
    }
    out
}

/// Checks of the domain construction: `REDUCER_UNIQUE` and `UNIT_SET` on
/// `trials` random elements, `GENERATORS_8` and `COEFF_BOUND` over all of
/// `𝒟(10⁴)`.
pub fn domain_suite(trials: u64, seed: u64) -> Vec<SuiteReport> {
    let mut rng = sampling::rng(seed);
    let draws: Vec<(CycInt, i64)> = (0..trials)
        .map(|_| (sampling::nonzero(&mut rng, 50), rng.gen_range(-40..=40)))
        .collect();

    let mut reducer = SuiteReport::new("REDUCER_UNIQUE", trials);
    let ok: Vec<bool> = draws
        .par_iter()
        .map(|(w, k)| {
            let t = w.times_epsilon_pow(*k);
            let (Ok((r, j)), Ok((r0, j0))) = (reduce_to_domain(&t), reduce_to_domain(w)) else {
                return false;
            };
            let inside = |x: &CycInt| uv_in_domain(&x.uv());
            inside(&r)
                && r == t.times_epsilon_pow(j)
                && r == r0
                && j0 == j + k
                && !inside(&r.times_epsilon_pow(1))
                && !inside(&r.times_epsilon_pow(-1))
        })
        .collect();
    ok.into_iter().for_each(|b| reducer.check(b));

    let mut units = SuiteReport::new("UNIT_SET", trials);
    let ok: Vec<bool> = draws
        .par_iter()
        .map(|(w, _)| {
            let Ok((r, _)) = reduce_to_domain(w) else { return false };
            let mut hits = 0;
            for k in -2..=2 {
                let s = r.times_epsilon_pow(k);
                for j in 0..8 {
                    if uv_in_domain(&s.times_zeta_pow(j).uv()) {
                        hits += 1;
                        if k != 0 {
                            return false;
                        }
                    }
                }
            }
            hits == 8
        })
        .collect();
    ok.into_iter().for_each(|b| units.check(b));

    let x = DOMAIN_SUITE_X;
    let points = enumerate_domain_points(x, false, DomainParams::default());
    let mut groups: BTreeMap<[i64; 4], usize> = BTreeMap::new();
    for p in &points {
        let key = torsion_orbit(p.coords).into_iter().min().expect("eight entries");
        *groups.entry(key).or_default() += 1;
    }
    let mut gens = SuiteReport::new("GENERATORS_8", groups.len() as u64);
    for n in groups.values() {
        gens.check(*n == 8);
    }
    // Every ζ-multiple of a point is a point, and canonical points are the keys.
    let canonical = points.iter().filter(|p| is_canonical_point(p)).count();
    gens.check(canonical == groups.len());

    let mut bound = SuiteReport::new("COEFF_BOUND", points.len() as u64);
    let b = DomainParams::default().box_bound(x);
    for p in &points {
        bound.check(p.coords.iter().all(|c| c.abs() <= b));
    }
    bound.check(enumerate_domain_points(x, false, DomainParams::default().doubled()) == points);
    vec![reducer, units, gens, bound]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w17() -> CycInt {
        CycInt::from_i64s([1, 2, 0, 0])
    }

    #[test]
    fn membership_examples() {
        assert!(in_domain(&w17()).unwrap());
        assert!(in_domain(&CycInt::one()).unwrap());
        assert!(!in_domain(&(&CycInt::epsilon() * &w17())).unwrap());
        assert!(in_domain(&CycInt::zero()).is_err());
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_to_domain(&w17()).unwrap(), (w17(), 0));
        let far = w17().times_epsilon_pow(5);
        assert_eq!(reduce_to_domain(&far).unwrap(), (w17(), -5));
        let t = CycInt::from_i64s([1, 0, 0, -2]);
        let (r, k) = reduce_to_domain(&t).unwrap();
        assert!(in_domain(&r).unwrap());
        assert_eq!(r, t.times_epsilon_pow(k));
        let huge = w17().times_epsilon_pow(400);
        assert_eq!(reduce_to_domain(&huge).unwrap(), (w17(), -400));
    }

    #[test]
    fn membership_ignores_torsion() {
        let w = CycInt::from_i64s([3, -1, 4, 2]);
        for j in 0..8 {
            assert_eq!(in_domain(&w.times_zeta_pow(j)), in_domain(&w));
        }
    }

    #[test]
    fn canonical_generator_is_unit_invariant() {
        let w = CycInt::from_i64s([2, 1, -1, 3]);
        let c = canonical_generator(&w).unwrap();
        for j in 0..8 {
            for k in -3..=3 {
                assert_eq!(canonical_generator(&w.times_zeta_pow(j).times_epsilon_pow(k)).unwrap(), c);
            }
        }
        assert!(in_domain(&c).unwrap());
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_domain(1, true).len(), 8);
        assert_eq!(enumerate_domain(8, true).len(), 8);
        let d17 = enumerate_domain(17, true);
        assert_eq!(d17.len(), 56);
        let mut norms = BTreeMap::new();
        for w in &d17 {
            *norms.entry(w.norm()).or_insert(0) += 1;
        }
        let expect: BTreeMap<BigInt, i32> = [(1, 8), (9, 16), (17, 32)].into_iter().map(|(n, c)| (n.into(), c)).collect();
        assert_eq!(norms, expect);
    }

    #[test]
    fn box_constant_is_safe_and_groups_have_eight() {
        let x = 2000;
        let a = enumerate_domain_points(x, false, DomainParams::default());
        let b = enumerate_domain_points(x, false, DomainParams::default().doubled());
        assert_eq!(a, b);
        let mut groups: BTreeMap<CycInt, usize> = BTreeMap::new();
        for p in &a {
            *groups.entry(canonical_generator(&p.to_cyc()).unwrap()).or_default() += 1;
        }
        assert!(groups.values().all(|&n| n == 8));
        assert_eq!(enumerate_ideals(x, false).len(), groups.len());
    }

    #[test]
    fn suite_passes() {
        for r in domain_suite(200, 5) {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn box_bound_is_exact() {
        let p = DomainParams::default();
        assert_eq!(p.box_bound(1), 2);
        assert_eq!(p.box_bound(16), 4);
        assert_eq!(p.box_bound(15), 3);
        assert_eq!(DomainParams { c_num: 3, c_den: 2 }.box_bound(16), 3);
    }
}
