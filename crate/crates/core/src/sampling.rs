// SPDX-License-Identifier: Apache-2.0

//! Seeded samplers for the verification suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::CycInt;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn coords_in(rng: &mut SuiteRng, r: i64) -> [i64; 4] {
    [0; 4].map(|_| rng.gen_range(-r..=r))
}

pub fn nonzero(rng: &mut SuiteRng, r: i64) -> CycInt {
    loop {
        let c = coords_in(rng, r);
        if c != [0; 4] {
            return CycInt::from_i64s(c);
        }
    }
}

pub fn odd(rng: &mut SuiteRng, r: i64) -> CycInt {
    loop {
        let c = coords_in(rng, r);
        if c.iter().sum::<i64>() % 2 != 0 {
            return CycInt::from_i64s(c);
        }
    }
}

/// An odd residue with coordinates in `[0, m)`.
pub fn odd_residue(rng: &mut SuiteRng, m: i64) -> [i64; 4] {
    loop {
        let c = [0; 4].map(|_| rng.gen_range(0..m));
        if c.iter().sum::<i64>() % 2 != 0 {
            return c;
        }
    }
}

/// `ρ + m·δ` with `δ` drawn coordinate-wise from `[−r, r]`.
pub fn lift(rng: &mut SuiteRng, rho: [i64; 4], m: i64, r: i64) -> CycInt {
    let d = coords_in(rng, r);
    CycInt::from_i64s([0, 1, 2, 3].map(|k| rho[k] + m * d[k]))
}

/// `count` distinct odd residues modulo `m`.
pub fn representatives(rng: &mut SuiteRng, m: i64, count: usize) -> Vec<[i64; 4]> {
    let mut reps: Vec<[i64; 4]> = Vec::with_capacity(count);
    while reps.len() < count {
        let c = odd_residue(rng, m);
        if !reps.contains(&c) {
            reps.push(c);
        }
    }
    reps
}

/// Coordinates reduced into `[0, m)`, the bucket key of a lift.
pub fn residue_key(w: &CycInt, m: i64) -> [i64; 4] {
    use num_traits::ToPrimitive;
    let r = w.mod_int(&m.into());
    r.coords().clone().map(|x| x.to_i64().expect("reduced coordinate fits"))
}
