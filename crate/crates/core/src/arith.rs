// SPDX-License-Identifier: Apache-2.0

//! Rational-integer helpers: modular arithmetic, primality, factorization.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Trial division bound used before switching to rho.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u128, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `x mod m` in `[0, m)` for a signed big integer.
pub fn bigint_mod_u64(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits in u64")
}

/// Primes `<= n` by an odd-only Eratosthenes sieve.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    // index i represents 2i + 1
    let half = n.div_ceil(2);
    let mut composite = vec![false; half];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = vec![2u64];
    out.extend((1..half).filter(|&i| !composite[i]).map(|i| (2 * i + 1) as u64));
    out
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_DIVISION_BOUND))
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d as u128, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin with the first 20 prime bases; deterministic, exact below 3.3·10²⁴.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(n) = n.to_u64() {
        return is_prime_u64(n);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in small_primes().iter().take(20) {
        let mut x = BigUint::from(*a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Square root of a quadratic residue modulo an odd prime (Tonelli–Shanks).
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, ((p - 1) / 2) as u128, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, ((p + 1) / 4) as u128, p));
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p).find(|&z| pow_mod(z, ((p - 1) / 2) as u128, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q as u128, p);
    let mut t = pow_mod(a, q as u128, p);
    let mut r = pow_mod(a, q.div_ceil(2) as u128, p);
    while t != 1 {
        let mut i = 1;
        let mut t2 = mul_mod(t, t, p);
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u128 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

fn rho_u64(n: u64) -> u64 {
    // Brent's variant; the increment schedule c = 1, 2, 3, ... is deterministic.
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn rho_big(n: &BigUint) -> BigUint {
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut g = BigUint::one();
        let mut steps = 0u64;
        while g.is_one() && steps < 1 << 24 {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            g = diff.gcd(n);
            steps += 1;
        }
        if !g.is_one() && &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn push_factor(out: &mut Vec<(BigUint, u32)>, p: BigUint, e: u32) {
    match out.iter_mut().find(|(q, _)| *q == p) {
        Some(entry) => entry.1 += e,
        None => out.push((p, e)),
    }
}

fn split_large(n: BigUint, out: &mut Vec<(BigUint, u32)>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        push_factor(out, n, 1);
        return;
    }
    if let Some(s) = Some(n.sqrt()).filter(|s| s * s == n) {
        let mut inner = Vec::new();
        split_large(s, &mut inner);
        for (p, e) in inner {
            push_factor(out, p, 2 * e);
        }
        return;
    }
    let d = match n.to_u64() {
        Some(m) => BigUint::from(rho_u64(m)),
        None => rho_big(&n),
    };
    let other = &n / &d;
    split_large(d, out);
    split_large(other, out);
}

/// Prime factorization of `n >= 1`, sorted by prime.
pub fn factor_integer(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut rest = n.clone();
    let mut primes = small_primes().iter().copied().peekable();
    // Big-integer trial division until the cofactor fits in a machine word.
    while rest.to_u64().is_none() {
        let Some(p) = primes.next() else { break };
        let pb = BigUint::from(p);
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    if let Some(mut r) = rest.to_u64() {
        for p in primes.by_ref() {
            if p * p > r {
                break;
            }
            let mut e = 0;
            while r % p == 0 {
                r /= p;
                e += 1;
            }
            if e > 0 {
                out.push((BigUint::from(p), e));
            }
        }
        rest = BigUint::from(r);
    }
    if !rest.is_one() {
        // Either trial division stopped at p² > rest, or every prime below the
        // bound was removed and rest < bound² forces primality.
        let trial_complete = primes.peek().is_none();
        let known_prime = match rest.to_u64() {
            Some(r) => !trial_complete || r < TRIAL_DIVISION_BOUND * TRIAL_DIVISION_BOUND,
            None => false,
        };
        if known_prime {
            push_factor(&mut out, rest, 1);
        } else {
            split_large(rest, &mut out);
        }
    }
    out.sort();
    out
}

pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    factor_integer(&BigUint::from(n))
        .into_iter()
        .map(|(p, e)| (p.to_u64().expect("factor of u64"), e))
        .collect()
}

/// `Ω(n)`: number of prime factors with multiplicity.
pub fn big_omega(n: &BigUint) -> u32 {
    factor_integer(n).iter().map(|(_, e)| e).sum()
}

/// Whether `n` is a perfect square; returns the root.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == num_bigint::Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Squarefree part and complementary parts of an odd integer: `n = s · f` with
/// `s` the product of primes dividing `n` exactly once, `gcd(s, f) = 1`.
pub fn squarefree_split(n: &BigUint) -> (BigUint, BigUint) {
    let mut s = BigUint::one();
    let mut f = BigUint::one();
    for (p, e) in factor_integer(n) {
        if e == 1 {
            s *= p;
        } else {
            f *= p.pow(e);
        }
    }
    (s, f)
}
