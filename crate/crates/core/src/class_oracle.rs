// SPDX-License-Identifier: Apache-2.0

//! Class numbers `h(−p)` of `Q(√−p)` from two independent methods, and the
//! classical 8- and 16-rank criteria built on `p = 2g² − h²`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::arith::{is_prime_u64, pow_mod, primes_up_to};
use crate::symbols::kronecker_i64;
use crate::{Error, Result};

fn discriminant(p: u64) -> i64 {
    if p % 4 == 3 {
        -(p as i64)
    } else {
        -4 * p as i64
    }
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::Unsupported("p = 2".into()));
    }
    if !is_prime_u64(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    Ok(())
}

/// Number of reduced forms `(A, B, C)` of discriminant `−p` or `−4p`.
pub fn class_number_forms(p: u64) -> Result<u64> {
    require_odd_prime(p)?;
    let d = discriminant(p);
    let nd = -d;
    let mut count = 0;
    let mut a: i64 = 1;
    while 3 * a * a <= nd {
        let start = if (a - d) % 2 == 0 { -a + 2 } else { -a + 1 };
        // B runs over (−A, A] with B ≡ D mod 2.
        let mut b = start;
        while b <= a {
            let num = b * b - d;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                if c >= a && !(b < 0 && c == a) {
                    count += 1;
                }
            }
            b += 2;
        }
        a += 1;
    }
    Ok(count)
}

/// `h = w/(2(2 − χ(2))) · Σ_{0<k<|D|/2} χ(k)` with `χ = (D/·)`; `w = 6` only
/// for `D = −3`.
pub fn class_number_charsum(p: u64) -> Result<u64> {
    require_odd_prime(p)?;
    let d = discriminant(p);
    let half = (-d - 1) / 2;
    let sum: i64 = (1..=half).map(|k| kronecker_i64(d, k).to_sign() as i64).sum();
    let w = if d == -3 { 6 } else { 2 };
    let denom = 2 * (2 - kronecker_i64(d, 2).to_sign() as i64);
    let num = w * sum;
    if num <= 0 || num % denom != 0 {
        return Err(Error::OracleDisagreement(format!("character sum {sum} for D = {d}")));
    }
    Ok((num / denom) as u64)
}

/// `h(−p)` for every odd prime `p ≤ limit`, by one sweep over reduced forms of
/// all discriminants up to the limit.
pub fn class_number_table(limit: u64) -> BTreeMap<u64, u64> {
    let n = limit as usize;
    let (even, odd) = rayon::join(|| forms_table_4n(n), || forms_table_n(n));
    primes_up_to(limit)
        .into_iter()
        .filter(|&p| p > 2)
        .map(|p| {
            let h = if p % 4 == 3 { odd[p as usize] } else { even[p as usize] };
            (p, h as u64)
        })
        .collect()
}

/// `t[n]` = number of reduced forms `Ax² + 2bxy + Cy²` with `AC − b² = n`.
fn forms_table_4n(n: usize) -> Vec<u32> {
    let mut t = vec![0u32; n + 1];
    let n = n as i64;
    let mut a: i64 = 1;
    while 3 * a * a <= 4 * n {
        // B = 2b in (−A, A].
        for b in (-(a - 1) / 2)..=(a / 2) {
            let mut c = a;
            loop {
                let m = a * c - b * b;
                if m > n {
                    break;
                }
                if m > 0 && !(b < 0 && c == a) {
                    t[m as usize] += 1;
                }
                c += 1;
            }
        }
        a += 1;
    }
    t
}

/// `t[n]` = number of reduced forms with odd `B` and `4AC − B² = n`.
fn forms_table_n(n: usize) -> Vec<u32> {
    let mut t = vec![0u32; n + 1];
    let n = n as i64;
    let mut a: i64 = 1;
    while 3 * a * a <= n {
        let mut b = -a + 1;
        if b % 2 == 0 {
            b += 1;
        }
        while b <= a {
            let mut c = a;
            loop {
                let m = 4 * a * c - b * b;
                if m > n {
                    break;
                }
                if m > 0 && !(b < 0 && c == a) {
                    t[m as usize] += 1;
                }
                c += 1;
            }
            b += 2;
        }
        a += 1;
    }
    t
}

fn isqrt_exact(x: u64) -> Option<u64> {
    let r = x.isqrt();
    (r * r == x).then_some(r)
}

/// Every `(g, h)` with `g, h > 0`, `p = 2g² − h²` and `g ≤ ⌈√(3p)⌉`.
pub fn all_reps_2g2_h2(p: u64) -> Vec<(u64, u64)> {
    let lo = (p / 2).isqrt() + if (p / 2).isqrt().pow(2) * 2 < p { 1 } else { 0 };
    let hi = (3 * p).isqrt() + if (3 * p).isqrt().pow(2) < 3 * p { 1 } else { 0 };
    (lo..=hi)
        .filter_map(|g| {
            let t = 2 * g * g;
            if t <= p {
                return None;
            }
            isqrt_exact(t - p).map(|h| (g, h))
        })
        .collect()
}

/// The representation with minimal `g`; absent iff `p ≢ ±1 mod 8`.
pub fn rep_2g2_h2(p: u64) -> Option<(u64, u64)> {
    all_reps_2g2_h2(p).into_iter().next()
}

/// `p ≡ 1 mod 8` and `(−1/g) = 1`; checked against `(g/p) = 1`.
pub fn hasse8_check(p: u64) -> Result<bool> {
    require_odd_prime(p)?;
    if p % 8 != 1 {
        return Ok(false);
    }
    let (g, _) = rep_2g2_h2(p).ok_or_else(|| Error::OracleDisagreement(format!("no 2g²−h² form for {p}")))?;
    let a = kronecker_i64(-1, g as i64).to_sign() == 1;
    let b = kronecker_i64(g as i64, p as i64).to_sign() == 1;
    if a != b {
        return Err(Error::OracleDisagreement(format!("Hasse forms disagree at p = {p}")));
    }
    Ok(a)
}

/// `(g/p)₄·(2h/g) = 1`, meaningful when `8 | h(−p)`.
pub fn lw16_check(p: u64, g: u64, h: u64) -> bool {
    let quartic = pow_mod(g % p, ((p - 1) / 4) as u128, p);
    let q = if quartic == 1 { 1 } else if quartic == p - 1 { -1 } else { 0 };
    q * kronecker_i64(2 * h as i64, g as i64).to_sign() == 1
}

pub fn ep_from_h(h: u64) -> i8 {
    if h % 16 == 0 {
        1
    } else if h % 8 == 0 {
        -1
    } else {
        0
    }
}

pub fn ep(p: u64) -> Result<i8> {
    Ok(ep_from_h(class_number_forms(p)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpRecord {
    pub p: u64,
    pub h: u64,
    pub v2h: u32,
    pub e_p: i8,
    pub gh_rep: Option<(u64, u64)>,
    pub hasse8: bool,
    pub lw16: Option<bool>,
}

impl EpRecord {
    pub fn new(p: u64, h: u64) -> Result<EpRecord> {
        let hasse8 = hasse8_check(p)?;
        let gh_rep = rep_2g2_h2(p);
        let lw16 = match (hasse8, gh_rep) {
            (true, Some((g, hh))) => Some(lw16_check(p, g, hh)),
            _ => None,
        };
        Ok(EpRecord {
            p,
            h,
            v2h: h.trailing_zeros(),
            e_p: ep_from_h(h),
            gh_rep,
            hasse8,
            lw16,
        })
    }
}

const CACHE_HEADER: &str = "# sedecim-cache v1";

/// `h(−p)` for every odd prime up to some bound, persisted as text.
#[derive(Debug, Clone, Default)]
pub struct ClassCache {
    path: Option<PathBuf>,
    entries: BTreeMap<u64, u64>,
}

impl ClassCache {
    pub fn in_memory() -> Self {
        ClassCache::default()
    }

    /// Reads `path`; a missing file is an empty cache.
    pub fn open(path: &Path) -> Result<Self> {
        let entries = match std::fs::read_to_string(path) {
            Ok(text) => parse_cache(&text)?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
        };
        Ok(ClassCache {
            path: Some(path.to_path_buf()),
            entries,
        })
    }

    /// Largest prime covered; zero when empty.
    pub fn covered(&self) -> u64 {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    pub fn get(&self, p: u64) -> Option<u64> {
        self.entries.get(&p).copied()
    }

    pub fn entries(&self) -> &BTreeMap<u64, u64> {
        &self.entries
    }

    /// Extends the cache to every odd prime `≤ limit`, persisting if backed
    /// by a file. Existing entries must agree with the recomputation.
    pub fn ensure(&mut self, limit: u64) -> Result<()> {
        let target = primes_up_to(limit).last().copied().unwrap_or(0);
        if target <= 2 || self.covered() >= target {
            return Ok(());
        }
        let fresh = class_number_table(limit);
        for (p, h) in &self.entries {
            if fresh.get(p) != Some(h) {
                return Err(Error::Cache(format!("cached h(−{p}) = {h} disagrees with recomputation")));
            }
        }
        self.entries.extend(fresh);
        self.save()
    }

    fn save(&self) -> Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
        {
            let mut w = std::io::BufWriter::new(tmp.as_file_mut());
            writeln!(w, "{CACHE_HEADER}").map_err(io)?;
            for (p, h) in &self.entries {
                writeln!(w, "{p},{h}").map_err(io)?;
            }
            w.flush().map_err(io)?;
        }
        tmp.persist(path).map_err(|e| io(e.error))?;
        Ok(())
    }

    /// The record for `p`, which must be covered.
    pub fn record(&self, p: u64) -> Result<EpRecord> {
        let h = self
            .get(p)
            .ok_or_else(|| Error::Cache(format!("p = {p} is not covered")))?;
        EpRecord::new(p, h)
    }
}

fn parse_cache(text: &str) -> Result<BTreeMap<u64, u64>> {
    let bad = |line: usize, why: &str| Error::Cache(format!("line {line}: {why}"));
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n');
    if lines.next() != Some(CACHE_HEADER) {
        return Err(bad(1, "missing header"));
    }
    let mut entries = BTreeMap::new();
    let mut last = 2u64;
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
    for (i, line) in lines.enumerate() {
        let ln = i + 2;
        let (ps, hs) = line.split_once(',').ok_or_else(|| bad(ln, "expected p,h"))?;
        if !digits(ps) || !digits(hs) {
            return Err(bad(ln, "expected p,h"));
        }
        let p: u64 = ps.parse().map_err(|_| bad(ln, "p out of range"))?;
        let h: u64 = hs.parse().map_err(|_| bad(ln, "h out of range"))?;
        // Entries must be exactly the odd primes in order.
        let next = (last + 1..).find(|&q| is_prime_u64(q)).expect("primes are unbounded");
        if p != next {
            return Err(bad(ln, "primes must be consecutive and ascending"));
        }
        if h == 0 {
            return Err(bad(ln, "class number must be positive"));
        }
        entries.insert(p, h);
        last = p;
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_number_examples() {
        for (p, h) in [(17, 4), (41, 8), (257, 16), (89, 12), (97, 4), (3, 1), (5, 2), (7, 1), (23, 3)] {
            assert_eq!(class_number_forms(p).unwrap(), h, "forms {p}");
            assert_eq!(class_number_charsum(p).unwrap(), h, "charsum {p}");
        }
        assert!(matches!(class_number_forms(2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn table_matches_per_prime_count() {
        let t = class_number_table(20_000);
        for (&p, &h) in &t {
            assert_eq!(class_number_forms(p).unwrap(), h, "p = {p}");
        }
        assert_eq!(t.len(), primes_up_to(20_000).len() - 1);
    }

    #[test]
    fn representation_examples() {
        assert_eq!(rep_2g2_h2(17), Some((3, 1)));
        assert_eq!(rep_2g2_h2(41), Some((5, 3)));
        assert_eq!(rep_2g2_h2(257), Some((13, 9)));
        assert_eq!(rep_2g2_h2(7), Some((2, 1)));
        assert_eq!(rep_2g2_h2(11), None);
        assert_eq!(rep_2g2_h2(13), None);
    }

    #[test]
    fn hasse_and_ep_examples() {
        assert!(hasse8_check(41).unwrap());
        assert!(!hasse8_check(17).unwrap());
        assert!(!hasse8_check(97).unwrap());
        assert_eq!(ep(17).unwrap(), 0);
        assert_eq!(ep(41).unwrap(), -1);
        assert_eq!(ep(257).unwrap(), 1);
        let r = EpRecord::new(257, 16).unwrap();
        assert_eq!((r.v2h, r.lw16), (4, Some(true)));
        assert_eq!(EpRecord::new(41, 8).unwrap().lw16, Some(false));
        assert_eq!(EpRecord::new(17, 4).unwrap().lw16, None);
    }

    #[test]
    fn cache_round_trip_and_strictness() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h.txt");
        let mut c = ClassCache::open(&path).unwrap();
        c.ensure(100).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# sedecim-cache v1\n3,1\n5,2\n7,1\n"));
        assert!(text.ends_with("97,4\n"));
        let mut c2 = ClassCache::open(&path).unwrap();
        assert_eq!(c2.covered(), 97);
        c2.ensure(200).unwrap();
        assert_eq!(ClassCache::open(&path).unwrap().get(199), Some(9));
        for bad in [
            "",
            "# sedecim-cache v2\n3,1\n",
            "# sedecim-cache v1\n3, 1\n",
            "# sedecim-cache v1\n3,1\n7,1\n",
            "# sedecim-cache v1\n5,2\n3,1\n",
            "# sedecim-cache v1\n3,1\n\n5,2\n",
            "# sedecim-cache v1\n3,x\n",
        ] {
            assert!(parse_cache(bad).is_err(), "{bad:?}");
        }
        assert_eq!(parse_cache("# sedecim-cache v1\n").unwrap().len(), 0);
        assert_eq!(parse_cache("# sedecim-cache v1\n3,1").unwrap().len(), 1);
        std::fs::write(&path, "# sedecim-cache v1\n3,1\n5,3\n").unwrap();
        let mut c3 = ClassCache::open(&path).unwrap();
        assert!(matches!(c3.ensure(100), Err(Error::Cache(_))));
    }
}
