// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

/// Outcome of one randomized verification suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub trials: u64,
    pub failures: u64,
    pub skips: u64,
    /// Distinct congruence buckets seen; zero for suites without buckets.
    pub buckets: u64,
}

impl SuiteReport {
    pub fn new(name: impl Into<String>, trials: u64) -> Self {
        SuiteReport {
            name: name.into(),
            trials,
            failures: 0,
            skips: 0,
            buckets: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn check(&mut self, ok: bool) {
        if !ok {
            self.failures += 1;
        }
    }

    pub fn csv_line(&self) -> String {
        format!("{},{},{},{}", self.name, self.trials, self.failures, self.skips)
    }
}

/// Records one value per bucket and flags any later disagreement.
#[derive(Debug)]
pub struct BucketTally<K, V> {
    seen: HashMap<K, V>,
}

impl<K: Eq + Hash, V: PartialEq> Default for BucketTally<K, V> {
    fn default() -> Self {
        BucketTally { seen: HashMap::new() }
    }
}

impl<K: Eq + Hash, V: PartialEq> BucketTally<K, V> {
    pub fn new() -> Self {
        Self::default()
    }

    /// `false` iff the bucket already holds a different value.
    pub fn record(&mut self, key: K, value: V) -> bool {
        match self.seen.get(&key) {
            Some(v) => *v == value,
            None => {
                self.seen.insert(key, value);
                true
            }
        }
    }

    pub fn len(&self) -> usize {
        self.seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seen.is_empty()
    }
}
