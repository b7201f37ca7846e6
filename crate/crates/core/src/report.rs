//! Outcome tallies for the randomised property checks.

use num_bigint::BigInt;
use serde::Serialize;

use crate::group::{FiniteSubset, GroupElement};

/// Result of one named property check: how many trials ran, how many were
/// skipped because a bounded search gave up, and the smallest failure seen.
#[derive(Clone, Debug, Serialize)]
pub struct Tally {
    pub name: String,
    pub trials: usize,
    pub skipped_unknown: usize,
    pub failures: usize,
    pub counterexample: Option<serde_json::Value>,
    #[serde(skip)]
    counterexample_size: Option<BigInt>,
}

impl Tally {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            trials: 0,
            skipped_unknown: 0,
            failures: 0,
            counterexample: None,
            counterexample_size: None,
        }
    }

    pub fn pass(&mut self) {
        self.trials += 1;
    }

    pub fn skip(&mut self) {
        self.trials += 1;
        self.skipped_unknown += 1;
    }

    /// Record a failure; keeps the counterexample of smallest `size`.
    pub fn fail(&mut self, size: BigInt, payload: serde_json::Value) {
        self.trials += 1;
        self.failures += 1;
        if self.counterexample_size.as_ref().is_none_or(|s| size < *s) {
            self.counterexample_size = Some(size);
            self.counterexample = Some(payload);
        }
    }

    pub fn decided(&self) -> usize {
        self.trials - self.skipped_unknown
    }
}

/// A batch of tallies from one suite run.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub results: Vec<Tally>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.results.iter().map(|t| t.failures).sum()
    }

    pub fn get(&self, name: &str) -> Option<&Tally> {
        self.results.iter().find(|t| t.name == name)
    }
}

/// Size measure used to pick the smallest counterexample.
pub(crate) fn subset_size(a: &FiniteSubset) -> BigInt {
    a.iter().map(GroupElement::l1_norm).sum::<BigInt>() + a.len()
}
