//! Batch drivers: the exhaustive bound sweep, named verification suites
//! and deterministic report emission.

mod atlas;
mod report;
mod suites;
mod sweep;

pub use atlas::{donoho_stark_atlas, AtlasReport};
pub use report::{emit_report, ledger_csv, render_json, Format};
pub use suites::{verify_lemma_suite, SuiteRegistry, VerifyConfig, VerifySuite};
pub use sweep::{expected_instances, run_sweep, single_instance_ledger, ActionScope, Normalize, SweepConfig};

use std::collections::BTreeMap;

use serde::Serialize;

/// Largest group order any sweep will enumerate.
pub const GLOBAL_ORDER_CAP: usize = 12;
/// Largest number of functions a single sweep will analyze.
pub const MAX_INSTANCES: u128 = 5_000_000;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub passed: u64,
    pub failed: u64,
}

/// One analyzed instance, in the fixed CSV column order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub group: String,
    pub action: String,
    pub field: String,
    #[serde(rename = "f-index")]
    pub f_index: u64,
    pub supp: usize,
    pub dim: usize,
    pub block: usize,
    pub lhs: usize,
    pub rhs_sharp: usize,
    pub rhs_classical: usize,
    pub sharp_eq: bool,
    pub classical_eq: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtlasEntry {
    pub group: String,
    pub action: String,
    pub field: String,
    pub f_index: u64,
    pub values: Vec<String>,
    pub x0: usize,
    pub supp: usize,
    pub dim: usize,
    pub block: usize,
}

/// A failed check together with what is needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: String,
    pub group: String,
    pub action: String,
    pub field: String,
    pub f_index: Option<u64>,
    pub values: Vec<String>,
    pub message: String,
}

impl Violation {
    pub fn bare(check: &str, message: impl Into<String>) -> Self {
        Violation {
            check: check.into(),
            group: String::new(),
            action: String::new(),
            field: String::new(),
            f_index: None,
            values: Vec::new(),
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EqualityAtlas {
    pub sharp: Vec<AtlasEntry>,
    pub classical: Vec<AtlasEntry>,
}

/// Outcome of a sweep or verification run. Contains no timing data, so
/// identical inputs give identical ledgers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepLedger {
    pub seed: u64,
    pub instances: u64,
    pub expected_instances: Option<u64>,
    pub violations: Vec<Violation>,
    pub equality_atlas: EqualityAtlas,
    pub tallies: BTreeMap<String, Tally>,
    #[serde(skip)]
    pub rows: Vec<SweepRow>,
}

impl SweepLedger {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.tallies.values().all(|t| t.failed == 0)
    }

    pub fn record(&mut self, check: &str, ok: bool) {
        let t = self.tallies.entry(check.to_string()).or_default();
        if ok {
            t.passed += 1;
        } else {
            t.failed += 1;
        }
    }

    pub fn merge(&mut self, other: SweepLedger) {
        self.instances += other.instances;
        self.violations.extend(other.violations);
        self.equality_atlas.sharp.extend(other.equality_atlas.sharp);
        self.equality_atlas.classical.extend(other.equality_atlas.classical);
        for (k, t) in other.tallies {
            let e = self.tallies.entry(k).or_default();
            e.passed += t.passed;
            e.failed += t.failed;
        }
        self.rows.extend(other.rows);
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("ledger serializes")
    }
}
