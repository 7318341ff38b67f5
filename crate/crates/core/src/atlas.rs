//! Classification of all 256 elementary cellular automata.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invertibility::{decide_fully_1d, decide_purely, DecideOptions, DecisionReport, Verdict};
use crate::rule::LocalRule;

/// Published list of purely asynchronously invertible elementary automata.
///
/// The published numbers read the rule table with the all-zero neighborhood
/// as the most significant bit, so each is the bit reversal of the number
/// [`LocalRule::eca_from_wolfram`] assigns to the same automaton. The lists
/// are kept verbatim; [`diff_against_reference`] compares them as published.
pub const PURELY_INVERTIBLE_ECA: [u8; 10] = [0, 35, 43, 49, 51, 59, 113, 115, 204, 255];

/// Published list of fully asynchronously invertible elementary automata,
/// numbered as in [`PURELY_INVERTIBLE_ECA`].
pub const FULLY_INVERTIBLE_ECA: [u8; 40] = [
    33, 35, 38, 41, 43, 46, 49, 51, 52, 54, 57, 59, 60, 62, 97, 99, 102, 105, 107, 108, 113, 115, 116, 118, 121, 123,
    131, 139, 145, 147, 150, 153, 155, 156, 195, 198, 201, 204, 209, 211,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AsyncScheme {
    Purely,
    Fully,
}

impl AsyncScheme {
    pub fn decide(self, rule: &LocalRule, options: &DecideOptions) -> Result<DecisionReport> {
        match self {
            AsyncScheme::Purely => decide_purely(rule, options),
            AsyncScheme::Fully => decide_fully_1d(rule, options),
        }
    }

    pub fn reference(self) -> &'static [u8] {
        match self {
            AsyncScheme::Purely => &PURELY_INVERTIBLE_ECA,
            AsyncScheme::Fully => &FULLY_INVERTIBLE_ECA,
        }
    }
}

impl fmt::Display for AsyncScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AsyncScheme::Purely => "purely",
            AsyncScheme::Fully => "fully",
        })
    }
}

/// An inverse, by Wolfram number when it is elementary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InverseRef {
    Wolfram(u8),
    Table(LocalRule),
}

impl InverseRef {
    fn from_rule(rule: LocalRule) -> Self {
        match rule.wolfram_number() {
            Ok(n) => InverseRef::Wolfram(n),
            Err(_) => InverseRef::Table(rule),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasEntry {
    pub rule: u8,
    pub verdict: Verdict,
    pub inverse: Option<InverseRef>,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasReport {
    pub scheme: AsyncScheme,
    pub entries: Vec<AtlasEntry>,
    /// Sorted invertible rule numbers.
    pub summary: Vec<u8>,
}

impl AtlasReport {
    pub fn without_timing(mut self) -> Self {
        for e in &mut self.entries {
            e.millis = 0;
        }
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasDiff {
    /// Invertible in the reference, not in the report.
    pub missing: BTreeSet<u8>,
    /// Invertible in the report, not in the reference.
    pub extra: BTreeSet<u8>,
}

impl AtlasDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Decides every elementary rule under `scheme` on a pool of `workers`
/// threads. A rule whose check exceeds the caps gets a
/// [`Verdict::ResourceCapExceeded`] entry.
pub fn classify_all_eca(scheme: AsyncScheme, options: &DecideOptions, workers: usize) -> Result<AtlasReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let entries = pool.install(|| {
        (0..=255u8).into_par_iter().map(|n| classify_one(scheme, n, options)).collect::<Result<Vec<_>>>()
    })?;
    let summary = entries.iter().filter(|e| e.verdict == Verdict::Invertible).map(|e| e.rule).collect();
    Ok(AtlasReport { scheme, entries, summary })
}

fn classify_one(scheme: AsyncScheme, n: u8, options: &DecideOptions) -> Result<AtlasEntry> {
    let rule = LocalRule::eca_from_wolfram(n as i64)?;
    let report = match scheme.decide(&rule, options) {
        Ok(r) => r,
        Err(Error::ResourceCapExceeded { .. }) => DecisionReport::cap_exceeded(),
        Err(e) => return Err(e),
    };
    Ok(AtlasEntry {
        rule: n,
        verdict: report.verdict,
        inverse: report.inverse.map(InverseRef::from_rule),
        millis: report.stats.millis,
    })
}

pub fn diff_against_reference(report: &AtlasReport) -> AtlasDiff {
    let reference: BTreeSet<u8> = report.scheme.reference().iter().copied().collect();
    let found: BTreeSet<u8> = report.summary.iter().copied().collect();
    AtlasDiff {
        missing: reference.difference(&found).copied().collect(),
        extra: found.difference(&reference).copied().collect(),
    }
}
