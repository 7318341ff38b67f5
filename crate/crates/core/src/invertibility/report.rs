use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::{ActivationSet, WindowConfig};
use crate::rule::LocalRule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Invertible,
    NotInvertible,
    ResourceCapExceeded,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Invertible => "Invertible",
            Verdict::NotInvertible => "NotInvertible",
            Verdict::ResourceCapExceeded => "ResourceCapExceeded",
        })
    }
}

/// The condition a counterexample violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    /// `w' = Δ_{0}(w)` changes cell 0 but `Γ_{0}(w') != w`.
    Eq1Forward,
    /// `w' = Γ_{0}(w)` changes cell 0 but `Δ_{0}(w') != w`.
    Eq1Backward,
    /// `Δ_{0}` fixes `w` but no candidate cell `a` has `Γ_{a}(w) = w`.
    Eq2Delta,
    /// `Γ_{0}` fixes `w` but no candidate cell `a` has `Δ_{a}(w) = w`.
    Eq2Gamma,
    /// `Δ_D(w)` changes every cell of `D` but `Γ_D` does not restore `w`.
    PurelyForward,
    /// `Γ_D(w)` changes every cell of `D` but `Δ_D` does not restore `w`.
    PurelyBackward,
    /// Two configurations differing only at cell 0 have the same image
    /// under `Δ_{0}`, so no inverse can undo both.
    DerivationConflict,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("clause serializes");
        f.write_str(s.as_str().expect("string"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub window: WindowConfig,
    pub active: ActivationSet,
    pub clause: Clause,
    /// The second preimage of a derivation conflict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partner: Option<WindowConfig>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    /// Windows examined, counting each check up to and including the first
    /// violating window. Independent of the thread count.
    pub windows: u64,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub verdict: Verdict,
    pub inverse: Option<LocalRule>,
    pub witness: Option<Witness>,
    pub stats: Stats,
}

impl DecisionReport {
    pub fn invertible(inverse: LocalRule, windows: u64) -> Self {
        DecisionReport {
            verdict: Verdict::Invertible,
            inverse: Some(inverse),
            witness: None,
            stats: Stats { windows, millis: 0 },
        }
    }

    pub fn not_invertible(witness: Witness, windows: u64) -> Self {
        DecisionReport {
            verdict: Verdict::NotInvertible,
            inverse: None,
            witness: Some(witness),
            stats: Stats { windows, millis: 0 },
        }
    }

    pub fn cap_exceeded() -> Self {
        DecisionReport { verdict: Verdict::ResourceCapExceeded, inverse: None, witness: None, stats: Stats::default() }
    }

    pub fn is_invertible(&self) -> bool {
        self.verdict == Verdict::Invertible
    }

    /// Same report with the wall time zeroed, for byte-stable output.
    pub fn without_timing(mut self) -> Self {
        self.stats.millis = 0;
        self
    }
}
