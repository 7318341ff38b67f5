//! Sandbox simulation on cyclic one-dimensional lattices.
//!
//! The theory works on the infinite lattice; rings are only used here for
//! demonstrations and for the lockstep checks of the Nakamura construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rule::{LocalRule, State};

/// A configuration of a cyclic one-dimensional lattice `Z / nZ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ring(pub Vec<State>);

impl Ring {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Local configuration seen by cell `i`, with wrap-around.
    pub fn local_config(&self, rule: &LocalRule, i: usize) -> Vec<State> {
        let n = self.0.len() as i64;
        rule.neighborhood()
            .offsets()
            .iter()
            .map(|o| self.0[(i as i64 + o.coords()[0]).rem_euclid(n) as usize])
            .collect()
    }

    /// A uniformly random ring over `q` states. Uses a stream separate from
    /// the one [`simulate`] draws activations from, so one seed can drive both.
    pub fn random(size: usize, q: usize, seed: u64) -> Ring {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(1);
        Ring((0..size).map(|_| rng.gen_range(0..q) as State).collect())
    }

    /// Applies `Δ_A` with `active` given as cell indices.
    pub fn step(&self, rule: &LocalRule, active: &[usize]) -> Result<Ring> {
        if rule.dimension() != 1 {
            return Err(Error::NotOneDimensional(rule.dimension()));
        }
        let mut next = self.clone();
        for &i in active {
            if i >= self.0.len() {
                return Err(Error::InvalidArgument(format!("cell {i} outside ring of size {}", self.0.len())));
            }
            next.0[i] = rule.apply(&self.local_config(rule, i));
        }
        Ok(next)
    }

    /// The synchronous step `Δ_R`.
    pub fn step_all(&self, rule: &LocalRule) -> Result<Ring> {
        let all: Vec<usize> = (0..self.0.len()).collect();
        self.step(rule, &all)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "scheme")]
pub enum Scheme {
    /// Each cell is active independently with probability `p`.
    Purely { p: f64 },
    /// Exactly one uniformly chosen cell is active.
    Fully,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    /// Cells active in the step that produced `config`; empty for the
    /// initial entry.
    pub active: Vec<usize>,
    pub config: Ring,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub scheme: Scheme,
    pub seed: u64,
    pub steps: Vec<TraceStep>,
}

/// Runs `steps` asynchronous updates from `init`. Deterministic in `seed`.
pub fn simulate(rule: &LocalRule, init: Ring, scheme: Scheme, steps: usize, seed: u64) -> Result<Trace> {
    if rule.dimension() != 1 {
        return Err(Error::NotOneDimensional(rule.dimension()));
    }
    let required = rule.neighborhood().extent().max(1);
    if init.len() < required {
        return Err(Error::LatticeTooSmall { size: init.len(), required });
    }
    if let Some(bad) = init.0.iter().find(|&&s| !rule.alphabet().contains(s)) {
        return Err(Error::InvalidArgument(format!("state {bad} is not in the alphabet")));
    }
    if let Scheme::Purely { p } = scheme {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!("activation probability {p} not in [0, 1]")));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace = Vec::with_capacity(steps + 1);
    let mut current = init;
    trace.push(TraceStep { active: Vec::new(), config: current.clone() });
    for _ in 0..steps {
        let active: Vec<usize> = match scheme {
            Scheme::Purely { p } => (0..current.len()).filter(|_| rng.gen_bool(p)).collect(),
            Scheme::Fully => vec![rng.gen_range(0..current.len())],
        };
        current = current.step(rule, &active)?;
        trace.push(TraceStep { active, config: current.clone() });
    }
    Ok(Trace { scheme, seed, steps: trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eca(n: i64) -> LocalRule {
        LocalRule::eca_from_wolfram(n).unwrap()
    }

    #[test]
    fn random_ring_is_seeded() {
        let a = Ring::random(16, 3, 9);
        assert_eq!(a, Ring::random(16, 3, 9));
        assert_ne!(a, Ring::random(16, 3, 10));
        assert!(a.0.iter().all(|&s| s < 3));
    }

    #[test]
    fn zero_steps_is_just_init() {
        let init = Ring(vec![0, 1, 1, 0]);
        let t = simulate(&eca(110), init.clone(), Scheme::Fully, 0, 7).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.steps[0].config, init);
    }

    #[test]
    fn identity_never_changes() {
        let init = Ring(vec![1, 0, 1, 1, 0, 0]);
        for scheme in [Scheme::Fully, Scheme::Purely { p: 0.5 }, Scheme::Purely { p: 1.0 }] {
            for seed in 0..5 {
                let t = simulate(&eca(204), init.clone(), scheme, 20, seed).unwrap();
                assert!(t.steps.iter().all(|s| s.config == init));
            }
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let init = Ring(vec![0, 0, 0, 1, 0, 0, 0, 0]);
        let a = simulate(&eca(30), init.clone(), Scheme::Purely { p: 0.3 }, 50, 42).unwrap();
        let b = simulate(&eca(30), init.clone(), Scheme::Purely { p: 0.3 }, 50, 42).unwrap();
        assert_eq!(a, b);
        let c = simulate(&eca(30), init, Scheme::Fully, 50, 42).unwrap();
        assert!(c.steps[1..].iter().all(|s| s.active.len() == 1));
    }

    #[test]
    fn lattice_too_small() {
        let err = simulate(&eca(30), Ring(vec![0, 1]), Scheme::Fully, 1, 0).unwrap_err();
        assert_eq!(err, Error::LatticeTooSmall { size: 2, required: 3 });
    }

    #[test]
    fn trace_replays() {
        let init = Ring(vec![1, 0, 0, 1, 1, 0, 1]);
        let t = simulate(&eca(54), init, Scheme::Purely { p: 0.4 }, 30, 3).unwrap();
        for pair in t.steps.windows(2) {
            assert_eq!(pair[0].config.step(&eca(54), &pair[1].active).unwrap(), pair[1].config);
        }
    }
}
