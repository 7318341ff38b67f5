//! Nakamura's construction: from a pair of synchronous rules `(C, G)` build
//! rules `(C̄, Ḡ)` over `Q × Q × {0,1,2}` whose cells remember their previous
//! state and a time stamp mod 3, and only move when no neighbor still needs
//! the information they would overwrite. If `G` is the synchronous inverse of
//! `C`, then `C̄` and `Ḡ` are purely asynchronous inverses of each other.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::config::WindowConfig;
use crate::error::{Error, Result};
use crate::invertibility::{check_inverse_purely, DecisionReport};
use crate::rule::{Alphabet, LocalRule, State};
use crate::simulate::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BarState {
    pub curr: State,
    pub old: State,
    /// Always in `0..3`.
    pub time: u8,
}

impl BarState {
    pub fn new(curr: State, old: State, time: u8) -> Self {
        BarState { curr, old, time: time % 3 }
    }

    /// `curr·3q + old·3 + time`.
    pub fn encode(self, q: usize) -> State {
        (self.curr as usize * 3 * q + self.old as usize * 3 + self.time as usize) as State
    }

    pub fn decode(code: State, q: usize) -> Self {
        let code = code as usize;
        BarState { curr: (code / (3 * q)) as State, old: (code / 3 % q) as State, time: (code % 3) as u8 }
    }
}

/// Human-readable form of the state encoding, written into rule files.
pub fn encoding_description(q: usize) -> String {
    format!("curr*{} + old*3 + time (base alphabet {q})", 3 * q)
}

pub fn bar_alphabet(q: usize) -> Result<Alphabet> {
    Alphabet::new(3 * q * q)
}

fn succ(t: u8) -> u8 {
    (t + 1) % 3
}

fn pred(t: u8) -> u8 {
    (t + 2) % 3
}

/// A local configuration of the bar automaton, in offset order, with the
/// position of cell 0.
#[derive(Debug, Clone, Copy)]
pub struct BarLocal<'a> {
    states: &'a [BarState],
    center: usize,
}

impl<'a> BarLocal<'a> {
    pub fn new(states: &'a [BarState], center: usize) -> Self {
        assert!(center < states.len());
        BarLocal { states, center }
    }

    fn here(&self) -> BarState {
        self.states[self.center]
    }

    /// Some neighbor is exactly one time step behind cell 0.
    pub fn is_ahead(&self) -> bool {
        let t = self.here().time;
        self.states.iter().any(|n| t == succ(n.time))
    }

    /// Some neighbor is exactly one time step ahead of cell 0.
    pub fn is_behind(&self) -> bool {
        let t = self.here().time;
        self.states.iter().any(|n| t == pred(n.time))
    }

    /// The current local configuration of the simulated automaton: a
    /// neighbor one step ahead contributes its old state.
    pub fn curr_local(&self) -> Result<Vec<State>> {
        if self.is_ahead() {
            return Err(Error::CenterAhead);
        }
        let t = self.here().time;
        Ok(self.states.iter().map(|n| if n.time == t { n.curr } else { n.old }).collect())
    }

    /// The old local configuration: a neighbor one step behind contributes
    /// its current state.
    pub fn old_local(&self) -> Result<Vec<State>> {
        if self.is_behind() {
            return Err(Error::CenterBehind);
        }
        let t = self.here().time;
        Ok(self.states.iter().map(|n| if n.time == t { n.old } else { n.curr }).collect())
    }

    /// `δ̄` at this local configuration.
    pub fn forward(&self, c: &LocalRule, g: &LocalRule) -> BarState {
        let here = self.here();
        match self.curr_local() {
            Ok(curr) if here.old == g.apply(&curr) => BarState::new(c.apply(&curr), here.curr, succ(here.time)),
            _ => here,
        }
    }

    /// `γ̄` at this local configuration.
    pub fn backward(&self, c: &LocalRule, g: &LocalRule) -> BarState {
        let here = self.here();
        match self.old_local() {
            Ok(old) if here.curr == c.apply(&old) => BarState::new(here.old, g.apply(&old), pred(here.time)),
            _ => here,
        }
    }
}

/// The tabulated pair `(C̄, Ḡ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarRulePair {
    base_q: usize,
    bar_c: LocalRule,
    bar_g: LocalRule,
}

impl BarRulePair {
    pub fn base_q(&self) -> usize {
        self.base_q
    }

    pub fn bar_c(&self) -> &LocalRule {
        &self.bar_c
    }

    pub fn bar_g(&self) -> &LocalRule {
        &self.bar_g
    }
}

/// Builds `(C̄, Ḡ)`. Both inputs are first re-expressed over the smallest
/// symmetric neighborhood containing both neighborhoods and the origin.
pub fn build_bar_pair(c: &LocalRule, g: &LocalRule) -> Result<BarRulePair> {
    if c.q() != g.q() {
        return Err(Error::AlphabetMismatch(c.q(), g.q()));
    }
    let q = c.q();
    let n = c.neighborhood().union(g.neighborhood())?.symmetrized();
    let c = c.with_neighborhood(&n)?;
    let g = g.with_neighborhood(&n)?;
    let center = n.center().expect("symmetrized neighborhood contains 0");
    let alphabet = bar_alphabet(q)?;

    let mut scratch = Vec::with_capacity(n.len());
    let mut tabulate = |backward: bool| {
        LocalRule::from_fn(alphabet, n.clone(), |codes| {
            scratch.clear();
            scratch.extend(codes.iter().map(|&s| BarState::decode(s, q)));
            let local = BarLocal::new(&scratch, center);
            let next = if backward { local.backward(&c, &g) } else { local.forward(&c, &g) };
            next.encode(q)
        })
    };
    let bar_c = tabulate(false)?;
    let bar_g = tabulate(true)?;
    Ok(BarRulePair { base_q: q, bar_c, bar_g })
}

/// Lifts a configuration to bar states `(c(i), γ(c_{i+N}), t)`, so that
/// every cell starts out forward movable.
pub fn embed(config: &WindowConfig, g: &LocalRule, time: u8) -> Result<WindowConfig> {
    let q = g.q();
    let pairs = config
        .iter()
        .map(|(cell, s)| {
            let local = config.local_config(cell, g.neighborhood())?;
            Ok((cell.clone(), BarState::new(s, g.apply(&local), time).encode(q)))
        })
        .collect::<Result<Vec<_>>>()?;
    WindowConfig::from_pairs(pairs)
}

/// [`embed`] on a cyclic lattice.
pub fn embed_ring(ring: &Ring, g: &LocalRule, time: u8) -> Result<Ring> {
    if g.dimension() != 1 {
        return Err(Error::NotOneDimensional(g.dimension()));
    }
    let q = g.q();
    Ok(Ring(
        (0..ring.len()).map(|i| BarState::new(ring.0[i], g.apply(&ring.local_config(g, i)), time).encode(q)).collect(),
    ))
}

/// Builds the bar pair and checks that it is a purely asynchronous inverse
/// pair. Whether `(c, g)` are synchronous inverses is not checked.
pub fn verify_theorem1(c: &LocalRule, g: &LocalRule, cap: u64) -> Result<DecisionReport> {
    let started = Instant::now();
    let pair = build_bar_pair(c, g)?;
    let mut report = check_inverse_purely(&pair.bar_c, &pair.bar_g, cap)?;
    report.stats.millis = started.elapsed().as_millis() as u64;
    Ok(report)
}
