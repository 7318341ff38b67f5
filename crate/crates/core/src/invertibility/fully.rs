//! Inverse check for fully asynchronous one-dimensional automata.
//!
//! With `m` the largest neighbor distance and candidate cells
//! `A = {-q^(2m+1), .., q^(2m+1)}`, two rules are inverse iff on every
//! configuration over `T = {0} ∪ N ∪ A ∪ (A+N)`:
//!
//! * single-cell flips at 0 are undone by the other rule (both directions);
//! * a configuration fixed by one rule at cell 0 is fixed by the other rule
//!   at some candidate cell.

use std::collections::BTreeSet;

use crate::config::ActivationSet;
use crate::error::{Error, Result};
use crate::rule::{Cell, LocalRule, Neighborhood};

use super::purely::ensure_compatible;
use super::report::{Clause, DecisionReport, Witness};
use super::window::{apply_at, local_index_with, Site, WindowLayout};

/// Candidate ranges beyond this many cells are refused outright.
const MAX_CANDIDATE_CELLS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullyTestWindow {
    max_distance: Option<i64>,
    candidates: Vec<Cell>,
    cells: BTreeSet<Cell>,
}

impl FullyTestWindow {
    pub fn new(neighborhood: &Neighborhood, q: usize) -> Result<Self> {
        if neighborhood.dimension() != 1 {
            return Err(Error::NotOneDimensional(neighborhood.dimension()));
        }
        let max_distance = neighborhood.max_distance();
        let candidates: Vec<Cell> = match max_distance {
            None => vec![Cell::at(0)],
            Some(m) => {
                let radius = u32::try_from(2 * m + 1)
                    .ok()
                    .and_then(|e| (q as u64).checked_pow(e))
                    .filter(|&r| r <= MAX_CANDIDATE_CELLS)
                    .ok_or(Error::ResourceCapExceeded {
                        what: "candidate cells",
                        required: u128::MAX,
                        cap: MAX_CANDIDATE_CELLS,
                    })? as i64;
                (-radius..=radius).map(Cell::at).collect()
            }
        };
        let mut cells: BTreeSet<Cell> = BTreeSet::from([Cell::at(0)]);
        cells.extend(neighborhood.offsets().iter().cloned());
        for a in &candidates {
            cells.insert(a.clone());
            cells.extend(neighborhood.around(a));
        }
        Ok(FullyTestWindow { max_distance, candidates, cells })
    }

    /// `m`, or `None` standing for `-∞` when the neighborhood is empty.
    pub fn max_distance(&self) -> Option<i64> {
        self.max_distance
    }

    /// The candidate cells `A`, in increasing order.
    pub fn candidates(&self) -> &[Cell] {
        &self.candidates
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }
}

/// Checks whether `g` is a fully asynchronous inverse of `c`.
pub fn check_inverse_fully_1d(c: &LocalRule, g: &LocalRule, cap: u64) -> Result<DecisionReport> {
    if c.dimension() != 1 {
        return Err(Error::NotOneDimensional(c.dimension()));
    }
    ensure_compatible(c, g)?;
    if c.q() == 1 {
        return Ok(DecisionReport::invertible(g.clone(), 0));
    }
    let test = FullyTestWindow::new(c.neighborhood(), c.q())?;
    let layout = WindowLayout::new(c.q(), test.cells.clone());
    let total = layout.count_within(cap)?;
    let q = c.q();
    let origin = layout.site(&Cell::at(0), c.neighborhood());
    let candidates: Vec<Site> = test.candidates.iter().map(|a| layout.site(a, c.neighborhood())).collect();

    let (examined, found) = layout.least_violation(total, |w, _| {
        let here = w[origin.pos];
        let by_c = apply_at(c, w, &origin);
        let by_g = apply_at(g, w, &origin);
        let undo = |back: &LocalRule, changed| back.lookup(local_index_with(w, &origin.reads, q, origin.pos, changed));
        if by_c != here && undo(g, by_c) != here {
            return Some(Clause::Eq1Forward);
        }
        if by_g != here && undo(c, by_g) != here {
            return Some(Clause::Eq1Backward);
        }
        let fixed_somewhere = |rule: &LocalRule| candidates.iter().any(|s| apply_at(rule, w, s) == w[s.pos]);
        if by_c == here && !fixed_somewhere(g) {
            return Some(Clause::Eq2Delta);
        }
        if by_g == here && !fixed_somewhere(c) {
            return Some(Clause::Eq2Gamma);
        }
        None
    });

    Ok(match found {
        None => DecisionReport::invertible(g.clone(), examined),
        Some((index, clause)) => DecisionReport::not_invertible(
            Witness {
                window: layout.config_at(index),
                active: ActivationSet::single(Cell::at(0)),
                clause,
                partner: None,
            },
            examined,
        ),
    })
}
