//! Inverse check for purely asynchronous automata.
//!
//! Two rules over the same neighborhood `N` are inverse iff for all finite
//! configurations over `{0} ∪ N ∪ (N+N)` with `0 ∈ D ⊆ {0} ∪ N`, where `D` is
//! their difference, `c' = Δ_D(c) ⟺ c = Γ_D(c')`. Instead of enumerating
//! pairs, each direction is checked from its preimage: for every window `w`
//! and every admissible `D`, if `Δ_D(w)` changes all of `D` then `Γ_D` must
//! map it back, and symmetrically.

use std::collections::BTreeSet;

use crate::config::ActivationSet;
use crate::error::{Error, Result};
use crate::rule::{Cell, LocalRule, Neighborhood, State};

use super::report::{Clause, DecisionReport, Witness};
use super::window::{apply_at, Site, WindowLayout};

/// Test window `T = {0} ∪ N ∪ (N+N)` and the active sets `0 ∈ D ⊆ {0} ∪ N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PurelyTestWindow {
    cells: BTreeSet<Cell>,
    active_family: Vec<Vec<Cell>>,
}

impl PurelyTestWindow {
    pub fn new(neighborhood: &Neighborhood) -> Self {
        let origin = Cell::origin(neighborhood.dimension());
        let mut cells: BTreeSet<Cell> = BTreeSet::from([origin.clone()]);
        for m in neighborhood.offsets() {
            cells.insert(m.clone());
            for n in neighborhood.offsets() {
                cells.insert(m + n);
            }
        }

        let others: Vec<&Cell> = neighborhood.offsets().iter().filter(|n| !n.is_origin()).collect();
        let mut active_family: Vec<Vec<Cell>> = (0u64..1 << others.len())
            .map(|mask| {
                let mut d: Vec<Cell> =
                    others.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &c)| c.clone()).collect();
                d.push(origin.clone());
                d.sort();
                d
            })
            .collect();
        // smaller sets first, then lexicographic
        active_family.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        PurelyTestWindow { cells, active_family }
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn active_family(&self) -> &[Vec<Cell>] {
        &self.active_family
    }
}

pub(crate) fn ensure_compatible(c: &LocalRule, g: &LocalRule) -> Result<()> {
    if c.q() != g.q() {
        return Err(Error::AlphabetMismatch(c.q(), g.q()));
    }
    if c.neighborhood() != g.neighborhood() {
        return Err(Error::NeighborhoodMismatch);
    }
    Ok(())
}

/// Checks whether `g` is a purely asynchronous inverse of `c`.
///
/// Both rules must share alphabet and neighborhood. Fails with
/// [`Error::ResourceCapExceeded`] when the test window has more than `cap`
/// configurations.
pub fn check_inverse_purely(c: &LocalRule, g: &LocalRule, cap: u64) -> Result<DecisionReport> {
    ensure_compatible(c, g)?;
    if c.q() == 1 {
        return Ok(DecisionReport::invertible(g.clone(), 0));
    }
    let test = PurelyTestWindow::new(c.neighborhood());
    let layout = WindowLayout::new(c.q(), test.cells.clone());
    let total = layout.count_within(cap)?;
    let family: Vec<Vec<Site>> =
        test.active_family.iter().map(|d| d.iter().map(|cell| layout.site(cell, c.neighborhood())).collect()).collect();

    let (examined, found) = layout.least_violation(total, |w, scratch| {
        family.iter().enumerate().find_map(|(rank, sites)| {
            if fails_one_side(w, scratch, sites, c, g) {
                Some((rank, Clause::PurelyForward))
            } else if fails_one_side(w, scratch, sites, g, c) {
                Some((rank, Clause::PurelyBackward))
            } else {
                None
            }
        })
    });

    Ok(match found {
        None => DecisionReport::invertible(g.clone(), examined),
        Some((index, (rank, clause))) => DecisionReport::not_invertible(
            Witness {
                window: layout.config_at(index),
                active: test.active_family[rank].iter().cloned().collect::<ActivationSet>(),
                clause,
                partner: None,
            },
            examined,
        ),
    })
}

/// True if `forward` changes every cell of `sites` in `w` and `backward`
/// then fails to restore `w`.
fn fails_one_side(
    w: &[State],
    scratch: &mut [State],
    sites: &[Site],
    forward: &LocalRule,
    backward: &LocalRule,
) -> bool {
    scratch.copy_from_slice(w);
    for site in sites {
        let next = apply_at(forward, w, site);
        if next == w[site.pos] {
            return false;
        }
        scratch[site.pos] = next;
    }
    sites.iter().any(|site| apply_at(backward, scratch, site) != w[site.pos])
}
