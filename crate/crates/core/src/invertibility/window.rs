//! Positional layout of a finite test window and the parallel scan that finds
//! the lexicographically least violating window.
//!
//! Window `k` of a layout with cells `t_0 < t_1 < .. < t_{m-1}` is the
//! configuration whose state at `t_j` is the `j`-th base-`q` digit of `k`,
//! most significant first. Scanning `k = 0, 1, ..` is therefore
//! lexicographic order on state tuples.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::config::WindowConfig;
use crate::error::{Error, Result};
use crate::rule::{Cell, LocalRule, Neighborhood, State};

const CHUNK: u64 = 1 << 12;

#[derive(Debug, Clone)]
pub(crate) struct WindowLayout {
    q: usize,
    cells: Vec<Cell>,
}

/// A cell of the window together with the window positions of its
/// neighborhood, in offset order.
#[derive(Debug, Clone)]
pub(crate) struct Site {
    pub pos: usize,
    pub reads: Vec<usize>,
}

impl WindowLayout {
    pub fn new(q: usize, cells: BTreeSet<Cell>) -> Self {
        WindowLayout { q, cells: cells.into_iter().collect() }
    }

    pub fn position(&self, cell: &Cell) -> Option<usize> {
        self.cells.binary_search(cell).ok()
    }

    /// Site of `cell`; both the cell and its neighborhood must be inside.
    pub fn site(&self, cell: &Cell, neighborhood: &Neighborhood) -> Site {
        let pos = self.position(cell).expect("site lies inside the test window");
        let reads = neighborhood
            .around(cell)
            .map(|c| self.position(&c).expect("neighborhood lies inside the test window"))
            .collect();
        Site { pos, reads }
    }

    /// Number of windows, refusing anything above `cap`.
    pub fn count_within(&self, cap: u64) -> Result<u64> {
        window_count(self.q, self.cells.len(), cap)
    }

    pub fn decode(&self, mut index: u64, out: &mut [State]) {
        let q = self.q as u64;
        for slot in out.iter_mut().rev() {
            *slot = (index % q) as State;
            index /= q;
        }
    }

    pub fn config(&self, states: &[State]) -> WindowConfig {
        WindowConfig::from_pairs(self.cells.iter().cloned().zip(states.iter().copied()))
            .expect("layout cells are distinct")
    }

    pub fn config_at(&self, index: u64) -> WindowConfig {
        let mut states = vec![0; self.cells.len()];
        self.decode(index, &mut states);
        self.config(&states)
    }

    /// Scans all windows and returns the least index for which `visit`
    /// reports a violation, together with the number of windows that a
    /// sequential scan would have examined.
    ///
    /// `visit` gets the window states and a scratch buffer of the same length.
    pub fn least_violation<V, F>(&self, total: u64, visit: F) -> (u64, Option<(u64, V)>)
    where
        V: Send,
        F: Fn(&[State], &mut [State]) -> Option<V> + Sync,
    {
        let len = self.cells.len();
        let chunks = total.div_ceil(CHUNK);
        let best = AtomicU64::new(u64::MAX);
        let found = (0..chunks)
            .into_par_iter()
            .filter_map(|chunk| {
                let start = chunk * CHUNK;
                if start > best.load(Ordering::Relaxed) {
                    return None;
                }
                let end = (start + CHUNK).min(total);
                let mut states = vec![0; len];
                let mut scratch = vec![0; len];
                self.decode(start, &mut states);
                for index in start..end {
                    if let Some(v) = visit(&states, &mut scratch) {
                        best.fetch_min(index, Ordering::Relaxed);
                        return Some((index, v));
                    }
                    increment(&mut states, self.q);
                }
                None
            })
            .min_by_key(|(index, _)| *index);
        let examined = found.as_ref().map_or(total, |(index, _)| index + 1);
        (examined, found)
    }
}

pub(crate) fn window_count(q: usize, cells: usize, cap: u64) -> Result<u64> {
    let exceeded = |required: u128| Error::ResourceCapExceeded { what: "windows", required, cap };
    let mut count: u128 = 1;
    for _ in 0..cells {
        count = count.saturating_mul(q as u128);
        if count > cap as u128 {
            let full = u32::try_from(cells).ok().and_then(|c| (q as u128).checked_pow(c)).unwrap_or(u128::MAX);
            return Err(exceeded(full));
        }
    }
    Ok(count as u64)
}

#[inline]
fn increment(states: &mut [State], q: usize) {
    for slot in states.iter_mut().rev() {
        *slot += 1;
        if (*slot as usize) < q {
            return;
        }
        *slot = 0;
    }
}

#[inline]
pub(crate) fn local_index(states: &[State], reads: &[usize], q: usize) -> usize {
    reads.iter().fold(0, |acc, &p| acc * q + states[p] as usize)
}

/// Like [`local_index`] but reading `value` at window position `pos`.
#[inline]
pub(crate) fn local_index_with(states: &[State], reads: &[usize], q: usize, pos: usize, value: State) -> usize {
    reads.iter().fold(0, |acc, &p| {
        let s = if p == pos { value } else { states[p] };
        acc * q + s as usize
    })
}

#[inline]
pub(crate) fn apply_at(rule: &LocalRule, states: &[State], site: &Site) -> State {
    rule.lookup(local_index(states, &site.reads, rule.q()))
}
