//! Finite window configurations and the asynchronous step operator `Δ_A`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rule::{Cell, LocalRule, Neighborhood, State};

/// A configuration restricted to a finite domain of cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "WindowDocument", try_from = "WindowDocument")]
pub struct WindowConfig {
    values: BTreeMap<Cell, State>,
}

#[derive(Serialize, Deserialize)]
struct WindowDocument {
    cells: Vec<Cell>,
    states: Vec<State>,
}

impl From<WindowConfig> for WindowDocument {
    fn from(w: WindowConfig) -> Self {
        let (cells, states) = w.values.into_iter().unzip();
        WindowDocument { cells, states }
    }
}

impl TryFrom<WindowDocument> for WindowConfig {
    type Error = Error;

    fn try_from(doc: WindowDocument) -> Result<Self> {
        if doc.cells.len() != doc.states.len() {
            return Err(Error::InvalidArgument("cells and states differ in length".into()));
        }
        WindowConfig::from_pairs(doc.cells.into_iter().zip(doc.states))
    }
}

impl WindowConfig {
    /// Builds a window; every cell must appear once.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Cell, State)>) -> Result<Self> {
        let mut values = BTreeMap::new();
        let mut dimension = None;
        for (cell, state) in pairs {
            if *dimension.get_or_insert(cell.dimension()) != cell.dimension() {
                return Err(Error::InvalidArgument("cells of mixed dimension".into()));
            }
            if values.insert(cell.clone(), state).is_some() {
                return Err(Error::InvalidArgument(format!("cell {cell} given twice")));
            }
        }
        Ok(WindowConfig { values })
    }

    /// One-dimensional window on `start, start+1, ..` holding `states`.
    pub fn line(start: i64, states: &[State]) -> Self {
        WindowConfig { values: states.iter().enumerate().map(|(i, &s)| (Cell::at(start + i as i64), s)).collect() }
    }

    pub fn get(&self, cell: &Cell) -> Option<State> {
        self.values.get(cell).copied()
    }

    pub fn set(&mut self, cell: &Cell, state: State) -> Result<()> {
        match self.values.get_mut(cell) {
            Some(slot) => {
                *slot = state;
                Ok(())
            }
            None => Err(Error::OutOfDomain(cell.clone())),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = &Cell> {
        self.values.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Cell, State)> {
        self.values.iter().map(|(c, &s)| (c, s))
    }

    /// States in increasing cell order.
    pub fn states(&self) -> Vec<State> {
        self.values.values().copied().collect()
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.values.contains_key(cell)
    }

    /// Adds the given cells with a fill state; cells already present keep
    /// their value.
    pub fn padded(&self, cells: impl IntoIterator<Item = Cell>, fill: State) -> WindowConfig {
        let mut values = self.values.clone();
        for cell in cells {
            values.entry(cell).or_insert(fill);
        }
        WindowConfig { values }
    }

    /// The local configuration `c_{i+N}` observed by `cell`.
    pub fn local_config(&self, cell: &Cell, neighborhood: &Neighborhood) -> Result<Vec<State>> {
        neighborhood.around(cell).map(|at| self.get(&at).ok_or(Error::OutOfDomain(at))).collect()
    }

    /// `D_{c,c'}`, the cells on which two windows disagree.
    pub fn difference(&self, other: &WindowConfig) -> Result<BTreeSet<Cell>> {
        if self.values.len() != other.values.len() || !self.values.keys().eq(other.values.keys()) {
            return Err(Error::DomainMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(other.values.values())
            .filter(|((_, a), b)| a != b)
            .map(|((cell, _), _)| cell.clone())
            .collect())
    }

    /// `τ_j`: the result holds `c(i + j)` at cell `i`.
    pub fn translate(&self, by: &Cell) -> WindowConfig {
        WindowConfig { values: self.values.iter().map(|(c, &s)| (c - by, s)).collect() }
    }
}

/// The set of cells active in one step. May be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActivationSet(BTreeSet<Cell>);

impl ActivationSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(cell: Cell) -> Self {
        ActivationSet(BTreeSet::from([cell]))
    }

    pub fn cells(&self) -> impl Iterator<Item = &Cell> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.0.contains(cell)
    }

    /// `A - j`.
    pub fn translate(&self, by: &Cell) -> ActivationSet {
        ActivationSet(self.0.iter().map(|c| c - by).collect())
    }
}

impl FromIterator<Cell> for ActivationSet {
    fn from_iter<I: IntoIterator<Item = Cell>>(iter: I) -> Self {
        ActivationSet(iter.into_iter().collect())
    }
}

/// `Δ_A(c)`: active cells apply the local rule, all others keep their state.
/// Every active cell and its neighborhood must lie inside the window.
pub fn step(rule: &LocalRule, config: &WindowConfig, active: &ActivationSet) -> Result<WindowConfig> {
    let mut next = config.clone();
    for cell in active.cells() {
        if !config.contains(cell) {
            return Err(Error::OutOfDomain(cell.clone()));
        }
        let local = config.local_config(cell, rule.neighborhood())?;
        next.set(cell, rule.apply(&local))?;
    }
    Ok(next)
}
