//! Cells, neighborhoods and tabulated local transition functions.
//!
//! A [`LocalRule`] stores its transition function as a flat table indexed by
//! the mixed-radix encoding of a local configuration: offsets are kept in
//! lexicographic order and the first offset is the most significant digit.
//! For elementary automata this makes the table index coincide with the bit
//! index of the Wolfram number.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// A single cell state. States of an alphabet of size `q` are `0..q`.
pub type State = u16;

/// Tables larger than this are refused at construction time.
pub const MAX_TABLE_LEN: usize = 1 << 28;

/// A point of the lattice `Z^d`, also used for neighborhood offsets and
/// translation vectors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cell(Vec<i64>);

impl Cell {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Cell(coords.into())
    }

    /// The one-dimensional cell `x`.
    pub fn at(x: i64) -> Self {
        Cell(vec![x])
    }

    pub fn origin(dimension: usize) -> Self {
        Cell(vec![0; dimension])
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Chebyshev norm.
    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [x] => write!(f, "{x}"),
            coords => {
                write!(f, "(")?;
                for (i, x) in coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Add for &Cell {
    type Output = Cell;

    fn add(self, rhs: &Cell) -> Cell {
        debug_assert_eq!(self.dimension(), rhs.dimension());
        Cell(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Cell {
    type Output = Cell;

    fn sub(self, rhs: &Cell) -> Cell {
        debug_assert_eq!(self.dimension(), rhs.dimension());
        Cell(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Cell {
    type Output = Cell;

    fn neg(self) -> Cell {
        Cell(self.0.iter().map(|a| -a).collect())
    }
}

/// The set of states `{0, .., q-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet(usize);

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidRule("alphabet must have at least one state".into()));
        }
        if size > State::MAX as usize + 1 {
            return Err(Error::InvalidRule(format!("alphabet of size {size} is too large")));
        }
        Ok(Alphabet(size))
    }

    pub const fn binary() -> Self {
        Alphabet(2)
    }

    pub fn size(self) -> usize {
        self.0
    }

    pub fn contains(self, state: State) -> bool {
        (state as usize) < self.0
    }
}

/// A finite set of offsets in `Z^d`, stored sorted so that equal sets compare
/// equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Neighborhood {
    dimension: usize,
    offsets: Vec<Cell>,
}

impl Neighborhood {
    /// Builds a neighborhood, sorting the offsets. Duplicate offsets and
    /// offsets of the wrong dimension are rejected.
    pub fn new(dimension: usize, offsets: impl IntoIterator<Item = Cell>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidRule("dimension must be at least 1".into()));
        }
        let mut offsets: Vec<Cell> = offsets.into_iter().collect();
        if let Some(bad) = offsets.iter().find(|o| o.dimension() != dimension) {
            return Err(Error::InvalidRule(format!("offset {bad} does not have dimension {dimension}")));
        }
        offsets.sort();
        if offsets.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidRule("neighborhood offsets must be distinct".into()));
        }
        Ok(Neighborhood { dimension, offsets })
    }

    /// One-dimensional neighborhood from plain integers.
    pub fn line(offsets: impl IntoIterator<Item = i64>) -> Result<Self> {
        Self::new(1, offsets.into_iter().map(Cell::at))
    }

    /// `(-1, 0, 1)`.
    pub fn elementary() -> Self {
        Self::line([-1, 0, 1]).expect("valid neighborhood")
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn offsets(&self) -> &[Cell] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn position(&self, offset: &Cell) -> Option<usize> {
        self.offsets.binary_search(offset).ok()
    }

    /// Position of the origin among the offsets, if present.
    pub fn center(&self) -> Option<usize> {
        self.position(&Cell::origin(self.dimension))
    }

    pub fn contains(&self, offset: &Cell) -> bool {
        self.position(offset).is_some()
    }

    pub fn is_subset_of(&self, other: &Neighborhood) -> bool {
        self.dimension == other.dimension && self.offsets.iter().all(|o| other.contains(o))
    }

    /// Largest Chebyshev norm of an offset, `None` for the empty neighborhood.
    pub fn max_distance(&self) -> Option<i64> {
        self.offsets.iter().map(Cell::max_abs).max()
    }

    /// Number of cells spanned along the first axis.
    pub fn extent(&self) -> usize {
        let first = self.offsets.iter().map(|o| o.coords()[0]);
        match (first.clone().min(), first.max()) {
            (Some(lo), Some(hi)) => (hi - lo + 1) as usize,
            _ => 0,
        }
    }

    /// The cells `center + n` in offset order.
    pub fn around<'a>(&'a self, center: &'a Cell) -> impl Iterator<Item = Cell> + 'a {
        self.offsets.iter().map(move |n| center + n)
    }

    pub fn union(&self, other: &Neighborhood) -> Result<Neighborhood> {
        if self.dimension != other.dimension {
            return Err(Error::NeighborhoodMismatch);
        }
        let mut offsets = self.offsets.clone();
        offsets.extend(other.offsets.iter().filter(|o| !self.contains(o)).cloned());
        Neighborhood::new(self.dimension, offsets)
    }

    /// The smallest symmetric neighborhood containing this one and the origin.
    pub fn symmetrized(&self) -> Neighborhood {
        let mut offsets: Vec<Cell> = self.offsets.clone();
        offsets.extend(self.offsets.iter().map(|o| -o));
        offsets.push(Cell::origin(self.dimension));
        offsets.sort();
        offsets.dedup();
        Neighborhood { dimension: self.dimension, offsets }
    }

    pub fn is_symmetric(&self) -> bool {
        self.offsets.iter().all(|o| self.contains(&-o))
    }
}

fn checked_table_len(q: usize, k: usize) -> Result<usize> {
    u32::try_from(k)
        .ok()
        .and_then(|k| q.checked_pow(k))
        .filter(|&len| len <= MAX_TABLE_LEN)
        .ok_or_else(|| Error::InvalidRule(format!("table with {q}^{k} entries is too large")))
}

/// Local transition function `Q^N -> Q` stored as a lookup table.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Value", into = "RuleDocument")]
pub struct LocalRule {
    alphabet: Alphabet,
    neighborhood: Neighborhood,
    table: Vec<State>,
}

impl fmt::Debug for LocalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Ok(n) = self.wolfram_number() {
            return write!(f, "LocalRule(wolfram {n})");
        }
        f.debug_struct("LocalRule")
            .field("q", &self.alphabet.size())
            .field("neighborhood", &self.neighborhood.offsets)
            .field("table", &self.table)
            .finish()
    }
}

impl LocalRule {
    pub fn new(alphabet: Alphabet, neighborhood: Neighborhood, table: Vec<State>) -> Result<Self> {
        let len = checked_table_len(alphabet.size(), neighborhood.len())?;
        if table.len() != len {
            return Err(Error::InvalidRule(format!("table has {} entries, expected {len}", table.len())));
        }
        if let Some(bad) = table.iter().find(|&&s| !alphabet.contains(s)) {
            return Err(Error::InvalidRule(format!(
                "table entry {bad} is not a state of a {}-state alphabet",
                alphabet.size()
            )));
        }
        Ok(LocalRule { alphabet, neighborhood, table })
    }

    /// Tabulates `f` over every local configuration, in table order.
    pub fn from_fn(
        alphabet: Alphabet,
        neighborhood: Neighborhood,
        mut f: impl FnMut(&[State]) -> State,
    ) -> Result<Self> {
        let len = checked_table_len(alphabet.size(), neighborhood.len())?;
        let mut local = vec![0; neighborhood.len()];
        let mut table = Vec::with_capacity(len);
        for index in 0..len {
            decode_into(index, alphabet.size(), &mut local);
            table.push(f(&local));
        }
        Self::new(alphabet, neighborhood, table)
    }

    /// The rule `δ(ℓ) = ℓ(0)` over the given neighborhood, which must
    /// contain the origin.
    pub fn identity(alphabet: Alphabet, neighborhood: Neighborhood) -> Result<Self> {
        let center = neighborhood.center().ok_or(Error::CenterNotInNeighborhood)?;
        Self::from_fn(alphabet, neighborhood, |l| l[center])
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn q(&self) -> usize {
        self.alphabet.size()
    }

    pub fn neighborhood(&self) -> &Neighborhood {
        &self.neighborhood
    }

    pub fn dimension(&self) -> usize {
        self.neighborhood.dimension()
    }

    pub fn table(&self) -> &[State] {
        &self.table
    }

    /// Table index of a local configuration given in offset order.
    pub fn index_of(&self, local: &[State]) -> usize {
        debug_assert_eq!(local.len(), self.neighborhood.len());
        let q = self.q();
        local.iter().fold(0, |acc, &s| acc * q + s as usize)
    }

    /// Local configuration stored at a table index.
    pub fn local_at(&self, index: usize) -> Vec<State> {
        let mut local = vec![0; self.neighborhood.len()];
        decode_into(index, self.q(), &mut local);
        local
    }

    #[inline]
    pub fn lookup(&self, index: usize) -> State {
        self.table[index]
    }

    pub fn apply(&self, local: &[State]) -> State {
        self.table[self.index_of(local)]
    }

    /// Whether `δ(ℓ) = ℓ(0)` for every local configuration.
    pub fn is_trivial(&self) -> bool {
        match self.neighborhood.center() {
            Some(c) => (0..self.table.len()).all(|i| self.table[i] == self.local_at(i)[c]),
            None => self.q() == 1,
        }
    }

    /// Builds the elementary automaton with the given Wolfram number.
    pub fn eca_from_wolfram(number: i64) -> Result<Self> {
        if !(0..=255).contains(&number) {
            return Err(Error::OutOfRange(number));
        }
        let table = (0..8).map(|bit| ((number >> bit) & 1) as State).collect();
        Self::new(Alphabet::binary(), Neighborhood::elementary(), table)
    }

    pub fn is_elementary(&self) -> bool {
        self.q() == 2 && self.neighborhood == Neighborhood::elementary()
    }

    pub fn wolfram_number(&self) -> Result<u8> {
        if !self.is_elementary() {
            return Err(Error::NotElementary);
        }
        Ok(self.table.iter().enumerate().fold(0u8, |acc, (bit, &s)| acc | ((s as u8) << bit)))
    }

    /// Whether the offset at `position` never influences the output.
    pub fn is_dummy(&self, position: usize) -> bool {
        let q = self.q();
        let k = self.neighborhood.len();
        let stride = q.pow((k - 1 - position) as u32);
        (0..self.table.len())
            .filter(|&i| (i / stride).is_multiple_of(q))
            .all(|i| (1..q).all(|v| self.table[i + v * stride] == self.table[i]))
    }

    /// Equivalent rule without dummy neighbors.
    pub fn minimize_neighborhood(&self) -> LocalRule {
        let keep: Vec<usize> = (0..self.neighborhood.len()).filter(|&j| !self.is_dummy(j)).collect();
        if keep.len() == self.neighborhood.len() {
            return self.clone();
        }
        let neighborhood = Neighborhood {
            dimension: self.neighborhood.dimension,
            offsets: keep.iter().map(|&j| self.neighborhood.offsets[j].clone()).collect(),
        };
        let mut full = vec![0; self.neighborhood.len()];
        LocalRule::from_fn(self.alphabet, neighborhood, |local| {
            for (&j, &s) in keep.iter().zip(local) {
                full[j] = s;
            }
            self.apply(&full)
        })
        .expect("restriction of a valid rule")
    }

    /// Re-expresses the rule over a larger neighborhood; the added offsets
    /// become dummies.
    pub fn with_neighborhood(&self, superset: &Neighborhood) -> Result<LocalRule> {
        if !self.neighborhood.is_subset_of(superset) {
            return Err(Error::NeighborhoodMismatch);
        }
        if *superset == self.neighborhood {
            return Ok(self.clone());
        }
        let picks: Vec<usize> =
            self.neighborhood.offsets.iter().map(|o| superset.position(o).expect("subset")).collect();
        let mut own = vec![0; picks.len()];
        LocalRule::from_fn(self.alphabet, superset.clone(), |local| {
            for (slot, &p) in own.iter_mut().zip(&picks) {
                *slot = local[p];
            }
            self.apply(&own)
        })
    }
}

/// Writes the base-`q` digits of `index` into `out`, most significant first.
pub(crate) fn decode_into(mut index: usize, q: usize, out: &mut [State]) {
    for slot in out.iter_mut().rev() {
        *slot = (index % q) as State;
        index /= q;
    }
}

/// JSON form of a rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleDocument {
    pub dimension: usize,
    pub alphabet: usize,
    pub neighborhood: Vec<Vec<i64>>,
    pub table: Vec<State>,
}

impl From<LocalRule> for RuleDocument {
    fn from(rule: LocalRule) -> Self {
        RuleDocument {
            dimension: rule.dimension(),
            alphabet: rule.q(),
            neighborhood: rule.neighborhood.offsets.iter().map(|o| o.0.clone()).collect(),
            table: rule.table,
        }
    }
}

impl TryFrom<RuleDocument> for LocalRule {
    type Error = Error;

    fn try_from(doc: RuleDocument) -> Result<Self> {
        let offsets: Vec<Cell> = doc.neighborhood.into_iter().map(Cell).collect();
        if offsets.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidRule(
                "neighborhood offsets must be listed in increasing lexicographic order".into(),
            ));
        }
        let neighborhood = Neighborhood::new(doc.dimension, offsets)?;
        LocalRule::new(Alphabet::new(doc.alphabet)?, neighborhood, doc.table)
    }
}

impl TryFrom<Value> for LocalRule {
    type Error = Error;

    /// Accepts either a full rule document or the `{"wolfram": n}` shorthand.
    /// Unknown keys are ignored.
    fn try_from(value: Value) -> Result<Self> {
        if let Some(n) = value.get("wolfram") {
            let n = n.as_i64().ok_or_else(|| Error::InvalidRule("\"wolfram\" must be an integer".into()))?;
            return LocalRule::eca_from_wolfram(n);
        }
        let doc: RuleDocument = serde_json::from_value(value).map_err(|e| Error::InvalidRule(e.to_string()))?;
        doc.try_into()
    }
}

impl LocalRule {
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::InvalidRule(e.to_string()))?;
        value.try_into()
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self).expect("rule serializes")
    }
}
