//! Two distinct configurations with a common successor.
//!
//! For a non-trivial rule pick a local configuration `ℓ` with
//! `q' = δ(ℓ) != ℓ(0) = q` and a cell `a` far enough from the origin that
//! `-a + N` and `a + N` are disjoint. Both `-a` and `a` observe `ℓ` in the
//! background configuration; `ĉ` sets `-a` to `q'` and `č` sets `a` to `q'`.
//! Activating `a` in `ĉ` and `-a` in `č` yields the same configuration.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::config::{step, ActivationSet, WindowConfig};
use crate::error::{Error, Result};
use crate::rule::{Cell, LocalRule, State};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct R2Witness {
    pub hat: WindowConfig,
    pub hat_active: Cell,
    pub check: WindowConfig,
    pub check_active: Cell,
    /// The common successor.
    pub image: WindowConfig,
}

/// Returns `None` for the trivial rule `δ(ℓ) = ℓ(0)`.
pub fn r2_counterexample(rule: &LocalRule) -> Result<Option<R2Witness>> {
    let n = rule.neighborhood();
    let center = n.center().ok_or(Error::CenterNotInNeighborhood)?;
    let Some(index) = (0..rule.table().len()).find(|&i| rule.lookup(i) != rule.local_at(i)[center]) else {
        return Ok(None);
    };
    let local = rule.local_at(index);
    let flipped = rule.lookup(index);
    let d = rule.dimension();

    let along = |t: i64| {
        let mut coords = vec![0; d];
        coords[0] = t;
        Cell::new(coords)
    };
    let a = (1..)
        .map(along)
        .find(|a| {
            let left: BTreeSet<Cell> = n.around(&-a).collect();
            n.around(a).all(|c| !left.contains(&c))
        })
        .expect("far enough cells exist");
    let minus_a = -&a;

    let mut background: Vec<(Cell, State)> = Vec::new();
    for base in [&minus_a, &a] {
        background.extend(n.offsets().iter().map(|o| base + o).zip(local.iter().copied()));
    }
    let covered: BTreeSet<Cell> = background.iter().map(|(c, _)| c.clone()).collect();
    let base = WindowConfig::from_pairs(background).expect("disjoint neighborhoods").padded(bounding_box(&covered), 0);

    let mut hat = base.clone();
    hat.set(&minus_a, flipped)?;
    let mut check = base;
    check.set(&a, flipped)?;

    let image = step(rule, &hat, &ActivationSet::single(a.clone()))?;
    let other = step(rule, &check, &ActivationSet::single(minus_a.clone()))?;
    assert!(hat != check && image == other, "two-predecessor construction failed");
    Ok(Some(R2Witness { hat, hat_active: a, check, check_active: minus_a, image }))
}

fn bounding_box(cells: &BTreeSet<Cell>) -> Vec<Cell> {
    let d = cells.first().map_or(0, Cell::dimension);
    let lo: Vec<i64> = (0..d).map(|k| cells.iter().map(|c| c.coords()[k]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|k| cells.iter().map(|c| c.coords()[k]).max().unwrap()).collect();
    let mut out = vec![Vec::new()];
    for k in 0..d {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (lo[k]..=hi[k]).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(Cell::new).collect()
}
