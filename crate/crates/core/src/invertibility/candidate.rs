//! The single candidate inverse of a rule.
//!
//! Any inverse, under either scheme, has to undo every single-cell flip at
//! cell 0: if `δ(ℓ) != ℓ(0)` then `γ` applied to `ℓ` with its center replaced
//! by `δ(ℓ)` must return `ℓ(0)`. Those constraints are collected here;
//! conflicting constraints mean no inverse exists. Entries no flip reaches
//! default to the identity.

use crate::config::WindowConfig;
use crate::rule::{Cell, LocalRule, Neighborhood, State};

/// Two configurations over `{0} ∪ N` that differ only at cell 0 and have the
/// same image under `Δ_{0}`, while both change cell 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationConflict {
    pub first: WindowConfig,
    pub second: WindowConfig,
}

/// Builds the candidate inverse over the rule's own neighborhood.
pub fn derive_candidate_inverse(rule: &LocalRule) -> Result<LocalRule, DerivationConflict> {
    let q = rule.q();
    let len = rule.table().len();
    // constraint per table entry: (required value, preimage center, preimage table index)
    let mut constraints: Vec<Option<(State, State, usize)>> = vec![None; len];
    let mut add = |target: usize, value: State, center: State, source: usize| match constraints[target] {
        None => {
            constraints[target] = Some((value, center, source));
            Ok(())
        }
        Some((v, _, _)) if v == value => Ok(()),
        Some((_, other_center, other_source)) => Err((other_source, other_center, source, center)),
    };

    let center = rule.neighborhood().center();
    let mut result = Ok(());
    'scan: for index in 0..len {
        let mut local = rule.local_at(index);
        let image = rule.lookup(index);
        match center {
            Some(c) => {
                let before = local[c];
                if image != before {
                    local[c] = image;
                    if let Err(e) = add(rule.index_of(&local), before, before, index) {
                        result = Err(e);
                        break 'scan;
                    }
                }
            }
            None => {
                for before in (0..q as State).filter(|&x| x != image) {
                    if let Err(e) = add(index, before, before, index) {
                        result = Err(e);
                        break 'scan;
                    }
                }
            }
        }
    }

    if let Err((first_index, first_center, second_index, second_center)) = result {
        return Err(DerivationConflict {
            first: preimage_window(rule, first_index, first_center),
            second: preimage_window(rule, second_index, second_center),
        });
    }

    let table = constraints
        .iter()
        .enumerate()
        .map(|(index, constraint)| match (constraint, center) {
            (Some((value, _, _)), _) => *value,
            (None, Some(c)) => rule.local_at(index)[c],
            (None, None) => 0,
        })
        .collect();
    Ok(LocalRule::new(rule.alphabet(), rule.neighborhood().clone(), table).expect("same shape as the rule"))
}

/// The configuration over `{0} ∪ N` holding the local configuration at
/// `index` and `center` at cell 0.
fn preimage_window(rule: &LocalRule, index: usize, center: State) -> WindowConfig {
    let n: &Neighborhood = rule.neighborhood();
    let origin = Cell::origin(n.dimension());
    let local = rule.local_at(index);
    let mut pairs: Vec<(Cell, State)> = n.offsets().iter().cloned().zip(local).collect();
    match n.center() {
        Some(c) => debug_assert_eq!(pairs[c].1, center),
        None => pairs.push((origin, center)),
    }
    WindowConfig::from_pairs(pairs).expect("distinct cells")
}
