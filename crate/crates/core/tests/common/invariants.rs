//! Exhaustive invariant checks. Each returns a short description of what was
//! covered, or the first counterexample.

#![allow(dead_code)]

use aca_core::invertibility::{
    decide_purely, derive_candidate_inverse, r2_counterexample, Clause, DecideOptions, FullyTestWindow, Witness,
};
use aca_core::nakamura::{build_bar_pair, embed_ring, BarLocal, BarState};
use aca_core::simulate::Ring;
use aca_core::{step, ActivationSet, Cell, LocalRule, Neighborhood, State, WindowConfig};

pub type Outcome = Result<String, String>;

pub fn eca(n: u8) -> LocalRule {
    LocalRule::eca_from_wolfram(n as i64).unwrap()
}

pub fn all_eca() -> impl Iterator<Item = LocalRule> {
    (0..=255u8).map(eca)
}

/// Every binary window on the cells `lo..=hi`.
pub fn binary_windows(lo: i64, hi: i64) -> impl Iterator<Item = WindowConfig> {
    let len = (hi - lo + 1) as u32;
    (0..1u32 << len).map(move |bits| {
        let states: Vec<State> = (0..len).map(|k| (bits >> (len - 1 - k) & 1) as State).collect();
        WindowConfig::line(lo, &states)
    })
}

fn active(cells: &[i64]) -> ActivationSet {
    cells.iter().map(|&x| Cell::at(x)).collect()
}

/// All subsets of `{-1, 0, 1}`.
fn small_activations() -> Vec<ActivationSet> {
    (0..8u8)
        .map(|m| {
            let cells: Vec<i64> =
                [-1, 0, 1].into_iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).map(|(_, x)| x).collect();
            active(&cells)
        })
        .collect()
}

pub fn empty_activation_identity() -> Outcome {
    let mut cases = 0;
    for rule in all_eca() {
        for w in binary_windows(-2, 2) {
            if step(&rule, &w, &ActivationSet::empty()).unwrap() != w {
                return Err(format!("{rule:?} changed {w:?} with no active cell"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} rule/window pairs"))
}

pub fn translation_commutation() -> Outcome {
    let mut cases = 0;
    let acts = small_activations();
    for rule in all_eca() {
        for w in binary_windows(-2, 2) {
            for a in &acts {
                let image = step(&rule, &w, a).unwrap();
                for j in [-1, 0, 1] {
                    let j = Cell::at(j);
                    let shifted = step(&rule, &w.translate(&j), &a.translate(&j)).unwrap();
                    if shifted != image.translate(&j) {
                        return Err(format!("{rule:?}, window {w:?}, active {a:?}, shift {j}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} cases"))
}

pub fn wolfram_round_trip() -> Outcome {
    for n in 0..=255u8 {
        let back = eca(n).wolfram_number().map_err(|e| e.to_string())?;
        if back != n {
            return Err(format!("{n} came back as {back}"));
        }
    }
    Ok("256/256".into())
}

pub fn minimize_idempotence() -> Outcome {
    let wide = Neighborhood::line(-2..=2).unwrap();
    for rule in all_eca() {
        let m = rule.minimize_neighborhood();
        if m.minimize_neighborhood() != m {
            return Err(format!("{rule:?} minimizes differently twice"));
        }
        if rule.with_neighborhood(&wide).unwrap().minimize_neighborhood() != m {
            return Err(format!("{rule:?} minimizes differently after adding dummies"));
        }
    }
    Ok("256 rules, with and without dummy offsets".into())
}

pub fn dummy_neighbor_invariance() -> Outcome {
    let padded = Neighborhood::line([-2, -1, 0, 1]).unwrap();
    let options = DecideOptions::default();
    for rule in all_eca() {
        let plain = decide_purely(&rule, &options).map_err(|e| e.to_string())?.verdict;
        let wide = rule.with_neighborhood(&padded).unwrap();
        let with_dummy = decide_purely(&wide, &options).map_err(|e| e.to_string())?.verdict;
        if plain != with_dummy {
            return Err(format!("{rule:?}: {plain} vs {with_dummy} with a dummy at -2"));
        }
    }
    Ok("256 rules".into())
}

pub fn r2_validity() -> Outcome {
    let mut witnesses = 0;
    for rule in all_eca() {
        let w = r2_counterexample(&rule).map_err(|e| e.to_string())?;
        match w {
            None if rule.is_trivial() => {}
            None => return Err(format!("{rule:?} is non-trivial but has no witness")),
            Some(w) => {
                let a = step(&rule, &w.hat, &ActivationSet::single(w.hat_active.clone())).unwrap();
                let b = step(&rule, &w.check, &ActivationSet::single(w.check_active.clone())).unwrap();
                if w.hat == w.check || a != b || a != w.image {
                    return Err(format!("{rule:?}: invalid witness {w:?}"));
                }
                witnesses += 1;
            }
        }
    }
    Ok(format!("{witnesses} witnesses, 1 trivial rule"))
}

/// Pairs `(C, G)` used for the bar-construction checks: every elementary
/// rule with its derived candidate, plus the known synchronous inverse pairs.
fn bar_pairs() -> Vec<(LocalRule, LocalRule)> {
    let mut pairs: Vec<_> = all_eca()
        .map(|c| {
            let g = derive_candidate_inverse(&c).expect("binary rules never conflict");
            (c, g)
        })
        .collect();
    pairs.extend([(eca(204), eca(204)), (eca(51), eca(51)), (eca(170), eca(240)), (eca(240), eca(170))]);
    pairs
}

fn bar_locals(q: usize, len: u32) -> impl Iterator<Item = Vec<BarState>> {
    let size = 3 * q * q;
    (0..size.pow(len)).map(move |mut k| {
        let mut v = vec![BarState::new(0, 0, 0); len as usize];
        for slot in v.iter_mut().rev() {
            *slot = BarState::decode((k % size) as State, q);
            k /= size;
        }
        v
    })
}

pub fn bar_time_stamp_monotonicity() -> Outcome {
    let pairs = bar_pairs();
    for (c, g) in &pairs {
        let bar = build_bar_pair(c, g).map_err(|e| e.to_string())?;
        let center = bar.bar_c().neighborhood().center().unwrap();
        let q = c.q();
        for local in bar_locals(q, bar.bar_c().neighborhood().len() as u32) {
            let here = local[center];
            let codes: Vec<State> = local.iter().map(|s| s.encode(q)).collect();
            let fwd = BarState::decode(bar.bar_c().apply(&codes), q);
            let bwd = BarState::decode(bar.bar_g().apply(&codes), q);
            let l = BarLocal::new(&local, center);
            let fwd_ok = fwd == here
                || l.curr_local().is_ok_and(|cur| fwd == BarState::new(c.apply(&cur), here.curr, here.time + 1));
            let bwd_ok = bwd == here
                || l.old_local().is_ok_and(|old| bwd == BarState::new(here.old, g.apply(&old), here.time + 2));
            if !fwd_ok || !bwd_ok {
                return Err(format!("{c:?}/{g:?} at {local:?}"));
            }
        }
    }
    Ok(format!("{} rule pairs, every bar local configuration", pairs.len()))
}

pub fn bar_local_undo() -> Outcome {
    let pairs = bar_pairs();
    for (c, g) in &pairs {
        let bar = build_bar_pair(c, g).map_err(|e| e.to_string())?;
        let center = bar.bar_c().neighborhood().center().unwrap();
        let q = c.q();
        for local in bar_locals(q, bar.bar_c().neighborhood().len() as u32) {
            let codes: Vec<State> = local.iter().map(|s| s.encode(q)).collect();
            for (there, back) in [(bar.bar_c(), bar.bar_g()), (bar.bar_g(), bar.bar_c())] {
                let moved = there.apply(&codes);
                if moved == codes[center] {
                    continue;
                }
                let mut after = codes.clone();
                after[center] = moved;
                if back.apply(&after) != codes[center] {
                    return Err(format!("{c:?}/{g:?}: move at {local:?} is not undone"));
                }
            }
        }
    }
    Ok(format!("{} rule pairs, both directions", pairs.len()))
}

pub fn lockstep() -> Outcome {
    let pairs = bar_pairs();
    let mut cases = 0;
    for (c, g) in &pairs {
        let bar = build_bar_pair(c, g).map_err(|e| e.to_string())?;
        let q = c.q();
        for size in 1..=8usize {
            for bits in 0..1u32 << size {
                let ring = Ring((0..size).map(|k| (bits >> k & 1) as State).collect());
                let next = ring.step_all(c).unwrap();
                for t in 0..3u8 {
                    let lifted = embed_ring(&ring, g, t).map_err(|e| e.to_string())?;
                    let stepped = lifted.step_all(bar.bar_c()).unwrap();
                    let expected =
                        Ring((0..size).map(|i| BarState::new(next.0[i], ring.0[i], t + 1).encode(q)).collect());
                    if stepped != expected {
                        return Err(format!("{c:?}/{g:?}, ring {ring:?}, time {t}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} ring/time cases, sizes 1..=8"))
}

/// Replays a checker witness for the pair `(c, g)`: the reported clause
/// must actually fail on the reported window. Candidate cells for the
/// fixed-point clauses are taken from `c`'s neighborhood.
pub fn replays(c: &LocalRule, g: &LocalRule, w: &Witness) -> bool {
    let cands = FullyTestWindow::new(c.neighborhood(), c.q()).unwrap();
    let delta = |x: &WindowConfig| step(c, x, &w.active).unwrap();
    let gamma = |x: &WindowConfig| step(g, x, &w.active).unwrap();
    let all_changed = |x: &WindowConfig, y: &WindowConfig| w.active.cells().all(|a| x.get(a) != y.get(a));
    let fixed_somewhere = |rule: &LocalRule, x: &WindowConfig| {
        cands.candidates().iter().any(|a| step(rule, x, &ActivationSet::single(a.clone())).unwrap() == *x)
    };
    let x = &w.window;
    match w.clause {
        Clause::PurelyForward | Clause::Eq1Forward => {
            let y = delta(x);
            all_changed(x, &y) && gamma(&y) != *x
        }
        Clause::PurelyBackward | Clause::Eq1Backward => {
            let y = gamma(x);
            all_changed(x, &y) && delta(&y) != *x
        }
        Clause::Eq2Delta => delta(x) == *x && !fixed_somewhere(g, x),
        Clause::Eq2Gamma => gamma(x) == *x && !fixed_somewhere(c, x),
        Clause::DerivationConflict => {
            let p = w.partner.as_ref().expect("conflicts carry a partner");
            p != x && delta(x) == delta(p)
        }
    }
}
