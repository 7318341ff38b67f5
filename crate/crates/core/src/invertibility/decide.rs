use std::time::Instant;

use crate::config::ActivationSet;
use crate::error::{Error, Result};
use crate::rule::{Cell, LocalRule, State};

use super::candidate::derive_candidate_inverse;
use super::fully::check_inverse_fully_1d;
use super::purely::check_inverse_purely;
use super::report::{Clause, DecisionReport, Verdict, Witness};

pub const DEFAULT_WINDOW_CAP: u64 = 1 << 24;
pub const DEFAULT_CANDIDATE_CAP: u64 = 65_536;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    /// Largest number of window configurations a single check may enumerate.
    pub window_cap: u64,
    /// Largest number of candidate tables the exhaustive fallback may try.
    pub candidate_cap: u64,
    /// Try every rule over the minimal neighborhood if the derived candidate
    /// fails.
    pub exhaustive: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { window_cap: DEFAULT_WINDOW_CAP, candidate_cap: DEFAULT_CANDIDATE_CAP, exhaustive: false }
    }
}

/// Decides purely asynchronous phase-space invertibility.
pub fn decide_purely(rule: &LocalRule, options: &DecideOptions) -> Result<DecisionReport> {
    decide_with(rule, options, check_inverse_purely)
}

/// Decides fully asynchronous phase-space invertibility of a one-dimensional
/// rule.
pub fn decide_fully_1d(rule: &LocalRule, options: &DecideOptions) -> Result<DecisionReport> {
    if rule.dimension() != 1 {
        return Err(Error::NotOneDimensional(rule.dimension()));
    }
    decide_with(rule, options, check_inverse_fully_1d)
}

fn decide_with(
    rule: &LocalRule,
    options: &DecideOptions,
    check: fn(&LocalRule, &LocalRule, u64) -> Result<DecisionReport>,
) -> Result<DecisionReport> {
    let started = Instant::now();
    let finish = |mut report: DecisionReport| {
        report.stats.millis = started.elapsed().as_millis() as u64;
        report
    };
    if rule.q() == 1 {
        return Ok(finish(DecisionReport::invertible(rule.clone(), 0)));
    }

    let minimal = rule.minimize_neighborhood();
    let mut report = match derive_candidate_inverse(&minimal) {
        Ok(candidate) => check(&minimal, &candidate, options.window_cap)?,
        Err(conflict) => DecisionReport::not_invertible(
            Witness {
                window: conflict.first,
                active: ActivationSet::single(Cell::origin(rule.dimension())),
                clause: Clause::DerivationConflict,
                partner: Some(conflict.second),
            },
            0,
        ),
    };

    if report.verdict == Verdict::NotInvertible && options.exhaustive {
        let mut windows = report.stats.windows;
        for candidate in all_rules_like(&minimal, options.candidate_cap)? {
            let attempt = check(&minimal, &candidate, options.window_cap)?;
            windows += attempt.stats.windows;
            if attempt.is_invertible() {
                report = attempt;
                break;
            }
        }
        report.stats.windows = windows;
    }

    if let Some(inverse) = report.inverse.take() {
        report.inverse = Some(inverse.with_neighborhood(rule.neighborhood())?);
    }
    if minimal.neighborhood() != rule.neighborhood() {
        if let Some(w) = report.witness.as_mut() {
            pad_for(w, rule);
        }
    }
    Ok(finish(report))
}

/// Every rule with the same alphabet and neighborhood, in table order.
fn all_rules_like(rule: &LocalRule, cap: u64) -> Result<impl Iterator<Item = LocalRule> + '_> {
    let q = rule.q();
    let entries = rule.table().len();
    let count = u32::try_from(entries).ok().and_then(|e| (q as u128).checked_pow(e)).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(Error::ResourceCapExceeded { what: "candidate rules", required: count, cap });
    }
    Ok((0..count as u64).map(move |number| {
        let mut table = vec![0 as State; entries];
        let mut rest = number;
        for slot in table.iter_mut().rev() {
            *slot = (rest % q as u64) as State;
            rest /= q as u64;
        }
        LocalRule::new(rule.alphabet(), rule.neighborhood().clone(), table).expect("valid table")
    }))
}

/// Witness windows come from the minimal neighborhood; extend them with
/// zero-filled cells so the original rule can be replayed on them.
fn pad_for(witness: &mut Witness, rule: &LocalRule) {
    let n = rule.neighborhood();
    let grow = |w: &crate::config::WindowConfig| {
        let extra: Vec<Cell> = w.domain().flat_map(|c| n.around(c).collect::<Vec<_>>()).collect();
        w.padded(extra, 0)
    };
    witness.window = grow(&witness.window);
    if let Some(p) = witness.partner.as_ref() {
        witness.partner = Some(grow(p));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::{Alphabet, Neighborhood};

    fn eca(n: i64) -> LocalRule {
        LocalRule::eca_from_wolfram(n).unwrap()
    }

    fn opts() -> DecideOptions {
        DecideOptions::default()
    }

    #[test]
    fn purely_examples() {
        let r = decide_purely(&eca(0), &opts()).unwrap();
        assert!(r.is_invertible());
        assert_eq!(r.inverse.unwrap().wolfram_number().unwrap(), 255);
        assert_eq!(decide_purely(&eca(33), &opts()).unwrap().verdict, Verdict::NotInvertible);
        assert!(decide_purely(&eca(255), &opts()).unwrap().is_invertible());
    }

    #[test]
    fn fully_examples() {
        // 132 is the bit reversal of 33; see the note on FULLY_INVERTIBLE_ECA
        assert!(decide_fully_1d(&eca(132), &opts()).unwrap().is_invertible());
        assert_eq!(decide_fully_1d(&eca(33), &opts()).unwrap().verdict, Verdict::NotInvertible);
        let r = decide_fully_1d(&eca(0), &opts()).unwrap();
        assert_eq!(r.verdict, Verdict::NotInvertible);
        assert_eq!(r.witness.unwrap().clause, Clause::Eq2Delta);
        assert!(decide_fully_1d(&eca(150), &opts()).unwrap().is_invertible());
    }

    #[test]
    fn exhaustive_agrees_on_small_rules() {
        let ex = DecideOptions { exhaustive: true, ..opts() };
        for n in [0, 33, 35, 90, 110, 204] {
            let rule = eca(n);
            let plain = decide_purely(&rule, &opts()).unwrap();
            let full = decide_purely(&rule, &ex).unwrap();
            assert_eq!(plain.verdict, full.verdict, "rule {n}");
        }
    }

    #[test]
    fn exhaustive_respects_cap() {
        let ex = DecideOptions { exhaustive: true, candidate_cap: 100, ..opts() };
        assert!(matches!(decide_purely(&eca(110), &ex), Err(Error::ResourceCapExceeded { .. })));
    }

    #[test]
    fn single_state_alphabet_is_trivially_invertible() {
        let one = Alphabet::new(1).unwrap();
        let rule = LocalRule::from_fn(one, Neighborhood::elementary(), |_| 0).unwrap();
        assert!(decide_purely(&rule, &opts()).unwrap().is_invertible());
        assert!(decide_fully_1d(&rule, &opts()).unwrap().is_invertible());
    }

    #[test]
    fn conflicting_rule_is_not_invertible() {
        let rule = LocalRule::new(
            Alphabet::new(3).unwrap(),
            Neighborhood::line([-1, 0]).unwrap(),
            vec![0, 0, 0, 1, 1, 1, 2, 0, 0],
        )
        .unwrap();
        let r = decide_purely(&rule, &opts()).unwrap();
        assert_eq!(r.verdict, Verdict::NotInvertible);
        let w = r.witness.unwrap();
        assert_eq!(w.clause, Clause::DerivationConflict);
        assert!(w.partner.is_some());
    }
}
