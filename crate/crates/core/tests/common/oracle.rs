//! Naive reference deciders for one-dimensional rules, written directly from
//! the definitions and sharing no code with the library beyond reading a
//! rule's offsets and table.

#![allow(dead_code)]

use aca_core::LocalRule;

/// A 1-D rule as plain data: offsets and a table indexed mixed-radix over
/// the offsets, first offset most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plain {
    pub q: usize,
    pub offsets: Vec<i64>,
    pub table: Vec<u16>,
}

/// A configuration on the cells `lo..lo + states.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conf {
    lo: i64,
    states: Vec<u16>,
}

impl Conf {
    fn at(&self, cell: i64) -> u16 {
        self.states[(cell - self.lo) as usize]
    }

    fn put(&mut self, cell: i64, s: u16) {
        self.states[(cell - self.lo) as usize] = s;
    }
}

impl Plain {
    pub fn of(rule: &LocalRule) -> Plain {
        Plain {
            q: rule.q(),
            offsets: rule.neighborhood().offsets().iter().map(|c| c.coords()[0]).collect(),
            table: rule.table().to_vec(),
        }
    }

    /// Every table over `offsets` with `q` states.
    pub fn all(q: usize, offsets: &[i64]) -> Vec<Plain> {
        let len = q.pow(offsets.len() as u32);
        (0..q.pow(len as u32))
            .map(|mut n| {
                let mut table = vec![0; len];
                for slot in table.iter_mut() {
                    *slot = (n % q) as u16;
                    n /= q;
                }
                Plain { q, offsets: offsets.to_vec(), table }
            })
            .collect()
    }

    fn value(&self, c: &Conf, cell: i64) -> u16 {
        let mut index = 0;
        for o in &self.offsets {
            index = index * self.q + c.at(cell + o) as usize;
        }
        self.table[index]
    }

    /// `Δ_A(c)`.
    fn step(&self, c: &Conf, active: &[i64]) -> Conf {
        let mut next = c.clone();
        for &a in active {
            next.put(a, self.value(c, a));
        }
        next
    }
}

fn sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort();
    v.dedup();
    v
}

/// Calls `f` on every configuration over `cells`; cells in the bounding box
/// but outside `cells` stay 0. Stops early when `f` returns false.
fn for_all_confs(q: usize, cells: &[i64], mut f: impl FnMut(&Conf) -> bool) -> bool {
    let lo = cells[0];
    let mut c = Conf { lo, states: vec![0; (cells[cells.len() - 1] - lo + 1) as usize] };
    loop {
        if !f(&c) {
            return false;
        }
        let mut k = cells.len();
        loop {
            if k == 0 {
                return true;
            }
            k -= 1;
            let s = c.at(cells[k]) + 1;
            if (s as usize) < q {
                c.put(cells[k], s);
                break;
            }
            c.put(cells[k], 0);
        }
    }
}

fn subsets(items: &[i64]) -> Vec<Vec<i64>> {
    (0..1usize << items.len())
        .map(|mask| items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect())
        .collect()
}

/// All `c'` that differ from `c` exactly on `d`.
fn differing_on(c: &Conf, d: &[i64], q: usize) -> Vec<Conf> {
    let mut out = vec![c.clone()];
    for &cell in d {
        let old = c.at(cell);
        out = out
            .into_iter()
            .flat_map(|x| {
                (0..q as u16).filter(move |&s| s != old).map(move |s| {
                    let mut y = x.clone();
                    y.put(cell, s);
                    y
                })
            })
            .collect();
    }
    out
}

/// For every pair `(c, c')` over `{0} ∪ N ∪ (N+N)` whose difference `D`
/// satisfies `0 ∈ D ⊆ {0} ∪ N`: `c' = Δ_D(c)` iff `c = Γ_D(c')`.
pub fn purely_inverse(c: &Plain, g: &Plain) -> bool {
    assert_eq!(c.offsets, g.offsets);
    let n = &c.offsets;
    let mut cells = vec![0];
    cells.extend(n);
    for a in n {
        cells.extend(n.iter().map(|b| a + b));
    }
    let cells = sorted(cells);
    let others: Vec<i64> = n.iter().copied().filter(|&x| x != 0).collect();
    let ds: Vec<Vec<i64>> = subsets(&others).into_iter().map(|s| sorted([vec![0], s].concat())).collect();
    for_all_confs(c.q, &cells, |x| {
        ds.iter().all(|d| differing_on(x, d, c.q).iter().all(|y| (c.step(x, d) == *y) == (g.step(y, d) == *x)))
    })
}

/// Over `{0} ∪ N ∪ A ∪ (A+N)` with the candidate cells `A`: for pairs
/// differing exactly at cell 0, `c' = Δ_{0}(c)` iff `c = Γ_{0}(c')`; and a
/// configuration fixed by one rule at 0 is fixed by the other at some `a ∈ A`.
pub fn fully_inverse(c: &Plain, g: &Plain) -> bool {
    assert_eq!(c.offsets, g.offsets);
    let n = &c.offsets;
    let candidates: Vec<i64> = match n.iter().map(|o| o.abs()).max() {
        None => vec![0],
        Some(m) => {
            let r = (c.q as i64).pow(2 * m as u32 + 1);
            (-r..=r).collect()
        }
    };
    let mut cells = vec![0];
    cells.extend(n);
    for a in &candidates {
        cells.push(*a);
        cells.extend(n.iter().map(|o| a + o));
    }
    let cells = sorted(cells);
    let fixed_at = |rule: &Plain, x: &Conf, a: i64| rule.value(x, a) == x.at(a);
    for_all_confs(c.q, &cells, |x| {
        let eq1 = differing_on(x, &[0], c.q).iter().all(|y| (c.step(x, &[0]) == *y) == (g.step(y, &[0]) == *x));
        let eq2_c = !fixed_at(c, x, 0) || candidates.iter().any(|&a| fixed_at(g, x, a));
        let eq2_g = !fixed_at(g, x, 0) || candidates.iter().any(|&a| fixed_at(c, x, a));
        eq1 && eq2_c && eq2_g
    })
}

/// Invertible iff some table over the same neighborhood is an inverse.
pub fn invertible(c: &Plain, inverse: fn(&Plain, &Plain) -> bool) -> bool {
    Plain::all(c.q, &c.offsets).iter().any(|g| inverse(c, g))
}
