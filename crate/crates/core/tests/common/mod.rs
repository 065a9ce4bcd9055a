//! Strategies and brute-force oracles shared by the integration tests. The
//! oracles only read rule tables; they do not call the procedures under test.
#![allow(dead_code)]

use ca_conjugacy::{Alphabet, Budget, LocalRule, Neighborhood, Sidedness, State};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn budget() -> Budget {
    Budget::default()
}

pub fn rule_from(n: usize, sides: Sidedness, lo: i32, hi: i32, table: Vec<State>) -> LocalRule {
    LocalRule::new(Alphabet::new(n).unwrap(), sides, Neighborhood::new(lo, hi).unwrap(), table).unwrap()
}

/// Random rule with at most `max_states` states and width at most
/// `max_width`.
pub fn arb_rule(max_states: usize, max_width: usize) -> impl Strategy<Value = LocalRule> {
    (1..=max_states, 1..=max_width, any::<bool>(), 0..3i32).prop_flat_map(|(n, w, two, off)| {
        let lo = if two { off - 2 } else { off };
        let sides = if two { Sidedness::TwoSided } else { Sidedness::OneSided };
        let len = n.pow(w as u32);
        proptest::collection::vec(0..n as State, len)
            .prop_map(move |t| rule_from(n, sides, lo, lo + w as i32 - 1, t))
    })
}

pub fn arb_one_sided(n: usize, w: usize) -> impl Strategy<Value = LocalRule> {
    proptest::collection::vec(0..n as State, n.pow(w as u32))
        .prop_map(move |t| rule_from(n, Sidedness::OneSided, 0, w as i32 - 1, t))
}

/// Seeded sample of one-sided radius-1 rules.
pub fn sample_rules(n: usize, count: usize, seed: u64) -> Vec<LocalRule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let t = (0..n * n).map(|_| rng.gen_range(0..n as State)).collect();
            rule_from(n, Sidedness::OneSided, 0, 1, t)
        })
        .collect()
}

/// All one-sided radius-1 rules on `n` states.
pub fn all_radius_one(n: usize) -> Vec<LocalRule> {
    let entries = n * n;
    let total = n.pow(entries as u32);
    (0..total)
        .map(|mut code| {
            let t = (0..entries)
                .map(|_| {
                    let s = (code % n) as State;
                    code /= n;
                    s
                })
                .collect();
            rule_from(n, Sidedness::OneSided, 0, 1, t)
        })
        .collect()
}

pub fn index(w: &[State], n: usize) -> usize {
    w.iter().fold(0, |a, &s| a * n + s as usize)
}

/// Output position `t` reads `w[t..t+width]`.
pub fn naive_apply(rule: &LocalRule, w: &[State]) -> Vec<State> {
    let n = rule.alphabet().size();
    let width = rule.width();
    if w.len() < width {
        return Vec::new();
    }
    (0..=w.len() - width).map(|t| rule.table()[index(&w[t..t + width], n)]).collect()
}

/// Cell `x` reads `c[(x + lo + j) mod p]`.
pub fn naive_cyclic(rule: &LocalRule, c: &[State]) -> Vec<State> {
    let n = rule.alphabet().size();
    let p = c.len() as i64;
    let lo = rule.neighborhood().lo as i64;
    (0..p)
        .map(|x| {
            let win: Vec<State> = (0..rule.width() as i64)
                .map(|j| c[(x + lo + j).rem_euclid(p) as usize])
                .collect();
            rule.table()[index(&win, n)]
        })
        .collect()
}

/// Every word of length `len` over `n` symbols, lexicographically.
pub fn all_words(n: usize, len: usize) -> Vec<Vec<State>> {
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut i| {
            let mut w = vec![0; len];
            for s in w.iter_mut().rev() {
                *s = (i % n) as State;
                i /= n;
            }
            w
        })
        .collect()
}

/// Depth-`depth` columns at cells `[0,k)` of a one-sided rule by direct
/// simulation from every initial word long enough to determine them.
pub fn naive_trace(rule: &LocalRule, k: usize, depth: usize) -> std::collections::BTreeSet<Vec<State>> {
    assert_eq!(rule.neighborhood().lo, 0);
    let n = rule.alphabet().size();
    let len = k + (depth - 1) * (rule.width() - 1);
    all_words(n, len)
        .into_iter()
        .map(|w| {
            let mut row = w;
            let mut col = Vec::with_capacity(depth);
            for t in 0..depth {
                col.push(index(&row[..k], n) as State);
                if t + 1 < depth {
                    row = naive_apply(rule, &row);
                }
            }
            col
        })
        .collect()
}

/// Two random rules over the same alphabet with the same sidedness.
pub fn arb_pair(max_states: usize, max_width: usize) -> impl Strategy<Value = (LocalRule, LocalRule)> {
    (1..=max_states, any::<bool>()).prop_flat_map(move |(n, two)| {
        let sides = if two { Sidedness::TwoSided } else { Sidedness::OneSided };
        let one = move || {
            (1..=max_width, 0..3i32).prop_flat_map(move |(w, off)| {
                let lo = if two { off - 2 } else { off };
                proptest::collection::vec(0..n as State, n.pow(w as u32))
                    .prop_map(move |t| rule_from(n, sides, lo, lo + w as i32 - 1, t))
            })
        };
        (one(), one())
    })
}
