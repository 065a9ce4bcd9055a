mod common;

use std::collections::BTreeSet;

use ca_conjugacy::reduction::{and_rule, example_021_rule};
use ca_conjugacy::trace::{
    block_shift_words, entropy_upper, factored_complexity, subword_complexity, trace_words, trace_words_enumerated,
    trace_words_transfer,
};
use ca_conjugacy::{LocalRule, Sidedness, State};
use common::*;
use proptest::prelude::*;

/// Factors of length `len` of concatenations of the blocks, read at every
/// offset of a long enough concatenation.
fn oracle_block_words(blocks: &[&[State]], len: usize) -> BTreeSet<Vec<State>> {
    let b = blocks[0].len();
    let count = len / b + 2;
    let mut out = BTreeSet::new();
    for code in 0..blocks.len().pow(count as u32) {
        let mut c = code;
        let mut concat = Vec::new();
        for _ in 0..count {
            concat.extend_from_slice(blocks[c % blocks.len()]);
            c /= blocks.len();
        }
        for start in 0..b {
            out.insert(concat[start..start + len].to_vec());
        }
    }
    out
}

#[test]
fn example_trace_small_depths() {
    let f = example_021_rule();
    let b = budget();
    assert_eq!(subword_complexity(&f, 1, 1, &b).unwrap(), 3);
    let t2 = trace_words(&f, 1, 2, &b).unwrap();
    let expect: BTreeSet<Vec<State>> = [[0, 0], [0, 1], [1, 2], [2, 0], [2, 1]].iter().map(|w| w.to_vec()).collect();
    assert_eq!(t2.word_set(), expect);
    assert_eq!(subword_complexity(&f, 1, 4, &b).unwrap(), 11);
    let ff = LocalRule::product(&f, &f, &b).unwrap();
    assert_eq!(subword_complexity(&ff, 1, 2, &b).unwrap(), 25);
}

#[test]
fn example_language_is_block_shift() {
    let f = example_021_rule();
    let b = budget();
    let blocks = vec![vec![0, 0], vec![1, 2]];
    for depth in 1..=10 {
        let got = trace_words(&f, 1, depth, &b).unwrap().word_set();
        assert_eq!(got, block_shift_words(&blocks, depth).unwrap(), "L={depth}");
        assert_eq!(got, oracle_block_words(&[&[0, 0], &[1, 2]], depth), "L={depth}");
    }
}

#[test]
fn block_shift_examples() {
    let w = |v: &[&[State]]| v.iter().map(|x| x.to_vec()).collect::<BTreeSet<_>>();
    assert_eq!(block_shift_words(&[vec![0]], 4).unwrap(), w(&[&[0, 0, 0, 0]]));
    assert_eq!(block_shift_words(&[vec![0, 1]], 3).unwrap(), w(&[&[0, 1, 0], &[1, 0, 1]]));
    assert!(block_shift_words(&[], 3).is_err());
    assert!(block_shift_words(&[vec![0], vec![1, 2]], 3).is_err());
}

#[test]
fn and_rule_counts() {
    for depth in 1..=8 {
        assert_eq!(subword_complexity(&and_rule(), 1, depth, &budget()).unwrap(), depth + 1);
    }
}

#[test]
fn entropy_bounds_of_simple_rules() {
    let b = budget();
    let f = example_021_rule();
    let id = LocalRule::identity(f.alphabet().clone(), Sidedness::OneSided);
    let rep = entropy_upper(&id, 1, 5, &b).unwrap();
    for r in &rep.rows {
        assert_eq!(r.count, 3);
        assert!((r.bound - 3f64.log2() / r.depth as f64).abs() < 1e-12);
    }
    let s = LocalRule::shift(ca_conjugacy::Alphabet::new(2).unwrap(), Sidedness::OneSided);
    let rep = entropy_upper(&s, 1, 6, &b).unwrap();
    assert!(rep.rows.iter().all(|r| r.count == 1 << r.depth && (r.bound - 1.0).abs() < 1e-12));
    let rep = entropy_upper(&f, 1, 8, &b).unwrap();
    assert!(rep.rows.iter().all(|r| r.bound >= 0.5));
    assert!((rep.rows[1].bound - 5f64.log2() / 2.0).abs() < 1e-12);
}

#[test]
fn two_sided_trace_matches_simulation() {
    let b = budget();
    for code in [30u32, 90, 110, 184] {
        let table = (0..8).map(|i| (code >> i) & 1).collect();
        let r = rule_from(2, Sidedness::TwoSided, -1, 1, table);
        let shifted = rule_from(2, Sidedness::OneSided, 0, 2, r.table().to_vec());
        for depth in 1..=5 {
            // Reading cells [-1,1] from 0 is the same as reading [0,2] from 1.
            let got = trace_words(&r, 1, depth, &b).unwrap().word_set();
            let oracle: BTreeSet<Vec<State>> = all_words(2, 1 + 2 * (depth - 1))
                .into_iter()
                .map(|w| {
                    let mut row = w;
                    let mut col = Vec::new();
                    for _ in 0..depth {
                        col.push(row[row.len() / 2]);
                        if row.len() >= 3 {
                            row = naive_apply(&shifted, &row);
                        }
                    }
                    col
                })
                .collect();
            assert_eq!(got, oracle, "rule {code} L={depth}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn routes_agree_with_simulation(r in (1usize..=3).prop_flat_map(|n| arb_one_sided(n, 2)), k in 1usize..=2, depth in 1usize..=5) {
        let b = budget();
        let oracle = naive_trace(&r, k, depth);
        prop_assert_eq!(trace_words_transfer(&r, k, depth, &b).unwrap().word_set(), oracle.clone());
        prop_assert_eq!(trace_words_enumerated(&r, k, depth, &b).unwrap().word_set(), oracle);
    }

    #[test]
    fn wider_rules_against_simulation(r in (1usize..=2).prop_flat_map(|n| arb_one_sided(n, 3)), depth in 1usize..=4) {
        prop_assert_eq!(trace_words(&r, 1, depth, &budget()).unwrap().word_set(), naive_trace(&r, 1, depth));
    }

    #[test]
    fn radius_step(r in (1usize..=3).prop_flat_map(|n| arb_one_sided(n, 2)), depth in 1usize..=5) {
        let b = budget();
        let n = r.alphabet().size();
        let radius = r.width() - 1;
        prop_assert_eq!(
            subword_complexity(&r, radius + 1, depth, &b).unwrap(),
            n * subword_complexity(&r, radius, depth, &b).unwrap()
        );
    }

    #[test]
    fn product_multiplicativity(f in arb_one_sided(3, 2), g in arb_one_sided(2, 2), depth in 1usize..=5) {
        let b = budget();
        let fg = LocalRule::product(&f, &g, &b).unwrap();
        let whole = subword_complexity(&fg, 1, depth, &b).unwrap() as u128;
        let pf = subword_complexity(&f, 1, depth, &b).unwrap() as u128;
        let pg = subword_complexity(&g, 1, depth, &b).unwrap() as u128;
        prop_assert_eq!(whole, pf * pg);
        prop_assert_eq!(factored_complexity(&fg, 1, depth, &b).unwrap(), whole);
    }

    #[test]
    fn factor_monotonicity(f in arb_one_sided(3, 2), map in proptest::collection::vec(0u32..2, 3), depth in 1usize..=5) {
        let t = trace_words(&f, 1, depth, &budget()).unwrap();
        let image = t.map_symbols(|s| map[s as usize], 2);
        prop_assert!(image.len() <= t.count());
    }

    #[test]
    fn subadditivity(f in (1usize..=3).prop_flat_map(|n| arb_one_sided(n, 2))) {
        let b = budget();
        let p: Vec<f64> = (1..=6).map(|d| (subword_complexity(&f, 1, d, &b).unwrap() as f64).log2()).collect();
        for m in 1..=3 {
            for n in 1..=3 {
                prop_assert!(p[m + n - 1] <= p[m - 1] + p[n - 1] + 1e-9);
            }
        }
    }
}
