mod common;

use ca_conjugacy::{Alphabet, CyclicConfig, LocalRule, Neighborhood, Sidedness};
use common::*;
use proptest::prelude::*;

fn f() -> LocalRule {
    ca_conjugacy::reduction::example_021_rule()
}

fn a3() -> Alphabet {
    Alphabet::new(3).unwrap()
}

#[test]
fn apply_word_examples() {
    assert_eq!(f().apply_word(&[1, 0]).unwrap(), vec![2]);
    assert_eq!(f().apply_word(&[0, 1]).unwrap(), vec![1]);
    let id = LocalRule::identity(a3(), Sidedness::OneSided);
    assert_eq!(id.apply_word(&[0, 1, 2, 0]).unwrap(), vec![0, 1, 2, 0]);
    assert!(f().apply_word(&[1]).is_err());
}

#[test]
fn apply_cyclic_examples() {
    let c = |w: &[u32]| CyclicConfig::new(w.to_vec()).unwrap();
    assert_eq!(f().apply_cyclic(&c(&[0])).word(), &[0]);
    assert_eq!(f().apply_cyclic(&c(&[1, 2])).word(), &[2, 0]);
    let s = LocalRule::shift(a3(), Sidedness::TwoSided);
    assert_eq!(s.apply_cyclic(&c(&[0, 1, 2])).word(), &[1, 2, 0]);
}

#[test]
fn shift_algebra() {
    let b = budget();
    let s = LocalRule::shift(a3(), Sidedness::OneSided);
    let s2 = LocalRule::compose(&s, &s, &b).unwrap();
    assert_eq!(s2.width(), 3);
    for w in all_words(3, 3) {
        assert_eq!(s2.lookup(&w), w[2]);
    }
    let s3 = s.power(3, &b).unwrap();
    assert_eq!(s3.apply_word(&[0, 1, 2, 0, 1]).unwrap(), vec![0, 1]);
    let id = LocalRule::identity(a3(), Sidedness::OneSided);
    assert!(s.power(0, &b).unwrap().equals(&id));
}

#[test]
fn power_budget_is_reported() {
    let tight = ca_conjugacy::Budget {
        max_table: 1000,
        ..budget()
    };
    let err = f().power(10, &tight).unwrap_err();
    assert!(err.is_budget());
}

#[test]
fn equality_examples() {
    let id1 = LocalRule::identity(a3(), Sidedness::OneSided);
    let id2 = id1.pad(Neighborhood::new(0, 1).unwrap()).unwrap();
    assert!(id1.equals(&id2));
    let s = LocalRule::shift(a3(), Sidedness::OneSided);
    assert!(!f().equals(&s));
    let inv = ca_conjugacy::reduction::example_021_inverse();
    assert!(LocalRule::compose(&f(), &inv, &budget()).unwrap().equals(&id1));
}

#[test]
fn classify_examples() {
    let and = ca_conjugacy::reduction::and_rule();
    let c = and.classify_state(0).unwrap();
    assert!(c.quiescent && c.spreading);
    let c = f().classify_state(0).unwrap();
    assert!(c.quiescent && !c.spreading);
    let s = LocalRule::shift(Alphabet::new(2).unwrap(), Sidedness::OneSided);
    let c = s.classify_state(0).unwrap();
    assert!(c.quiescent && !c.spreading);
    assert!(f().classify_state(3).is_err());
}

#[test]
fn product_examples() {
    let b = budget();
    let id = LocalRule::identity(a3(), Sidedness::OneSided);
    let idid = LocalRule::product(&id, &id, &b).unwrap();
    assert!(idid.equals(&LocalRule::identity(Alphabet::new(9).unwrap(), Sidedness::OneSided)));
    let h = ca_conjugacy::reduction::chain_rule();
    let fh = LocalRule::product(&f(), &h, &b).unwrap();
    assert!(fh.project(0).unwrap().equals(&f()));
    assert!(fh.project(1).unwrap().equals(&h));
}

#[test]
fn chain_square_is_constant() {
    let h = ca_conjugacy::reduction::chain_rule();
    let h2 = h.power(2, &budget()).unwrap();
    for w in all_words(3, 3) {
        assert_eq!(naive_apply(&h, &naive_apply(&h, &w)), vec![0]);
        assert_eq!(h2.lookup(&w), 0);
    }
}

proptest! {
    #[test]
    fn shift_commutation(r in arb_rule(3, 3), word in proptest::collection::vec(0u32..3, 1..9)) {
        let n = r.alphabet().size() as u32;
        let word: Vec<u32> = word.into_iter().map(|s| s % n).collect();
        let c = CyclicConfig::new(word).unwrap();
        let lhs = r.apply_cyclic(&c.rotate(1));
        let rhs = r.apply_cyclic(&c).rotate(1);
        prop_assert_eq!(lhs.word(), rhs.word());
        let direct = r.apply_cyclic(&c);
        prop_assert_eq!(direct.word().to_vec(), naive_cyclic(&r, c.word()));
    }

    #[test]
    fn composition_soundness(
        (g, f, w) in (1usize..=3).prop_flat_map(|n| (arb_one_sided(n, 3), arb_one_sided(n, 2), proptest::collection::vec(0..n as u32, 0..=12)))
    ) {
        let gf = LocalRule::compose(&g, &f, &budget()).unwrap();
        prop_assert_eq!(gf.width(), g.width() + f.width() - 1);
        let expect = naive_apply(&g, &naive_apply(&f, &w));
        if w.len() >= gf.width() {
            prop_assert_eq!(gf.apply_word(&w).unwrap(), expect);
        }
    }

    #[test]
    fn cyclic_composition((r, s) in arb_pair(3, 2)) {
        let rs = LocalRule::compose(&r, &s, &budget()).unwrap();
        prop_assert_eq!(rs.neighborhood(), r.neighborhood().sum(&s.neighborhood()));
        for w in all_words(r.alphabet().size(), 5) {
            let out = rs.apply_cyclic(&CyclicConfig::new(w.clone()).unwrap());
            prop_assert_eq!(out.word().to_vec(), naive_cyclic(&r, &naive_cyclic(&s, &w)));
        }
    }

    #[test]
    fn power_additivity(r in arb_rule(3, 2), m in 0usize..3, n in 0usize..3) {
        let b = budget();
        let lhs = r.power(m + n, &b).unwrap();
        let rhs = LocalRule::compose(&r.power(m, &b).unwrap(), &r.power(n, &b).unwrap(), &b).unwrap();
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn product_projection_roundtrip(a in arb_one_sided(3, 2), b in arb_one_sided(2, 1)) {
        let p = LocalRule::product(&a, &b, &budget()).unwrap();
        prop_assert!(p.project(0).unwrap().equals(&a));
        prop_assert!(p.project(1).unwrap().equals(&b));
        prop_assert_eq!(p.factor_tracks().unwrap().len(), 2);
    }

    #[test]
    fn padding_invariance((r, s) in arb_pair(3, 2), extra in 0i32..2) {
        prop_assert!(r.equals(&r));
        prop_assert_eq!(r.equals(&s), s.equals(&r));
        let nb = r.neighborhood();
        let padded = r.pad(Neighborhood::new(nb.lo - if r.sidedness() == Sidedness::TwoSided { extra } else { 0 }, nb.hi + extra).unwrap()).unwrap();
        prop_assert!(padded.equals(&r));
        prop_assert!(padded.trim().equals(&r));
        prop_assert_eq!(padded.equals(&s), r.equals(&s));
    }

    #[test]
    fn rule_text_roundtrip(r in arb_rule(3, 3)) {
        let text = r.to_string();
        let back = ca_conjugacy::format::parse_rule(&text).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(back.to_string(), text);
    }
}
