mod common;

use autorel::definability::{build_equiv, cover};
use autorel::fixtures::{fc, relation, unary, RELATION_NAMES};
use autorel::{
    decompose, kprod_definability, krec_definability, min_prod, AutomaticRelation, Automaton, Product,
    RecognizableRelation, StepBudget, Word,
};
use common::{ab, exhaustive_min_cover, lang, random_language, random_relation, signature_classes};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn product(re1: &str, re2: &str) -> AutomaticRelation {
    AutomaticRelation::product(&lang(&ab(), re1), &lang(&ab(), re2)).unwrap()
}

fn cross() -> AutomaticRelation {
    product("a*", "b*").union(&product("b*", "a*")).unwrap()
}

fn lib_min_cover(m: &[Vec<bool>]) -> usize {
    let rows = cover::matrix_rows(m).unwrap();
    (0..=m.len() * m.len())
        .find(|&k| cover::rectangle_cover(&rows, k, &mut StepBudget::unlimited()).unwrap().is_some())
        .unwrap()
}

/// `~_R` restricted to words up to `len`, with probes up to `probe`.
fn assert_equiv_matches_oracle(r: &AutomaticRelation, len: usize, probe: usize) {
    let e = build_equiv(r).unwrap();
    let words = r.alphabet().words_up_to(len);
    let probes = r.alphabet().words_up_to(probe);
    let cls = signature_classes(&words, &probes, |u, v| r.contains(u, v).unwrap());
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            assert_eq!(e.contains(u, v).unwrap(), cls[i] == cls[j], "{u:?} ~ {v:?}");
        }
    }
}

#[test]
fn equivalence_examples() {
    assert_equiv_matches_oracle(&AutomaticRelation::identity(&ab()).unwrap(), 3, 3);
    assert_equiv_matches_oracle(&product("a*", "b*"), 3, 3);
    assert_equiv_matches_oracle(&cross(), 3, 3);
    let all = build_equiv(&AutomaticRelation::all(&ab()).unwrap()).unwrap();
    assert!(all.equivalent(&AutomaticRelation::all(&ab()).unwrap()).unwrap());
    // a*×b*: same membership in a* and in b*
    let e = build_equiv(&product("a*", "b*")).unwrap();
    for u in ab().words_up_to(3) {
        for v in ab().words_up_to(3) {
            let key = |w: &Word| (w.iter().all(|&x| x == 0), w.iter().all(|&x| x == 1));
            assert_eq!(e.contains(&u, &v).unwrap(), key(&u) == key(&v));
        }
    }
}

#[test]
fn decompose_examples() {
    let d = decompose(&AutomaticRelation::all(&ab()).unwrap(), 3).unwrap();
    assert_eq!(d.representatives, vec![Vec::<u32>::new()]);
    assert_eq!(d.index(), Some(1));

    let d = decompose(&product("a*", "b*"), 8).unwrap();
    assert_eq!(d.representatives, vec![vec![], vec![0], vec![1], vec![0, 1]]);
    assert!(!d.truncated);
    for (c, re) in d.classes.iter().zip(["ε", "aa*", "bb*", "(a|b)*(ab|ba)(a|b)*"]) {
        assert!(c.equivalent(&lang(&ab(), re)).unwrap(), "{re}");
    }

    let d = decompose(&AutomaticRelation::identity(&ab()).unwrap(), 3).unwrap();
    assert!(d.truncated);
    assert_eq!(d.representatives, vec![vec![], vec![0], vec![1], vec![0, 0]]);
    assert_eq!(d.index(), None);
}

#[test]
fn quotient_matrix_agrees_with_class_members() {
    for r in [product("a*", "b*"), cross()] {
        let d = decompose(&r, 8).unwrap();
        let q = d.quotient_matrix().unwrap();
        let members: Vec<Vec<Word>> =
            d.classes.iter().map(|c| c.enumerate(3).unwrap().into_iter().map(|mut t| t.remove(0)).collect()).collect();
        for i in 0..q.size() {
            for j in 0..q.size() {
                for u in &members[i] {
                    for v in &members[j] {
                        assert_eq!(r.contains(u, v).unwrap(), q.get(i, j));
                    }
                }
            }
        }
    }
}

#[test]
fn krec_examples() {
    let r = product("a*", "b*");
    let w = krec_definability(&r, 4).unwrap().expect("four classes");
    assert_eq!(w.partition().len(), 4);
    // reps ε, a, b, ab: pairs are (rep in a*, rep in b*)
    let expect: std::collections::BTreeSet<_> = [(0, 0), (0, 2), (1, 0), (1, 2)].into_iter().collect();
    assert_eq!(w.pairs(), &expect);
    assert!(w.to_automatic().unwrap().equivalent(&r).unwrap());
    // partition matches the signature oracle on words up to 3
    let words = ab().words_up_to(3);
    let cls = signature_classes(&words, &words, |u, v| r.contains(u, v).unwrap());
    let block = |u: &Word| w.partition().iter().position(|b| b.contains(std::slice::from_ref(u)).unwrap()).unwrap();
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            assert_eq!(block(u) == block(v), cls[i] == cls[j]);
        }
    }

    assert!(krec_definability(&r, 3).unwrap().is_none());
    for k in 4..=6 {
        assert!(krec_definability(&r, k).unwrap().is_some());
    }
    let f1 = fc(1).unwrap();
    for k in 1..=6 {
        assert!(krec_definability(&f1, k).unwrap().is_none(), "k = {k}");
    }
    let all = AutomaticRelation::all(&unary()).unwrap();
    assert_eq!(krec_definability(&all, 1).unwrap().unwrap().partition().len(), 1);
}

#[test]
fn kprod_examples() {
    let mut b = StepBudget::unlimited();
    assert!(kprod_definability(&cross(), 1, &mut b).unwrap().is_none());
    let s = kprod_definability(&cross(), 2, &mut b).unwrap().expect("two products");
    assert_eq!(s.len(), 2);
    assert!(s.to_automatic().unwrap().equivalent(&cross()).unwrap());

    let s = kprod_definability(&product("a*", "b*"), 1, &mut b).unwrap().unwrap();
    assert!(s.to_automatic().unwrap().equivalent(&product("a*", "b*")).unwrap());

    let id = AutomaticRelation::identity(&ab()).unwrap();
    for k in 1..=2 {
        assert!(kprod_definability(&id, k, &mut b).unwrap().is_none());
    }
    assert_eq!(min_prod(&product("a*", "b*"), 3, &mut b).unwrap().map(|x| x.0), Some(1));
    assert_eq!(min_prod(&cross(), 3, &mut b).unwrap().map(|x| x.0), Some(2));
    assert!(min_prod(&id, 3, &mut b).unwrap().is_none());
}

#[test]
fn kprod_budget_is_not_a_no() {
    let mut tiny = StepBudget::new(1);
    assert!(matches!(kprod_definability(&cross(), 2, &mut tiny), Err(autorel::Error::Timeout { limit: 1 })));
}

#[test]
fn kprod_witness_is_certified_by_krec() {
    let r = cross();
    let s = kprod_definability(&r, 2, &mut StepBudget::unlimited()).unwrap().unwrap();
    let index = decompose(&r, 16).unwrap().index().unwrap();
    let w = krec_definability(&s.to_automatic().unwrap(), index).unwrap().unwrap();
    assert!(w.to_automatic().unwrap().equivalent(&r).unwrap());
}

#[test]
fn equivalence_laws_on_fixtures() {
    for &name in RELATION_NAMES {
        let r = relation(name, &[]).unwrap();
        let e = build_equiv(&r).unwrap();
        let id = AutomaticRelation::identity(r.alphabet()).unwrap();
        assert!(id.included_in(&e).unwrap(), "{name}: reflexive");
        assert!(e.equivalent(&e.inverse()).unwrap(), "{name}: symmetric");
        assert!(e.compose(&e).unwrap().included_in(&e).unwrap(), "{name}: transitive");
    }
}

#[test]
fn classes_respect_rows_and_columns() {
    for r in [fc(1).unwrap(), product("a*", "b*"), cross(), autorel::fixtures::tree().unwrap()] {
        let e = build_equiv(&r).unwrap();
        let words = r.alphabet().words_up_to(3);
        for u in &words {
            for u2 in &words {
                if !e.contains(u, u2).unwrap() {
                    continue;
                }
                for v in &words {
                    assert_eq!(r.contains(u, v).unwrap(), r.contains(u2, v).unwrap());
                    assert_eq!(r.contains(v, u).unwrap(), r.contains(v, u2).unwrap());
                }
            }
        }
    }
}

#[test]
fn tree_is_not_recognizable() {
    let t = autorel::fixtures::tree().unwrap();
    assert!(krec_definability(&t, 4).unwrap().is_none());
    let d = decompose(&t, 4).unwrap();
    assert!(d.truncated);
    assert_eq!(d.representatives.len(), 5);
}

/// A random union of at most three products of small random languages.
fn random_rec(rng: &mut ChaCha8Rng) -> AutomaticRelation {
    let a = ab();
    let n = rng.gen_range(1..=3);
    let products = (0..n).map(|_| Product::new(random_language(rng, &a, 2).0, random_language(rng, &a, 2).0)).collect();
    RecognizableRelation::new(&a, products).unwrap().to_automatic().unwrap()
}

#[test]
fn cover_search_matches_exhaustive_on_fixture_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen = 0;
    let mut tries = 0;
    while seen < 20 {
        tries += 1;
        assert!(tries < 2000, "too few small instances");
        let r = if rng.gen_bool(0.5) { random_rec(&mut rng) } else { random_relation(&mut rng, &ab(), 3).0 };
        let d = decompose(&r, 5).unwrap();
        if d.truncated {
            continue;
        }
        let q = d.quotient_matrix().unwrap();
        assert_eq!(lib_min_cover(&q.entries), exhaustive_min_cover(&q.entries), "{:?}", q.entries);
        // and the assembled witness is exact
        let k = lib_min_cover(&q.entries).max(1);
        if k <= 2 && q.size() <= autorel::definability::kprod_class_bound(k) {
            let s = kprod_definability(&r, k, &mut StepBudget::unlimited()).unwrap().unwrap();
            assert!(s.to_automatic().unwrap().equivalent(&r).unwrap());
        }
        seen += 1;
    }
}

#[test]
fn empty_relation_has_one_class() {
    let e = AutomaticRelation::empty(&ab()).unwrap();
    let d = decompose(&e, 2).unwrap();
    assert_eq!(d.index(), Some(1));
    assert!(d.classes[0].equivalent(&Automaton::universal(&ab(), 1).unwrap()).unwrap());
    let s = kprod_definability(&e, 1, &mut StepBudget::unlimited()).unwrap().unwrap();
    assert!(s.to_automatic().unwrap().is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cover_search_matches_exhaustive(m in 1usize..=5, bits in any::<u32>()) {
        let entries: Vec<Vec<bool>> = (0..m).map(|i| (0..m).map(|j| bits >> ((i * m + j) % 32) & 1 == 1).collect()).collect();
        prop_assert_eq!(lib_min_cover(&entries), exhaustive_min_cover(&entries));
    }
}
