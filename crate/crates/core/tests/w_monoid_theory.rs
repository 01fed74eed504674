//! W-monoids against their characterizations and constructions.

use polyadic_core::canon::relabel_binary;
use polyadic_core::enumerate::{enumerate_monoids, survey_nary, w_monoids_by_filtering};
use polyadic_core::search::{find_adjunctions, is_in_semigroup, neutral_factorization, InVerdict, NoClock, SearchConfig};
use polyadic_core::wmonoid::*;
use polyadic_core::*;

fn witnesses_up_to(order: usize) -> Vec<WMonoidWitness> {
    (1..=order).flat_map(|o| w_monoids_by_filtering(o).unwrap()).collect()
}

#[test]
fn every_w_monoid_gives_a_ternary_in_semigroup() {
    for w in witnesses_up_to(6) {
        let f = in_semigroup_from_w_monoid(&w, 3).unwrap();
        assert!(is_associative(&f).unwrap());
        assert!(neutral_elements(&f).is_empty());
        match is_in_semigroup(&f, &SearchConfig::unlimited(), &NoClock) {
            InVerdict::Yes(m) => assert!(check_w_monoid(&m).is_ok()),
            other => panic!("{:?} for {}", other, w.summary()),
        }
    }
}

#[test]
fn every_adjunction_of_a_small_in_semigroup_is_a_w_monoid() {
    for order in 1..=3 {
        let s = survey_nary(order, 3, &|_| true, &SearchConfig::unlimited(), &NoClock).unwrap();
        assert_eq!(s.undecided.classes, 0);
        assert_eq!(s.forward_violations.classes, 0);
        for f in &s.in_exemplars {
            let all = find_adjunctions(f, &SearchConfig::unlimited(), &NoClock);
            assert!(all.exhausted && !all.solutions.is_empty());
            for m in &all.solutions {
                assert!(check_w_monoid(m).is_ok());
                assert!(neutral_factorization(m, order).is_some());
            }
        }
    }
}

#[test]
fn decomposition_roundtrips() {
    for w in witnesses_up_to(6) {
        let bt = decompose(&w);
        verify_bitranslation(&bt).unwrap();
        let rebuilt = from_bitranslation(&bt).unwrap();
        let placed = relabel_binary(w.monoid().op(), &w.canonical_placement());
        assert_eq!(rebuilt.op(), &placed);
    }
}

#[test]
fn odd_arity_claims_hold() {
    for w in witnesses_up_to(5) {
        assert_eq!(triple_factorization_violation(&w), None);
        for n in [3, 5] {
            let f = in_semigroup_from_w_monoid(&w, n).unwrap();
            assert!(neutral_elements(&f).is_empty());
        }
        let (a, e) = (w.a(), w.e());
        for len in 1..=5 {
            let mut word = vec![0usize; len];
            loop {
                let args: Vec<usize> = word.iter().map(|&b| if b == 1 { a } else { e }).collect();
                parity_check(&w, &args).unwrap();
                if !op::odometer_step(&mut word, 2) {
                    break;
                }
            }
        }
    }
}

/// W-monoid with special `a` iff `M ∖ {a, e}` is an ideal, the quotient is
/// `{−1, 0, 1}` and `a` is noncentral.
#[test]
fn rees_characterization_on_small_monoids() {
    for order in 2..=4 {
        for m in enumerate_monoids(order).unwrap() {
            let w = check_w_monoid(&m).ok().map(|w| w.a());
            for a in 0..order {
                for e in 0..order {
                    if a == e {
                        continue;
                    }
                    let r = check_rees_t_iso(&m, a, e).unwrap();
                    let rees = r.ideal_ok && r.iso_to_t && !m.op().is_central(a);
                    assert_eq!(rees, e == m.neutral() && w == Some(a), "{:?} a={} e={}", m.op().table(), a, e);
                }
            }
        }
    }
}

#[test]
fn involution_and_bitranslation_constructions_separate() {
    let mut from_monoid_carrier = 0;
    let mut without_identity = 0;
    for w in witnesses_up_to(6) {
        let bt = decompose(&w);
        match bt.carrier().identity() {
            Some(u) => {
                let s = MonoidDesc::new(bt.carrier().clone(), u).unwrap();
                let a = bt.left()[u];
                assert_eq!(bt.right()[u], a);
                assert_eq!(from_involution(&s, a).unwrap(), from_bitranslation(&bt).unwrap());
                from_monoid_carrier += 1;
            }
            None => without_identity += 1,
        }
    }
    assert!(from_monoid_carrier > 0);
    assert!(without_identity > 0);
    let ex46 = check_w_monoid(&fixtures::ex46_monoid()).unwrap();
    assert_eq!(decompose(&ex46).carrier().identity(), None);
}
