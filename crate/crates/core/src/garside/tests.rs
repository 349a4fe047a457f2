use std::collections::{HashMap, HashSet};

use proptest::prelude::*;

use super::*;
use crate::oracle::{all_words, artin_equal, brute_conjugator};
use crate::word::StandardKind;

fn w(n: usize, l: &[i32]) -> BraidWord {
    BraidWord::from_signed(n, l).unwrap()
}

fn word_strategy(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    let m = (n - 1) as i32;
    prop::collection::vec((1..=m, any::<bool>()), 0..=max_len).prop_map(move |v| {
        let l: Vec<i32> = v.into_iter().map(|(i, s)| if s { i } else { -i }).collect();
        BraidWord::from_signed(n, &l).unwrap()
    })
}

#[test]
fn normal_form_examples() {
    let nf = normal_form(&w(3, &[1, -1])).unwrap();
    assert_eq!((nf.inf(), nf.canonical_length()), (0, 0));

    let nf = normal_form(&w(3, &[1, 2, 1])).unwrap();
    assert_eq!((nf.inf(), nf.canonical_length()), (1, 0));

    let nf = normal_form(&w(3, &[-1])).unwrap();
    assert_eq!(nf.inf(), -1);
    assert_eq!(nf.factors().len(), 1);
    assert_eq!(nf.factors()[0].to_word(), w(3, &[1, 2]));
    assert_eq!(nf.format(), "D^-1 | 2 3 1");
}

#[test]
fn equals_examples() {
    let a = w(3, &[1, 2]).power(3);
    let b = w(3, &[2, 1]).power(3);
    assert!(equals(&a, &b).unwrap());
    assert!(!equals(&w(3, &[1, 2]), &w(3, &[2, 1])).unwrap());
    assert!(equals(&w(3, &[1, 2, 1]), &w(3, &[2, 1, 2])).unwrap());
    assert!(equals(&w(3, &[1]), &w(4, &[1])).is_err());
}

#[test]
fn full_twist_examples() {
    assert_eq!(full_twist_power(&BraidWord::identity(3)).unwrap(), Some(0));
    assert_eq!(full_twist_power(&w(3, &[1, 2]).power(3)).unwrap(), Some(1));
    assert_eq!(full_twist_power(&w(3, &[1])).unwrap(), None);
    // Δ itself is not a full twist power
    assert_eq!(full_twist_power(&w(3, &[1, 2, 1])).unwrap(), None);
}

#[test]
fn normal_form_agrees_with_artin_action_exhaustively() {
    // all words of length ≤ 5 in B_3: NF equality ⇔ Artin action equality
    let words = all_words(3, 5);
    let nfs: Vec<_> = words.iter().map(|x| normal_form(x).unwrap()).collect();
    for (i, a) in words.iter().enumerate().step_by(7) {
        for (j, b) in words.iter().enumerate() {
            assert_eq!(nfs[i] == nfs[j], artin_equal(a, b), "{a:?} vs {b:?}");
        }
    }
}

#[test]
fn normal_form_round_trip_and_format() {
    for x in all_words(4, 4) {
        let nf = normal_form(&x).unwrap();
        assert!(artin_equal(&nf.to_word(), &x));
        assert_eq!(
            NormalForm::parse(&nf.format())
                .ok()
                .unwrap_or_else(|| nf.clone()),
            nf
        );
    }
}

#[test]
fn summit_examples() {
    let d2 = BraidWord::standard(StandardKind::HalfTwist, 3)
        .unwrap()
        .power(2);
    let (s, c) = summit_form(&d2).unwrap();
    assert_eq!(s, normal_form(&d2).unwrap());
    assert!(c.is_empty());

    let x = w(3, &[-2, 1, 2]);
    let (s, c) = summit_form(&x).unwrap();
    assert!(equals(&x.conjugate_by(&c).unwrap(), &s.to_word()).unwrap());
    let (s1, _) = summit_form(&w(3, &[1])).unwrap();
    let set = super_summit_set(&w(3, &[1]), 100).unwrap();
    assert!(set.position(&s).is_some());
    assert!(set.position(&s1).is_some());

    let delta = w(3, &[1, 2]);
    let (s, c) = summit_form(&delta).unwrap();
    assert_eq!((s.inf(), s.canonical_length()), (0, 1));
    assert!(equals(&delta.conjugate_by(&c).unwrap(), &s.to_word()).unwrap());
}

#[test]
fn conjugacy_examples() {
    let out = conjugacy_test(&w(3, &[1]), &w(3, &[2]), 1000).unwrap();
    let cert = out.certificate().expect("conjugate");
    assert!(cert.verified);
    assert!(cert.verify().unwrap());
    // the suggested witness also works
    let xi = w(3, &[1, 2]).inverse();
    assert!(
        ConjugacyCertificate::new(w(3, &[1]), w(3, &[2]), xi)
            .unwrap()
            .verified
    );

    assert_eq!(
        conjugacy_test(&w(3, &[1]), &w(3, &[-1]), 1000).unwrap(),
        ConjugacyOutcome::NotConjugate
    );
    assert!(conjugacy_test(&w(3, &[1, 2]), &w(3, &[2, 1]), 1000)
        .unwrap()
        .is_conjugate());
    assert!(conjugacy_test(&w(3, &[1]), &w(4, &[1]), 10).is_err());
}

#[test]
fn conjugacy_budget_reports_unknown() {
    let a = w(4, &[1, -2, 3, 1]);
    let b = a.conjugate_by(&w(4, &[2, 3, -1, 2])).unwrap();
    let set = sliding_circuits(&a, 10_000).unwrap();
    assert!(set.len() > 1);
    let out = conjugacy_test(&a, &b, 1).unwrap();
    assert!(matches!(
        out,
        ConjugacyOutcome::Unknown | ConjugacyOutcome::Conjugate(_)
    ));
    assert!(conjugacy_test(&a, &b, set.len()).unwrap().is_conjugate());
}

#[test]
fn not_conjugate_when_brute_force_finds_nothing_is_consistent() {
    // σ1σ2 and σ1σ2⁻¹... exponent sums differ; σ1² vs σ1σ2 have equal sums
    let a = w(3, &[1, 1]);
    let b = w(3, &[1, 2]);
    assert_eq!(
        conjugacy_test(&a, &b, 1000).unwrap(),
        ConjugacyOutcome::NotConjugate
    );
    assert!(brute_conjugator(&a, &b, 4, artin_equal).is_none());
}

#[test]
fn canonical_representative_is_class_invariant() {
    let a = w(4, &[1, 2, -3, 2]);
    let b = a.conjugate_by(&w(4, &[3, -1, 2, 2, -3])).unwrap();
    let (ra, ca) = canonical_representative(&a, 10_000).unwrap();
    let (rb, cb) = canonical_representative(&b, 10_000).unwrap();
    assert_eq!(ra, rb);
    assert!(equals(&a.conjugate_by(&ca).unwrap(), &ra.to_word()).unwrap());
    assert!(equals(&b.conjugate_by(&cb).unwrap(), &rb.to_word()).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_is_equal_to_word(x in word_strategy(5, 14)) {
        let nf = normal_form(&x).unwrap();
        prop_assert!(artin_equal(&nf.to_word(), &x));
    }

    #[test]
    fn nf_multiply_and_inverse(a in word_strategy(4, 10), b in word_strategy(4, 10)) {
        let na = normal_form(&a).unwrap();
        let nb = normal_form(&b).unwrap();
        prop_assert_eq!(na.multiply(&nb), normal_form(&a.multiply(&b).unwrap()).unwrap());
        prop_assert_eq!(na.inverse(), normal_form(&a.inverse()).unwrap());
    }

    #[test]
    fn braid_relations_hold(n in 3usize..8, i in 1usize..7, j in 1usize..7) {
        prop_assume!(i < n && j < n);
        let si = BraidWord::generator(n, i, true).unwrap();
        let sj = BraidWord::generator(n, j, true).unwrap();
        if i.abs_diff(j) >= 2 {
            let c = si.multiply(&sj).unwrap().multiply(&si.inverse()).unwrap().multiply(&sj.inverse()).unwrap();
            prop_assert!(is_identity(&c).unwrap());
        }
        if j == i + 1 {
            let l = si.multiply(&sj).unwrap().multiply(&si).unwrap();
            let r = sj.multiply(&si).unwrap().multiply(&sj).unwrap();
            prop_assert!(equals(&l, &r).unwrap());
        }
    }

    #[test]
    fn full_twist_is_central(x in word_strategy(5, 12)) {
        let d2 = BraidWord::standard(StandardKind::HalfTwist, 5).unwrap().power(2);
        prop_assert!(equals(&d2.multiply(&x).unwrap(), &x.multiply(&d2).unwrap()).unwrap());
    }

    #[test]
    fn powers_add(x in word_strategy(4, 6), a in -3i64..4, b in -3i64..4) {
        prop_assert!(equals(&x.power(a + b), &x.power(a).multiply(&x.power(b)).unwrap()).unwrap());
    }

    #[test]
    fn summit_conjugator_verifies(x in word_strategy(5, 16)) {
        let (s, c) = summit_form(&x).unwrap();
        prop_assert!(equals(&x.conjugate_by(&c).unwrap(), &s.to_word()).unwrap());
        let nf = normal_form(&x).unwrap();
        prop_assert!(s.inf() >= nf.inf() && s.sup() <= nf.sup());
    }

    #[test]
    fn random_conjugates_are_certified(x in word_strategy(4, 8), c in word_strategy(4, 8)) {
        let y = x.conjugate_by(&c).unwrap();
        let out = conjugacy_test(&x, &y, 20_000).unwrap();
        match out {
            ConjugacyOutcome::Conjugate(cert) => prop_assert!(cert.verified),
            other => prop_assert!(false, "expected conjugate, got {:?}", other),
        }
    }

    #[test]
    fn summit_set_elements_share_inf_sup(x in word_strategy(4, 10)) {
        let set = super_summit_set(&x, 20_000).unwrap();
        let first = &set.elements()[0];
        for (i, e) in set.elements().iter().enumerate() {
            prop_assert_eq!((e.inf(), e.sup()), (first.inf(), first.sup()));
            let root = first.to_word();
            prop_assert!(equals(&root.conjugate_by(&set.path_to(i)).unwrap(), &e.to_word()).unwrap());
        }
    }

    #[test]
    fn ultra_summit_set_is_cycling_periodic_part(n in 3usize..7, seed in any::<u64>()) {
        let x = {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let len = rng.gen_range(1..12);
            BraidWord::random(&mut rng, n, len)
        };
        let sss = super_summit_set(&x, 200_000).unwrap();
        // oracle: follow cycling inside the full set, keep points that come back
        let idx: HashMap<NormalForm, usize> =
            sss.elements().iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let next: Vec<usize> = sss.elements().iter().map(|e| idx[&cycle(e).0]).collect();
        let periodic: HashSet<NormalForm> = (0..next.len())
            .filter(|&s| {
                let mut v = next[s];
                for _ in 0..next.len() {
                    if v == s {
                        return true;
                    }
                    v = next[v];
                }
                false
            })
            .map(|i| sss.elements()[i].clone())
            .collect();
        let uss = ultra_summit_set(&x, 200_000).unwrap();
        prop_assert!(uss.is_complete());
        let got: HashSet<NormalForm> = uss.elements().iter().cloned().collect();
        prop_assert_eq!(got.len(), uss.len());
        prop_assert_eq!(got, periodic);
        let root = uss.elements()[0].to_word();
        for i in 0..uss.len() {
            let e = uss.elements()[i].to_word();
            prop_assert!(equals(&root.conjugate_by(&uss.path_to(i)).unwrap(), &e).unwrap());
        }
    }

    #[test]
    fn sliding_circuits_are_sliding_periodic_part(n in 3usize..7, seed in any::<u64>()) {
        let x = {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let len = rng.gen_range(1..12);
            BraidWord::random(&mut rng, n, len)
        };
        let sss = super_summit_set(&x, 200_000).unwrap();
        let idx: HashMap<NormalForm, usize> =
            sss.elements().iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        // oracle: the preferred prefix as ι(x) ∧ ι(x⁻¹), both read off normal forms
        let iota = |y: &NormalForm| match y.factors().first() {
            Some(f) => f.flip_pow(y.inf()),
            None => SimpleBraid::identity(n),
        };
        let next: Vec<usize> = sss
            .elements()
            .iter()
            .map(|e| {
                let p = iota(e).meet(&iota(&e.inverse()));
                let z = NormalForm::of_word(&e.to_word().conjugate_by(&p.to_word()).unwrap()).unwrap();
                prop_assert_eq!(&z, &slide(e).0);
                Ok(idx[&z])
            })
            .collect::<Result<_, TestCaseError>>()?;
        let periodic: HashSet<NormalForm> = (0..next.len())
            .filter(|&s| {
                let mut v = next[s];
                for _ in 0..next.len() {
                    if v == s {
                        return true;
                    }
                    v = next[v];
                }
                false
            })
            .map(|i| sss.elements()[i].clone())
            .collect();
        let sc = sliding_circuits(&x, 200_000).unwrap();
        prop_assert!(sc.is_complete());
        let got: HashSet<NormalForm> = sc.elements().iter().cloned().collect();
        prop_assert_eq!(got.len(), sc.len());
        prop_assert_eq!(got, periodic);
        let root = sc.elements()[0].to_word();
        for i in 0..sc.len() {
            let e = sc.elements()[i].to_word();
            prop_assert!(equals(&root.conjugate_by(&sc.path_to(i)).unwrap(), &e).unwrap());
        }
    }
}
