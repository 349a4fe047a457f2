use super::*;
use crate::oracle::artin_equal;
use proptest::prelude::*;

fn w(n: usize, l: &[i32]) -> BraidWord {
    BraidWord::from_signed(n, l).unwrap()
}

#[test]
fn delta_roots_of_full_twist() {
    let out = conjugacy_via_powers(&w(3, &[1, 2]), &w(3, &[2, 1]), 3, None, 10_000).unwrap();
    let cert = out.certificate().expect("certified");
    assert!(cert.verified);
    assert!(artin_equal(
        &cert.alpha.conjugate_by(&cert.witness).unwrap(),
        &cert.beta
    ));
}

#[test]
fn equal_and_failed_preconditions() {
    let a = w(4, &[1, -2, 3, 3]);
    assert_eq!(
        conjugacy_via_powers(&a, &a, 2, None, 1000).unwrap(),
        RootOutcome::Equal
    );
    let b = w(4, &[1, -2, 3]);
    assert!(matches!(
        conjugacy_via_powers(&a, &b, 2, None, 1000).unwrap(),
        RootOutcome::PreconditionFailed { .. }
    ));
    assert!(matches!(
        conjugacy_via_powers(&a, &b, 0, None, 1000),
        Err(BraidError::InvalidParams(_))
    ));
}

#[test]
fn torsion_free_square_roots() {
    // the square of σ1σ2⁻¹ has a unique square root
    let roots = brute_force_root(&w(3, &[1, -2, 1, -2]), 2, 4).unwrap();
    assert_eq!(roots.len(), 1);
    assert!(equals(&roots[0], &w(3, &[1, -2])).unwrap());
    assert!(brute_force_root(&w(3, &[1]), 2, 4).unwrap().is_empty());
}

#[test]
fn cube_roots_of_full_twist() {
    let d2 = BraidWord::standard(StandardKind::HalfTwist, 3)
        .unwrap()
        .power(2);
    let roots = brute_force_root(&d2, 3, 4).unwrap();
    for r in [w(3, &[1, 2]), w(3, &[2, 1])] {
        assert!(roots.iter().any(|x| equals(x, &r).unwrap()));
    }
    // any two roots are conjugate
    for a in &roots {
        for b in &roots {
            let out = conjugacy_via_powers(a, b, 3, None, 10_000).unwrap();
            assert!(Family::PeriodicCentral.expects(&out), "{a:?} {b:?}");
        }
    }
}

#[test]
fn families_parse() {
    for f in Family::ALL {
        assert_eq!(f.tag().parse::<Family>().unwrap(), f);
    }
    assert_eq!("f3".parse::<Family>().unwrap(), Family::ReducibleOrbitSwap);
    assert!("F9".parse::<Family>().is_err());
}

#[test]
fn orbit_swap_instances_are_certified() {
    for seed in 0..12u64 {
        let inst = generate_instance(Family::ReducibleOrbitSwap, &InstanceParams::default(), seed)
            .unwrap();
        assert!(!equals(&inst.alpha, &inst.beta).unwrap());
        assert!(equals(&inst.alpha.power(inst.k), &inst.beta.power(inst.k)).unwrap());
        let out =
            conjugacy_via_powers(&inst.alpha, &inst.beta, inst.k, inst.hints.as_ref(), 10_000)
                .unwrap();
        assert!(
            Family::ReducibleOrbitSwap.expects(&out),
            "seed {seed}: {out:?}"
        );
    }
}

#[test]
fn infeasible_periodic_params() {
    let p = InstanceParams {
        n: Some(5),
        k: Some(1),
        t: Some(1),
        ..Default::default()
    };
    assert!(matches!(
        generate_instance(Family::PeriodicCentral, &p, 1),
        Err(BraidError::InvalidParams(_))
    ));
    let p = InstanceParams {
        n: Some(11),
        ..Default::default()
    };
    assert!(generate_instance(Family::Equal, &p, 1).is_err());
}

#[test]
fn trials_are_reproducible() {
    let config = TrialConfig {
        families: Family::ALL.to_vec(),
        trials: 8,
        seed: 7,
        ..Default::default()
    };
    let a = run_trials(&config).unwrap();
    let b = run_trials(&config).unwrap();
    let strip = |r: &TrialRun| {
        r.reports
            .iter()
            .map(|t| {
                (
                    t.seed.clone(),
                    t.alpha.clone(),
                    t.beta.clone(),
                    t.outcome.clone(),
                )
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(a.summary.unexpected, 0, "{}", a.to_json_lines());
    let lines = a.to_json_lines();
    assert_eq!(lines.lines().count(), 9);
    let first: TrialReport = serde_json::from_str(lines.lines().next().unwrap()).unwrap();
    assert_eq!(first.trial, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_instances_meet_their_family(seed in any::<u64>(), f in 0usize..4) {
        let family = Family::ALL[f];
        let inst = generate_instance(family, &InstanceParams::default(), seed).unwrap();
        let equal_powers = equals(&inst.alpha.power(inst.k), &inst.beta.power(inst.k)).unwrap();
        prop_assert_eq!(equal_powers, family != Family::Negative);
        let out = conjugacy_via_powers(&inst.alpha, &inst.beta, inst.k, inst.hints.as_ref(), 10_000).unwrap();
        prop_assert!(family.expects(&out) || out == RootOutcome::Unknown, "{:?}", out);
    }
}

#[test]
fn orbit_swaps_resolve_inside_the_curve_stabilizer() {
    // the reducible case certifies on its own, without the ambient search
    for seed in 0..12u64 {
        let inst = generate_instance(Family::ReducibleOrbitSwap, &InstanceParams::default(), seed)
            .unwrap();
        let (a, b) = (&inst.alpha, &inst.beta);
        let out = reducible_case(a, b, inst.k, inst.hints.as_ref().unwrap(), 10_000).unwrap();
        assert!(
            out.is_some_and(|o| o.certificate().is_some_and(|c| c.verified)),
            "seed {seed}"
        );
    }
}

#[test]
fn identity_has_only_trivial_roots() {
    for k in [2, 3] {
        let roots = brute_force_root(&BraidWord::identity(3), k, 6).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn powers_commute_with_conjugation(seed in any::<u64>(), n in 3usize..6, k in -4i64..=4) {
        prop_assume!(k != 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = BraidWord::random(&mut rng, n, 6);
        let eta = BraidWord::random(&mut rng, n, 6);
        let lhs = w.conjugate_by(&eta).unwrap().power(k);
        let rhs = w.power(k).conjugate_by(&eta).unwrap();
        prop_assert!(equals(&lhs, &rhs).unwrap());
        // a conjugate pair has conjugate powers, certified by the same witness
        let cert = ConjugacyCertificate::new(w.power(k), lhs, eta).unwrap();
        prop_assert!(cert.verified);
    }
}
