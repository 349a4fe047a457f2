//! Acceptance suite. Each criterion prints one PASS/FAIL line with its wall
//! time and fails the test when the check or the time limit is missed.
//!
//! Run with `cargo test -p braidkit --test acceptance -- --nocapture`.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use braidkit::curves::{apply_braid, preserves};
use braidkit::harness::{InstanceParams, TrialConfig};
use braidkit::oracle::{all_words, artin_equal, dedup_by};
use braidkit::regular::{is_regular_form, orbit_product, orbit_swap_element, to_regular_form};
use braidkit::tubular::{random_curves, random_decomposition};
use braidkit::{
    brute_force_root, classify_periodic, conjugacy_test, conjugacy_via_powers, equals, normal_form,
    run_trials, standardize_periodic, BraidWord, ConjugacyOutcome, Family, NormalForm,
    PeriodicBase, RootOutcome, StandardKind, SwapKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const BUDGET: usize = 10_000;

fn w(n: usize, l: &[i32]) -> BraidWord {
    BraidWord::from_signed(n, l).unwrap()
}

fn standard(kind: StandardKind, n: usize) -> BraidWord {
    BraidWord::standard(kind, n).unwrap()
}

/// Runs a criterion, prints its verdict line and asserts it.
fn criterion(
    id: u32,
    title: &str,
    limit: Duration,
    check: impl FnOnce() -> Result<String, String>,
) {
    let start = Instant::now();
    let result = check();
    let took = start.elapsed();
    let in_time = took <= limit;
    let (verdict, detail) = match (&result, in_time) {
        (Ok(d), true) => ("PASS", d.clone()),
        (Ok(d), false) => ("FAIL", format!("{d}; over the {limit:?} limit")),
        (Err(e), _) => ("FAIL", e.clone()),
    };
    println!("criterion {id:>2} {verdict}: {title} [{took:.2?}] {detail}");
    assert!(result.is_ok() && in_time, "criterion {id} failed: {detail}");
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[test]
fn c01_word_problem_on_cube_roots() {
    criterion(
        1,
        "word problem on (s1 s2)^3 = (s2 s1)^3",
        Duration::from_secs(1),
        || {
            let (a, b) = (w(3, &[1, 2]), w(3, &[2, 1]));
            ensure(equals(&a.power(3), &b.power(3)).unwrap(), || {
                "cubes differ".into()
            })?;
            ensure(!equals(&a, &b).unwrap(), || "s1 s2 = s2 s1 reported".into())?;
            // independent oracle: the Artin action on the free group
            ensure(
                artin_equal(&a.power(3), &b.power(3)) && !artin_equal(&a, &b),
                || "oracle disagrees".into(),
            )?;
            Ok(String::new())
        },
    );
}

#[test]
fn c02_standard_identities() {
    criterion(
        2,
        "delta^n = gamma^(n-1) = full twist, exponent sums",
        Duration::from_secs(1),
        || {
            for n in 3..=8 {
                let d2 = standard(StandardKind::HalfTwist, n).power(2);
                let (delta, gamma) = (
                    standard(StandardKind::Delta, n),
                    standard(StandardKind::Gamma, n),
                );
                ensure(equals(&delta.power(n as i64), &d2).unwrap(), || {
                    format!("delta^{n} in B_{n}")
                })?;
                ensure(equals(&gamma.power(n as i64 - 1), &d2).unwrap(), || {
                    format!("gamma^{} in B_{n}", n - 1)
                })?;
                ensure(delta.exponent_sum() == n as i64 - 1, || {
                    format!("s(delta) in B_{n}")
                })?;
                ensure(gamma.exponent_sum() == n as i64, || {
                    format!("s(gamma) in B_{n}")
                })?;
            }
            Ok("n = 3..8".into())
        },
    );
}

#[test]
fn c03_periodic_classification() {
    criterion(
        3,
        "periodic classification of 100 random conjugates",
        Duration::from_secs(60),
        || {
            let cases: Vec<(usize, bool, i64, BraidWord)> = {
                let mut rng = ChaCha8Rng::seed_from_u64(3);
                (0..100)
                    .map(|_| {
                        let n = rng.gen_range(3..=7);
                        let is_delta = rng.gen_bool(0.5);
                        let t = rng.gen_range(1..=6) * if rng.gen_bool(0.5) { 1 } else { -1 };
                        let eta = {
                            let l = rng.gen_range(0..=20);
                            BraidWord::random(&mut rng, n, l)
                        };
                        (n, is_delta, t, eta)
                    })
                    .collect()
            };
            let failures: Vec<String> = cases
                .par_iter()
                .filter_map(|(n, is_delta, t, eta)| {
                    let (n, t) = (*n, *t);
                    let kind = if *is_delta {
                        StandardKind::Delta
                    } else {
                        StandardKind::Gamma
                    };
                    let x = standard(kind, n).power(t).conjugate_by(eta).unwrap();
                    // a power of the full twist is read as central
                    let period = if *is_delta { n as i64 } else { n as i64 - 1 };
                    let expected = if t % period == 0 {
                        (PeriodicBase::Central, t / period)
                    } else if *is_delta {
                        (PeriodicBase::Delta, t)
                    } else {
                        (PeriodicBase::Gamma, t)
                    };
                    let c = match classify_periodic(&x) {
                        Ok(c) => c,
                        Err(e) => return Some(format!("{kind:?}^{t} in B_{n}: {e}")),
                    };
                    let cert = standardize_periodic(&x, BUDGET);
                    let ok = (c.base, c.t) == expected
                        && cert
                            .as_ref()
                            .is_ok_and(|c| c.verified && c.verify().unwrap());
                    (!ok).then(|| {
                        format!(
                            "{kind:?}^{t} in B_{n}: got {c:?}, cert {:?}",
                            cert.map(|c| c.verified)
                        )
                    })
                })
                .collect();
            ensure(failures.is_empty(), || failures.join("; "))?;
            Ok("100/100".into())
        },
    );
}

#[test]
fn c04_exponent_sum_invariance() {
    criterion(
        4,
        "exponent sum is a conjugacy invariant",
        Duration::from_secs(10),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(4);
            for _ in 0..1000 {
                let n = rng.gen_range(3..=6);
                let x = {
                    let l = rng.gen_range(0..=20);
                    BraidWord::random(&mut rng, n, l)
                };
                let eta = {
                    let l = rng.gen_range(0..=20);
                    BraidWord::random(&mut rng, n, l)
                };
                let y = x.conjugate_by(&eta).unwrap();
                ensure(y.exponent_sum() == x.exponent_sum(), || {
                    format!("{x:?} by {eta:?}")
                })?;
            }
            Ok("1000/1000".into())
        },
    );
}

/// Union-find over element indices.
fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

#[test]
fn c05_conjugacy_agrees_with_brute_force() {
    criterion(
        5,
        "conjugacy test against exhaustive conjugator search in B_3",
        Duration::from_secs(300),
        || {
            let elements = dedup_by(all_words(3, 6), |x| normal_form(x).unwrap());
            let index: HashMap<NormalForm, usize> = elements
                .iter()
                .enumerate()
                .map(|(i, x)| (normal_form(x).unwrap(), i))
                .collect();
            let conjugators = dedup_by(all_words(3, 8), |x| normal_form(x).unwrap());
            // brute-force classes: join x and c⁻¹xc whenever both lie in the set
            let edges: Vec<(usize, usize)> = elements
                .par_iter()
                .enumerate()
                .flat_map_iter(|(i, x)| {
                    let mut out = Vec::new();
                    for c in &conjugators {
                        let y = normal_form(&x.conjugate_by(c).unwrap()).unwrap();
                        if let Some(&j) = index.get(&y) {
                            if j != i {
                                out.push((i, j));
                            }
                        }
                    }
                    out
                })
                .collect();
            let mut parent: Vec<usize> = (0..elements.len()).collect();
            for (i, j) in edges {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
            let class: Vec<usize> = (0..elements.len()).map(|i| find(&mut parent, i)).collect();
            let pairs: Vec<(usize, usize)> = (0..elements.len())
                .flat_map(|i| (i..elements.len()).map(move |j| (i, j)))
                .collect();
            let problems: Vec<String> = pairs
                .par_iter()
                .filter_map(|&(i, j)| {
                    let (a, b) = (&elements[i], &elements[j]);
                    let same = class[i] == class[j];
                    match conjugacy_test(a, b, BUDGET).unwrap() {
                        ConjugacyOutcome::Conjugate(c) => {
                            let exact = c.verified
                                && c.verify().unwrap()
                                && artin_equal(&c.alpha.conjugate_by(&c.witness).unwrap(), &c.beta);
                            (!exact).then(|| format!("bad certificate for {a:?} {b:?}"))
                        }
                        ConjugacyOutcome::NotConjugate => {
                            same.then(|| format!("{a:?} ~ {b:?} refuted"))
                        }
                        ConjugacyOutcome::Unknown => Some(format!("unknown on {a:?} {b:?}")),
                    }
                })
                .collect();
            let classes: HashSet<usize> = class.iter().copied().collect();
            ensure(problems.is_empty(), || {
                format!("{} problems, first {:?}", problems.len(), problems.first())
            })?;
            Ok(format!(
                "{} elements, {} brute-force classes, {} pairs",
                elements.len(),
                classes.len(),
                pairs.len()
            ))
        },
    );
}

#[test]
fn c06_regular_form_contract() {
    criterion(
        6,
        "regular form contract on 100 random decompositions",
        Duration::from_secs(120),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(6);
            let mut ds = Vec::new();
            while ds.len() < 100 {
                let n = rng.gen_range(3..=10);
                let Some(curves) = random_curves(&mut rng, n) else {
                    continue;
                };
                let d = {
                    let (t, i) = (rng.gen_range(0..=8), rng.gen_range(0..=6));
                    random_decomposition(&mut rng, &curves, t, i)
                };
                if d.orbits().len() <= 3 {
                    ds.push(d);
                }
            }
            let failures: Vec<String> = ds
                .par_iter()
                .filter_map(|d| {
                    let r = match to_regular_form(d, BUDGET) {
                        Ok(r) => r,
                        Err(e) => return Some(format!("{e} on {d}")),
                    };
                    let mut ok = is_regular_form(&r.regular, BUDGET).unwrap();
                    ok &= equals(
                        &d.embed().conjugate_by(&r.conjugator).unwrap(),
                        &r.regular.embed(),
                    )
                    .unwrap();
                    for (orbit, kappa) in d.orbits().orbits.iter().zip(&r.kappa) {
                        let c = conjugacy_test(&orbit_product(d, orbit), kappa, BUDGET).unwrap();
                        ok &= c.certificate().is_some_and(|c| c.verified);
                    }
                    (!ok).then(|| format!("contract broken for\n{d}"))
                })
                .collect();
            ensure(failures.is_empty(), || failures.join("; "))?;
            Ok("100/100".into())
        },
    );
}

/// The orbit of each point under `base`, labelled by its least point (1-based).
fn orbit_labels(base: &BraidWord) -> Vec<usize> {
    let dest = base.strand_destinations();
    (0..dest.len())
        .map(|p| {
            let (mut q, mut least) = (dest[p], p);
            while q != p {
                least = least.min(q);
                q = dest[q];
            }
            least + 1
        })
        .collect()
}

#[test]
fn c07_orbit_swap_elements() {
    criterion(
        7,
        "swap elements commute with delta^s / gamma^s and swap orbits",
        Duration::from_secs(30),
        || {
            let mut cases = Vec::new();
            for m in 2..=8usize {
                for s in -2 * m as i64..=2 * m as i64 {
                    for kind in [SwapKind::Delta, SwapKind::Gamma] {
                        if kind == SwapKind::Gamma && m < 3 {
                            continue;
                        }
                        let points = if kind == SwapKind::Delta { m } else { m - 1 };
                        let t = gcd(s.unsigned_abs() as usize, points);
                        let r = points / t;
                        let range = if kind == SwapKind::Delta {
                            1..t
                        } else {
                            2..t + 1
                        };
                        for i in range {
                            cases.push((kind, m, s, r, i));
                        }
                    }
                }
            }
            let failures: Vec<String> = cases
                .par_iter()
                .filter_map(|&(kind, m, s, r, i)| {
                    let sk = if kind == SwapKind::Delta {
                        StandardKind::Delta
                    } else {
                        StandardKind::Gamma
                    };
                    let base = standard(sk, m).power(s);
                    let x = match orbit_swap_element(kind, s, r, i, m) {
                        Ok(x) => x,
                        Err(e) => return Some(format!("{kind:?} m={m} s={s} i={i}: {e}")),
                    };
                    // the swap element is (σ_i · base)^r, rebuilt here
                    let rebuilt = BraidWord::generator(m, i, true)
                        .unwrap()
                        .multiply(&base)
                        .unwrap()
                        .power(r as i64);
                    let mut ok = x == rebuilt;
                    ok &= equals(&x.multiply(&base).unwrap(), &base.multiply(&x).unwrap()).unwrap();
                    let labels = orbit_labels(&base);
                    let dest = x.strand_destinations();
                    for q in 0..m {
                        let (from, to) = (labels[q], labels[dest[q]]);
                        let want = if from == i {
                            i + 1
                        } else if from == i + 1 {
                            i
                        } else {
                            from
                        };
                        ok &= to == want;
                    }
                    (!ok).then(|| format!("{kind:?} m={m} s={s} i={i}"))
                })
                .collect();
            let total = cases.len();
            ensure(failures.is_empty(), || failures.join("; "))?;
            Ok(format!("{total} parameter sets"))
        },
    );
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn c08_theorem_harness() {
    criterion(
        8,
        "200+ harness instances across F1-F3 are certified",
        Duration::from_secs(180),
        || {
            let config = TrialConfig {
                families: vec![
                    Family::PeriodicCentral,
                    Family::Equal,
                    Family::ReducibleOrbitSwap,
                ],
                trials: 201,
                seed: 42,
                budget: BUDGET,
                params: InstanceParams {
                    max_n: 10,
                    ..Default::default()
                },
            };
            let run = run_trials(&config).unwrap();
            let s = &run.summary;
            let bad: Vec<String> = run
                .reports
                .iter()
                .filter(|r| !r.expected)
                .map(|r| {
                    format!(
                        "trial {} {} seed {}: {} {:?}",
                        r.trial, r.family, r.seed, r.outcome, r.error
                    )
                })
                .collect();
            ensure(
                bad.is_empty() && s.unknown == 0 && s.precondition_failed == 0,
                || bad.join("; "),
            )?;
            // re-check every witness from its printed form
            for r in &run.reports {
                if let Some(wit) = &r.witness {
                    let p = |t: &str| BraidWord::parse(t, r.n).unwrap();
                    let lhs = p(&r.alpha).conjugate_by(&p(wit)).unwrap();
                    ensure(equals(&lhs, &p(&r.beta)).unwrap(), || {
                        format!("trial {} witness", r.trial)
                    })?;
                }
            }
            let max_n = run.reports.iter().map(|r| r.n).max().unwrap_or(0);
            Ok(format!(
                "{} trials: {} equal, {} certified, max n = {max_n}",
                s.trials, s.equal, s.certified_conjugate
            ))
        },
    );
}

#[test]
fn c09_root_sets_are_conjugate() {
    criterion(
        9,
        "brute-force root sets are single conjugacy classes",
        Duration::from_secs(120),
        || {
            let d2 = standard(StandardKind::HalfTwist, 3).power(2);
            let roots = brute_force_root(&d2, 3, 4).unwrap();
            ensure(roots.len() >= 2, || {
                format!("only {} cube roots", roots.len())
            })?;
            for r in [w(3, &[1, 2]), w(3, &[2, 1])] {
                ensure(roots.iter().any(|x| equals(x, &r).unwrap()), || {
                    format!("{r:?} missing")
                })?;
            }
            for a in &roots {
                ensure(artin_equal(&a.power(3), &d2), || {
                    format!("{a:?} is not a cube root")
                })?;
                for b in &roots {
                    let out = conjugacy_via_powers(a, b, 3, None, BUDGET).unwrap();
                    let ok = match &out {
                        RootOutcome::Equal => equals(a, b).unwrap(),
                        RootOutcome::CertifiedConjugate(c) => c.verified,
                        _ => false,
                    };
                    ensure(ok, || format!("{a:?} vs {b:?}: {out:?}"))?;
                }
            }
            let target = w(3, &[1, -2]);
            let square_roots = brute_force_root(&target.power(2), 2, 4).unwrap();
            ensure(
                !square_roots.is_empty()
                    && square_roots.iter().all(|x| equals(x, &target).unwrap()),
                || format!("square roots {square_roots:?}"),
            )?;
            Ok(format!("{} cube roots of the full twist", roots.len()))
        },
    );
}

#[test]
fn c10_curve_preservation_laws() {
    criterion(
        10,
        "curves preserved by decompositions and their powers; action laws",
        Duration::from_secs(60),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(10);
            let mut built = 0;
            while built < 100 {
                let n = rng.gen_range(3..=10);
                let Some(curves) = random_curves(&mut rng, n) else {
                    continue;
                };
                let d = {
                    let (t, i) = (rng.gen_range(0..=8), rng.gen_range(0..=6));
                    random_decomposition(&mut rng, &curves, t, i)
                };
                let x = d.embed();
                ensure(preserves(&x, &curves).unwrap(), || format!("{d}"))?;
                for k in [2, 3] {
                    ensure(preserves(&x.power(k), &curves).unwrap(), || {
                        format!("power {k} of {d}")
                    })?;
                }
                built += 1;
            }
            for _ in 0..1000 {
                let n = rng.gen_range(3..=8);
                let v: Vec<i64> = (0..2 * n - 4).map(|_| rng.gen_range(-30..=30)).collect();
                let (a, b) = (
                    BraidWord::random(&mut rng, n, 8),
                    BraidWord::random(&mut rng, n, 8),
                );
                let ab = apply_braid(&a.multiply(&b).unwrap(), &v).unwrap();
                let step = apply_braid(&b, &apply_braid(&a, &v).unwrap()).unwrap();
                ensure(ab == step, || {
                    format!("action law fails for {a:?}, {b:?} on {v:?}")
                })?;
                let i = rng.gen_range(1..n - 1) as i32;
                let (l, r) = (w(n, &[i, i + 1, i]), w(n, &[i + 1, i, i + 1]));
                ensure(
                    apply_braid(&l, &v).unwrap() == apply_braid(&r, &v).unwrap(),
                    || format!("braid relation at {i}"),
                )?;
                if (i as usize) + 2 < n {
                    let (l, r) = (w(n, &[i, i + 2]), w(n, &[i + 2, i]));
                    ensure(
                        apply_braid(&l, &v).unwrap() == apply_braid(&r, &v).unwrap(),
                        || format!("commutation at {i}"),
                    )?;
                }
                let g = BraidWord::generator(n, i as usize, true).unwrap();
                let back = apply_braid(&g.inverse(), &apply_braid(&g, &v).unwrap()).unwrap();
                ensure(back == v, || format!("inverse at {i}"))?;
            }
            Ok("100 decompositions, 1000 coordinate vectors".into())
        },
    );
}
