use proptest::prelude::*;

use super::*;

fn z(n: u64) -> RingSpec {
    RingSpec::integers_mod(n).unwrap()
}

#[test]
fn local_instance_counts() {
    let r = check_theorem_local_instance(&z(4), 2, SweepMode::Exhaustive).unwrap();
    assert_eq!((r.instances_checked, r.passed()), (256, true));
    let r = check_theorem_local_instance(&z(9), 2, SweepMode::Exhaustive).unwrap();
    assert_eq!((r.instances_checked, r.passed()), (6561, true));
    let r = check_theorem_local_instance(&z(8), 3, SweepMode::Sample { count: 1000, seed: 42 }).unwrap();
    assert_eq!((r.instances_checked, r.passed()), (1000, true));
}

#[test]
fn local_instance_errors() {
    assert!(matches!(
        check_theorem_local_instance(&z(9), 3, SweepMode::Exhaustive),
        Err(Error::BoundExceeded {
            needed: 387_420_489,
            ..
        })
    ));
    let q = RingSpec::localized(5).unwrap();
    assert!(matches!(
        check_theorem_local_instance(&q, 2, SweepMode::Sample { count: 5, seed: 1 }),
        Err(Error::InfiniteRing(_))
    ));
    assert!(matches!(
        check_theorem_local_instance_bounded(&z(4), 2, SweepMode::Sample { count: 50, seed: 1 }, 10),
        Err(Error::BoundExceeded { needed: 50, bound: 10 })
    ));
}

#[test]
fn t5_examples() {
    let r = check_t5_condition(&z(4), 2..=2).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
    assert_eq!(r.notes["enumerated"], 16);
    // f(0), f(1) both even: c0 even and 1 + c1 + c0 even, so c1 odd
    assert_eq!(r.instances_checked, 4);
    assert!(check_t5_condition(&RingSpec::truncated(2, 2).unwrap(), 2..=2)
        .unwrap()
        .passed());
    assert!(check_t5_condition(&z(9), 3..=3).unwrap().passed());
    assert!(matches!(
        check_t5_condition(&z(4), 1..=2),
        Err(Error::PreconditionViolated(_))
    ));
    assert!(matches!(
        check_t5_condition(&z(12), 2..=2),
        Err(Error::UnsupportedFamily(_))
    ));
}

#[test]
fn lemma_examples() {
    let r = check_lemma_polyreduc(&z(4), 2).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
    // a = 1 and a = 3 give the same residue condition, so the count doubles
    assert_eq!(r.instances_checked, 8);
    assert!(check_lemma_polyreduc(&z(9), 2).unwrap().passed());
    assert!(check_lemma_polyreduc(&RingSpec::truncated(3, 2).unwrap(), 3)
        .unwrap()
        .passed());
}

#[test]
fn pi_regular_examples() {
    let r = check_pi_regular(&z(4), 2, SweepMode::Exhaustive).unwrap();
    assert_eq!((r.instances_checked, r.passed()), (256, true));
    assert!(r.notes["max_q"].as_u64().unwrap() <= 4);
    assert!(check_pi_regular(&z(9), 2, SweepMode::Exhaustive).unwrap().passed());
    let r = check_pi_regular(&z(12), 2, SweepMode::Sample { count: 500, seed: 7 }).unwrap();
    assert_eq!((r.instances_checked, r.passed()), (500, true));
}

#[test]
fn agreement_and_charpoly_sweeps() {
    let r = check_oracle_agreement(&z(4), 2, SweepMode::Sample { count: 40, seed: 3 }).unwrap();
    assert_eq!((r.instances_checked, r.passed()), (40, true));
    let r = check_charpoly(&z(9), 3, SweepMode::Sample { count: 50, seed: 3 }).unwrap();
    assert_eq!((r.instances_checked, r.passed()), (50, true));
}

#[test]
fn hensel_sweep_small() {
    let r = check_hensel_exactness(&z(4), 3).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
    assert!(r.instances_checked > 0);
}

#[test]
fn report_json_is_stable() {
    let run = || {
        check_pi_regular(&z(12), 2, SweepMode::Sample { count: 60, seed: 11 })
            .unwrap()
            .to_json()
    };
    let (a, b) = (run(), run());
    assert_eq!(a.to_string(), b.to_string());
    assert!(a.get("elapsed").is_none());
    assert_eq!(a["passed"], true);
}

#[test]
fn sampling_is_seeded() {
    let a = sample_matrices(&z(9), 2, 10, 5).unwrap();
    assert_eq!(a, sample_matrices(&z(9), 2, 10, 5).unwrap());
    assert_ne!(a, sample_matrices(&z(9), 2, 10, 6).unwrap());
}

#[test]
fn failures_are_reported_not_raised() {
    let t = sweep(10, |i, t| {
        t.checked += 1;
        if i % 3 == 0 {
            t.fail(i, format!("bad {i}"));
        }
    });
    assert_eq!(t.checked, 10);
    let msgs: Vec<_> = t.failures.iter().map(|(_, m)| m.as_str()).collect();
    assert_eq!(msgs, ["bad 0", "bad 3", "bad 6", "bad 9"]);
}

proptest! {
    #[test]
    fn algorithm_output_satisfies_oracle_checks(seed in any::<u64>(), n in 1usize..=3, which in 0usize..4) {
        let spec = [z(8), z(9), z(12), RingSpec::truncated(2, 3).unwrap()][which].clone();
        for a in sample_matrices(&spec, n, 4, seed).unwrap() {
            let d = strongly_clean_decompose(&a).unwrap();
            prop_assert_eq!(verify_decomposition(&a, &d.e, &d.u), Ok(()));
            prop_assert_eq!(a.charpoly(), cofactor_charpoly(&a));
        }
    }

    #[test]
    fn reducible_by_criterion_is_reducible(c2 in 0i64..9, x in 0i64..3, y in 0i64..3, a in prop::sample::select(vec![1i64, 2, 4, 5, 7, 8])) {
        // f = X^3 + c2 X^2 + c1 X + 3x with c1 chosen so that f(a) = 3y
        let spec = z(9);
        let a_inv = (1..9).find(|b| (a * b) % 9 == 1).unwrap();
        let c0 = 3 * x;
        let c1 = (3 * y - (a * a * a + c2 * a * a + c0) * a_inv).rem_euclid(9);
        let f = Poly::from_ints(&spec, &[c0, c1, c2, 1]);
        let a = RingElem::from_i64(&spec, a);
        prop_assert!(spec.in_maximal_ideal(f.eval(&a).unwrap().elem()));
        let (g, h) = poly_reduce_via_matrix(&f, &a).unwrap();
        prop_assert_eq!(&g * &h, f.clone());
        prop_assert!(brute_factor(&f).unwrap().is_some());
    }
}
