//! Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any fail.

use std::time::{Duration, Instant};

use cleanforge::oracle::{
    check_charpoly, check_hensel_exactness, check_lemma_polyreduc, check_oracle_agreement, check_pi_regular,
    check_t5_condition, check_theorem_local_instance, nonclean_witness_quadratic, sample_matrices, PropertyReport,
    SweepMode,
};
use cleanforge::{strongly_clean_decompose, verify_decomposition, CleanCase, Error, Mat, RingSpec};

fn ring(s: &str) -> RingSpec {
    s.parse().unwrap()
}

type Check = fn() -> Criterion;

/// Collects sub-results for one criterion.
struct Criterion {
    ok: bool,
    details: Vec<String>,
}

impl Criterion {
    fn new() -> Self {
        Criterion {
            ok: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl Into<String>) {
        self.ok &= ok;
        self.details.push(detail.into());
    }

    fn report(&mut self, r: Result<PropertyReport, Error>, expected_count: Option<u64>) {
        match r {
            Ok(r) => {
                let count_ok = expected_count.is_none_or(|c| c == r.instances_checked);
                let mut line = format!(
                    "{} {} {}/{} ok",
                    r.ring,
                    r.bounds,
                    r.instances_checked - r.failures.len() as u64,
                    r.instances_checked
                );
                if let Some(f) = r.failures.first() {
                    line.push_str(&format!(" (first failure: {f})"));
                }
                self.check(r.passed() && count_ok, line);
            }
            Err(e) => self.check(false, format!("error: {e}")),
        }
    }

    fn timed(&mut self, elapsed: Duration, limit: Duration) {
        self.check(elapsed < limit, format!("{elapsed:.2?} < {limit:?}"));
    }
}

fn c1() -> Criterion {
    let mut c = Criterion::new();
    let start = Instant::now();
    for (r, count) in [
        ("Z/4", 256),
        ("Z/8", 4096),
        ("Z/9", 6561),
        ("F2[t]/t^2", 256),
        ("F3[t]/t^2", 6561),
    ] {
        c.report(
            check_theorem_local_instance(&ring(r), 2, SweepMode::Exhaustive),
            Some(count),
        );
    }
    c.timed(start.elapsed(), Duration::from_secs(10));
    c
}

fn c2() -> Criterion {
    let mut c = Criterion::new();
    c.report(
        check_oracle_agreement(&ring("Z/4"), 2, SweepMode::Exhaustive),
        Some(256),
    );
    c
}

fn c3() -> Criterion {
    let mut c = Criterion::new();
    let start = Instant::now();
    for r in ["Z/8", "Z/9"] {
        let mode = SweepMode::Sample { count: 1000, seed: 42 };
        c.report(check_theorem_local_instance(&ring(r), 3, mode), Some(1000));
    }
    c.timed(start.elapsed(), Duration::from_secs(30));
    c
}

fn c4() -> Criterion {
    let mut c = Criterion::new();
    for r in ["Z/4", "Z/9"] {
        c.report(check_hensel_exactness(&ring(r), 4), None);
    }
    c
}

fn c5() -> Criterion {
    let mut c = Criterion::new();
    for r in ["Z/4", "Z/9", "F2[t]/t^2"] {
        for n in [2, 3] {
            c.report(check_lemma_polyreduc(&ring(r), n), None);
        }
    }
    c
}

fn c6() -> Criterion {
    let mut c = Criterion::new();
    let start = Instant::now();
    c.report(check_t5_condition(&ring("Z/4"), 2..=4), None);
    c.timed(start.elapsed(), Duration::from_secs(5));
    let start = Instant::now();
    let quintics = check_t5_condition(&ring("Z/4"), 5..=5);
    let count_ok = quintics.as_ref().is_ok_and(|r| r.notes["enumerated"] == 1024);
    c.report(quintics, None);
    c.check(count_ok, "1024 monic quintics enumerated");
    c.timed(start.elapsed(), Duration::from_secs(5));
    c.report(check_t5_condition(&ring("Z/9"), 2..=3), None);
    c
}

fn c7() -> Criterion {
    let mut c = Criterion::new();
    for (r, count) in [("Z/4", 256), ("Z/9", 6561)] {
        let report = check_pi_regular(&ring(r), 2, SweepMode::Exhaustive);
        if let Ok(rep) = &report {
            c.check(
                true,
                format!("{r}: max q = {} (bound {})", rep.notes["max_q"], rep.notes["q_bound"]),
            );
        }
        c.report(report, Some(count));
    }
    c
}

fn c8() -> Criterion {
    let mut c = Criterion::new();
    let z12 = ring("Z/12");
    let mats = sample_matrices(&z12, 2, 2000, 12).unwrap();
    let good = mats
        .iter()
        .filter(|a| {
            strongly_clean_decompose(a)
                .is_ok_and(|d| d.case == CleanCase::Componentwise && verify_decomposition(a, &d.e, &d.u).is_ok())
        })
        .count();
    c.check(good == 2000, format!("Z/12 componentwise {good}/2000 ok"));
    c
}

fn c9() -> Criterion {
    let mut c = Criterion::new();
    for p in [2u64, 3, 5, 7, 11] {
        match nonclean_witness_quadratic(p) {
            Ok(w) => c.check(
                w.verify() && w.f0_in_p && w.f1_in_p && !w.discriminant_is_square,
                format!("p={p}: {} disc {}", w.f, w.discriminant),
            ),
            Err(e) => c.check(false, format!("p={p}: {e}")),
        }
        let q = RingSpec::localized(p).unwrap();
        let refused = matches!(
            strongly_clean_decompose(&Mat::identity(&q, 2)),
            Err(Error::UnsupportedRing(_))
        );
        c.check(refused, format!("Zloc({p}) refused"));
    }
    c
}

fn c10() -> Criterion {
    let mut c = Criterion::new();
    c.report(check_charpoly(&ring("Z/4"), 2, SweepMode::Exhaustive), Some(256));
    c.report(
        check_charpoly(&ring("Z/9"), 3, SweepMode::Sample { count: 500, seed: 10 }),
        Some(500),
    );
    c
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("2x2 exhaustive decomposition over local rings", c1),
        ("oracle agreement on 2x2 over Z/4", c2),
        ("3x3 sampled decomposition over Z/8, Z/9", c3),
        ("Hensel lift exactness, degree <= 4", c4),
        ("factorization through the companion matrix", c5),
        ("f(0), f(1) in P implies reducible", c6),
        ("strongly pi-regular witnesses", c7),
        ("CRT componentwise decomposition over Z/12", c8),
        ("non-Henselian witnesses over Z_(p)", c9),
        ("Cayley-Hamilton and Berkowitz vs cofactor", c10),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let c = run();
        all &= c.ok;
        let verdict = if c.ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {verdict}: {name} [{:.2?}] {}",
            i + 1,
            start.elapsed(),
            c.details.join("; ")
        );
    }
    if !all {
        std::process::exit(1);
    }
}
