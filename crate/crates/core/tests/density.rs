mod common;

use most::canonical::Normalizer;
use most::density::{axiom_suite, convergence, count_members, density_of, empirical_density, ExactStatus};
use most::setlang::parse;
use num_rational::Ratio;

use common::{prime_count, sampled, sieve};

fn abs_diff(a: Ratio<u64>, b: Ratio<u64>) -> Ratio<u64> {
    if a > b {
        a - b
    } else {
        b - a
    }
}

#[test]
fn periodic_sets_converge_within_bound() {
    let norm = Normalizer::default();
    let mut seen = 0;
    for e in sampled(21, 400, 4) {
        let c = norm.normalize(&e).unwrap();
        if !c.is_delta_free() {
            continue;
        }
        seen += 1;
        let exact = c.density_fraction();
        let (threshold, period) = (c.core().threshold(), c.core().period());
        for n in [1_000u64, 10_000] {
            if n < threshold {
                continue;
            }
            let gap = abs_diff(empirical_density(&e, n), exact);
            assert!(gap <= Ratio::new(threshold + period, n), "{e} at {n}: gap {gap}");
        }
        // members below the threshold count on top of the per-period error
        let n = 100_000 * period;
        if n <= 2_000_000 {
            let gap = abs_diff(empirical_density(&e, n), exact);
            assert!(gap <= Ratio::new(threshold + 2 * period, n), "{e} at {n}: gap {gap}");
        }
    }
    assert!(seen >= 50, "only {seen} delta-free samples");
}

#[test]
fn prime_counts_agree_with_sieve() {
    let p = parse("P").unwrap();
    for n in [100usize, 1_000, 10_000, 100_000] {
        assert_eq!(count_members(&p, 1, n as u64), prime_count(n), "pi({n})");
    }
    let odd_primes = parse(r"P \ AP(2,0)").unwrap();
    let sieve = sieve(50_000);
    let expected = (3..=50_000).filter(|&k| sieve[k] && k % 2 == 1).count() as u64;
    assert_eq!(count_members(&odd_primes, 1, 50_000), expected);
}

#[test]
fn multiples_have_reciprocal_density() {
    let norm = Normalizer::default();
    for k in 1..=12u64 {
        let e = parse(&format!("AP({k},0)")).unwrap();
        assert_eq!(density_of(&e, &norm).unwrap().value(), Ratio::new(1, k));
    }
}

#[test]
fn convergence_reports_unavailable_but_still_counts() {
    let tight = Normalizer::new(100);
    let e = parse("AP(11,1) & AP(13,2)").unwrap();
    let r = convergence(&e, &[143, 1_430], &tight).unwrap();
    assert!(matches!(r.exact_density, ExactStatus::Unavailable(_)));
    assert_eq!(r.checkpoints[0].count, 1);
    assert_eq!(r.checkpoints[1].count, 10);
    assert!(convergence(&e, &[10, 10], &tight).is_err());
    assert!(convergence(&e, &[0], &tight).is_err());
}

#[test]
fn axiom_suite_passes() {
    let report = axiom_suite(300, 5, 12, &Normalizer::default());
    for law in &report.laws {
        assert_eq!(law.failed(), 0, "law {}: {:?}", law.law, law.first_counterexample);
        assert!(law.checked > 0, "law {} never exercised", law.law);
    }
    assert_eq!(report.unavailable, 0);
    assert!(report.all_passed());
}

#[test]
fn axiom_suite_is_seeded() {
    let n = Normalizer::default();
    assert_eq!(axiom_suite(50, 9, 12, &n), axiom_suite(50, 9, 12, &n));
}
