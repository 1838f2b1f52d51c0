mod common;

use most::density::density_of;
use most::quantifier::{proposition_suite, Cardinality, Classifier, PropositionStatus};
use most::setlang::{parse, SetExpr, SetExprSampler};
use most::TruthValue;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::sampled;

fn finite_set() -> impl Strategy<Value = SetExpr> {
    prop::collection::vec(1u64..=30, 0..8).prop_map(|xs| SetExpr::finite(xs).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn cardinal_readings_agree_on_finite_sets(a in finite_set(), b in finite_set()) {
        let c = Classifier::default();
        let half = c.half_card_most(&a, &b).truth;
        let diff = c.diff_card_most(&a, &b).truth;
        prop_assert_ne!(half, TruthValue::Unknown);
        prop_assert_eq!(half, diff, "A = {}, B = {}", a, b);
        // against plain counting
        let SetExpr::Finite(xs) = &a else { unreachable!() };
        let meet = xs.iter().filter(|&&x| b.contains(x)).count();
        prop_assert_eq!(half, TruthValue::from(2 * meet > xs.len()));
    }
}

#[test]
fn half_reading_fails_for_every_infinite_first_argument() {
    let c = Classifier::default();
    let exprs = sampled(31, 400, 4);
    let mut seen = 0;
    for pair in exprs.chunks(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if c.cardinality(a) != Cardinality::Aleph0 {
            continue;
        }
        seen += 1;
        assert_eq!(c.half_card_most(a, b).truth, TruthValue::False, "A = {a}, B = {b}");
    }
    assert!(seen >= 50);
}

#[test]
fn density_most_against_universe_is_positivity() {
    let c = Classifier::default();
    for a in sampled(32, 300, 4) {
        let d = density_of(&a, c.normalizer()).unwrap();
        let v = c.density_most(&a, &SetExpr::Universe).unwrap();
        assert_eq!(v.truth, TruthValue::from(!d.is_zero()), "A = {a}");
    }
}

#[test]
fn density_repairs_the_motivating_case() {
    let c = Classifier::default();
    let n = SetExpr::Universe;
    let kc = parse("comp(AP(3,1))").unwrap();
    assert_eq!(c.density_most(&n, &kc).unwrap().truth, TruthValue::True);
    assert_eq!(c.diff_card_most(&n, &kc).truth, TruthValue::False);
    assert_eq!(c.half_card_most(&n, &kc).truth, TruthValue::False);
}

#[test]
fn cardinalities_of_null_combinations() {
    let c = Classifier::default();
    let card = |t: &str| c.cardinality(&parse(t).unwrap());
    assert_eq!(card("P"), Cardinality::Aleph0);
    assert_eq!(card("Q | {2}"), Cardinality::Aleph0);
    assert_eq!(card("(P | Q) \\ Q"), Cardinality::Aleph0);
    assert_eq!(card("P ^ P"), Cardinality::Finite(0));
    assert_eq!(card("{5,6} \\ P"), Cardinality::Finite(1));
    assert_eq!(card("P & AP(4,0)"), Cardinality::Unknown);
    let scan = c.classify(&parse("P & AP(4,0)").unwrap()).scan.unwrap();
    assert_eq!(scan.count, 0);
}

#[test]
fn proposition_suite_statuses() {
    let report = proposition_suite(7, 200, &Classifier::default());
    for id in [1, 2, 3, 4, 5] {
        assert_eq!(report.status(id), PropositionStatus::Pass, "Prop {id}");
    }
    assert_eq!(report.status(6), PropositionStatus::Discrepancy);
    let diff6 = report.rows_for(6).find(|r| r.semantics == "diff").unwrap();
    assert!(diff6.checked >= 100 && diff6.failed() == 0);
}

#[test]
fn sampler_is_reproducible() {
    let s = SetExprSampler::default();
    let draw = |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..20).map(|_| s.sample(&mut rng)).collect::<Vec<_>>()
    };
    assert_eq!(draw(1), draw(1));
    assert_ne!(draw(1), draw(2));
}
