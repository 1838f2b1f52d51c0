use std::collections::BTreeMap;

use most::density::density_of;
use most::logic::{
    derives, family, is_consistent, model_check, sentence_truth, AxiomMode, Gamma, Interpretation, SearchParams,
    Searcher, Sentence,
};
use most::quantifier::Classifier;
use most::setlang::SetExpr;
use most::TruthValue;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn s(t: &str) -> Sentence {
    Sentence::parse(t).unwrap()
}

fn single(name: &str, set: &SetExpr) -> Interpretation {
    Interpretation::new(
        BTreeMap::from([(name.to_string(), set.clone())]),
        &Classifier::default(),
    )
    .unwrap()
}

const FORMS: [&str; 5] = [
    "Most({v},U)",
    "Most({v}c,U)",
    "Most(U,{v})",
    "Most(U,{v}c)",
    "Most(U,U)",
];

fn random_gamma<R: Rng>(rng: &mut R) -> Gamma {
    let len = rng.random_range(0..5);
    (0..len)
        .map(|_| {
            let v = ["A", "B", "C"].choose(rng).unwrap();
            s(&FORMS.choose(rng).unwrap().replace("{v}", v))
        })
        .collect()
}

#[test]
fn no_family_member_makes_both_majority_claims_true() {
    let c = Classifier::default();
    let (pos, neg) = (s("Most(U,A)"), s("Most(U,Ac)"));
    for set in family(SearchParams { max_modulus: 12 }) {
        let i = single("A", &set);
        let both = sentence_truth(&i, &pos, &c)
            .unwrap()
            .and(sentence_truth(&i, &neg, &c).unwrap());
        assert_eq!(both, TruthValue::False, "A = {set}");
    }
    let g: Gamma = [pos, neg].into_iter().collect();
    assert!(Searcher::new(SearchParams::default(), c).find_model(&g).is_none());
}

#[test]
fn positive_density_claim_is_positivity() {
    let c = Classifier::default();
    let mut both_true = 0;
    for set in family(SearchParams { max_modulus: 12 }) {
        let i = single("A", &set);
        let d = density_of(&set, c.normalizer()).unwrap();
        let truth = sentence_truth(&i, &s("Most(A,U)"), &c).unwrap();
        assert_eq!(truth, TruthValue::from(!d.is_zero()), "A = {set}");
        let dual = sentence_truth(&i, &s("Most(Ac,U)"), &c).unwrap();
        if truth.is_true() && dual.is_true() {
            both_true += 1;
        }
    }
    // the X1 pair is jointly satisfiable under density
    assert!(both_true > 0);
}

#[test]
fn derivability_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let phis: Vec<Sentence> = ["A", "B", "C"]
        .iter()
        .flat_map(|v| FORMS.iter().map(move |f| s(&f.replace("{v}", v))))
        .collect();
    for _ in 0..300 {
        let g = random_gamma(&mut rng);
        let extra = random_gamma(&mut rng);
        let bigger: Gamma = g.iter().chain(extra.iter()).cloned().collect();
        assert!(g.is_subset_of(&bigger));
        for mode in [AxiomMode::Off, AxiomMode::PositiveDensity] {
            for phi in &phis {
                if derives(&g, phi, mode) {
                    assert!(derives(&bigger, phi, mode), "{g:?} ⊆ {bigger:?}, {phi}");
                }
            }
        }
    }
}

#[test]
fn models_found_for_consistent_sets_satisfy_them() {
    let c = Classifier::default();
    let searcher = Searcher::new(SearchParams { max_modulus: 6 }, c);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut modelled = 0;
    for _ in 0..200 {
        let g = random_gamma(&mut rng);
        let consistency = is_consistent(&g, AxiomMode::Off);
        let model = searcher.find_model(&g);
        if !consistency.consistent {
            // X2 clashes are unsatisfiable; X1 clashes need not be
            if let Some((_, _, most::logic::Rule::X2)) = consistency.witness {
                assert!(model.is_none(), "{g:?}");
            }
            continue;
        }
        if let Some(m) = model {
            modelled += 1;
            assert_eq!(model_check(&m, &g, &c).unwrap(), TruthValue::True, "{g:?}");
            for phi in g.iter() {
                assert!(sentence_truth(&m, phi, &c).unwrap().is_true());
            }
        }
    }
    assert!(modelled > 50);
}

#[test]
fn countermodels_refute_underivable_queries() {
    let c = Classifier::default();
    let searcher = Searcher::new(SearchParams::default(), c);
    let g: Gamma = [s("Most(U,A)")].into_iter().collect();
    assert!(derives(&g, &s("Most(U,A)"), AxiomMode::Off));
    assert!(searcher.counterexample(&g, &s("Most(U,A)")).is_none());
    let phi = s("Most(A,U)");
    assert!(!derives(&g, &phi, AxiomMode::Off));
    // density semantics validates this query, so the family has no countermodel
    assert!(searcher.counterexample(&g, &phi).is_none());
    let phi = s("Most(Ac,U)");
    let m = searcher.counterexample(&g, &phi).unwrap();
    assert_eq!(sentence_truth(&m, &phi, &c).unwrap(), TruthValue::False);
    assert_eq!(m.get("A").unwrap().to_string(), "comp(P)");
}
