//! Executable versions of the cardinal-semantics propositions.
//!
//! | id | claim                                                                |
//! |----|----------------------------------------------------------------------|
//! | 1  | nonempty finite `A ⊆ B`: Most(A,B) under half and diff              |
//! | 2  | `B = N`, `A = comp(AP(3,1))`: Most(B,A) fails under half and diff   |
//! | 3  | nonempty finite `A`: Most(A,A) under half and diff                  |
//! | 4  | infinite `A`: Most(A,A) false under half, true under diff           |
//! | 5  | infinite `A`, any `B`: Most(A,B) false under half                   |
//! | 6  | infinite `A`, `B`, `C(A ∩ B) = ℵ₀`, `A \ B` finite: Most(A,B) under diff and half |
//!
//! The half-cardinality half of 6 contradicts 4 and 5 whenever `A` is
//! infinite; it is checked as stated and reported as a discrepancy rather
//! than a failure.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Cardinality, Classifier, Semantics};
use crate::setlang::{SetExpr, SetExprSampler};
use crate::truth::TruthValue;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropositionOutcome {
    pub id: u8,
    pub semantics: &'static str,
    pub checked: u64,
    pub passed: u64,
    pub skipped: u64,
    pub first_counterexample: Option<String>,
    /// The claim is known to conflict with the other propositions.
    pub expected_discrepancy: bool,
}

impl PropositionOutcome {
    fn new(id: u8, semantics: &'static str) -> PropositionOutcome {
        PropositionOutcome {
            id,
            semantics,
            checked: 0,
            passed: 0,
            skipped: 0,
            first_counterexample: None,
            expected_discrepancy: false,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        } else if self.first_counterexample.is_none() {
            self.first_counterexample = Some(describe());
        }
    }

    pub fn failed(&self) -> u64 {
        self.checked - self.passed
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PropositionStatus {
    Pass,
    Discrepancy,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    pub seed: u64,
    pub trials: u64,
    pub rows: Vec<PropositionOutcome>,
}

impl PropositionReport {
    pub fn rows_for(&self, id: u8) -> impl Iterator<Item = &PropositionOutcome> {
        self.rows.iter().filter(move |r| r.id == id)
    }

    pub fn status(&self, id: u8) -> PropositionStatus {
        let mut status = PropositionStatus::Pass;
        for row in self.rows_for(id) {
            if row.failed() == 0 && row.checked > 0 {
                continue;
            }
            if row.expected_discrepancy {
                status = PropositionStatus::Discrepancy;
            } else {
                return PropositionStatus::Fail;
            }
        }
        status
    }

    /// `(pass, discrepancy, fail)` counts over propositions 1-6.
    pub fn summary(&self) -> (usize, usize, usize) {
        let statuses: Vec<_> = (1..=6).map(|id| self.status(id)).collect();
        let count = |s| statuses.iter().filter(|&&x| x == s).count();
        (
            count(PropositionStatus::Pass),
            count(PropositionStatus::Discrepancy),
            count(PropositionStatus::Fail),
        )
    }

    pub fn all_passed(&self) -> bool {
        self.summary().2 == 0
    }
}

struct Suite {
    classifier: Classifier,
    sampler: SetExprSampler,
}

impl Suite {
    fn truth(&self, sem: Semantics, a: &SetExpr, b: &SetExpr) -> TruthValue {
        match sem {
            Semantics::HalfCard => self.classifier.half_card_most(a, b).truth,
            Semantics::DiffCard => self.classifier.diff_card_most(a, b).truth,
            Semantics::Density => unreachable!("cardinal propositions only"),
        }
    }

    fn finite_nonempty<R: Rng>(&self, rng: &mut R) -> SetExpr {
        // mix literal sets with finite sets cut out of richer expressions
        for _ in 0..32 {
            let f = self.sampler.finite_set(rng);
            let candidate = if rng.random_bool(0.5) {
                f
            } else {
                self.sampler.sample(rng).intersect(f)
            };
            if let Cardinality::Finite(k) = self.classifier.cardinality(&candidate) {
                if k > 0 {
                    return candidate;
                }
            }
        }
        self.sampler.finite_set(rng)
    }

    fn infinite<R: Rng>(&self, rng: &mut R) -> SetExpr {
        for _ in 0..64 {
            let candidate = self.sampler.sample(rng);
            if self.classifier.cardinality(&candidate) == Cardinality::Aleph0 {
                return candidate;
            }
        }
        self.sampler.progression(rng).union(SetExpr::Universe)
    }
}

/// Runs the proposition checks; the randomized ones (1, 3, 4, 5, 6) draw
/// `trials` instances each.
pub fn proposition_suite(seed: u64, trials: u64, classifier: &Classifier) -> PropositionReport {
    use Semantics::{DiffCard, HalfCard};
    let suite = Suite {
        classifier: *classifier,
        sampler: SetExprSampler {
            max_depth: 3,
            ..SetExprSampler::default()
        },
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p1 = PropositionOutcome::new(1, "half+diff");
    let mut p2 = PropositionOutcome::new(2, "half+diff");
    let mut p3 = PropositionOutcome::new(3, "half+diff");
    let mut p4 = PropositionOutcome::new(4, "half=F,diff=T");
    let mut p5 = PropositionOutcome::new(5, "half=F");
    let mut p6d = PropositionOutcome::new(6, "diff");
    let mut p6h = PropositionOutcome::new(6, "half");
    p6h.expected_discrepancy = true;

    let both_true = |a: &SetExpr, b: &SetExpr| {
        (suite.truth(HalfCard, a, b), suite.truth(DiffCard, a, b)) == (TruthValue::True, TruthValue::True)
    };

    // 2: the fixed counterexample
    {
        let b = SetExpr::Universe;
        let a = SetExpr::Ap { modulus: 3, residue: 1 }.complement();
        let half = suite.truth(HalfCard, &b, &a);
        let diff = suite.truth(DiffCard, &b, &a);
        p2.record(half == TruthValue::False && diff == TruthValue::False, || {
            format!("Most({b}, {a}): half {half}, diff {diff}")
        });
    }

    for _ in 0..trials {
        // 1
        let a = suite.sampler.finite_set(&mut rng);
        let b = a.clone().union(suite.sampler.finite_set(&mut rng));
        p1.record(both_true(&a, &b), || format!("A = {a}, B = {b}"));

        // 3
        let a = suite.finite_nonempty(&mut rng);
        p3.record(both_true(&a, &a), || format!("A = {a}"));

        // 4
        let a = suite.infinite(&mut rng);
        let (half, diff) = (suite.truth(HalfCard, &a, &a), suite.truth(DiffCard, &a, &a));
        p4.record(half == TruthValue::False && diff == TruthValue::True, || {
            format!("A = {a}: half {half}, diff {diff}")
        });

        // 5
        let b = suite.sampler.sample(&mut rng);
        let half = suite.truth(HalfCard, &a, &b);
        p5.record(half == TruthValue::False, || format!("A = {a}, B = {b}: half {half}"));

        // 6
        let a = suite.infinite(&mut rng);
        let f = suite.sampler.finite_set(&mut rng);
        let x = suite.sampler.sample(&mut rng);
        let b = a.clone().diff(f).union(x);
        let c = &suite.classifier;
        let premises = c.cardinality(&b) == Cardinality::Aleph0
            && c.cardinality(&a.clone().intersect(b.clone())) == Cardinality::Aleph0
            && matches!(c.cardinality(&a.clone().diff(b.clone())), Cardinality::Finite(_));
        if premises {
            let diff = suite.truth(DiffCard, &a, &b);
            p6d.record(diff == TruthValue::True, || format!("A = {a}, B = {b}: diff {diff}"));
            let half = suite.truth(HalfCard, &a, &b);
            p6h.record(half == TruthValue::True, || format!("A = {a}, B = {b}: half {half}"));
        } else {
            p6d.skipped += 1;
            p6h.skipped += 1;
        }
    }

    PropositionReport {
        seed,
        trials,
        rows: vec![p1, p2, p3, p4, p5, p6d, p6h],
    }
}
