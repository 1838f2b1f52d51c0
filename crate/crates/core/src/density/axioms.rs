//! Randomized check of the density postulates on canonical sets.
//!
//! Every quantity is computed by normalizing the composite expression
//! (`A ∪ B`, `A ∩ B`, `Aᶜ`, ...) and reading off its exact density, so the
//! laws are tested against the canonical algebra rather than restated from
//! the operand densities. Comparisons are exact; there is no tolerance.
//!
//! Laws with a hypothesis (3, 4, ii) only count a trial when the hypothesis
//! is certified; otherwise the trial is recorded as skipped.

use num_rational::Ratio;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{exact_density, Density};
use crate::canonical::{provably_empty, CanonicalError, Normalizer};
use crate::quantifier::{Cardinality, Classifier};
use crate::setlang::{SetExpr, SetExprSampler};
use crate::truth::TruthValue;

pub const LAWS: [&str; 9] = ["1", "2", "3", "4", "4=", "5", "i", "ii", "iii"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawOutcome {
    pub law: &'static str,
    pub checked: u64,
    pub passed: u64,
    pub skipped: u64,
    pub first_counterexample: Option<String>,
}

impl LawOutcome {
    fn new(law: &'static str) -> LawOutcome {
        LawOutcome {
            law,
            checked: 0,
            passed: 0,
            skipped: 0,
            first_counterexample: None,
        }
    }

    pub fn failed(&self) -> u64 {
        self.checked - self.passed
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub seed: u64,
    pub trials: u64,
    /// Trials abandoned because a set exceeded the period cap.
    pub unavailable: u64,
    pub laws: Vec<LawOutcome>,
}

impl AxiomReport {
    pub fn law(&self, name: &str) -> &LawOutcome {
        self.laws.iter().find(|l| l.law == name).expect("known law")
    }

    /// Axioms 1-5, including the equality form of 4 on delta-free pairs.
    pub fn axioms_pass(&self) -> bool {
        ["1", "2", "3", "4", "4=", "5"].iter().all(|l| self.law(l).ok())
    }

    pub fn properties_pass(&self) -> bool {
        ["i", "ii", "iii"].iter().all(|l| self.law(l).ok())
    }

    pub fn all_passed(&self) -> bool {
        self.axioms_pass() && self.properties_pass()
    }
}

enum Check {
    Pass,
    Fail(String),
    Skip,
}

fn check(ok: bool, describe: impl FnOnce() -> String) -> Check {
    if ok {
        Check::Pass
    } else {
        Check::Fail(describe())
    }
}

struct Trial<'a> {
    normalizer: &'a Normalizer,
    classifier: Classifier,
}

impl Trial<'_> {
    fn d(&self, e: &SetExpr) -> Result<Density, CanonicalError> {
        Ok(exact_density(&self.normalizer.normalize(e)?))
    }

    fn run(
        &self,
        a: &SetExpr,
        b: &SetExpr,
        x: &SetExpr,
        f: &SetExpr,
    ) -> Result<Vec<(&'static str, Check)>, CanonicalError> {
        let cap = self.normalizer.period_cap;
        let mut out = Vec::new();
        let (da, db) = (self.d(a)?, self.d(b)?);
        let one = Ratio::<u64>::one();

        // (1) 0 <= d <= 1 on the operands and their combinations
        for e in [
            a.clone(),
            b.clone(),
            a.clone().intersect(b.clone()),
            a.clone().union(b.clone()),
            a.clone().complement(),
        ] {
            let v = self.normalizer.normalize(&e)?.density_fraction();
            out.push(("1", check(v <= one, || format!("d({e}) = {v} > 1"))));
        }

        // (2)
        let (du, de) = (self.d(&SetExpr::Universe)?, self.d(&SetExpr::Empty)?);
        out.push((
            "2",
            check(du == Density::ONE && de == Density::ZERO, || {
                format!("d(N) = {du}, d(O) = {de}")
            }),
        ));

        // (3) A ~ B => d(A) = d(B), on a finite perturbation and on the random pair
        for other in [a.clone().sym_diff(f.clone()), b.clone()] {
            if self.normalizer.asymptotic_equiv(a, &other)? == TruthValue::True {
                let (l, r) = (da, self.d(&other)?);
                out.push(("3", check(l == r, || format!("A = {a}, B = {other}: {l} != {r}"))));
            } else {
                out.push(("3", Check::Skip));
            }
        }

        // (4) disjoint => d(A) + d(B) <= d(A ∪ B); equality when both are delta-free
        for other in [x.clone().diff(a.clone()), b.clone()] {
            let meet = a.clone().intersect(other.clone());
            if !provably_empty(&meet, cap)? {
                out.push(("4", Check::Skip));
                continue;
            }
            let dother = self.d(&other)?;
            let join = self.d(&a.clone().union(other.clone()))?;
            let sum = da.value() + dother.value();
            out.push((
                "4",
                check(sum <= join.value(), || {
                    format!("A = {a}, B = {other}: {da} + {dother} > {join}")
                }),
            ));
            let delta_free =
                self.normalizer.normalize(a)?.is_delta_free() && self.normalizer.normalize(&other)?.is_delta_free();
            if delta_free {
                out.push((
                    "4=",
                    check(sum == join.value(), || {
                        format!("A = {a}, B = {other}: {da} + {dother} != {join}")
                    }),
                ));
            } else {
                out.push(("4=", Check::Skip));
            }
        }

        // (5) d(A) + d(B) <= 1 + d(A ∩ B)
        let dab = self.d(&a.clone().intersect(b.clone()))?;
        out.push((
            "5",
            check(da.value() + db.value() <= one + dab.value(), || {
                format!("A = {a}, B = {b}: {da} + {db} > 1 + {dab}")
            }),
        ));

        // (i) d(A) = 1 - d(A^c)
        let dc = self.d(&a.clone().complement())?;
        out.push((
            "i",
            check(da == dc.complement(), || format!("A = {a}: {da} != 1 - {dc}")),
        ));

        // (ii) finite => d = 0
        for e in [f.clone(), a.clone().intersect(f.clone())] {
            match self.classifier.cardinality(&e) {
                Cardinality::Finite(_) => {
                    let v = self.d(&e)?;
                    out.push(("ii", check(v.is_zero(), || format!("A = {e}: d = {v}"))));
                }
                _ => out.push(("ii", Check::Skip)),
            }
        }

        // (iii) A ⊆ A ∪ X => d(A) <= d(A ∪ X)
        let sup = a.clone().union(x.clone());
        let dsup = self.d(&sup)?;
        out.push((
            "iii",
            check(da <= dsup, || format!("A = {a}, B = {sup}: {da} > {dsup}")),
        ));

        Ok(out)
    }
}

/// Runs `trials` seeded trials; `bound` is the largest progression modulus
/// the sampler may draw. Each trial uses its own ChaCha stream, so the
/// report does not depend on scheduling.
pub fn axiom_suite(trials: u64, seed: u64, bound: u64, normalizer: &Normalizer) -> AxiomReport {
    let sampler = SetExprSampler {
        max_depth: 4,
        max_modulus: bound.max(1),
        ..SetExprSampler::default()
    };
    let trial = Trial {
        normalizer,
        classifier: Classifier::new(*normalizer),
    };
    let results: Vec<Result<Vec<(&'static str, Check)>, CanonicalError>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            let a = sampler.sample(&mut rng);
            let b = sampler.sample(&mut rng);
            let x = sampler.sample(&mut rng);
            let f = sampler.finite_set(&mut rng);
            trial.run(&a, &b, &x, &f)
        })
        .collect();

    let mut laws: Vec<LawOutcome> = LAWS.iter().map(|l| LawOutcome::new(l)).collect();
    let mut unavailable = 0;
    for result in results {
        let Ok(checks) = result else {
            unavailable += 1;
            continue;
        };
        for (law, c) in checks {
            let entry = laws.iter_mut().find(|l| l.law == law).expect("known law");
            match c {
                Check::Pass => {
                    entry.checked += 1;
                    entry.passed += 1;
                }
                Check::Fail(msg) => {
                    entry.checked += 1;
                    entry.first_counterexample.get_or_insert(msg);
                }
                Check::Skip => entry.skipped += 1,
            }
        }
    }
    AxiomReport {
        seed,
        trials,
        unavailable,
        laws,
    }
}
