//! Bounded model and countermodel search.
//!
//! Every sentence of the language mentions at most one variable, so the
//! constraints split per variable and the lexicographically first model is
//! found by taking, for each variable independently, the first family
//! member that satisfies its own constraints.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::{sentence_truth, Gamma, Interpretation, Sentence};
use crate::quantifier::Classifier;
use crate::setlang::{NullKind, SetExpr};
use crate::truth::TruthValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchParams {
    pub max_modulus: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams { max_modulus: 12 }
    }
}

/// Candidate interpretations of a single variable, in search order:
/// `AP(m,r)` for `2 <= m <= max_modulus`, then their complements, then the
/// null generators and their complements.
pub fn family(params: SearchParams) -> Vec<SetExpr> {
    let progressions: Vec<SetExpr> = (2..=params.max_modulus)
        .flat_map(|m| (0..m).map(move |r| SetExpr::Ap { modulus: m, residue: r }))
        .collect();
    let mut out = progressions.clone();
    out.extend(progressions.into_iter().map(SetExpr::complement));
    for kind in NullKind::ALL {
        out.push(SetExpr::Null(kind));
    }
    for kind in NullKind::ALL {
        out.push(SetExpr::Null(kind).complement());
    }
    out
}

pub struct Searcher {
    pub params: SearchParams,
    pub classifier: Classifier,
}

struct Constraint<'a> {
    sentence: &'a Sentence,
    wanted: TruthValue,
}

impl Searcher {
    pub fn new(params: SearchParams, classifier: Classifier) -> Searcher {
        Searcher { params, classifier }
    }

    /// First family member (per variable) satisfying every sentence of `g`.
    pub fn find_model(&self, g: &Gamma) -> Option<Interpretation> {
        let constraints: Vec<Constraint> = g
            .iter()
            .map(|sentence| Constraint {
                sentence,
                wanted: TruthValue::True,
            })
            .collect();
        self.solve(&constraints, &BTreeSet::new())
    }

    /// An interpretation making all of `g` true and `phi` not true, or `None`
    /// once the family is exhausted. `None` is bounded evidence for
    /// `g ⊨ phi`, not a proof.
    pub fn counterexample(&self, g: &Gamma, phi: &Sentence) -> Option<Interpretation> {
        let mut constraints: Vec<Constraint> = g
            .iter()
            .map(|sentence| Constraint {
                sentence,
                wanted: TruthValue::True,
            })
            .collect();
        constraints.push(Constraint {
            sentence: phi,
            wanted: TruthValue::False,
        });
        let extra = phi.variable().map(str::to_string).into_iter().collect();
        self.solve(&constraints, &extra)
    }

    fn solve(&self, constraints: &[Constraint], extra_vars: &BTreeSet<String>) -> Option<Interpretation> {
        let mut by_var: BTreeMap<String, Vec<&Constraint>> =
            extra_vars.iter().map(|v| (v.clone(), Vec::new())).collect();
        let empty = Interpretation {
            mapping: BTreeMap::new(),
        };
        for c in constraints {
            match c.sentence.variable() {
                Some(v) => by_var.entry(v.to_string()).or_default().push(c),
                None => {
                    let t = sentence_truth(&empty, c.sentence, &self.classifier).ok()?;
                    if t != c.wanted {
                        return None;
                    }
                }
            }
        }
        let candidates = family(self.params);
        let mut mapping = BTreeMap::new();
        for (var, cs) in by_var {
            let satisfied: Vec<bool> = candidates
                .par_iter()
                .map(|set| {
                    let single = BTreeMap::from([(var.clone(), set.clone())]);
                    let Ok(i) = Interpretation::new(single, &self.classifier) else {
                        return false;
                    };
                    cs.iter()
                        .all(|c| sentence_truth(&i, c.sentence, &self.classifier).ok() == Some(c.wanted))
                })
                .collect();
            let first = satisfied.iter().position(|&ok| ok)?;
            mapping.insert(var, candidates[first].clone());
        }
        Some(Interpretation { mapping })
    }
}
