//! The restricted language of `Most` sentences with `U` on at least one
//! side, its three-rule proof system, and density models.
//!
//! Proof rules:
//!
//! ```text
//!   (Axiom)  Most(A,U)
//!   (X1)     Most(Ac,U)  Most(A,U)  /  φ
//!   (X2)     Most(U,Ac)  Most(U,A)  /  φ
//! ```
//!
//! With the axiom switched off, a consistent premise set derives exactly its
//! own members. With [`AxiomMode::PositiveDensity`] the schema is
//! instantiated for positive variables only; instantiating it for
//! complements as well would make every premise set X1-inconsistent.

mod search;
mod sentence;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::quantifier::{Cardinality, Classifier};
use crate::setlang::SetExpr;
use crate::truth::TruthValue;
pub use search::{family, SearchParams, Searcher};
pub use sentence::{parse_premises, Gamma, Sentence, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("not a sentence of the restricted language: {0}")]
    Form(String),
    #[error("line {line}: {source}")]
    Premise {
        line: usize,
        #[source]
        source: Box<LogicError>,
    },
    #[error("variable {0} has no interpretation")]
    Unbound(String),
    #[error("{name} is not a valid interpretation: {reason}")]
    Interpretation { name: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AxiomMode {
    #[default]
    Off,
    PositiveDensity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    X1,
    X2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Consistency {
    pub consistent: bool,
    /// The clashing pair and the rule it triggers.
    pub witness: Option<(Sentence, Sentence, Rule)>,
}

/// Axiom instances `Most(A,U)` for the positive variables of `g`.
fn axiom_instances(g: &Gamma) -> Vec<Sentence> {
    g.variables()
        .into_iter()
        .map(|v| Sentence::new(Term::Var(v), Term::U).expect("U on the right"))
        .collect()
}

pub fn is_consistent(g: &Gamma, mode: AxiomMode) -> Consistency {
    let mut all: Vec<Sentence> = g.iter().cloned().collect();
    if mode == AxiomMode::PositiveDensity {
        for s in axiom_instances(g) {
            if !all.contains(&s) {
                all.push(s);
            }
        }
    }
    for (i, s) in all.iter().enumerate() {
        let Some((rule, clash)) = s.clash_partner() else {
            continue;
        };
        if all[..i].contains(&clash) {
            return Consistency {
                consistent: false,
                witness: Some((clash, s.clone(), rule)),
            };
        }
    }
    Consistency {
        consistent: true,
        witness: None,
    }
}

/// `Γ ⊢ φ`: everything from an inconsistent Γ; otherwise membership in Γ or
/// an axiom instance.
pub fn derives(g: &Gamma, phi: &Sentence, mode: AxiomMode) -> bool {
    if !is_consistent(g, mode).consistent {
        return true;
    }
    (mode == AxiomMode::PositiveDensity && phi.is_axiom_instance()) || g.contains(phi)
}

/// Variable assignments whose sets and complements are all infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    mapping: BTreeMap<String, SetExpr>,
}

impl Interpretation {
    pub fn new(mapping: BTreeMap<String, SetExpr>, classifier: &Classifier) -> Result<Interpretation, LogicError> {
        for (name, set) in &mapping {
            for (what, e) in [("set", set.clone()), ("complement", set.clone().complement())] {
                let c = classifier.cardinality(&e);
                if c != Cardinality::Aleph0 {
                    return Err(LogicError::Interpretation {
                        name: name.clone(),
                        reason: format!("{what} {e} has cardinality {c}, not aleph0"),
                    });
                }
            }
        }
        Ok(Interpretation { mapping })
    }

    pub fn get(&self, name: &str) -> Option<&SetExpr> {
        self.mapping.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &SetExpr)> {
        self.mapping.iter()
    }

    pub fn denote(&self, t: &Term) -> Result<SetExpr, LogicError> {
        let lookup = |v: &String| {
            self.mapping
                .get(v)
                .cloned()
                .ok_or_else(|| LogicError::Unbound(v.clone()))
        };
        Ok(match t {
            Term::U => SetExpr::Universe,
            Term::Var(v) => lookup(v)?,
            Term::ComplVar(v) => lookup(v)?.complement(),
        })
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.mapping.keys().cloned().collect()
    }
}

/// Density truth of one sentence; a set beyond the period cap gives
/// `Unknown`.
pub fn sentence_truth(i: &Interpretation, s: &Sentence, classifier: &Classifier) -> Result<TruthValue, LogicError> {
    let a = i.denote(s.lhs())?;
    let b = i.denote(s.rhs())?;
    Ok(match classifier.density_most(&a, &b) {
        Ok(v) => v.truth,
        Err(_) => TruthValue::Unknown,
    })
}

pub fn model_check(i: &Interpretation, g: &Gamma, classifier: &Classifier) -> Result<TruthValue, LogicError> {
    let mut acc = TruthValue::True;
    for s in g.iter() {
        acc = acc.and(sentence_truth(i, s, classifier)?);
    }
    Ok(acc)
}
