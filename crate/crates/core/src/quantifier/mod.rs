//! "Most A are B" under three semantics:
//!
//! - half-cardinality: `C(A ∩ B) > C(A) / 2`
//! - cardinal difference: `C(A ∩ B) > C(A \ B)`
//! - natural density: `d(A ∩ B) > d(A \ B)`
//!
//! Cardinalities live in `{0, 1, 2, ..., ℵ₀}` with `ℵ₀ / k = ℵ₀`. When a
//! cardinality cannot be certified it is `Unknown`, and a comparison is only
//! decided if every possible value of the unknown side gives the same answer.

mod propositions;

use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::canonical::{eventually_contains, eventually_empty, Normalizer};
use crate::density::{count_members, exact_density, Density, DensityError};
use crate::setlang::SetExpr;
use crate::truth::TruthValue;
pub use propositions::{proposition_suite, PropositionOutcome, PropositionReport, PropositionStatus};

/// Upper end of the diagnostic scan attached to `Unknown` classifications.
pub const SCAN_BOUND: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cardinality {
    Finite(u64),
    Aleph0,
    Unknown,
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(k) => write!(f, "finite:{k}"),
            Cardinality::Aleph0 => f.write_str("aleph0"),
            Cardinality::Unknown => f.write_str("unknown"),
        }
    }
}

/// Number of members in `[1, bound]`, attached when classification fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanEvidence {
    pub bound: u64,
    pub count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub cardinality: Cardinality,
    pub scan: Option<ScanEvidence>,
}

/// A cardinal that can be compared: finite values may be fractional
/// (halves of counts). Variant order gives `Finite(_) < Aleph0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Cardinal {
    Finite(Ratio<u64>),
    Aleph0,
}

impl Cardinal {
    fn of(c: Cardinality) -> Option<Cardinal> {
        match c {
            Cardinality::Finite(k) => Some(Cardinal::Finite(Ratio::from_integer(k))),
            Cardinality::Aleph0 => Some(Cardinal::Aleph0),
            Cardinality::Unknown => None,
        }
    }

    fn half(c: Cardinality) -> Option<Cardinal> {
        match c {
            Cardinality::Finite(k) => Some(Cardinal::Finite(Ratio::new(k, 2))),
            other => Cardinal::of(other),
        }
    }
}

/// `lhs > rhs` where `None` is an unknown cardinal in `{0, 1, ..., ℵ₀}`.
fn exceeds(lhs: Option<Cardinal>, rhs: Option<Cardinal>) -> TruthValue {
    match (lhs, rhs) {
        // nothing exceeds ℵ₀
        (_, Some(Cardinal::Aleph0)) => TruthValue::False,
        (Some(l), Some(r)) => (l > r).into(),
        // an unknown right side may be 0 or ℵ₀
        (Some(Cardinal::Finite(j)), None) if j == Ratio::from_integer(0) => TruthValue::False,
        _ => TruthValue::Unknown,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    #[serde(rename = "half")]
    HalfCard,
    #[serde(rename = "diff")]
    DiffCard,
    Density,
}

impl Semantics {
    pub fn name(self) -> &'static str {
        match self {
            Semantics::HalfCard => "half",
            Semantics::DiffCard => "diff",
            Semantics::Density => "density",
        }
    }
}

/// One of the two quantities a verdict compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Cardinal(Cardinality),
    /// `C(X) / 2`.
    HalfCardinal(Cardinality),
    Density(Density),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Cardinal(c) => write!(f, "{c}"),
            Quantity::HalfCardinal(Cardinality::Finite(k)) => write!(f, "finite:{}", Ratio::new(*k, 2)),
            Quantity::HalfCardinal(c) => write!(f, "{c}"),
            Quantity::Density(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MostVerdict {
    pub semantics: Semantics,
    pub truth: TruthValue,
    pub lhs: Quantity,
    pub rhs: Quantity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classifier {
    normalizer: Normalizer,
}

impl Default for Classifier {
    fn default() -> Self {
        Classifier::new(Normalizer::default())
    }
}

impl Classifier {
    pub fn new(normalizer: Normalizer) -> Classifier {
        Classifier { normalizer }
    }

    pub fn normalizer(&self) -> &Normalizer {
        &self.normalizer
    }

    pub fn cardinality(&self, expr: &SetExpr) -> Cardinality {
        self.decide(expr).unwrap_or(Cardinality::Unknown)
    }

    /// Certifies finiteness or infinitude where it follows from the
    /// representation alone. Sets that exceed the period cap classify as
    /// `Unknown`; undecided sets carry a membership count up to
    /// [`SCAN_BOUND`] as evidence.
    pub fn classify(&self, expr: &SetExpr) -> Classification {
        match self.decide(expr) {
            Some(cardinality) => Classification {
                cardinality,
                scan: None,
            },
            None => Classification {
                cardinality: Cardinality::Unknown,
                scan: Some(ScanEvidence {
                    bound: SCAN_BOUND,
                    count: count_members(expr, 1, SCAN_BOUND),
                }),
            },
        }
    }

    fn decide(&self, expr: &SetExpr) -> Option<Cardinality> {
        let cap = self.normalizer.period_cap;
        let canon = self.normalizer.normalize(expr).ok()?;
        if canon.core().has_residues() {
            return Some(Cardinality::Aleph0);
        }
        if canon.is_delta_free() {
            return Some(Cardinality::Finite(canon.core().prefix_count()));
        }
        if let Ok(true) = eventually_empty(expr, cap) {
            // every member lies below the largest finite-set element
            let threshold = crate::canonical::GeneratorCases::of(expr, cap)
                .map(|c| c.threshold())
                .unwrap_or(1);
            return Some(Cardinality::Finite(count_members(expr, 1, threshold - 1)));
        }
        canon
            .certificate()
            .generators
            .iter()
            .any(|&kind| matches!(eventually_contains(expr, kind, cap), Ok(true)))
            .then_some(Cardinality::Aleph0)
    }

    /// `C(A ∩ B) > C(A) / 2`.
    pub fn half_card_most(&self, a: &SetExpr, b: &SetExpr) -> MostVerdict {
        let meet = self.cardinality(&a.clone().intersect(b.clone()));
        let whole = self.cardinality(a);
        MostVerdict {
            semantics: Semantics::HalfCard,
            truth: exceeds(Cardinal::of(meet), Cardinal::half(whole)),
            lhs: Quantity::Cardinal(meet),
            rhs: Quantity::HalfCardinal(whole),
        }
    }

    /// `C(A ∩ B) > C(A \ B)`.
    pub fn diff_card_most(&self, a: &SetExpr, b: &SetExpr) -> MostVerdict {
        let meet = self.cardinality(&a.clone().intersect(b.clone()));
        let rest = self.cardinality(&a.clone().diff(b.clone()));
        MostVerdict {
            semantics: Semantics::DiffCard,
            truth: exceeds(Cardinal::of(meet), Cardinal::of(rest)),
            lhs: Quantity::Cardinal(meet),
            rhs: Quantity::Cardinal(rest),
        }
    }

    /// `d(A ∩ B) > d(A \ B)`, decided exactly.
    pub fn density_most(&self, a: &SetExpr, b: &SetExpr) -> Result<MostVerdict, DensityError> {
        let meet = exact_density(&self.normalizer.normalize(&a.clone().intersect(b.clone()))?);
        let rest = exact_density(&self.normalizer.normalize(&a.clone().diff(b.clone()))?);
        Ok(MostVerdict {
            semantics: Semantics::Density,
            truth: (meet > rest).into(),
            lhs: Quantity::Density(meet),
            rhs: Quantity::Density(rest),
        })
    }

    pub fn most(&self, semantics: Semantics, a: &SetExpr, b: &SetExpr) -> Result<MostVerdict, DensityError> {
        match semantics {
            Semantics::HalfCard => Ok(self.half_card_most(a, b)),
            Semantics::DiffCard => Ok(self.diff_card_most(a, b)),
            Semantics::Density => self.density_most(a, b),
        }
    }
}

pub fn cardinality(expr: &SetExpr) -> Cardinality {
    Classifier::default().cardinality(expr)
}

pub fn half_card_most(a: &SetExpr, b: &SetExpr) -> MostVerdict {
    Classifier::default().half_card_most(a, b)
}

pub fn diff_card_most(a: &SetExpr, b: &SetExpr) -> MostVerdict {
    Classifier::default().diff_card_most(a, b)
}

pub fn density_most(a: &SetExpr, b: &SetExpr) -> Result<MostVerdict, DensityError> {
    Classifier::default().density_most(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setlang::parse;
    use TruthValue::*;

    fn e(s: &str) -> SetExpr {
        parse(s).unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(cardinality(&e("N \\ {1,2,3}")), Cardinality::Aleph0);
        assert_eq!(cardinality(&e("{1,2,3}")), Cardinality::Finite(3));
        assert_eq!(cardinality(&e("P")), Cardinality::Aleph0);
        assert_eq!(cardinality(&e("Q \\ {1,4}")), Cardinality::Aleph0);
        assert_eq!(cardinality(&e("P & comp(P)")), Cardinality::Finite(0));
        assert_eq!(cardinality(&e("{2,4,9} & (P | Q)")), Cardinality::Finite(3));
        assert_eq!(cardinality(&e("O")), Cardinality::Finite(0));
    }

    #[test]
    fn unknown_carries_scan_evidence() {
        let c = Classifier::default().classify(&e("P & AP(4,0)"));
        assert_eq!(c.cardinality, Cardinality::Unknown);
        assert_eq!(
            c.scan,
            Some(ScanEvidence {
                bound: SCAN_BOUND,
                count: 0
            })
        );
    }

    #[test]
    fn cardinal_comparison_table() {
        let fin = |k: u64| Some(Cardinal::Finite(Ratio::from_integer(k)));
        let aleph = Some(Cardinal::Aleph0);
        assert_eq!(exceeds(aleph, aleph), False);
        assert_eq!(exceeds(aleph, fin(3)), True);
        assert_eq!(exceeds(fin(3), aleph), False);
        assert_eq!(exceeds(fin(2), Some(Cardinal::Finite(Ratio::new(3, 2)))), True);
        assert_eq!(exceeds(fin(1), Some(Cardinal::Finite(Ratio::new(3, 2)))), False);
        assert_eq!(exceeds(None, aleph), False);
        assert_eq!(exceeds(None, fin(0)), Unknown);
        assert_eq!(exceeds(aleph, None), Unknown);
        assert_eq!(exceeds(fin(0), None), False);
        assert_eq!(exceeds(fin(4), None), Unknown);
    }

    #[test]
    fn half_cardinality() {
        assert_eq!(half_card_most(&e("N"), &e("N")).truth, False);
        assert_eq!(half_card_most(&e("N"), &e("AP(3,1)")).truth, False);
        let v = half_card_most(&e("{1,2,3}"), &e("{1,2,3}"));
        assert_eq!(v.truth, True);
        assert_eq!(
            (v.lhs.to_string(), v.rhs.to_string()),
            ("finite:3".into(), "finite:3/2".into())
        );
    }

    #[test]
    fn cardinal_difference() {
        let v = diff_card_most(&e("N"), &e("N \\ {1,2,3}"));
        assert_eq!(
            (v.truth, v.lhs.to_string(), v.rhs.to_string()),
            (True, "aleph0".into(), "finite:3".into())
        );
        assert_eq!(diff_card_most(&e("N"), &e("comp(AP(3,1))")).truth, False);
        assert_eq!(diff_card_most(&e("N"), &e("N")).truth, True);
        // nothing exceeds aleph0, whatever the undecided side is
        assert_eq!(diff_card_most(&e("N"), &e("P & AP(4,0)")).truth, False);
        assert_eq!(diff_card_most(&e("P & AP(4,0)"), &e("N")).truth, Unknown);
    }

    #[test]
    fn density_semantics() {
        let v = density_most(&e("N"), &e("comp(AP(3,1))")).unwrap();
        assert_eq!(
            (v.truth, v.lhs.to_string(), v.rhs.to_string()),
            (True, "2/3".into(), "1/3".into())
        );
        assert_eq!(density_most(&e("N"), &e("P")).unwrap().truth, False);
        assert_eq!(density_most(&e("P"), &e("N")).unwrap().truth, False);
        assert_eq!(density_most(&e("N"), &e("comp(P)")).unwrap().truth, True);
        assert_eq!(density_most(&e("N"), &e("{1,2,3}")).unwrap().truth, False);
        assert_eq!(density_most(&e("{1,2,3}"), &e("N")).unwrap().truth, False);
    }

    #[test]
    fn verdict_json() {
        let v = density_most(&e("N"), &e("comp(AP(3,1))")).unwrap();
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"semantics":"density","truth":"True","lhs":"2/3","rhs":"1/3"}"#
        );
        let v = diff_card_most(&e("N"), &e("N"));
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"semantics":"diff","truth":"True","lhs":"aleph0","rhs":"finite:0"}"#
        );
    }
}
