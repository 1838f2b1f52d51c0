//! Canonical form of a set expression.
//!
//! Every [`SetExpr`] compiles to a [`CanonicalSet`]: an eventually periodic
//! [`PeriodicCore`] plus a correction `delta`, applied by symmetric
//! difference, that is contained in a union of null generators. The core
//! carries the whole density; the delta only matters for membership.
//!
//! The core of an expression is exactly the set denoted by the expression
//! with every null generator replaced by `O`, so the correction can always
//! be written in the DSL and checked pointwise.

mod eventual;
mod periodic;

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

pub use self::eventual::{eventually_contains, eventually_empty, provably_empty, GeneratorCases};
pub use self::periodic::PeriodicCore;
use crate::setlang::{BinOp, NullKind, SetExpr};
use crate::truth::TruthValue;

pub const DEFAULT_PERIOD_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error("combined period {period} exceeds the cap of {cap}")]
    PeriodCap { period: u128, cap: u64 },
    #[error("threshold {threshold} exceeds the cap of {cap}")]
    ThresholdCap { threshold: u64, cap: u64 },
}

/// Structural evidence that a correction is null: it is contained in the
/// union of the listed generators. An empty list means the correction is
/// empty.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct NullCertificate {
    pub generators: BTreeSet<NullKind>,
}

impl NullCertificate {
    pub fn of(delta: &SetExpr) -> NullCertificate {
        NullCertificate {
            generators: delta.generators(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// Pointwise consequence of the certificate.
    pub fn covers(&self, n: u64) -> bool {
        self.generators.iter().any(|g| g.contains(n))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalSet {
    source: SetExpr,
    core: PeriodicCore,
    delta: SetExpr,
    certificate: NullCertificate,
}

impl CanonicalSet {
    pub fn source(&self) -> &SetExpr {
        &self.source
    }

    pub fn core(&self) -> &PeriodicCore {
        &self.core
    }

    pub fn delta(&self) -> &SetExpr {
        &self.delta
    }

    pub fn certificate(&self) -> &NullCertificate {
        &self.certificate
    }

    pub fn is_delta_free(&self) -> bool {
        self.certificate.is_trivial()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.core.contains(n) ^ self.delta.contains(n)
    }

    /// Exact density of the core, which is the density of the whole set.
    pub fn density_fraction(&self) -> Ratio<u64> {
        self.core.density_fraction()
    }

    /// Checks the representation invariants, including that the recorded
    /// certificate matches the correction.
    pub fn is_valid(&self) -> bool {
        self.core.is_valid()
            && self.certificate == NullCertificate::of(&self.delta)
            && (!self.certificate.is_trivial() || self.delta.is_empty_expr())
    }

    fn leaf(source: SetExpr, core: PeriodicCore, delta: SetExpr) -> CanonicalSet {
        let certificate = NullCertificate::of(&delta);
        CanonicalSet {
            source,
            core,
            delta,
            certificate,
        }
    }

    pub fn complement(&self) -> CanonicalSet {
        // (E ^ D)^c = E^c ^ D
        CanonicalSet {
            source: self.source.clone().complement(),
            core: self.core.complement(),
            delta: self.delta.clone(),
            certificate: self.certificate.clone(),
        }
    }

    pub fn combine(
        op: BinOp,
        a: &CanonicalSet,
        b: &CanonicalSet,
        period_cap: u64,
    ) -> Result<CanonicalSet, CanonicalError> {
        let core = PeriodicCore::combine(op, &a.core, &b.core, period_cap)?;
        let source = SetExpr::binary(op, a.source.clone(), b.source.clone());
        let delta = match (a.is_delta_free(), b.is_delta_free()) {
            (true, true) => SetExpr::Empty,
            (true, false) => one_sided_delta(op, &b.delta, &a.source, Side::Right),
            (false, true) => one_sided_delta(op, &a.delta, &b.source, Side::Left),
            (false, false) => match op {
                BinOp::SymDiff => a.delta.clone().sym_diff(b.delta.clone()),
                _ => source.clone().sym_diff(source.strip_generators()),
            },
        };
        Ok(CanonicalSet::leaf(source, core, delta))
    }
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

/// Correction of `op(x, y)` when only one operand carries a correction `d`;
/// `other` is the source of the exact operand.
fn one_sided_delta(op: BinOp, d: &SetExpr, other: &SetExpr, side: Side) -> SetExpr {
    let other_core = other.strip_generators();
    match (op, side) {
        (BinOp::Union, _) => d.clone().diff(other_core),
        (BinOp::Intersect, _) => d.clone().intersect(other_core),
        (BinOp::Diff, Side::Left) => d.clone().diff(other_core),
        (BinOp::Diff, Side::Right) => d.clone().intersect(other_core),
        (BinOp::SymDiff, _) => d.clone(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Normalizer {
    pub period_cap: u64,
}

impl Default for Normalizer {
    fn default() -> Self {
        Normalizer {
            period_cap: DEFAULT_PERIOD_CAP,
        }
    }
}

impl Normalizer {
    pub fn new(period_cap: u64) -> Normalizer {
        Normalizer {
            period_cap: period_cap.max(1),
        }
    }

    pub fn normalize(&self, expr: &SetExpr) -> Result<CanonicalSet, CanonicalError> {
        let cap = self.period_cap;
        Ok(match expr {
            SetExpr::Universe => CanonicalSet::leaf(expr.clone(), PeriodicCore::universe(), SetExpr::Empty),
            SetExpr::Empty => CanonicalSet::leaf(expr.clone(), PeriodicCore::empty(), SetExpr::Empty),
            SetExpr::Ap { modulus, residue } => CanonicalSet::leaf(
                expr.clone(),
                PeriodicCore::progression(*modulus, *residue, cap)?,
                SetExpr::Empty,
            ),
            SetExpr::Finite(xs) => CanonicalSet::leaf(expr.clone(), PeriodicCore::finite(xs, cap)?, SetExpr::Empty),
            SetExpr::Null(kind) => CanonicalSet::leaf(expr.clone(), PeriodicCore::empty(), SetExpr::Null(*kind)),
            SetExpr::Complement(e) => self.normalize(e)?.complement(),
            _ => {
                let (op, a, b) = expr.as_binary().expect("binary node");
                let a = self.normalize(a)?;
                let b = self.normalize(b)?;
                CanonicalSet::combine(op, &a, &b, cap)?
            }
        })
    }

    /// Decides `a ~ b` (finite symmetric difference) where it can be
    /// certified, and answers `Unknown` otherwise.
    pub fn asymptotic_equiv(&self, a: &SetExpr, b: &SetExpr) -> Result<TruthValue, CanonicalError> {
        let diff = a.clone().sym_diff(b.clone());
        let canon = self.normalize(&diff)?;
        if canon.core.has_residues() {
            return Ok(TruthValue::False);
        }
        if canon.is_delta_free() || eventually_empty(&diff, self.period_cap)? {
            return Ok(TruthValue::True);
        }
        // eventually containing a generator makes the difference infinite
        for kind in &canon.certificate.generators {
            if eventually_contains(&diff, *kind, self.period_cap)? {
                return Ok(TruthValue::False);
            }
        }
        Ok(TruthValue::Unknown)
    }
}

/// [`Normalizer::normalize`] with the default period cap.
pub fn normalize(expr: &SetExpr) -> Result<CanonicalSet, CanonicalError> {
    Normalizer::default().normalize(expr)
}

pub fn asymptotic_equiv(a: &SetExpr, b: &SetExpr) -> Result<TruthValue, CanonicalError> {
    Normalizer::default().asymptotic_equiv(a, b)
}

#[derive(Serialize)]
struct CanonicalView<'a> {
    period: u64,
    residues: Vec<u64>,
    threshold: u64,
    prefix: &'a [bool],
    delta: String,
}

impl Serialize for CanonicalSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CanonicalView {
            period: self.core.period(),
            residues: self.core.residues().collect(),
            threshold: self.core.threshold(),
            prefix: self.core.prefix(),
            delta: self.delta.to_string(),
        }
        .serialize(s)
    }
}
