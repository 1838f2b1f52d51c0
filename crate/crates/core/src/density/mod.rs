//! Natural density: exact values on canonical sets and prefix ratios
//! `|A ∩ [1, n]| / n` computed by direct enumeration.

mod axioms;

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::canonical::{CanonicalError, CanonicalSet, Normalizer};
use crate::setlang::SetExpr;
pub use axioms::{axiom_suite, AxiomReport, LawOutcome};

/// An exact density in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Density(Ratio<u64>);

impl Density {
    pub const ZERO: Density = Density(Ratio::new_raw(0, 1));
    pub const ONE: Density = Density(Ratio::new_raw(1, 1));

    pub fn new(value: Ratio<u64>) -> Option<Density> {
        (value <= Ratio::one()).then_some(Density(value))
    }

    pub fn value(self) -> Ratio<u64> {
        self.0
    }

    /// `1 - d`.
    pub fn complement(self) -> Density {
        Density(Ratio::one() - self.0)
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Density {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("exact density unavailable: {0}")]
    ExactUnavailable(#[from] CanonicalError),
}

/// The density of a canonical set: the core's residue fraction. The
/// correction is null and contributes nothing.
pub fn exact_density(set: &CanonicalSet) -> Density {
    Density(set.density_fraction())
}

pub fn density_of(expr: &SetExpr, normalizer: &Normalizer) -> Result<Density, DensityError> {
    Ok(exact_density(&normalizer.normalize(expr)?))
}

const CHUNK: u64 = 1 << 15;

/// `|{k in [lo, hi] : k in expr}|`, counted in parallel over disjoint chunks.
pub fn count_members(expr: &SetExpr, lo: u64, hi: u64) -> u64 {
    assert!(lo >= 1, "counting starts at 1");
    if hi < lo {
        return 0;
    }
    let chunks = (hi - lo) / CHUNK + 1;
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = lo + c * CHUNK;
            let end = (start + CHUNK - 1).min(hi);
            (start..=end).filter(|&k| expr.contains(k)).count() as u64
        })
        .sum()
}

/// `|expr ∩ [1, n]| / n` in lowest terms. Panics if `n == 0`.
pub fn empirical_density(expr: &SetExpr, n: u64) -> Ratio<u64> {
    assert!(n >= 1, "empirical density needs n >= 1");
    Ratio::new(count_members(expr, 1, n), n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub n: u64,
    pub count: u64,
    pub ratio: Ratio<u64>,
}

/// Same columns as the CSV form: `n`, `count`, `num`, `den`.
impl Serialize for Checkpoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Checkpoint", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("count", &self.count)?;
        st.serialize_field("num", self.ratio.numer())?;
        st.serialize_field("den", self.ratio.denom())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactStatus {
    Value(Density),
    Unavailable(CanonicalError),
}

impl Serialize for ExactStatus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExactStatus::Value(d) => d.serialize(s),
            ExactStatus::Unavailable(_) => s.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    #[serde(serialize_with = "expr_str")]
    pub expression: SetExpr,
    pub checkpoints: Vec<Checkpoint>,
    #[serde(rename = "exact")]
    pub exact_density: ExactStatus,
}

fn expr_str<S: Serializer>(e: &SetExpr, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(e)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckpointError {
    #[error("checkpoints must be at least 1")]
    Zero,
    #[error("checkpoints must be strictly increasing ({prev} then {next})")]
    NotIncreasing { prev: u64, next: u64 },
}

/// Prefix ratios at each checkpoint, plus the exact density when the
/// expression normalizes within the cap. The empirical rows are produced
/// even when the exact value is unavailable.
pub fn convergence(
    expr: &SetExpr,
    checkpoints: &[u64],
    normalizer: &Normalizer,
) -> Result<ConvergenceReport, CheckpointError> {
    let mut rows = Vec::with_capacity(checkpoints.len());
    let mut count = 0;
    let mut prev = 0;
    for &n in checkpoints {
        if n == 0 {
            return Err(CheckpointError::Zero);
        }
        if n <= prev {
            return Err(CheckpointError::NotIncreasing { prev, next: n });
        }
        count += count_members(expr, prev + 1, n);
        rows.push(Checkpoint {
            n,
            count,
            ratio: Ratio::new(count, n),
        });
        prev = n;
    }
    let exact_density = match normalizer.normalize(expr) {
        Ok(c) => ExactStatus::Value(exact_density(&c)),
        Err(e) => ExactStatus::Unavailable(e),
    };
    Ok(ConvergenceReport {
        expression: expr.clone(),
        checkpoints: rows,
        exact_density,
    })
}

impl ConvergenceReport {
    /// CSV with columns `n,count,num,den`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "count", "num", "den"]).expect("in-memory write");
        for row in &self.checkpoints {
            w.serialize((row.n, row.count, row.ratio.numer(), row.ratio.denom()))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
    }
}
