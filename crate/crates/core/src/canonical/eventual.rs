//! Eventual behaviour with the null generators abstracted away.
//!
//! Beyond the largest finite-set element, an expression's membership at `n`
//! is a boolean function of `n mod period` and of the generator bits
//! `n in P`, `n in Q`. Treating those bits as free variables, each truth
//! assignment turns the expression into a generator-free one whose core can
//! be computed exactly. A property that holds under every assignment holds
//! for the real set. The only fact used about the generators is that no
//! square is prime, so assignments setting both bits are left out.

use super::{CanonicalError, Normalizer, PeriodicCore};
use crate::setlang::{NullKind, SetExpr};

/// The cores of an expression under every assignment of its generators.
#[derive(Debug, Clone)]
pub struct GeneratorCases {
    pub generators: Vec<NullKind>,
    /// One entry per assignment; `bits[i]` is the value of `generators[i]`.
    pub cases: Vec<(Vec<bool>, PeriodicCore)>,
}

impl GeneratorCases {
    pub fn of(expr: &SetExpr, period_cap: u64) -> Result<GeneratorCases, CanonicalError> {
        let generators: Vec<NullKind> = expr.generators().into_iter().collect();
        let normalizer = Normalizer::new(period_cap);
        let mut cases = Vec::with_capacity(1 << generators.len());
        for mask in 0u32..(1 << generators.len()) {
            let bits: Vec<bool> = (0..generators.len()).map(|i| mask & (1 << i) != 0).collect();
            if bits.iter().filter(|&&b| b).count() > 1 {
                continue;
            }
            let substituted = expr.map_generators(&|kind| {
                let i = generators.iter().position(|&g| g == kind).expect("listed generator");
                if bits[i] {
                    SetExpr::Universe
                } else {
                    SetExpr::Empty
                }
            });
            let core = normalizer.normalize(&substituted)?.core().clone();
            cases.push((bits, core));
        }
        Ok(GeneratorCases { generators, cases })
    }

    pub fn threshold(&self) -> u64 {
        self.cases.iter().map(|(_, c)| c.threshold()).max().unwrap_or(1)
    }
}

/// True when the expression provably has no members beyond some threshold.
pub fn eventually_empty(expr: &SetExpr, period_cap: u64) -> Result<bool, CanonicalError> {
    let cases = GeneratorCases::of(expr, period_cap)?;
    Ok(cases.cases.iter().all(|(_, core)| !core.has_residues()))
}

/// True when the expression provably contains every element of `kind`
/// beyond some threshold, which makes it infinite.
pub fn eventually_contains(expr: &SetExpr, kind: NullKind, period_cap: u64) -> Result<bool, CanonicalError> {
    let cases = GeneratorCases::of(expr, period_cap)?;
    let Some(i) = cases.generators.iter().position(|&g| g == kind) else {
        return Ok(false);
    };
    Ok(cases
        .cases
        .iter()
        .filter(|(bits, _)| bits[i])
        .all(|(_, core)| core.residues_full()))
}

/// True when the expression is provably empty: eventually empty, and no
/// member below the threshold.
pub fn provably_empty(expr: &SetExpr, period_cap: u64) -> Result<bool, CanonicalError> {
    let cases = GeneratorCases::of(expr, period_cap)?;
    if cases.cases.iter().any(|(_, core)| core.has_residues()) {
        return Ok(false);
    }
    Ok((1..cases.threshold()).all(|n| !expr.contains(n)))
}
