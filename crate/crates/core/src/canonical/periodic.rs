use num_integer::Integer;
use num_rational::Ratio;

use super::CanonicalError;
use crate::setlang::BinOp;

/// An eventually periodic subset of the positive integers.
///
/// For `n >= threshold`, `n` is a member iff `n mod period` is one of the
/// residues; below the threshold membership is read from `prefix`, where
/// `prefix[i]` answers for `n = i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicCore {
    threshold: u64,
    period: u64,
    residues: Vec<bool>,
    prefix: Vec<bool>,
}

impl PeriodicCore {
    pub fn universe() -> PeriodicCore {
        PeriodicCore {
            threshold: 1,
            period: 1,
            residues: vec![true],
            prefix: Vec::new(),
        }
    }

    pub fn empty() -> PeriodicCore {
        PeriodicCore {
            threshold: 1,
            period: 1,
            residues: vec![false],
            prefix: Vec::new(),
        }
    }

    pub fn progression(modulus: u64, residue: u64, cap: u64) -> Result<PeriodicCore, CanonicalError> {
        if modulus > cap {
            return Err(CanonicalError::PeriodCap {
                period: modulus.into(),
                cap,
            });
        }
        let mut residues = vec![false; modulus as usize];
        residues[residue as usize] = true;
        Ok(PeriodicCore {
            threshold: 1,
            period: modulus,
            residues,
            prefix: Vec::new(),
        })
    }

    /// `elements` must be strictly increasing and positive.
    pub fn finite(elements: &[u64], cap: u64) -> Result<PeriodicCore, CanonicalError> {
        let max = elements.last().copied().unwrap_or(0);
        if max > cap {
            return Err(CanonicalError::ThresholdCap {
                threshold: max + 1,
                cap,
            });
        }
        let mut prefix = vec![false; max as usize];
        for &x in elements {
            prefix[(x - 1) as usize] = true;
        }
        Ok(PeriodicCore {
            threshold: max + 1,
            period: 1,
            residues: vec![false],
            prefix,
        })
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn prefix(&self) -> &[bool] {
        &self.prefix
    }

    pub fn residues(&self) -> impl Iterator<Item = u64> + '_ {
        self.residues
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(r, _)| r as u64)
    }

    pub fn residue_count(&self) -> u64 {
        self.residues.iter().filter(|&&b| b).count() as u64
    }

    pub fn has_residues(&self) -> bool {
        self.residues.iter().any(|&b| b)
    }

    pub fn residues_full(&self) -> bool {
        self.residues.iter().all(|&b| b)
    }

    /// Number of members below the threshold.
    pub fn prefix_count(&self) -> u64 {
        self.prefix.iter().filter(|&&b| b).count() as u64
    }

    pub fn contains(&self, n: u64) -> bool {
        if n < self.threshold {
            self.prefix[(n - 1) as usize]
        } else {
            self.residues[(n % self.period) as usize]
        }
    }

    /// `|residues| / period`, reduced. Independent of the prefix.
    pub fn density_fraction(&self) -> Ratio<u64> {
        Ratio::new(self.residue_count(), self.period)
    }

    pub fn is_valid(&self) -> bool {
        self.period >= 1
            && self.residues.len() as u64 == self.period
            && self.prefix.len() as u64 == self.threshold.saturating_sub(1)
    }

    pub fn complement(&self) -> PeriodicCore {
        PeriodicCore {
            threshold: self.threshold,
            period: self.period,
            residues: self.residues.iter().map(|b| !b).collect(),
            prefix: self.prefix.iter().map(|b| !b).collect(),
        }
    }

    pub fn combine(op: BinOp, a: &PeriodicCore, b: &PeriodicCore, cap: u64) -> Result<PeriodicCore, CanonicalError> {
        let period = u128::from(a.period).lcm(&u128::from(b.period));
        if period > u128::from(cap) {
            return Err(CanonicalError::PeriodCap { period, cap });
        }
        let period = period as u64;
        let threshold = a.threshold.max(b.threshold);
        let residues = (0..period)
            .map(|r| op.apply(a.residues[(r % a.period) as usize], b.residues[(r % b.period) as usize]))
            .collect();
        let prefix = (1..threshold).map(|n| op.apply(a.contains(n), b.contains(n))).collect();
        Ok(PeriodicCore {
            threshold,
            period,
            residues,
            prefix,
        })
    }

    /// The same set described with period `period * factor`.
    pub fn inflate(&self, factor: u64, cap: u64) -> Result<PeriodicCore, CanonicalError> {
        let period = u128::from(self.period) * u128::from(factor.max(1));
        if period > u128::from(cap) {
            return Err(CanonicalError::PeriodCap { period, cap });
        }
        let period = period as u64;
        Ok(PeriodicCore {
            threshold: self.threshold,
            period,
            residues: (0..period).map(|r| self.residues[(r % self.period) as usize]).collect(),
            prefix: self.prefix.clone(),
        })
    }
}
