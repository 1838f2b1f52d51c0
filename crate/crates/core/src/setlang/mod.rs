//! Set expressions over the positive integers.
//!
//! A [`SetExpr`] names a subset of `{1, 2, 3, ...}` built from residue
//! classes, finite sets, the two null generators (primes and perfect
//! squares) and the usual boolean operators. [`SetExpr::contains`] decides
//! membership pointwise straight from the tree; everything else in the crate
//! is checked against it.

mod parser;
mod render;
mod sample;

use std::collections::BTreeSet;

use num_integer::Roots;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parser::parse;
pub use sample::SetExprSampler;

/// A zero-density generator with a known infinite extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NullKind {
    Primes,
    Squares,
}

impl NullKind {
    pub const ALL: [NullKind; 2] = [NullKind::Primes, NullKind::Squares];

    pub fn contains(self, n: u64) -> bool {
        match self {
            NullKind::Primes => is_prime(n),
            NullKind::Squares => {
                let r = n.sqrt();
                r * r == n
            }
        }
    }

    pub fn symbol(self) -> char {
        match self {
            NullKind::Primes => 'P',
            NullKind::Squares => 'Q',
        }
    }
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Union,
    Intersect,
    Diff,
    SymDiff,
}

impl BinOp {
    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BinOp::Union => a || b,
            BinOp::Intersect => a && b,
            BinOp::Diff => a && !b,
            BinOp::SymDiff => a ^ b,
        }
    }
}

/// Abstract syntax of a definable subset of the positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SetExpr {
    Universe,
    Empty,
    /// `{n >= 1 : n mod modulus = residue}`.
    Ap {
        modulus: u64,
        residue: u64,
    },
    /// Strictly increasing, every element at least 1.
    Finite(Vec<u64>),
    Null(NullKind),
    Complement(Box<SetExpr>),
    Union(Box<SetExpr>, Box<SetExpr>),
    Intersect(Box<SetExpr>, Box<SetExpr>),
    Diff(Box<SetExpr>, Box<SetExpr>),
    SymDiff(Box<SetExpr>, Box<SetExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("AP modulus must be at least 1")]
    ZeroModulus,
    #[error("AP residue {residue} out of range for modulus {modulus}")]
    ResidueOutOfRange { modulus: u64, residue: u64 },
    #[error("finite sets may not contain 0")]
    ZeroElement,
    #[error("integer literal too large")]
    Overflow,
}

impl SetExpr {
    pub fn ap(modulus: u64, residue: u64) -> Result<SetExpr, ValueError> {
        if modulus == 0 {
            return Err(ValueError::ZeroModulus);
        }
        if residue >= modulus {
            return Err(ValueError::ResidueOutOfRange { modulus, residue });
        }
        Ok(SetExpr::Ap { modulus, residue })
    }

    /// Builds a finite set; elements are sorted and deduplicated.
    pub fn finite<I: IntoIterator<Item = u64>>(elements: I) -> Result<SetExpr, ValueError> {
        let set: BTreeSet<u64> = elements.into_iter().collect();
        if set.contains(&0) {
            return Err(ValueError::ZeroElement);
        }
        Ok(SetExpr::Finite(set.into_iter().collect()))
    }

    pub fn primes() -> SetExpr {
        SetExpr::Null(NullKind::Primes)
    }

    pub fn squares() -> SetExpr {
        SetExpr::Null(NullKind::Squares)
    }

    pub fn complement(self) -> SetExpr {
        SetExpr::Complement(Box::new(self))
    }

    pub fn union(self, other: SetExpr) -> SetExpr {
        SetExpr::Union(Box::new(self), Box::new(other))
    }

    pub fn intersect(self, other: SetExpr) -> SetExpr {
        SetExpr::Intersect(Box::new(self), Box::new(other))
    }

    pub fn diff(self, other: SetExpr) -> SetExpr {
        SetExpr::Diff(Box::new(self), Box::new(other))
    }

    pub fn sym_diff(self, other: SetExpr) -> SetExpr {
        SetExpr::SymDiff(Box::new(self), Box::new(other))
    }

    pub fn binary(op: BinOp, a: SetExpr, b: SetExpr) -> SetExpr {
        match op {
            BinOp::Union => a.union(b),
            BinOp::Intersect => a.intersect(b),
            BinOp::Diff => a.diff(b),
            BinOp::SymDiff => a.sym_diff(b),
        }
    }

    /// Splits a binary node into its operator and operands.
    pub fn as_binary(&self) -> Option<(BinOp, &SetExpr, &SetExpr)> {
        match self {
            SetExpr::Union(a, b) => Some((BinOp::Union, a, b)),
            SetExpr::Intersect(a, b) => Some((BinOp::Intersect, a, b)),
            SetExpr::Diff(a, b) => Some((BinOp::Diff, a, b)),
            SetExpr::SymDiff(a, b) => Some((BinOp::SymDiff, a, b)),
            _ => None,
        }
    }

    /// Pointwise membership. Panics if `n == 0`.
    pub fn contains(&self, n: u64) -> bool {
        assert!(n >= 1, "membership is only defined for n >= 1");
        self.eval_with(n, &|kind| kind.contains(n))
    }

    /// Membership with the null generators answered by `generator` instead
    /// of their real extension.
    pub fn eval_with(&self, n: u64, generator: &dyn Fn(NullKind) -> bool) -> bool {
        match self {
            SetExpr::Universe => true,
            SetExpr::Empty => false,
            SetExpr::Ap { modulus, residue } => n % modulus == *residue,
            SetExpr::Finite(xs) => xs.binary_search(&n).is_ok(),
            SetExpr::Null(kind) => generator(*kind),
            SetExpr::Complement(e) => !e.eval_with(n, generator),
            _ => {
                let (op, a, b) = self.as_binary().expect("binary node");
                op.apply(a.eval_with(n, generator), b.eval_with(n, generator))
            }
        }
    }

    /// The null generators that occur anywhere in the tree.
    pub fn generators(&self) -> BTreeSet<NullKind> {
        let mut out = BTreeSet::new();
        self.visit_leaves(&mut |leaf| {
            if let SetExpr::Null(kind) = leaf {
                out.insert(*kind);
            }
        });
        out
    }

    /// Replaces every null generator leaf according to `f`.
    pub fn map_generators(&self, f: &dyn Fn(NullKind) -> SetExpr) -> SetExpr {
        match self {
            SetExpr::Null(kind) => f(*kind),
            SetExpr::Complement(e) => e.map_generators(f).complement(),
            SetExpr::Universe | SetExpr::Empty | SetExpr::Ap { .. } | SetExpr::Finite(_) => self.clone(),
            _ => {
                let (op, a, b) = self.as_binary().expect("binary node");
                SetExpr::binary(op, a.map_generators(f), b.map_generators(f))
            }
        }
    }

    /// The expression with every null generator replaced by `Empty`.
    pub fn strip_generators(&self) -> SetExpr {
        self.map_generators(&|_| SetExpr::Empty)
    }

    pub fn visit_leaves(&self, f: &mut dyn FnMut(&SetExpr)) {
        match self {
            SetExpr::Complement(e) => e.visit_leaves(f),
            SetExpr::Union(a, b) | SetExpr::Intersect(a, b) | SetExpr::Diff(a, b) | SetExpr::SymDiff(a, b) => {
                a.visit_leaves(f);
                b.visit_leaves(f);
            }
            leaf => f(leaf),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            SetExpr::Complement(e) => 1 + e.depth(),
            _ => match self.as_binary() {
                Some((_, a, b)) => 1 + a.depth().max(b.depth()),
                None => 0,
            },
        }
    }

    pub fn is_empty_expr(&self) -> bool {
        matches!(self, SetExpr::Empty)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_by_trial_division() {
        let small: Vec<u64> = (1..=30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_prime(9));
        assert!(is_prime(7919));
        assert!(!is_prime(7917));
    }

    #[test]
    fn squares() {
        let sq: Vec<u64> = (1..=50).filter(|&n| NullKind::Squares.contains(n)).collect();
        assert_eq!(sq, vec![1, 4, 9, 16, 25, 36, 49]);
    }

    #[test]
    fn membership_examples() {
        assert!(SetExpr::ap(3, 1).unwrap().contains(4));
        let n_minus = SetExpr::Universe.diff(SetExpr::finite([1, 2, 3]).unwrap());
        assert!(!n_minus.contains(3));
        assert!(n_minus.contains(4));
        assert!(SetExpr::primes().complement().contains(9));
        assert!(SetExpr::ap(4, 0).unwrap().contains(8));
        assert!(SetExpr::Universe.contains(1));
        assert!(!SetExpr::Empty.contains(1));
    }

    #[test]
    #[should_panic]
    fn zero_is_not_a_member_query() {
        SetExpr::Universe.contains(0);
    }

    #[test]
    fn constructors_validate() {
        assert_eq!(SetExpr::ap(0, 0), Err(ValueError::ZeroModulus));
        assert_eq!(
            SetExpr::ap(3, 3),
            Err(ValueError::ResidueOutOfRange { modulus: 3, residue: 3 })
        );
        assert_eq!(SetExpr::finite([0, 1]), Err(ValueError::ZeroElement));
        assert_eq!(SetExpr::finite([3, 1, 3]).unwrap(), SetExpr::Finite(vec![1, 3]));
    }

    #[test]
    fn strip_replaces_generators() {
        let e = SetExpr::ap(2, 0).unwrap().union(SetExpr::primes());
        assert_eq!(e.strip_generators(), SetExpr::ap(2, 0).unwrap().union(SetExpr::Empty));
        assert_eq!(e.generators().into_iter().collect::<Vec<_>>(), vec![NullKind::Primes]);
    }
}
