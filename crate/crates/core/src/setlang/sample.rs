use rand::Rng;

use super::{BinOp, NullKind, SetExpr};

/// Seeded random generation of set expressions for the property suites.
#[derive(Debug, Clone, Copy)]
pub struct SetExprSampler {
    pub max_depth: usize,
    pub max_modulus: u64,
    pub max_element: u64,
    /// Probability that a node below `max_depth` is an operator.
    pub branch_probability: f64,
}

impl Default for SetExprSampler {
    fn default() -> Self {
        SetExprSampler {
            max_depth: 4,
            max_modulus: 12,
            max_element: 40,
            branch_probability: 0.6,
        }
    }
}

impl SetExprSampler {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> SetExpr {
        self.sample_at(rng, self.max_depth)
    }

    fn sample_at<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> SetExpr {
        if depth == 0 || !rng.random_bool(self.branch_probability) {
            return self.leaf(rng);
        }
        let op = match rng.random_range(0..5) {
            0 => return self.sample_at(rng, depth - 1).complement(),
            1 => BinOp::Union,
            2 => BinOp::Intersect,
            3 => BinOp::Diff,
            _ => BinOp::SymDiff,
        };
        let a = self.sample_at(rng, depth - 1);
        let b = self.sample_at(rng, depth - 1);
        SetExpr::binary(op, a, b)
    }

    pub fn leaf<R: Rng + ?Sized>(&self, rng: &mut R) -> SetExpr {
        match rng.random_range(0..20) {
            0 | 1 => SetExpr::Universe,
            2 => SetExpr::Empty,
            3..=10 => self.progression(rng),
            11..=14 => self.finite_set(rng),
            15..=17 => SetExpr::Null(NullKind::Primes),
            _ => SetExpr::Null(NullKind::Squares),
        }
    }

    pub fn progression<R: Rng + ?Sized>(&self, rng: &mut R) -> SetExpr {
        let modulus = rng.random_range(1..=self.max_modulus.max(1));
        let residue = rng.random_range(0..modulus);
        SetExpr::Ap { modulus, residue }
    }

    /// A nonempty finite set.
    pub fn finite_set<R: Rng + ?Sized>(&self, rng: &mut R) -> SetExpr {
        let len = rng.random_range(1..=5);
        let max = self.max_element.max(1);
        SetExpr::finite((0..len).map(|_| rng.random_range(1..=max))).expect("elements >= 1")
    }
}
