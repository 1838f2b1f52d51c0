#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use most::setlang::{NullKind, SetExpr, SetExprSampler};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Sieve of Eratosthenes over `[0, n]`, independent of the library's
/// trial-division membership test.
pub fn sieve(n: usize) -> Vec<bool> {
    let mut is_prime = vec![true; n + 1];
    is_prime[0] = false;
    if n >= 1 {
        is_prime[1] = false;
    }
    let mut p = 2;
    while p * p <= n {
        if is_prime[p] {
            for m in (p * p..=n).step_by(p) {
                is_prime[m] = false;
            }
        }
        p += 1;
    }
    is_prime
}

pub fn prime_count(n: usize) -> u64 {
    sieve(n).iter().filter(|&&b| b).count() as u64
}

pub fn is_square(n: u64) -> bool {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).any(|k| k * k == n)
}

/// Membership by direct recursion on the syntax tree, using the sieve for
/// primes. Written separately from the library evaluator.
pub fn oracle_member(e: &SetExpr, n: u64, primes: &[bool]) -> bool {
    match e {
        SetExpr::Universe => true,
        SetExpr::Empty => false,
        SetExpr::Ap { modulus, residue } => n % modulus == *residue,
        SetExpr::Finite(xs) => xs.contains(&n),
        SetExpr::Null(NullKind::Primes) => primes[n as usize],
        SetExpr::Null(NullKind::Squares) => is_square(n),
        SetExpr::Complement(a) => !oracle_member(a, n, primes),
        SetExpr::Union(a, b) => oracle_member(a, n, primes) || oracle_member(b, n, primes),
        SetExpr::Intersect(a, b) => oracle_member(a, n, primes) && oracle_member(b, n, primes),
        SetExpr::Diff(a, b) => oracle_member(a, n, primes) && !oracle_member(b, n, primes),
        SetExpr::SymDiff(a, b) => oracle_member(a, n, primes) != oracle_member(b, n, primes),
    }
}

fn leaf() -> impl Strategy<Value = SetExpr> {
    prop_oneof![
        Just(SetExpr::Universe),
        Just(SetExpr::Empty),
        (1u64..=12)
            .prop_flat_map(|m| (Just(m), 0..m))
            .prop_map(|(modulus, residue)| SetExpr::Ap { modulus, residue }),
        prop::collection::vec(1u64..=60, 1..6).prop_map(|xs| SetExpr::finite(xs).unwrap()),
        Just(SetExpr::Null(NullKind::Primes)),
        Just(SetExpr::Null(NullKind::Squares)),
    ]
}

/// Expressions of depth at most `depth`.
pub fn set_expr(depth: u32) -> impl Strategy<Value = SetExpr> {
    leaf().prop_recursive(depth, 96, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(SetExpr::complement),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.union(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.intersect(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.diff(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.sym_diff(b)),
        ]
    })
}

/// `count` seeded expressions of depth at most `depth`.
pub fn sampled(seed: u64, count: usize, depth: usize) -> Vec<SetExpr> {
    let sampler = SetExprSampler {
        max_depth: depth,
        ..SetExprSampler::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sampler.sample(&mut rng)).collect()
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn most(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_most"))
        .args(args)
        .output()
        .expect("spawn most");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}
