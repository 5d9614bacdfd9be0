//! Canonical-module generators of normal monomial subrings: closed forms for
//! the window families and a degree-by-degree semigroup search.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::combinatorics::{binomial, for_each_composition};
use crate::cone::{family_cone_rep, family_exponents, ConeRep, FamilyParams, NormalSemigroup};
use crate::exponent::{ExponentSet, ExponentVector};
use crate::{Error, Result};

/// Minimal generators of the canonical ideal, with their degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalGenerators {
    pub generators: ExponentSet,
    /// Degree of each generator, aligned with the sorted generator list.
    pub degrees: Vec<u32>,
    /// Set when the search stopped at its cutoff while still finding
    /// generators.
    pub inconclusive: bool,
}

impl CanonicalGenerators {
    fn from_graded(mut graded: Vec<(ExponentVector, u32)>, inconclusive: bool) -> Self {
        graded.sort();
        graded.dedup();
        let degrees = graded.iter().map(|(_, d)| *d).collect();
        let generators = graded.into_iter().map(|(v, _)| v).collect();
        Self { generators, degrees, inconclusive }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.degrees.iter().copied().min()
    }
}

/// Type, a-invariant and Gorenstein flag of a family ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingInvariants {
    pub ring_type: BigInt,
    pub a_invariant: i64,
    pub gorenstein: bool,
    pub r: usize,
}

/// Closed-form type sum in its classical form. Case a drops the levels
/// `t > j`, so it undercounts when `n > i + 2j + 1`; see [`type_exact`].
pub fn type_formula(p: &FamilyParams) -> BigInt {
    let (n, i, j) = (p.n as i64, p.i as i64, p.j as i64);
    if p.is_case_a() {
        let tail: BigInt =
            (1..n - i - j).map(|t| binomial(n + i - j + t - 1, i - 1) * binomial(n - i + j - t - 1, n - i - 1)).sum();
        tail + 1
    } else {
        let r = p.r() as i64;
        (1..=r * (n - j) - i).map(|t| binomial(r * (n - j) - t - 1, i - 1) * binomial(r * j + t - 1, n - i - 1)).sum()
    }
}

/// Level `t` of case a reaches the positive orthant first at degree
/// `1 + ceil(t / j)`; the published sum only counts the degree-2 levels.
fn case_a_level(p: &FamilyParams, t: usize) -> (usize, usize, u32) {
    let (n, i, j) = (p.n, p.i, p.j);
    let s = 1 + t.div_ceil(j);
    ((n - j) * (s - 1) + i + t, j * (s - 1) + n - i - t, s as u32)
}

/// Exact type: agrees with [`type_formula`] unless `n > i + 2j + 1`, where
/// the published sum drops the levels `t > j`.
pub fn type_exact(p: &FamilyParams) -> BigInt {
    if !p.is_case_a() {
        return type_formula(p);
    }
    let (n, i) = (p.n as i64, p.i as i64);
    let tail: BigInt = (1..p.n - p.i - p.j)
        .map(|t| {
            let (head, rest, _) = case_a_level(p, t);
            binomial(head as i64 - 1, i - 1) * binomial(rest as i64 - 1, n - i - 1)
        })
        .sum();
    tail + 1
}

pub fn gorenstein_family(p: &FamilyParams) -> bool {
    p.i + p.j + 1 == p.n
}

pub fn a_invariant(p: &FamilyParams) -> i64 {
    if p.is_case_a() {
        -1
    } else {
        -(p.r() as i64)
    }
}

pub fn ring_invariants(p: &FamilyParams) -> RingInvariants {
    let ring_type = type_exact(p);
    RingInvariants { gorenstein: ring_type == BigInt::from(1), ring_type, a_invariant: a_invariant(p), r: p.r() }
}

/// Vectors `α >= 1` whose first `i` coordinates sum to `head` and the rest
/// to `tail`.
fn split_block(n: usize, i: usize, head: usize, tail: usize, out: &mut Vec<Vec<u32>>) {
    if head < i || tail < n - i {
        return;
    }
    for_each_composition((head - i) as u32, i, |left| {
        for_each_composition((tail - (n - i)) as u32, n - i, |right| {
            out.push(left.iter().chain(right).map(|x| x + 1).collect());
        });
    });
}

/// Generators read off the published closed-form description, rotated by
/// `σ^t`.
pub fn canonical_generators_closed(p: &FamilyParams) -> CanonicalGenerators {
    closed_generators(p, false)
}

/// Closed-form generators with every case-a level placed at its own degree.
pub fn canonical_generators_exact(p: &FamilyParams) -> CanonicalGenerators {
    closed_generators(p, true)
}

fn closed_generators(p: &FamilyParams, exact: bool) -> CanonicalGenerators {
    let (n, i, j) = (p.n, p.i, p.j);
    let mut graded: Vec<(Vec<u32>, u32)> = Vec::new();
    if p.is_case_a() {
        graded.push((vec![1; n], 1));
        for t in 1..n - i - j {
            let (head, tail, d) = if exact { case_a_level(p, t) } else { (n + i - j + t, n - i + j - t, 2) };
            let mut block = Vec::new();
            split_block(n, i, head, tail, &mut block);
            graded.extend(block.into_iter().map(|v| (v, d)));
        }
    } else {
        let r = p.r();
        let mut block = Vec::new();
        for t in 1..=r * (n - j) - i {
            split_block(n, i, r * (n - j) - t, r * j + t, &mut block);
        }
        graded.extend(block.into_iter().map(|v| (v, r as u32)));
    }
    let rotated = graded
        .into_iter()
        .map(|(v, d)| {
            let mut w = vec![0; n];
            for (k, x) in v.into_iter().enumerate() {
                w[(k + p.t) % n] = x;
            }
            (ExponentVector::new(w), d)
        })
        .collect();
    CanonicalGenerators::from_graded(rotated, false)
}

/// Minimal generators of the ideal spanned by `N A ∩ ri(R_+ A)`, searched
/// degree by degree up to `max_degree`.
pub fn canonical_generators_bruteforce(a: &ExponentSet, rep: &ConeRep, max_degree: u32) -> Result<CanonicalGenerators> {
    if max_degree < 1 {
        return Err(Error::Parameter("max_degree must be at least 1".into()));
    }
    let Some(m) = a.common_modulus() else {
        return Err(Error::Precondition("exponent set must be nonempty with a common modulus".into()));
    };
    let n = a.dim().unwrap_or(0);
    let semigroup = NormalSemigroup::new(a, rep.clone());
    let shifts: Vec<&[u32]> = a.iter().map(ExponentVector::coords).collect();

    let mut previous: HashSet<Vec<u32>> = HashSet::new();
    let mut graded = Vec::new();
    let mut last_found = false;
    for d in 1..=max_degree {
        let mut interior: Vec<Vec<u32>> = Vec::new();
        for_each_composition(d * m, n, |c| {
            let z: Vec<i64> = c.iter().map(|&x| x as i64).collect();
            if semigroup.contains_interior(&z) {
                interior.push(c.to_vec());
            }
        });
        let fresh: Vec<Vec<u32>> =
            interior.par_iter().filter(|alpha| !reducible(alpha, &shifts, &previous)).cloned().collect();
        last_found = !fresh.is_empty();
        graded.extend(fresh.into_iter().map(|v| (ExponentVector::new(v), d)));
        previous = interior.into_iter().collect();
    }
    Ok(CanonicalGenerators::from_graded(graded, last_found))
}

fn reducible(alpha: &[u32], shifts: &[&[u32]], previous: &HashSet<Vec<u32>>) -> bool {
    if previous.is_empty() {
        return false;
    }
    let mut buf = vec![0u32; alpha.len()];
    shifts.iter().any(|s| {
        for (k, (&x, &y)) in alpha.iter().zip(s.iter()).enumerate() {
            if y > x {
                return false;
            }
            buf[k] = x - y;
        }
        previous.contains(buf.as_slice())
    })
}

/// Default search cutoff for a family: one past the largest generator
/// degree predicted by the exact closed form, and never below `max(r, 2) + 1`.
pub fn default_family_cutoff(p: &FamilyParams) -> u32 {
    let top = if p.is_case_a() && p.n > p.i + p.j + 1 { case_a_level(p, p.n - p.i - p.j - 1).2 } else { 1 };
    (p.r().max(2) as u32).max(top) + 1
}

/// Brute-force generators of a family ring at the given or default cutoff.
pub fn family_generators_bruteforce(p: &FamilyParams, cutoff: Option<u32>) -> Result<CanonicalGenerators> {
    let a = family_exponents(p);
    let rep = family_cone_rep(p);
    canonical_generators_bruteforce(&a, &rep, cutoff.unwrap_or_else(|| default_family_cutoff(p)))
}

/// Whether `g` is a nonzero semigroup element with `alpha - g` still in the
/// canonical ideal, i.e. a witness that `alpha` is not minimal.
pub fn is_reducible_by(semigroup: &NormalSemigroup, alpha: &[i64], g: &[i64]) -> bool {
    if g.iter().all(Zero::is_zero) || !semigroup.contains(g) {
        return false;
    }
    let diff: Vec<i64> = alpha.iter().zip(g).map(|(x, y)| x - y).collect();
    semigroup.contains_interior(&diff)
}
