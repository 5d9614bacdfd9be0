//! Intersections of Gorenstein window rings.
//!
//! For a pair of windows the intersection is sometimes again the base ring
//! of a transversal polymatroid. [`classify`] decides this from the window
//! parameters and, when it is, [`construct_presentation`] builds an
//! explicit presentation which is then checked by comparing base sets.

use std::fmt;

use log::warn;

use crate::canonical::{canonical_generators_bruteforce, CanonicalGenerators};
use crate::combinatorics::for_each_composition;
use crate::cone::{nu_vector, window_positions, ConeRep, FamilyParams, Hyperplane};
use crate::exponent::{ExponentSet, ExponentVector};
use crate::polymatroid::{full_set, search_presentation, transversal_bases, Presentation, SearchOutcome, Subset};
use crate::{Error, Result};

/// `n` together with windows `(i_s, t_s)`, the first one unshifted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntersectionSpec {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl IntersectionSpec {
    pub fn new(n: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        if n < 3 {
            return Err(Error::Parameter(format!("n = {n} must be at least 3")));
        }
        if pairs.is_empty() {
            return Err(Error::Parameter("at least one window is required".into()));
        }
        if pairs[0].1 != 0 {
            return Err(Error::Parameter("the first window must have shift 0".into()));
        }
        for &(i, t) in &pairs {
            if !(1..=n - 2).contains(&i) || t >= n {
                return Err(Error::Parameter(format!("window ({i}, {t}) out of range for n = {n}")));
            }
        }
        Ok(Self { n, pairs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The Gorenstein family member of window `s`, with `j = n - 1 - i`.
    pub fn family(&self, s: usize) -> FamilyParams {
        let (i, t) = self.pairs[s];
        FamilyParams { n: self.n, i, j: self.n - 1 - i, t }
    }
}

fn window_mask(n: usize, i: usize, t: usize) -> Subset {
    window_positions(n, i, t).iter().fold(0, |m, &k| m | 1 << k)
}

/// `{α : |α| = n, window (t, i) sum <= i + 1}`.
pub fn window_exponents(n: usize, i: usize, t: usize) -> ExponentSet {
    let mask = window_mask(n, i, t);
    let mut out = Vec::new();
    for_each_composition(n as u32, n, |c| {
        let v = ExponentVector::new(c.to_vec());
        if v.masked_sum(mask) <= i as u32 + 1 {
            out.push(v);
        }
    });
    out.into_iter().collect()
}

pub fn intersection_exponents(spec: &IntersectionSpec) -> ExponentSet {
    let n = spec.n;
    let windows: Vec<(Subset, u32)> = spec.pairs.iter().map(|&(i, t)| (window_mask(n, i, t), i as u32 + 1)).collect();
    let mut out = Vec::new();
    for_each_composition(n as u32, n, |c| {
        let v = ExponentVector::new(c.to_vec());
        if windows.iter().all(|&(mask, bound)| v.masked_sum(mask) <= bound) {
            out.push(v);
        }
    });
    out.into_iter().collect()
}

/// The window normals followed by the coordinate normals.
pub fn intersection_cone_rep(spec: &IntersectionSpec) -> ConeRep {
    let n = spec.n;
    let mut normals: Vec<Hyperplane> = (0..spec.pairs.len()).map(|s| nu_vector(&spec.family(s))).collect();
    normals.extend((0..n).map(|k| Hyperplane::unit(n, k)));
    let (rep, dropped) = ConeRep::new_counting(n, normals);
    if dropped > 0 {
        warn!("dropped {dropped} repeated window normal(s) for n = {n}");
    }
    rep
}

/// Canonical generators of the intersection ring, searched up to `cutoff`
/// (default `n`).
pub fn intersection_canonical_generators(spec: &IntersectionSpec, cutoff: Option<u32>) -> Result<CanonicalGenerators> {
    let a = intersection_exponents(spec);
    let rep = intersection_cone_rep(spec);
    canonical_generators_bruteforce(&a, &rep, cutoff.unwrap_or(spec.n as u32))
}

/// Whether the canonical ideal is generated by `(1, ..., 1)` alone.
pub fn intersection_gorenstein_check(spec: &IntersectionSpec, cutoff: Option<u32>) -> Result<bool> {
    let gens = intersection_canonical_generators(spec, cutoff)?;
    if gens.inconclusive {
        return Err(Error::Inconclusive { cutoff: cutoff.unwrap_or(spec.n as u32) });
    }
    Ok(gens.generators.len() == 1 && gens.generators.contains(&ExponentVector::ones(spec.n)))
}

/// The a-invariant of every intersection ring.
pub fn intersection_a_invariant(_spec: &IntersectionSpec) -> i64 {
    -1
}

/// Which arm of the classification applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `i1 = 1`.
    A,
    /// `i1 >= 2`, `t2 = 0`.
    B,
    /// `i1 >= 2`, `t2 = i1`.
    C,
    /// `i1 >= 2`, `1 <= t2 < i1`, `i2` in `[1, i1 - t2] ∪ [n - t2, n - 2]`.
    D,
    /// `i1 >= 2`, `t2 > i1`, `i2` in `[1, n - t2] ∪ [n - t2 + i1, n - 2]`.
    E,
}

impl Condition {
    pub fn label(self) -> char {
        match self {
            Condition::A => 'a',
            Condition::B => 'b',
            Condition::C => 'c',
            Condition::D => 'd',
            Condition::E => 'e',
        }
    }
}

/// The presentation shape used for a true cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    UnitShared,
    UnitApart,
    UnitLongWindow,
    UnitNearLongWindow,
    UnitWrapped,
    SharedStartInside,
    SharedStartOutside,
    AdjacentShort,
    AdjacentFlush,
    AdjacentWrapped,
    OverlapInside,
    OverlapWrapped,
    DisjointShort,
    DisjointFlush,
    DisjointWrapped,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Construction::UnitShared => "unit-shared",
            Construction::UnitApart => "unit-apart",
            Construction::UnitLongWindow => "unit-long-window",
            Construction::UnitNearLongWindow => "unit-near-long-window",
            Construction::UnitWrapped => "unit-wrapped",
            Construction::SharedStartInside => "shared-start-inside",
            Construction::SharedStartOutside => "shared-start-outside",
            Construction::AdjacentShort => "adjacent-short",
            Construction::AdjacentFlush => "adjacent-flush",
            Construction::AdjacentWrapped => "adjacent-wrapped",
            Construction::OverlapInside => "overlap-inside",
            Construction::OverlapWrapped => "overlap-wrapped",
            Construction::DisjointShort => "disjoint-short",
            Construction::DisjointFlush => "disjoint-flush",
            Construction::DisjointWrapped => "disjoint-wrapped",
        };
        f.write_str(s)
    }
}

/// Outcome of classifying the intersection of windows `(i1, 0)` and
/// `(i2, t2)`.
#[derive(Debug, Clone)]
pub struct ClassificationVerdict {
    pub is_base_ring: bool,
    pub condition: Option<Condition>,
    pub construction: Option<(Construction, Presentation)>,
    /// Exhaustive search result attached to false cells with `n <= 4`.
    pub refutation: Option<SearchOutcome>,
}

fn check_cell(n: usize, i1: usize, t2: usize, i2: usize) -> Result<()> {
    IntersectionSpec::new(n, vec![(i1, 0), (i2, t2)]).map(|_| ())
}

/// The matching condition, if any.
pub fn condition(n: usize, i1: usize, t2: usize, i2: usize) -> Option<Condition> {
    if i1 == 1 {
        return Some(Condition::A);
    }
    if t2 == 0 {
        return Some(Condition::B);
    }
    if t2 == i1 {
        return Some(Condition::C);
    }
    if t2 < i1 {
        let ok = i2 <= i1 - t2 || (n - t2..=n - 2).contains(&i2);
        return ok.then_some(Condition::D);
    }
    let ok = i2 <= n - t2 || (n - t2 + i1..=n - 2).contains(&i2);
    ok.then_some(Condition::E)
}

/// Fills `C_1..C_n` from 1-based inclusive runs; empty runs are allowed.
fn assemble(n: usize, runs: &[(usize, usize, Subset)]) -> Result<Presentation> {
    let mut slots: Vec<Option<Subset>> = vec![None; n];
    for &(from, to, set) in runs {
        for k in from..=to {
            if k == 0 || k > n || slots[k - 1].replace(set).is_some() {
                return Err(Error::InvariantViolation(format!("slot C_{k} assigned twice or out of range")));
            }
        }
    }
    let sets = slots
        .into_iter()
        .enumerate()
        .map(|(k, s)| s.ok_or_else(|| Error::InvariantViolation(format!("slot C_{} left empty", k + 1))))
        .collect::<Result<Vec<_>>>()?;
    Presentation::new(n, sets)
}

/// The presentation for a true cell, following the case split literally.
pub fn construct_presentation(n: usize, i1: usize, t2: usize, i2: usize) -> Result<(Construction, Presentation)> {
    check_cell(n, i1, t2, i2)?;
    let Some(cond) = condition(n, i1, t2, i2) else {
        return Err(Error::Precondition(format!("({n}, {i1}, {t2}, {i2}) is not a base-ring cell")));
    };
    let full = full_set(n);
    let w = window_mask(n, i2, t2);
    let head = |k: usize| full_set(k);
    let not_w = full & !w;
    let not_head = |k: usize| full & !head(k);
    use Construction::*;
    let (kind, runs): (Construction, Vec<(usize, usize, Subset)>) = match cond {
        Condition::A | Condition::B if t2 == 0 => {
            if i2 <= i1 && i1 >= 2 {
                (
                    SharedStartInside,
                    vec![(1, i2, full), (n, n, full), (i2 + 1, i1, not_head(i2)), (i1 + 1, n - 1, not_head(i1))],
                )
            } else {
                let kind = if i1 == 1 { UnitShared } else { SharedStartOutside };
                (kind, vec![(1, i1, full), (n, n, full), (i1 + 1, i2, not_head(i1)), (i2 + 1, n - 1, not_head(i2))])
            }
        }
        Condition::A => {
            if t2 + i2 > n {
                (UnitWrapped, vec![(1, 1, full), (n, n, full), (2, n - i2, not_w), (n - i2 + 1, n - 1, not_head(1))])
            } else if i2 == n - 2 {
                (UnitLongWindow, vec![(1, 1, not_w), (n, n, full), (2, n - 1, not_head(1))])
            } else if i2 + 3 == n {
                (UnitNearLongWindow, vec![(1, 1, not_w), (n, n, not_w), (2, n - 1, not_head(1))])
            } else {
                (
                    UnitApart,
                    vec![(1, 1, not_w), (n, n, not_w), (2, i2 + 2, not_head(1)), (i2 + 3, n - 1, full & !(1 | w))],
                )
            }
        }
        Condition::B => unreachable!("t2 = 0 handled above"),
        Condition::C => {
            if i2 + t2 + 1 < n {
                (
                    AdjacentShort,
                    vec![
                        (1, i1, not_w),
                        (n, n, not_w),
                        (i1 + 1, i1 + i2 + 1, not_head(i1)),
                        (i1 + i2 + 2, n - 1, not_head(i1 + i2)),
                    ],
                )
            } else if i2 + t2 + 1 == n {
                (AdjacentFlush, vec![(1, i1, not_w), (i1 + 1, n - 1, not_head(i1)), (n, n, full)])
            } else {
                (
                    AdjacentWrapped,
                    vec![(1, n - i2 - 1, not_w), (n - i2, i1, full), (n, n, full), (i1 + 1, n - 1, not_head(i1))],
                )
            }
        }
        Condition::D => {
            if i2 + t2 <= i1 {
                (OverlapInside, vec![(1, i2, full), (n, n, full), (i2 + 1, i1, not_w), (i1 + 1, n - 1, not_head(i1))])
            } else {
                (
                    OverlapWrapped,
                    vec![(1, n - i2 - 1, not_w), (n - i2, i1, full), (n, n, full), (i1 + 1, n - 1, not_head(i1))],
                )
            }
        }
        Condition::E => {
            if i2 + t2 > n {
                (
                    DisjointWrapped,
                    vec![
                        (1, i1, full),
                        (n, n, full),
                        (i1 + 1, i1 + n - i2 - 1, not_w),
                        (i1 + n - i2, n - 1, not_head(i1)),
                    ],
                )
            } else if i1 + 1 + i2 == n {
                (DisjointFlush, vec![(1, i1, not_w), (i1 + 1, n - 1, not_head(i1)), (n, n, full)])
            } else {
                (
                    DisjointShort,
                    vec![
                        (1, i1, not_w),
                        (n, n, not_w),
                        (i1 + 1, i1 + i2 + 1, not_head(i1)),
                        (i1 + i2 + 2, n - 1, full & !(head(i1) | w)),
                    ],
                )
            }
        }
    };
    Ok((kind, assemble(n, &runs)?))
}

/// Exhaustive search over presentations with `n` sets, for `n <= 4`.
pub fn bruteforce_is_base_ring(n: usize, target: &ExponentSet) -> Result<Option<Presentation>> {
    Ok(bruteforce_search(n, target)?.presentation)
}

fn bruteforce_search(n: usize, target: &ExponentSet) -> Result<SearchOutcome> {
    if target.dim() != Some(n) {
        return Err(Error::Precondition(format!("target must live in Z^{n}")));
    }
    search_presentation(target, n, 4)
}

/// Classifies the cell and verifies the construction of a true cell.
pub fn classify(n: usize, i1: usize, t2: usize, i2: usize) -> Result<ClassificationVerdict> {
    check_cell(n, i1, t2, i2)?;
    let cond = condition(n, i1, t2, i2);
    let target = intersection_exponents(&IntersectionSpec::new(n, vec![(i1, 0), (i2, t2)])?);
    if cond.is_some() {
        let (kind, pres) = construct_presentation(n, i1, t2, i2)?;
        if transversal_bases(&pres) != target {
            return Err(Error::InvariantViolation(format!(
                "construction {kind} for ({n}, {i1}, {t2}, {i2}) does not reproduce the intersection"
            )));
        }
        return Ok(ClassificationVerdict {
            is_base_ring: true,
            condition: cond,
            construction: Some((kind, pres)),
            refutation: None,
        });
    }
    let refutation = if n <= 4 { Some(bruteforce_search(n, &target)?) } else { None };
    Ok(ClassificationVerdict { is_base_ring: false, condition: None, construction: None, refutation })
}
