//! Discrete polymatroids, matroids, transversal presentations and rank
//! functions.
//!
//! Subsets of the ground set `[n]` are `u64` bitmasks: bit `k` stands for the
//! element `k + 1`.

use std::collections::HashSet;

use crate::exponent::{ExponentSet, ExponentVector};
use crate::{Error, Result};

/// Bitmask subset of `[n]`.
pub type Subset = u64;

/// Bitmask of the 1-based elements listed.
pub fn subset_from(elements: &[usize]) -> Subset {
    elements.iter().fold(0, |acc, &e| acc | 1 << (e - 1))
}

/// The sorted 1-based elements of `s`.
pub fn subset_elements(s: Subset) -> Vec<usize> {
    (0..64).filter(|k| s >> k & 1 == 1).map(|k| k + 1).collect()
}

/// The full set `[n]`.
pub fn full_set(n: usize) -> Subset {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Orders subsets by size, then by their sorted element lists.
pub fn sort_subsets(sets: &mut [Subset]) {
    sets.sort_by_key(|&s| (s.count_ones(), subset_elements(s)));
}

/// Ground set `[n]` with `1 <= n <= 64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSet(usize);

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if !(1..=64).contains(&n) {
            return Err(Error::Parameter(format!("ground set size {n} outside 1..=64")));
        }
        Ok(Self(n))
    }

    pub fn size(self) -> usize {
        self.0
    }

    pub fn full(self) -> Subset {
        full_set(self.0)
    }
}

/// An ordered family `A_1, ..., A_m` of nonempty subsets of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    ground: GroundSet,
    sets: Vec<Subset>,
}

impl Presentation {
    pub fn new(n: usize, sets: Vec<Subset>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if sets.is_empty() {
            return Err(Error::Parameter("a presentation needs at least one set".into()));
        }
        for &s in &sets {
            if s == 0 {
                return Err(Error::Parameter("presentation sets must be nonempty".into()));
            }
            if s & !ground.full() != 0 {
                return Err(Error::Parameter(format!("set {:?} leaves [{n}]", subset_elements(s))));
            }
        }
        Ok(Self { ground, sets })
    }

    /// Builds a presentation from 1-based element lists.
    pub fn from_lists(n: usize, lists: &[Vec<usize>]) -> Result<Self> {
        if lists.iter().flatten().any(|&e| e == 0 || e > n) {
            return Err(Error::Parameter(format!("element outside [{n}]")));
        }
        Self::new(n, lists.iter().map(|l| subset_from(l)).collect())
    }

    pub fn n(&self) -> usize {
        self.ground.size()
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    /// The same multiset of sets in sorted order.
    pub fn canonical(&self) -> Self {
        let mut sets = self.sets.clone();
        sets.sort_unstable();
        Self { ground: self.ground, sets }
    }
}

/// Checks the independence axioms: downward closure and augmentation.
pub fn is_matroid(family: &[Subset]) -> Result<bool> {
    if family.is_empty() {
        return Err(Error::Parameter("empty family".into()));
    }
    let members: HashSet<Subset> = family.iter().copied().collect();
    let closed =
        members.iter().all(|&f| (0..64).filter(|k| f >> k & 1 == 1).all(|k| members.contains(&(f & !(1 << k)))));
    if !closed {
        return Ok(false);
    }
    let augments = members.iter().all(|&f1| {
        members.iter().all(|&f2| {
            f2.count_ones() <= f1.count_ones()
                || (0..64).filter(|k| (f2 & !f1) >> k & 1 == 1).any(|k| members.contains(&(f1 | 1 << k)))
        })
    });
    Ok(augments)
}

/// Exchange property of a base set; the symmetric variant also requires
/// `v - e_j + e_i` in `B`.
pub fn bases_exchange_check(bases: &ExponentSet, symmetric: bool) -> Result<bool> {
    if bases.is_empty() {
        return Ok(true);
    }
    if bases.common_modulus().is_none() {
        return Err(Error::Precondition("bases have unequal moduli".into()));
    }
    let n = bases.dim().unwrap_or(0);
    let moved = |w: &ExponentVector, minus: usize, plus: usize| {
        let mut c = w.coords().to_vec();
        c[minus] -= 1;
        c[plus] += 1;
        ExponentVector::new(c)
    };
    for u in bases {
        for v in bases {
            for i in 0..n {
                if u.coords()[i] <= v.coords()[i] {
                    continue;
                }
                let found = (0..n).any(|j| {
                    u.coords()[j] < v.coords()[j]
                        && bases.contains(&moved(u, i, j))
                        && (!symmetric || bases.contains(&moved(v, j, i)))
                });
                if !found {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn is_subvector_closed(points: &ExponentSet) -> bool {
    points.iter().all(|u| {
        (0..u.len()).filter(|&k| u.coords()[k] > 0).all(|k| {
            let mut c = u.coords().to_vec();
            c[k] -= 1;
            points.contains(&ExponentVector::new(c))
        })
    })
}

/// Subvector closure plus equal-modulus exchange on the maximal elements.
pub fn is_discrete_polymatroid(points: &ExponentSet) -> bool {
    if points.is_empty() || !is_subvector_closed(points) {
        return false;
    }
    let maximal = points.maximal_elements();
    maximal.common_modulus().is_some() && bases_exchange_check(&maximal, false).unwrap_or(false)
}

/// The augmentation form of the polymatroid axioms: whenever `|v| > |u|`
/// some `i` with `u_i < v_i` has `u + e_i` in the set.
pub fn augmentation_condition(points: &ExponentSet) -> bool {
    if points.is_empty() || !is_subvector_closed(points) {
        return false;
    }
    points.iter().all(|u| {
        points.iter().all(|v| {
            v.modulus() <= u.modulus()
                || (0..u.len()).any(|i| {
                    u.coords()[i] < v.coords()[i] && {
                        let mut c = u.coords().to_vec();
                        c[i] += 1;
                        points.contains(&ExponentVector::new(c))
                    }
                })
        })
    })
}

/// All sums `e_{i_1} + ... + e_{i_m}` with `i_k` in `A_k`.
pub fn transversal_bases(pres: &Presentation) -> ExponentSet {
    let n = pres.n();
    let mut layer: HashSet<Vec<u32>> = HashSet::from([vec![0; n]]);
    for &set in pres.sets() {
        let elems: Vec<usize> = (0..n).filter(|k| set >> k & 1 == 1).collect();
        layer = layer
            .iter()
            .flat_map(|v| {
                elems.iter().map(move |&k| {
                    let mut w = v.clone();
                    w[k] += 1;
                    w
                })
            })
            .collect();
    }
    layer.into_iter().map(ExponentVector::new).collect()
}

/// Number of sets of the presentation meeting `x`.
pub fn transversal_rank(pres: &Presentation, x: Subset) -> u32 {
    pres.sets().iter().filter(|&&a| a & x != 0).count() as u32
}

/// A nonnegative integer function on all subsets of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankFunction {
    ground: GroundSet,
    values: Vec<u32>,
}

impl RankFunction {
    /// Largest ground set for which the full table is materialized.
    pub const MAX_N: usize = 20;

    pub fn from_values(n: usize, values: Vec<u32>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if n > Self::MAX_N {
            return Err(Error::Parameter(format!("rank tables need n <= {}", Self::MAX_N)));
        }
        if values.len() != 1 << n {
            return Err(Error::Parameter(format!("expected {} rank values", 1u64 << n)));
        }
        if values[0] != 0 {
            return Err(Error::Parameter("rank of the empty set must be 0".into()));
        }
        Ok(Self { ground, values })
    }

    pub fn from_fn<F: Fn(Subset) -> u32>(n: usize, f: F) -> Result<Self> {
        if n > Self::MAX_N {
            return Err(Error::Parameter(format!("rank tables need n <= {}", Self::MAX_N)));
        }
        let values = (0..1u64 << n).map(|s| if s == 0 { 0 } else { f(s) }).collect();
        Self::from_values(n, values)
    }

    /// The rank function `X -> #{k : A_k meets X}` of a presentation.
    pub fn of_presentation(pres: &Presentation) -> Result<Self> {
        Self::from_fn(pres.n(), |x| transversal_rank(pres, x))
    }

    pub fn n(&self) -> usize {
        self.ground.size()
    }

    pub fn get(&self, s: Subset) -> u32 {
        self.values[s as usize]
    }

    /// Checks monotonicity and submodularity, returning a witness pair on
    /// failure.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        for s in 0..1u64 << n {
            for x in 0..n {
                let sx = s | 1 << x;
                if sx != s && self.get(s) > self.get(sx) {
                    return Err(Error::NotMonotone { smaller: s, larger: sx });
                }
            }
        }
        // local form: rho(F+x) + rho(F+y) >= rho(F+x+y) + rho(F)
        for s in 0..1u64 << n {
            for x in 0..n {
                for y in x + 1..n {
                    if (s >> x | s >> y) & 1 == 1 {
                        continue;
                    }
                    let (fx, fy) = (s | 1 << x, s | 1 << y);
                    if self.get(fx) + self.get(fy) < self.get(fx | fy) + self.get(s) {
                        return Err(Error::NotSubmodular { first: fx, second: fy });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_nondecreasing_submodular(&self) -> bool {
        self.validate().is_ok()
    }
}

/// A subvector-closed exponent set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolymatroidPoints(ExponentSet);

impl PolymatroidPoints {
    pub fn from_set(points: ExponentSet) -> Result<Self> {
        if points.is_empty() || !is_subvector_closed(&points) {
            return Err(Error::Precondition("point set is not subvector-closed".into()));
        }
        Ok(Self(points))
    }

    /// All integral vectors below some member of `tops`.
    pub fn subvector_closure(tops: &ExponentSet) -> Result<Self> {
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut stack: Vec<Vec<u32>> = tops.iter().map(|v| v.coords().to_vec()).collect();
        while let Some(v) = stack.pop() {
            if !seen.insert(v.clone()) {
                continue;
            }
            for k in 0..v.len() {
                if v[k] > 0 {
                    let mut w = v.clone();
                    w[k] -= 1;
                    if !seen.contains(&w) {
                        stack.push(w);
                    }
                }
            }
        }
        Self::from_set(seen.into_iter().map(ExponentVector::new).collect())
    }

    pub fn as_set(&self) -> &ExponentSet {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.dim().unwrap_or(0)
    }

    pub fn into_set(self) -> ExponentSet {
        self.0
    }
}

/// Visits every `u` in `Z_+^n` with `u(F) <= scale * rho(F)` for all `F`,
/// optionally restricted to `|u| = modulus`.
pub fn for_each_point_under<F: FnMut(&[u32])>(rho: &RankFunction, scale: u32, modulus: Option<u32>, mut f: F) {
    let n = rho.n();
    let mut buf = vec![0u32; n];
    descend(rho, scale, modulus, &mut buf, 0, 0, &mut f);
}

fn descend<F: FnMut(&[u32])>(
    rho: &RankFunction,
    scale: u32,
    modulus: Option<u32>,
    buf: &mut [u32],
    pos: usize,
    sum: u32,
    f: &mut F,
) {
    let n = buf.len();
    if pos == n {
        if modulus.is_none_or(|m| m == sum) {
            f(buf);
        }
        return;
    }
    let mut cap = scale * rho.get(1 << pos);
    if let Some(m) = modulus {
        cap = cap.min(m - sum);
    }
    let lo = match modulus {
        // the remaining coordinates must still be able to reach the modulus
        Some(m) if pos + 1 == n => m - sum,
        _ => 0,
    };
    if lo > cap {
        return;
    }
    for v in lo..=cap {
        buf[pos] = v;
        let bit = 1u64 << pos;
        let ok = (0..bit).all(|low| {
            let mask = low | bit;
            let total: u32 = (0..=pos).filter(|k| mask >> k & 1 == 1).map(|k| buf[k]).sum();
            total <= scale * rho.get(mask)
        });
        if ok {
            descend(rho, scale, modulus, buf, pos + 1, sum + v, f);
        }
    }
    buf[pos] = 0;
}

/// The polymatroid `{u : u(F) <= rho(F) for all F}`.
pub fn polymatroid_points(rho: &RankFunction) -> Result<PolymatroidPoints> {
    rho.validate()?;
    let mut pts = Vec::new();
    for_each_point_under(rho, 1, None, |u| pts.push(ExponentVector::new(u.to_vec())));
    PolymatroidPoints::from_set(pts.into_iter().collect())
}

/// `rho_P(F) = max { u(F) : u in P }`.
pub fn rank_function_of(points: &PolymatroidPoints) -> RankFunction {
    let n = points.n().max(1);
    RankFunction::from_fn(n, |f| points.as_set().iter().map(|u| u.masked_sum(f)).max().unwrap_or(0))
        .expect("polymatroid dimension fits a rank table")
}

/// Nonempty proper subsets on which every proper superset has strictly
/// larger rank. The whole ground set, closed vacuously, is left out.
pub fn rho_closed_sets(rho: &RankFunction) -> Vec<Subset> {
    let full = rho.ground.full();
    let mut out: Vec<Subset> = (1..full)
        .filter(|&f| {
            let rest = full & !f;
            let mut sub = rest;
            while sub != 0 {
                if rho.get(f | sub) <= rho.get(f) {
                    return false;
                }
                sub = (sub - 1) & rest;
            }
            true
        })
        .collect();
    sort_subsets(&mut out);
    out
}

/// Nonempty subsets with no partition `F = F_1 + F_2` into nonempty parts
/// where the rank is additive.
pub fn rho_inseparable_sets(rho: &RankFunction) -> Vec<Subset> {
    let full = rho.ground.full();
    let mut out: Vec<Subset> = (1..=full)
        .filter(|&f| {
            let mut part = (f - 1) & f;
            while part != 0 {
                if rho.get(f) == rho.get(part) + rho.get(f & !part) {
                    return false;
                }
                part = (part - 1) & f;
            }
            true
        })
        .collect();
    sort_subsets(&mut out);
    out
}

/// Gorenstein test for the Ehrhart ring of a polymatroid. Returns the
/// witness `delta` when every closed and inseparable `F` has
/// `delta * rho(F) = |F| + 1`.
pub fn ehrhart_gorenstein_check(points: &PolymatroidPoints) -> Result<Option<u32>> {
    let n = points.n();
    if (0..n).any(|k| !points.as_set().contains(&ExponentVector::unit(n, k))) {
        return Err(Error::Precondition("every unit vector must lie in P".into()));
    }
    let rho = rank_function_of(points);
    let inseparable: HashSet<Subset> = rho_inseparable_sets(&rho).into_iter().collect();
    let mut delta: Option<u32> = None;
    let mut closed = rho_closed_sets(&rho);
    closed.push(rho.ground.full());
    for f in closed.into_iter().filter(|f| inseparable.contains(f)) {
        let (size, r) = (f.count_ones() + 1, rho.get(f));
        if size % r != 0 {
            return Ok(None);
        }
        match delta {
            None => delta = Some(size / r),
            Some(d) if d != size / r => return Ok(None),
            Some(_) => {}
        }
    }
    Ok(Some(delta.unwrap_or(1)))
}

/// Checks that the rank inequalities of `P` cut out exactly `P`.
pub fn conv_lattice_check(points: &PolymatroidPoints) -> bool {
    let rho = rank_function_of(points);
    let mut count = 0usize;
    let mut all_inside = true;
    for_each_point_under(&rho, 1, None, |u| {
        count += 1;
        all_inside &= points.as_set().contains(&ExponentVector::new(u.to_vec()));
    });
    all_inside && count == points.as_set().len()
}

/// Result of an exhaustive presentation search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub presentation: Option<Presentation>,
    /// Candidate multisets that reached the final base-set comparison.
    pub examined: u64,
}

/// Searches multisets of `m` nonempty subsets of `[n]` for a presentation
/// whose base set is `target`.
pub fn search_presentation(target: &ExponentSet, m: usize, limit: usize) -> Result<SearchOutcome> {
    let Some(n) = target.dim() else {
        return Err(Error::Precondition("empty target base set".into()));
    };
    if n > limit {
        return Err(Error::SearchSpaceExceeded { n, limit });
    }
    if target.common_modulus() != Some(m as u32) {
        return Err(Error::Precondition(format!("target bases must all have modulus {m}")));
    }
    let goal = RankFunction::from_fn(n, |x| target.iter().map(|u| u.masked_sum(x)).max().unwrap_or(0))?;
    let needed: Vec<u32> = (0..n).map(|k| goal.get(1 << k)).collect();
    let mut state = Search {
        n,
        m,
        goal: &goal,
        target,
        needed,
        counts: vec![0; n],
        chosen: Vec::with_capacity(m),
        examined: 0,
        found: None,
    };
    state.run(1);
    Ok(SearchOutcome { presentation: state.found, examined: state.examined })
}

struct Search<'a> {
    n: usize,
    m: usize,
    goal: &'a RankFunction,
    target: &'a ExponentSet,
    needed: Vec<u32>,
    counts: Vec<u32>,
    chosen: Vec<Subset>,
    examined: u64,
    found: Option<Presentation>,
}

impl Search<'_> {
    fn run(&mut self, min_set: Subset) {
        if self.found.is_some() {
            return;
        }
        let left = (self.m - self.chosen.len()) as u32;
        if (0..self.n).any(|k| self.needed[k] - self.counts[k] > left) {
            return;
        }
        if left == 0 {
            self.finish();
            return;
        }
        for set in min_set..=full_set(self.n) {
            let fits = (0..self.n).all(|k| set >> k & 1 == 0 || self.counts[k] < self.needed[k]);
            if !fits {
                continue;
            }
            self.toggle(set, true);
            self.run(set);
            self.toggle(set, false);
            if self.found.is_some() {
                return;
            }
        }
    }

    fn toggle(&mut self, set: Subset, add: bool) {
        for k in 0..self.n {
            if set >> k & 1 == 1 {
                if add {
                    self.counts[k] += 1;
                } else {
                    self.counts[k] -= 1;
                }
            }
        }
        if add {
            self.chosen.push(set);
        } else {
            self.chosen.pop();
        }
    }

    fn finish(&mut self) {
        let full = full_set(self.n);
        let ranks_match =
            (1..=full).all(|x| self.chosen.iter().filter(|&&a| a & x != 0).count() as u32 == self.goal.get(x));
        if !ranks_match {
            return;
        }
        self.examined += 1;
        let pres = Presentation::new(self.n, self.chosen.clone()).expect("search sets are valid");
        if transversal_bases(&pres) == *self.target {
            self.found = Some(pres);
        }
    }
}

/// Exhaustive search for a presentation with `max_m` sets, for `n <= 5`.
pub fn find_transversal_presentation(bases: &ExponentSet, max_m: usize) -> Result<Option<Presentation>> {
    Ok(search_presentation(bases, max_m, 5)?.presentation)
}

/// Whether the bipartite set/element incidence graph has a cycle.
pub fn has_presentation_cycles(pres: &Presentation) -> bool {
    let m = pres.m();
    let mut parent: Vec<usize> = (0..m + pres.n()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (idx, &set) in pres.sets().iter().enumerate() {
        for k in subset_elements(set) {
            let (a, b) = (root(&mut parent, idx), root(&mut parent, m + k - 1));
            if a == b {
                return true;
            }
            parent[a] = b;
        }
    }
    false
}
