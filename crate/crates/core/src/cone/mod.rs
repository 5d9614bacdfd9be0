//! Polyhedral cones over exponent sets.
//!
//! A [`ConeRep`] is a list of integer normals; its cone is the intersection
//! of their nonnegative halfspaces. The family of window cones indexed by
//! [`FamilyParams`] has a closed-form representation that the brute-force
//! facet enumeration in this module is checked against.

mod facets;
mod lattice;
pub mod linalg;

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;

use crate::combinatorics::for_each_composition;
use crate::exponent::{ExponentSet, ExponentVector};
use crate::{Error, Result};

pub use facets::cone_facets_bruteforce;
pub use lattice::{lattice_of, Lattice};
use linalg::{dot, kernel_vector, primitive};

/// Parameters `(n, i, j, t)` of a window family.
///
/// The window `σ^t[i]` is the cyclic run of positions `t+1, ..., t+i`
/// (1-based, wrapping past `n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyParams {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub t: usize,
}

impl FamilyParams {
    pub fn new(n: usize, i: usize, j: usize, t: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Parameter(format!("n = {n} must be at least 3")));
        }
        if !(1..=n - 2).contains(&i) {
            return Err(Error::Parameter(format!("i = {i} outside [1, {}]", n - 2)));
        }
        if !(1..=n - 1).contains(&j) {
            return Err(Error::Parameter(format!("j = {j} outside [1, {}]", n - 1)));
        }
        if t >= n {
            return Err(Error::Parameter(format!("t = {t} outside [0, {}]", n - 1)));
        }
        Ok(Self { n, i, j, t })
    }

    /// Every valid `(n, i, j)` with `t = 0`, for `n` in the range.
    pub fn grid(ns: std::ops::RangeInclusive<usize>) -> Vec<Self> {
        ns.flat_map(|n| (1..=n.saturating_sub(2)).flat_map(move |i| (1..n).map(move |j| Self { n, i, j, t: 0 })))
            .collect()
    }

    /// `i + j <= n - 1`.
    pub fn is_case_a(&self) -> bool {
        self.i + self.j < self.n
    }

    /// `r = ceil((i + 1) / (n - j))`.
    pub fn r(&self) -> usize {
        (self.i + 1).div_ceil(self.n - self.j)
    }

    /// Zero-based positions of the window.
    pub fn window(&self) -> Vec<usize> {
        window_positions(self.n, self.i, self.t)
    }

    pub fn window_mask(&self) -> u64 {
        self.window().iter().fold(0, |m, &k| m | 1 << k)
    }
}

/// Zero-based positions `t, t+1, ..., t+i-1` taken mod `n`.
pub fn window_positions(n: usize, i: usize, t: usize) -> Vec<usize> {
    (0..i).map(|k| (t + k) % n).collect()
}

/// A nonzero normal vector, kept both as given and content-reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    raw: Vec<i64>,
    primitive: Vec<i64>,
}

impl Hyperplane {
    pub fn new(raw: Vec<i64>) -> Result<Self> {
        if raw.iter().all(|&x| x == 0) {
            return Err(Error::Parameter("zero normal".into()));
        }
        let primitive = primitive(&raw);
        Ok(Self { raw, primitive })
    }

    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = vec![0; n];
        v[k] = 1;
        Self { raw: v.clone(), primitive: v }
    }

    /// The normal as supplied, before content reduction.
    pub fn raw(&self) -> &[i64] {
        &self.raw
    }

    /// The content-reduced normal.
    pub fn normal(&self) -> &[i64] {
        &self.primitive
    }

    /// `⟨x, a⟩` for the primitive normal `a`.
    pub fn eval(&self, x: &[i64]) -> i64 {
        dot(&self.primitive, x)
    }
}

/// Halfspace representation of a cone in `R^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeRep {
    dim: usize,
    normals: Vec<Hyperplane>,
}

impl ConeRep {
    /// Builds a representation, dropping normals whose primitive form
    /// repeats an earlier one.
    pub fn new(dim: usize, normals: Vec<Hyperplane>) -> Self {
        Self::new_counting(dim, normals).0
    }

    /// Like [`ConeRep::new`], also returning how many duplicates were dropped.
    pub fn new_counting(dim: usize, normals: Vec<Hyperplane>) -> (Self, usize) {
        let mut seen = BTreeSet::new();
        let total = normals.len();
        let kept: Vec<Hyperplane> = normals.into_iter().filter(|h| seen.insert(h.primitive.clone())).collect();
        let dropped = total - kept.len();
        (Self { dim, normals: kept }, dropped)
    }

    /// The nonnegative orthant.
    pub fn orthant(n: usize) -> Self {
        Self::new(n, (0..n).map(|k| Hyperplane::unit(n, k)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[Hyperplane] {
        &self.normals
    }

    /// Sorted primitive normals, for comparing representations.
    pub fn primitive_normals(&self) -> BTreeSet<Vec<i64>> {
        self.normals.iter().map(|h| h.primitive.clone()).collect()
    }

    /// Equal up to order and positive scaling of normals.
    pub fn same_normals(&self, other: &Self) -> bool {
        self.dim == other.dim && self.primitive_normals() == other.primitive_normals()
    }

    /// A copy without the normal at `idx`.
    pub fn without(&self, idx: usize) -> Self {
        let mut normals = self.normals.clone();
        normals.remove(idx);
        Self { dim: self.dim, normals }
    }
}

/// `ν^j_{σ^t[i]}`: `-j` on the window, `n - j` elsewhere.
pub fn nu_vector(p: &FamilyParams) -> Hyperplane {
    let mask = p.window_mask();
    let raw = (0..p.n).map(|k| if mask >> k & 1 == 1 { -(p.j as i64) } else { (p.n - p.j) as i64 }).collect();
    Hyperplane::new(raw).expect("nu has nonzero entries")
}

/// All `α` with `|α| = n` whose window sum is at most `n - j`.
pub fn family_exponents(p: &FamilyParams) -> ExponentSet {
    let mask = p.window_mask();
    let bound = (p.n - p.j) as u32;
    let mut out = Vec::new();
    for_each_composition(p.n as u32, p.n, |c| {
        let v = ExponentVector::new(c.to_vec());
        if v.masked_sum(mask) <= bound {
            out.push(v);
        }
    });
    out.into_iter().collect()
}

/// `{ν^j_{σ^t[i]}, e_1, ..., e_n}`.
pub fn family_cone_rep(p: &FamilyParams) -> ConeRep {
    let mut normals = vec![nu_vector(p)];
    normals.extend((0..p.n).map(|k| Hyperplane::unit(p.n, k)));
    ConeRep::new(p.n, normals)
}

/// Whether `x` satisfies every halfspace, strictly when asked.
pub fn cone_membership(rep: &ConeRep, x: &[i64], strict: bool) -> bool {
    rep.normals.iter().all(|h| {
        let v = h.eval(x);
        if strict {
            v > 0
        } else {
            v >= 0
        }
    })
}

/// Primitive generators of the rays of a pointed full-dimensional cone,
/// sorted.
pub fn extremal_rays(rep: &ConeRep) -> Result<Vec<Vec<i64>>> {
    let n = rep.dim;
    let normals: Vec<Vec<i64>> = rep.normals.iter().map(|h| h.primitive.clone()).collect();
    let rank = linalg::rank(&normals);
    if rank < n {
        return Err(Error::NotPointed);
    }
    let mut rays = BTreeSet::new();
    for subset in (0..normals.len()).combinations(n - 1) {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&k| normals[k].clone()).collect();
        let Some(v) = kernel_vector(&rows, n) else {
            continue;
        };
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        let fwd = normals.iter().all(|a| dot(a, &v) >= 0);
        let back = normals.iter().all(|a| dot(a, &neg) >= 0);
        match (fwd, back) {
            (true, true) => return Err(Error::NotPointed),
            (true, false) => {
                rays.insert(v);
            }
            (false, true) => {
                rays.insert(neg);
            }
            (false, false) => {}
        }
    }
    Ok(rays.into_iter().collect())
}

/// Checks that `rep` is an irreducible representation of the cone over `A`.
pub fn irreducible_rep_check(a: &ExponentSet, rep: &ConeRep) -> Result<bool> {
    let n = a.dim().unwrap_or(0);
    let pts: Vec<Vec<i64>> = a.iter().map(ExponentVector::to_i64).collect();
    let rank = linalg::rank(&pts);
    if rank < n || n == 0 {
        return Err(Error::NotFullDimensional { rank, dim: n });
    }
    if rep.dim != n {
        return Ok(false);
    }
    if !pts.iter().all(|p| cone_membership(rep, p, false)) {
        return Ok(false);
    }
    let facet_defining = rep.normals.iter().all(|h| {
        let incident = pts.iter().filter(|p| h.eval(p) == 0).map(Vec::as_slice);
        linalg::rank_capped(incident, n - 1) == n - 1
    });
    if !facet_defining {
        return Ok(false);
    }
    let rays = match extremal_rays(rep) {
        Ok(r) => r,
        Err(Error::NotPointed) => return Ok(false),
        Err(e) => return Err(e),
    };
    let directions: BTreeSet<Vec<i64>> = pts.iter().map(|p| primitive(p)).collect();
    Ok(rays.iter().all(|r| directions.contains(r)))
}

/// `|det|` of the matrix with rows `J_1..J_i, J_{i+2}..J_n, J` where
/// `J_k = (n-j)e_k + j e_{i+1}` for `k <= i`, `J_k = (n-j)e_1 + j e_k` for
/// `k >= i+2`, and `J = n e_n`.
pub fn det_check(p: &FamilyParams) -> Result<BigInt> {
    if p.t != 0 {
        return Err(Error::Precondition("det_check needs t = 0".into()));
    }
    let (n, i, j) = (p.n, p.i, p.j as i64);
    let unit = |k: usize, c: i64| {
        let mut v = vec![0i64; n];
        v[k] = c;
        v
    };
    let add = |mut a: Vec<i64>, b: Vec<i64>| {
        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        a
    };
    let nj = n as i64 - j;
    let mut rows = Vec::with_capacity(n);
    for k in 0..i {
        rows.push(add(unit(k, nj), unit(i, j)));
    }
    for k in i + 1..n {
        rows.push(add(unit(0, nj), unit(k, j)));
    }
    rows.push(unit(n - 1, n as i64));
    Ok(num_traits::sign::abs(linalg::det(&rows)))
}

/// The closed product `n (n-j)^i j^(n-i-1)`.
pub fn det_closed_form(p: &FamilyParams) -> BigInt {
    BigInt::from(p.n) * BigInt::from(p.n - p.j).pow(p.i as u32) * BigInt::from(p.j).pow((p.n - p.i - 1) as u32)
}

/// Lattice and halfspaces of a normal affine semigroup `N A`.
#[derive(Debug, Clone)]
pub struct NormalSemigroup {
    lattice: Lattice,
    rep: ConeRep,
}

impl NormalSemigroup {
    pub fn new(a: &ExponentSet, rep: ConeRep) -> Self {
        Self { lattice: lattice_of(a), rep }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn rep(&self) -> &ConeRep {
        &self.rep
    }

    /// `z ∈ Z A ∩ R_+ A`, which is `N A` by normality.
    pub fn contains(&self, z: &[i64]) -> bool {
        cone_membership(&self.rep, z, false) && self.lattice.contains(z)
    }

    /// `z ∈ N A ∩ ri(R_+ A)` for a full-dimensional cone.
    pub fn contains_interior(&self, z: &[i64]) -> bool {
        cone_membership(&self.rep, z, true) && self.lattice.contains(z)
    }
}

/// `z ∈ N A`, assuming `N A` is normal and `rep` describes `R_+ A`.
pub fn semigroup_membership_normal(a: &ExponentSet, rep: &ConeRep, z: &[i64]) -> bool {
    cone_membership(rep, z, false) && lattice_of(a).contains(z)
}
