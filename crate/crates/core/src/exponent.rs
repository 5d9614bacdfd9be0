//! Exponent vectors of monomials and sorted sets of them.

use std::fmt;

/// A vector in `Z_+^n`, the exponent of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(coords: Vec<u32>) -> Self {
        Self(coords)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// The all-ones vector of length `n`.
    pub fn ones(n: usize) -> Self {
        Self(vec![1; n])
    }

    /// The unit vector `e_k`, with `k` zero-based.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = vec![0; n];
        v[k] = 1;
        Self(v)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinate sum `|u|`.
    pub fn modulus(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&c| c as i64).collect()
    }

    /// Builds a vector from signed entries, or `None` if any is negative.
    pub fn from_i64(v: &[i64]) -> Option<Self> {
        v.iter().map(|&c| u32::try_from(c).ok()).collect::<Option<Vec<_>>>().map(Self)
    }

    /// Sum of the coordinates whose zero-based index is in `mask`.
    pub fn masked_sum(&self, mask: u64) -> u32 {
        self.0.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &c)| c).sum()
    }

    /// Componentwise `self <= other`.
    pub fn is_below(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Lexicographically sorted, duplicate-free list of exponent vectors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ExponentSet {
    points: Vec<ExponentVector>,
}

impl ExponentSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExponentVector> {
        self.points.iter()
    }

    pub fn as_slice(&self) -> &[ExponentVector] {
        &self.points
    }

    pub fn contains(&self, v: &ExponentVector) -> bool {
        self.points.binary_search(v).is_ok()
    }

    /// Common length of the vectors, if the set is nonempty.
    pub fn dim(&self) -> Option<usize> {
        self.points.first().map(ExponentVector::len)
    }

    /// The shared modulus, or `None` when moduli differ or the set is empty.
    pub fn common_modulus(&self) -> Option<u32> {
        let first = self.points.first()?.modulus();
        self.points.iter().all(|p| p.modulus() == first).then_some(first)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.points.iter().filter(|p| other.contains(p)).cloned().collect()
    }

    /// Points that are maximal for the componentwise order.
    pub fn maximal_elements(&self) -> Self {
        self.points.iter().filter(|p| !self.points.iter().any(|q| q != *p && p.is_below(q))).cloned().collect()
    }

    pub fn into_vec(self) -> Vec<ExponentVector> {
        self.points
    }
}

impl FromIterator<ExponentVector> for ExponentSet {
    fn from_iter<I: IntoIterator<Item = ExponentVector>>(iter: I) -> Self {
        let mut points: Vec<ExponentVector> = iter.into_iter().collect();
        points.sort_unstable();
        points.dedup();
        Self { points }
    }
}

impl From<Vec<Vec<u32>>> for ExponentSet {
    fn from(v: Vec<Vec<u32>>) -> Self {
        v.into_iter().map(ExponentVector::from).collect()
    }
}

impl<'a> IntoIterator for &'a ExponentSet {
    type Item = &'a ExponentVector;
    type IntoIter = std::slice::Iter<'a, ExponentVector>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

impl IntoIterator for ExponentSet {
    type Item = ExponentVector;
    type IntoIter = std::vec::IntoIter<ExponentVector>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.into_iter()
    }
}
