//! Fraction-free integer elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

fn content(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| g.gcd(&x))
}

fn reduce(v: &mut [i128]) {
    let g = content(v);
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

/// Incrementally built echelon basis of a row space over `Q`.
#[derive(Debug, Clone, Default)]
pub struct RowEchelon {
    rows: Vec<(usize, Vec<i128>)>,
}

impl RowEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a row; returns `true` when it raised the rank.
    pub fn insert(&mut self, row: &[i64]) -> bool {
        let mut v: Vec<i128> = row.iter().map(|&x| x as i128).collect();
        for (pivot, b) in &self.rows {
            let vp = v[*pivot];
            if vp == 0 {
                continue;
            }
            let bp = b[*pivot];
            for (x, y) in v.iter_mut().zip(b) {
                *x = bp * *x - vp * y;
            }
            reduce(&mut v);
        }
        match v.iter().position(|&x| x != 0) {
            Some(pivot) => {
                self.rows.push((pivot, v));
                true
            }
            None => false,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        self.rows.iter().map(|(_, r)| r.iter().map(|&x| x as i64).collect())
    }
}

/// Rank over `Q`, stopping early once `cap` is reached.
pub fn rank_capped<'a, I>(rows: I, cap: usize) -> usize
where
    I: IntoIterator<Item = &'a [i64]>,
{
    let mut ech = RowEchelon::new();
    for r in rows {
        ech.insert(r);
        if ech.rank() >= cap {
            break;
        }
    }
    ech.rank()
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    let cap = rows.first().map_or(0, Vec::len);
    rank_capped(rows.iter().map(Vec::as_slice), cap)
}

/// Determinant by Bareiss elimination.
pub fn det(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let v = &m[k][k] * &m[r][c] - &m[r][k] * &m[k][c];
                m[r][c] = v / &prev;
            }
            m[r][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    sign * m[n - 1][n - 1].clone()
}

/// Divides by the gcd of the entries.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g <= 1 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

/// Primitive generator of the orthogonal complement of a row space of rank
/// `dim - 1`, or `None` for any other rank. The sign is arbitrary.
pub fn kernel_vector(rows: &[Vec<i64>], dim: usize) -> Option<Vec<i64>> {
    let mut ech = RowEchelon::new();
    for r in rows {
        ech.insert(r);
    }
    if ech.rank() + 1 != dim {
        return None;
    }
    let basis: Vec<Vec<i64>> = ech.rows().collect();
    // generalized cross product: signed maximal minors
    let v: Vec<BigInt> = (0..dim)
        .map(|drop| {
            let minor: Vec<Vec<i64>> =
                basis.iter().map(|r| (0..dim).filter(|&c| c != drop).map(|c| r[c]).collect()).collect();
            let d = det(&minor);
            if drop % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return None;
    }
    v.iter().map(|x| (x / &g).to_i64()).collect::<Option<Vec<_>>>().map(|k| primitive(&k))
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        assert_eq!(det(&[vec![2, 0], vec![1, 3]]), BigInt::from(6));
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(det(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
    }

    #[test]
    fn kernel_of_plane() {
        let k = kernel_vector(&[vec![1, 0, 0], vec![0, 1, 0]], 3).unwrap();
        assert!(k == vec![0, 0, 1] || k == vec![0, 0, -1]);
        assert!(kernel_vector(&[vec![1, 0, 0], vec![2, 0, 0]], 3).is_none());
    }

    #[test]
    fn rank_counts_independent_rows() {
        assert_eq!(rank(&[vec![1, 1, 0], vec![2, 2, 0], vec![0, 0, 5]]), 2);
    }
}
