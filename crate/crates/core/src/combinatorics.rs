//! Arbitrary-precision counting primitives.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Finite sequence of exact integers indexed from zero.
pub type IntSequence = Vec<BigInt>;

/// Binomial coefficient `C(a, b)`.
///
/// Zero when `b < 0` or `b > a >= 0`. Negative `a` follows the usual
/// extension `C(a, b) = (-1)^b C(b - a - 1, b)`, so `C(-1, 0) = 1`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    if a < 0 {
        let v = binomial(b - a - 1, b);
        return if b % 2 == 0 { v } else { -v };
    }
    if b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for k in 0..b {
        acc *= a - k;
        acc /= k + 1;
    }
    acc
}

pub fn factorial(m: u32) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, k| acc * k)
}

/// The row `[A(m,1), ..., A(m,m)]` of Eulerian numbers.
pub fn eulerian_row(m: u32) -> Result<Vec<BigInt>> {
    if m < 1 {
        return Err(Error::Parameter("eulerian numbers need m >= 1".into()));
    }
    // row[k] holds A(level, k) for k in 0..=level+1, padded with zeros
    let mut row: Vec<BigInt> = vec![BigInt::zero(), BigInt::one(), BigInt::zero()];
    for level in 2..=m {
        let mut next = vec![BigInt::zero(); level as usize + 2];
        for k in 1..=level as usize {
            let keep = &row[k] * k;
            let step = &row[k - 1] * (level as usize - k + 1);
            next[k] = keep + step;
        }
        row = next;
    }
    Ok(row[1..=m as usize].to_vec())
}

/// Eulerian number `A(m, k)`, zero outside `1 <= k <= m`.
pub fn eulerian(m: u32, k: i64) -> Result<BigInt> {
    let row = eulerian_row(m)?;
    if k < 1 || k > m as i64 {
        return Ok(BigInt::zero());
    }
    Ok(row[(k - 1) as usize].clone())
}

/// Checks `k^m = sum_s A(m,s) C(k+s-1, m)`.
pub fn worpitzky_check(m: u32, k: u32) -> bool {
    let Ok(row) = eulerian_row(m) else {
        return false;
    };
    let lhs = BigInt::from(k).pow(m);
    let rhs: BigInt = row.iter().enumerate().map(|(idx, a)| a * binomial(k as i64 + idx as i64, m as i64)).sum();
    lhs == rhs
}

/// Numerator coefficients `h_0..h_L` of a series with Hilbert values
/// `values[0..=L]` over `(1 - t)^denom_power`.
///
/// Trailing zeros are kept; callers trim them.
pub fn numerator_from_hilbert(values: &[BigInt], denom_power: u32) -> IntSequence {
    let signed: Vec<BigInt> = (0..values.len())
        .map(|s| {
            let c = binomial(denom_power as i64, s as i64);
            if s % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    (0..values.len()).map(|j| (0..=j).map(|s| &signed[s] * &values[j - s]).sum()).collect()
}

/// Drops trailing zero entries.
pub fn trim_trailing_zeros(seq: &mut IntSequence) {
    while seq.last().is_some_and(Zero::is_zero) {
        seq.pop();
    }
}

/// Calls `f` on every weak composition of `total` into `parts` nonnegative
/// integers, in lexicographically decreasing order.
pub fn for_each_composition<F: FnMut(&[u32])>(total: u32, parts: usize, mut f: F) {
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    let mut buf = vec![0u32; parts];
    fill(&mut buf, 0, total, &mut f);
}

fn fill<F: FnMut(&[u32])>(buf: &mut [u32], pos: usize, rest: u32, f: &mut F) {
    if pos + 1 == buf.len() {
        buf[pos] = rest;
        f(buf);
        return;
    }
    for v in (0..=rest).rev() {
        buf[pos] = v;
        fill(buf, pos + 1, rest - v, f);
    }
}

/// Collects all weak compositions of `total` into `parts` entries.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for_each_composition(total, parts, |c| out.push(c.to_vec()));
    out
}
