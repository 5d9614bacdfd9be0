use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exponent::ExponentSet;

/// Integer span of a finite set of vectors, kept in Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    n: usize,
    /// `(pivot column, row)` with strictly increasing pivots.
    basis: Vec<(usize, Vec<i64>)>,
}

impl Lattice {
    pub fn from_rows<'a, I: IntoIterator<Item = &'a [i64]>>(n: usize, rows: I) -> Self {
        let mut slots: Vec<Option<Vec<BigInt>>> = vec![None; n];
        for r in rows {
            let v: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
            insert(&mut slots, v);
            normalize(&mut slots);
        }
        let basis = slots
            .into_iter()
            .enumerate()
            .filter_map(|(c, row)| row.map(|r| (c, r)))
            .map(|(c, r)| {
                let r = r.iter().map(|x| x.to_i64().expect("HNF entries fit in i64")).collect();
                (c, r)
            })
            .collect();
        Self { n, basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// HNF rows in pivot order.
    pub fn basis(&self) -> impl Iterator<Item = &[i64]> {
        self.basis.iter().map(|(_, r)| r.as_slice())
    }

    pub fn contains(&self, z: &[i64]) -> bool {
        let mut z: Vec<i128> = z.iter().map(|&x| x as i128).collect();
        let mut rows = self.basis.iter().peekable();
        for c in 0..self.n {
            match rows.peek() {
                Some((pivot, row)) if *pivot == c => {
                    let p = row[c] as i128;
                    if z[c] % p != 0 {
                        return false;
                    }
                    let q = z[c] / p;
                    if q != 0 {
                        for (x, &y) in z.iter_mut().zip(row) {
                            *x -= q * y as i128;
                        }
                    }
                    rows.next();
                }
                _ => {
                    if z[c] != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn insert(slots: &mut [Option<Vec<BigInt>>], mut v: Vec<BigInt>) {
    for c in 0..v.len() {
        if v[c].is_zero() {
            continue;
        }
        let Some(b) = slots[c].take() else {
            if v[c].is_negative() {
                v.iter_mut().for_each(|x| *x = -&*x);
            }
            slots[c] = Some(v);
            return;
        };
        let ext = b[c].extended_gcd(&v[c]);
        let (g, x, y) = (ext.gcd, ext.x, ext.y);
        let (bc, vc) = (&b[c] / &g, &v[c] / &g);
        let new_b: Vec<BigInt> = b.iter().zip(&v).map(|(p, q)| &x * p + &y * q).collect();
        let new_v: Vec<BigInt> = b.iter().zip(&v).map(|(p, q)| &vc * p - &bc * q).collect();
        slots[c] = Some(new_b);
        v = new_v;
    }
}

fn normalize(slots: &mut [Option<Vec<BigInt>>]) {
    let n = slots.len();
    for c in 0..n {
        let Some(row) = slots[c].as_mut() else { continue };
        if row[c].is_negative() {
            row.iter_mut().for_each(|x| *x = -&*x);
        }
        let row = row.clone();
        let p = &row[c];
        for earlier in slots[..c].iter_mut().flatten() {
            let q = earlier[c].div_floor(p);
            if !q.is_zero() {
                for (e, r) in earlier.iter_mut().zip(&row) {
                    *e -= &q * r;
                }
            }
        }
    }
}

/// The lattice `Z A` spanned by an exponent set.
pub fn lattice_of(a: &ExponentSet) -> Lattice {
    let n = a.dim().unwrap_or(0);
    let rows: Vec<Vec<i64>> = a.iter().map(|v| v.to_i64()).collect();
    Lattice::from_rows(n, rows.iter().map(Vec::as_slice))
}
