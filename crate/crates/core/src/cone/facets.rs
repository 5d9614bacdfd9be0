use super::linalg::{dot, kernel_vector, primitive, rank_capped, RowEchelon};
use super::{ConeRep, Hyperplane};
use crate::exponent::ExponentSet;
use crate::{Error, Result};

struct Facet {
    normal: Vec<i64>,
    /// Indices into the processed point list lying on the facet.
    incident: Vec<usize>,
}

/// Facets of the cone spanned by `A`, built by inserting the points one at
/// a time into an initial simplicial cone.
pub fn cone_facets_bruteforce(a: &ExponentSet) -> Result<ConeRep> {
    let n = a.dim().unwrap_or(0);
    let mut points: Vec<Vec<i64>> = a.iter().map(|v| primitive(&v.to_i64())).collect();
    points.retain(|p| p.iter().any(|&x| x != 0));
    points.sort();
    points.dedup();

    let mut ech = RowEchelon::new();
    let mut seed = Vec::new();
    for (idx, p) in points.iter().enumerate() {
        if ech.insert(p) {
            seed.push(idx);
        }
    }
    if ech.rank() < n || n == 0 {
        return Err(Error::NotFullDimensional { rank: ech.rank(), dim: n });
    }

    let mut facets: Vec<Facet> = Vec::with_capacity(n);
    for (k, &apex) in seed.iter().enumerate() {
        let others: Vec<Vec<i64>> =
            seed.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, &idx)| points[idx].clone()).collect();
        let mut normal = kernel_vector(&others, n).expect("seed points are independent");
        if dot(&normal, &points[apex]) < 0 {
            normal.iter_mut().for_each(|x| *x = -*x);
        }
        let incident = seed.iter().copied().filter(|&idx| idx != apex).collect();
        facets.push(Facet { normal, incident });
    }

    for idx in 0..points.len() {
        if seed.contains(&idx) {
            continue;
        }
        let p = &points[idx];
        let values: Vec<i64> = facets.iter().map(|f| dot(&f.normal, p)).collect();
        if values.iter().any(|&v| v < 0) {
            let mut fresh = Vec::new();
            for (pi, pos) in facets.iter().enumerate().filter(|&(k, _)| values[k] > 0) {
                for (ni, neg) in facets.iter().enumerate().filter(|&(k, _)| values[k] < 0) {
                    let common: Vec<usize> =
                        pos.incident.iter().copied().filter(|i| neg.incident.binary_search(i).is_ok()).collect();
                    if common.len() + 2 < n {
                        continue;
                    }
                    let ridge_rank = rank_capped(common.iter().map(|&i| points[i].as_slice()), n - 2);
                    if ridge_rank + 2 < n {
                        continue;
                    }
                    let (sp, sn) = (values[pi] as i128, values[ni] as i128);
                    let combined: Vec<i64> = pos
                        .normal
                        .iter()
                        .zip(&neg.normal)
                        .map(|(&a, &b)| {
                            i64::try_from(sp * b as i128 - sn * a as i128).expect("facet normal entries fit in i64")
                        })
                        .collect();
                    let mut incident = common;
                    incident.push(idx);
                    fresh.push(Facet { normal: primitive(&combined), incident });
                }
            }
            let mut k = 0;
            facets.retain(|_| {
                k += 1;
                values[k - 1] >= 0
            });
            facets.extend(fresh);
        }
        for f in &mut facets {
            if dot(&f.normal, p) == 0 && !f.incident.contains(&idx) {
                f.incident.push(idx);
            }
            f.incident.sort_unstable();
        }
    }

    let normals = facets.into_iter().map(|f| Hyperplane::new(f.normal)).collect::<Result<Vec<_>>>()?;
    Ok(ConeRep::new(n, normals))
}
