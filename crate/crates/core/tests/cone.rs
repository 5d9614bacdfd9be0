use num_bigint::BigInt;
use polybase_core::cone::*;
use polybase_core::intersect::{intersection_exponents, IntersectionSpec};
use polybase_core::{ExponentSet, ExponentVector};

fn fp(n: usize, i: usize, j: usize, t: usize) -> FamilyParams {
    FamilyParams::new(n, i, j, t).unwrap()
}

fn unit(n: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

/// Direct count of `|α| = n` vectors with bounded window sum.
fn count_window_vectors(n: usize, window: &[usize], bound: usize) -> usize {
    fn rec(n: usize, pos: usize, left: usize, win: usize, window: &[usize], bound: usize) -> usize {
        if pos == n {
            return usize::from(left == 0 && win <= bound);
        }
        (0..=left)
            .map(|v| {
                let w = if window.contains(&pos) { win + v } else { win };
                rec(n, pos + 1, left - v, w, window, bound)
            })
            .sum()
    }
    rec(n, 0, n, 0, window, bound)
}

#[test]
fn nu_vector_examples() {
    assert_eq!(nu_vector(&fp(4, 1, 1, 0)).raw(), &[-1, 3, 3, 3]);
    let h = nu_vector(&fp(4, 1, 2, 0));
    assert_eq!(h.raw(), &[-2, 2, 2, 2]);
    assert_eq!(h.normal(), &[-1, 1, 1, 1]);
    assert_eq!(nu_vector(&fp(4, 1, 1, 1)).raw(), &[3, -1, 3, 3]);
}

#[test]
fn wrapped_window_positions() {
    assert_eq!(fp(5, 3, 1, 4).window(), vec![4, 0, 1]);
    assert_eq!(nu_vector(&fp(5, 3, 1, 4)).raw(), &[-1, -1, 4, 4, -1]);
}

#[test]
fn family_exponent_counts() {
    let a = family_exponents(&fp(3, 1, 1, 0));
    assert_eq!(a.len(), 9);
    assert!(!a.contains(&ExponentVector::new(vec![3, 0, 0])));
    assert_eq!(family_exponents(&fp(7, 3, 2, 0)).len(), 1568);
    for p in FamilyParams::grid(3..=6) {
        for t in 0..p.n {
            let q = fp(p.n, p.i, p.j, t);
            assert_eq!(family_exponents(&q).len(), count_window_vectors(q.n, &q.window(), q.n - q.j));
        }
    }
}

#[test]
fn family_reps_have_n_plus_one_normals() {
    let rep = family_cone_rep(&fp(7, 3, 2, 0));
    assert_eq!(rep.normals().len(), 8);
    assert_eq!(rep.normals()[0].raw(), &[-2, -2, -2, 5, 5, 5, 5]);
    let rep = family_cone_rep(&fp(4, 1, 1, 1));
    assert_eq!(rep.normals()[0].raw(), &[3, -1, 3, 3]);
}

#[test]
fn membership_of_the_all_ones_vector() {
    let ones = vec![1i64; 7];
    assert!(cone_membership(&family_cone_rep(&fp(7, 3, 2, 0)), &ones, true));
    assert_eq!(nu_vector(&fp(7, 3, 2, 0)).raw().iter().sum::<i64>(), 14);
    assert!(!cone_membership(&family_cone_rep(&fp(7, 4, 5, 0)), &ones, true));
    assert_eq!(nu_vector(&fp(7, 4, 5, 0)).raw().iter().sum::<i64>(), -14);
    assert!(cone_membership(&family_cone_rep(&fp(5, 2, 1, 0)), &[0; 5], false));
}

#[test]
fn extremal_rays_of_window_cones() {
    let rays = extremal_rays(&family_cone_rep(&fp(7, 3, 2, 0))).unwrap();
    assert_eq!(rays.len(), 16);
    let mut expected: Vec<Vec<i64>> = (3..7).map(|k| unit(7, k)).collect();
    for r in 0..3 {
        for s in 3..7 {
            let mut v = vec![0; 7];
            v[r] = 5;
            v[s] = 2;
            expected.push(v);
        }
    }
    expected.sort();
    assert_eq!(rays, expected);
    assert_eq!(extremal_rays(&ConeRep::orthant(4)).unwrap(), (0..4).rev().map(|k| unit(4, k)).collect::<Vec<_>>());
    assert_eq!(extremal_rays(&family_cone_rep(&fp(4, 2, 1, 0))).unwrap().len(), 6);
}

#[test]
fn ray_count_and_membership_up_to_eight() {
    for p in FamilyParams::grid(3..=8) {
        let rays = extremal_rays(&family_cone_rep(&p)).unwrap();
        assert_eq!(rays.len(), (p.i + 1) * (p.n - p.i), "{p:?}");
        if p.n <= 6 {
            let a = family_exponents(&p);
            for r in &rays {
                let hit = a.iter().any(|v| linalg::primitive(&v.to_i64()) == *r);
                assert!(hit, "{p:?} ray {r:?} not a multiple of an exponent");
            }
        }
    }
}

#[test]
fn irreducibility_and_its_failures() {
    let p = fp(7, 3, 2, 0);
    let a = family_exponents(&p);
    let rep = family_cone_rep(&p);
    assert!(irreducible_rep_check(&a, &rep).unwrap());
    // normals are [ν, e_1, ..., e_7]
    assert!(!irreducible_rep_check(&a, &rep.without(1)).unwrap());
    assert!(!irreducible_rep_check(&a, &rep.without(0)).unwrap());
    let flat: ExponentSet = vec![vec![1, 0, 0], vec![0, 1, 0]].into();
    assert!(irreducible_rep_check(&flat, &ConeRep::orthant(3)).is_err());
}

#[test]
fn dropping_a_coordinate_normal_exposes_a_negative_ray() {
    let rep = family_cone_rep(&fp(7, 3, 2, 0)).without(1);
    match extremal_rays(&rep) {
        Ok(rays) => assert!(rays.iter().any(|r| r.iter().any(|&x| x < 0))),
        Err(e) => assert_eq!(e, polybase_core::Error::NotPointed),
    }
}

#[test]
fn facet_enumeration_matches_the_family_rep() {
    for p in FamilyParams::grid(3..=6) {
        for t in [0, p.n - 1] {
            let q = fp(p.n, p.i, p.j, t);
            let a = family_exponents(&q);
            let found = cone_facets_bruteforce(&a).unwrap();
            assert!(found.same_normals(&family_cone_rep(&q)), "{q:?}");
            assert!(irreducible_rep_check(&a, &found).unwrap());
        }
    }
    for p in [fp(7, 3, 2, 0), fp(7, 4, 5, 0)] {
        let found = cone_facets_bruteforce(&family_exponents(&p)).unwrap();
        assert!(found.same_normals(&family_cone_rep(&p)));
    }
}

#[test]
fn facets_of_veronese_and_intersection() {
    let mut all = Vec::new();
    polybase_core::combinatorics::for_each_composition(4, 4, |c| all.push(ExponentVector::new(c.to_vec())));
    let veronese: ExponentSet = all.into_iter().collect();
    assert!(cone_facets_bruteforce(&veronese).unwrap().same_normals(&ConeRep::orthant(4)));

    let spec = IntersectionSpec::new(4, vec![(1, 0), (1, 1)]).unwrap();
    let found = cone_facets_bruteforce(&intersection_exponents(&spec)).unwrap();
    let mut normals = vec![nu_vector(&fp(4, 1, 2, 0)), nu_vector(&fp(4, 1, 2, 1))];
    normals.extend((0..4).map(|k| Hyperplane::unit(4, k)));
    assert!(found.same_normals(&ConeRep::new(4, normals)));
}

#[test]
fn determinant_identity() {
    assert_eq!(det_check(&fp(7, 3, 2, 0)).unwrap(), BigInt::from(7000));
    assert_eq!(det_check(&fp(3, 1, 1, 0)).unwrap(), BigInt::from(6));
    assert_eq!(det_check(&fp(4, 2, 1, 0)).unwrap(), BigInt::from(36));
    for p in FamilyParams::grid(3..=8) {
        let expected =
            BigInt::from(p.n) * BigInt::from(p.n - p.j).pow(p.i as u32) * BigInt::from(p.j).pow((p.n - p.i - 1) as u32);
        assert_eq!(det_check(&p).unwrap(), expected, "{p:?}");
    }
    assert!(det_check(&fp(4, 1, 1, 2)).is_err());
}

#[test]
fn lattice_membership() {
    let a = family_exponents(&fp(3, 1, 1, 0));
    let l = lattice_of(&a);
    assert!(l.contains(&[1, 1, 1]));
    assert!(!l.contains(&[1, 0, 0]));
    assert!(l.contains(&[0, 0, 0]));
    assert!(l.contains(&[4, -1, 0]));
    let e1: ExponentSet = vec![vec![1, 0]].into();
    let l = lattice_of(&e1);
    assert_eq!(l.rank(), 1);
    assert!(l.contains(&[5, 0]));
    assert!(!l.contains(&[0, 1]));
}

#[test]
fn family_lattices_are_the_modulus_sublattice() {
    // Z A = {z : n divides |z|} for every family, but it is computed, not assumed
    for p in FamilyParams::grid(3..=6) {
        let l = lattice_of(&family_exponents(&p));
        assert_eq!(l.rank(), p.n);
        let n = p.n as i64;
        let mut z = vec![0i64; p.n];
        z[0] = n;
        assert!(l.contains(&z));
        z[0] = n - 1;
        z[1] = 1;
        assert!(l.contains(&z));
        z[1] = 2;
        assert!(!l.contains(&z));
    }
}

#[test]
fn normal_semigroup_membership() {
    let p = fp(7, 3, 2, 0);
    let a = family_exponents(&p);
    let rep = family_cone_rep(&p);
    assert!(semigroup_membership_normal(&a, &rep, &[2; 7]));
    assert!(!semigroup_membership_normal(&a, &rep, &[1, 1, 1, 1, 1, 1, 2]));
    assert!(semigroup_membership_normal(&a, &rep, &[0; 7]));
    // inside the lattice but outside the cone: window sum too large
    assert!(!semigroup_membership_normal(&a, &rep, &[7, 7, 0, 0, 0, 0, 0]));
}

/// For β with `H_ν(β) = n(n-i-j-t)` and `|β| = sn`, the window sum is forced.
#[test]
fn window_sum_is_forced_by_the_level() {
    for p in FamilyParams::grid(3..=5) {
        let (n, i, j) = (p.n as i64, p.i as i64, p.j as i64);
        let nu = nu_vector(&p);
        for s in 1..=2i64 {
            polybase_core::combinatorics::for_each_composition((s * n) as u32, p.n, |beta| {
                let b: Vec<i64> = beta.iter().map(|&x| x as i64).collect();
                let h: i64 = nu.raw().iter().zip(&b).map(|(x, y)| x * y).sum();
                let head: i64 = b[..p.i].iter().sum();
                // H_ν(β) = n(|β| - j s) - n·head  rearranged via |β| = sn
                if (h - n * (n - i - j)) % n == 0 {
                    let t = (n - i - j) - h / n;
                    assert_eq!(head, (n - j) * (s - 1) + i + t, "{p:?} {beta:?}");
                }
            });
        }
    }
}
