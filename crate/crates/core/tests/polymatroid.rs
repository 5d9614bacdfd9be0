use polybase_core::polymatroid::*;
use polybase_core::{ExponentSet, ExponentVector};
use proptest::prelude::*;

fn example_rho() -> RankFunction {
    // values indexed by bitmask over {1,2,3}
    RankFunction::from_values(3, vec![0, 1, 2, 3, 2, 2, 4, 4]).unwrap()
}

fn example_points() -> ExponentSet {
    vec![
        vec![0, 0, 0],
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
        vec![1, 1, 0],
        vec![1, 0, 1],
        vec![0, 1, 1],
        vec![0, 2, 0],
        vec![0, 0, 2],
        vec![0, 1, 2],
        vec![0, 2, 1],
        vec![1, 1, 1],
        vec![1, 2, 0],
        vec![0, 2, 2],
        vec![1, 2, 1],
    ]
    .into()
}

fn path_presentation() -> Presentation {
    Presentation::from_lists(4, &[vec![1, 2], vec![2, 3], vec![3, 4]]).unwrap()
}

fn sets(lists: &[&[usize]]) -> Vec<Subset> {
    let mut out: Vec<Subset> = lists.iter().map(|l| subset_from(l)).collect();
    sort_subsets(&mut out);
    out
}

/// All `u` in the box `[0, bound]^n` satisfying every rank inequality.
fn points_by_box(rho: &RankFunction, bound: u32) -> ExponentSet {
    let n = rho.n();
    let mut out = Vec::new();
    let total = (bound + 1).pow(n as u32);
    for code in 0..total {
        let u: Vec<u32> = (0..n).map(|k| code / (bound + 1).pow(k as u32) % (bound + 1)).collect();
        let v = ExponentVector::new(u);
        if (1..1u64 << n).all(|f| v.masked_sum(f) <= rho.get(f)) {
            out.push(v);
        }
    }
    out.into_iter().collect()
}

#[test]
fn matroid_examples() {
    let u23 = sets(&[&[], &[1], &[2], &[3], &[1, 2], &[1, 3], &[2, 3]]);
    assert!(is_matroid(&u23).unwrap());
    assert!(is_matroid(&[0]).unwrap());
    assert!(!is_matroid(&[0, subset_from(&[1, 2])]).unwrap());
    assert!(is_matroid(&[]).is_err());
}

#[test]
fn exchange_examples() {
    let b: ExponentSet = vec![vec![1, 2, 1], vec![0, 2, 2]].into();
    assert!(bases_exchange_check(&b, true).unwrap());
    let one: ExponentSet = vec![vec![3, 0]].into();
    assert!(bases_exchange_check(&one, false).unwrap());
    let gap: ExponentSet = vec![vec![2, 0], vec![0, 2]].into();
    assert!(!bases_exchange_check(&gap, false).unwrap());
    let mixed: ExponentSet = vec![vec![2, 0], vec![0, 1]].into();
    assert!(bases_exchange_check(&mixed, false).is_err());
}

#[test]
fn discrete_polymatroid_examples() {
    assert!(is_discrete_polymatroid(&example_points()));
    assert!(augmentation_condition(&example_points()));
    assert!(is_discrete_polymatroid(&vec![vec![0, 0, 0]].into()));
    assert!(!is_discrete_polymatroid(&vec![vec![0, 0], vec![2, 0]].into()));
}

#[test]
fn transversal_base_examples() {
    let expected: ExponentSet = vec![
        vec![1, 1, 1, 0],
        vec![1, 1, 0, 1],
        vec![1, 0, 2, 0],
        vec![1, 0, 1, 1],
        vec![0, 2, 1, 0],
        vec![0, 2, 0, 1],
        vec![0, 1, 2, 0],
        vec![0, 1, 1, 1],
    ]
    .into();
    assert_eq!(transversal_bases(&path_presentation()), expected);
    let single = Presentation::from_lists(1, &[vec![1]]).unwrap();
    assert_eq!(transversal_bases(&single), vec![vec![1]].into());
    let double = Presentation::from_lists(2, &[vec![1, 2], vec![1, 2]]).unwrap();
    assert_eq!(transversal_bases(&double), vec![vec![2, 0], vec![1, 1], vec![0, 2]].into());
}

#[test]
fn transversal_rank_examples() {
    let pres = path_presentation();
    assert_eq!(transversal_rank(&pres, subset_from(&[2])), 2);
    assert_eq!(transversal_rank(&pres, 0), 0);
    assert_eq!(transversal_rank(&pres, full_set(4)), 3);
    let rho = rank_function_of(&PolymatroidPoints::subvector_closure(&transversal_bases(&pres)).unwrap());
    assert_eq!(rho.get(subset_from(&[2])), 2);
}

#[test]
fn example_points_and_ranks() {
    let p = polymatroid_points(&example_rho()).unwrap();
    assert_eq!(p.as_set(), &example_points());
    assert_eq!(p.as_set(), &points_by_box(&example_rho(), 4));
    let maxima: ExponentSet = vec![vec![1, 2, 1], vec![0, 2, 2]].into();
    assert_eq!(p.as_set().maximal_elements(), maxima);

    let rho = rank_function_of(&p);
    assert_eq!(rho, example_rho());
    assert_eq!(rho.get(subset_from(&[1])), 1);
    assert_eq!(rho.get(subset_from(&[2])), 2);
    assert_eq!(rho.get(subset_from(&[1, 3])), 2);
    assert_eq!(rho.get(subset_from(&[1, 2, 3])), 4);
    assert!(conv_lattice_check(&p));

    let zero = RankFunction::from_fn(2, |_| 0).unwrap();
    assert_eq!(polymatroid_points(&zero).unwrap().as_set(), &vec![vec![0, 0]].into());
    let line = RankFunction::from_values(1, vec![0, 2]).unwrap();
    assert_eq!(polymatroid_points(&line).unwrap().as_set(), &vec![vec![0], vec![1], vec![2]].into());
    let origin = PolymatroidPoints::from_set(vec![vec![0]].into()).unwrap();
    assert_eq!(rank_function_of(&origin).get(1), 0);
    assert!(conv_lattice_check(&origin));
}

#[test]
fn closed_and_inseparable_sets() {
    let rho = example_rho();
    assert_eq!(rho_closed_sets(&rho), sets(&[&[1], &[2], &[1, 2], &[1, 3]]));
    assert_eq!(rho_inseparable_sets(&rho), sets(&[&[1], &[2], &[3], &[1, 3]]));

    let modular = RankFunction::from_fn(3, |f| f.count_ones()).unwrap();
    let proper: Vec<Subset> = (1..7).collect::<Vec<_>>();
    let mut proper = proper;
    sort_subsets(&mut proper);
    assert_eq!(rho_closed_sets(&modular), proper);
    assert_eq!(rho_inseparable_sets(&modular), sets(&[&[1], &[2], &[3]]));

    let constant = RankFunction::from_fn(3, |f| if f == 0 { 0 } else { 2 }).unwrap();
    assert!(rho_closed_sets(&constant).is_empty());
}

#[test]
fn ehrhart_gorenstein_examples() {
    let simplex =
        |k: u32| polymatroid_points(&RankFunction::from_fn(3, |f| if f == 0 { 0 } else { k }).unwrap()).unwrap();
    assert_eq!(ehrhart_gorenstein_check(&simplex(4)).unwrap(), Some(1));
    assert_eq!(ehrhart_gorenstein_check(&simplex(3)).unwrap(), None);
    let square = PolymatroidPoints::subvector_closure(&vec![vec![1, 1]].into()).unwrap();
    assert_eq!(ehrhart_gorenstein_check(&square).unwrap(), Some(2));
    let missing_unit = PolymatroidPoints::from_set(vec![vec![0, 0], vec![1, 0]].into()).unwrap();
    assert!(ehrhart_gorenstein_check(&missing_unit).is_err());
}

#[test]
fn presentation_search_examples() {
    let mut tops = Vec::new();
    polybase_core::combinatorics::for_each_composition(3, 4, |u| {
        if u.iter().all(|&x| x <= 2) {
            tops.push(u.to_vec());
        }
    });
    let bases: ExponentSet = tops.into();
    assert_eq!(bases.len(), 16);
    assert!(find_transversal_presentation(&bases, 3).unwrap().is_none());

    let target = transversal_bases(&path_presentation());
    let found = find_transversal_presentation(&target, 3).unwrap().unwrap();
    assert_eq!(transversal_bases(&found), target);

    let units: ExponentSet = vec![vec![1, 0], vec![0, 1]].into();
    let found = find_transversal_presentation(&units, 1).unwrap().unwrap();
    assert_eq!(found.sets(), &[subset_from(&[1, 2])]);

    let wide: ExponentSet = vec![vec![1, 0, 0, 0, 0, 0]].into();
    assert!(find_transversal_presentation(&wide, 1).is_err());
}

#[test]
fn presentation_cycles() {
    assert!(!has_presentation_cycles(&path_presentation()));
    let triangle = Presentation::from_lists(3, &[vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap();
    assert!(has_presentation_cycles(&triangle));
    let single = Presentation::from_lists(3, &[vec![1, 2, 3]]).unwrap();
    assert!(!has_presentation_cycles(&single));
}

#[test]
fn invalid_presentations_are_rejected() {
    assert!(Presentation::from_lists(3, &[vec![]]).is_err());
    assert!(Presentation::from_lists(3, &[vec![4]]).is_err());
    assert!(Presentation::from_lists(0, &[vec![1]]).is_err());
}

#[test]
fn non_submodular_functions_fail_validation() {
    let bad = RankFunction::from_values(2, vec![0, 1, 1, 3]).unwrap();
    assert!(!bad.is_nondecreasing_submodular());
    assert!(bad.validate().is_err());
    let dip = RankFunction::from_values(2, vec![0, 2, 1, 1]).unwrap();
    assert!(!dip.is_nondecreasing_submodular());
    assert!(example_rho().validate().is_ok());
}

fn presentation_strategy() -> impl Strategy<Value = Presentation> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(1u64..(1 << n), 1..=6).prop_map(move |sets| Presentation::new(n, sets).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn transversal_rank_functions_are_polymatroidal(pres in presentation_strategy()) {
        let rho = RankFunction::of_presentation(&pres).unwrap();
        prop_assert!(rho.is_nondecreasing_submodular());
        let bases = transversal_bases(&pres);
        prop_assert!(bases_exchange_check(&bases, true).unwrap());
        // the rank of X is attained by some base
        for x in 0..1u64 << pres.n() {
            let best = bases.iter().map(|b| b.masked_sum(x)).max().unwrap();
            prop_assert_eq!(best, transversal_rank(&pres, x));
        }
    }

    #[test]
    fn points_of_a_rank_function_round_trip(pres in presentation_strategy()) {
        prop_assume!(pres.n() <= 5 && pres.m() <= 5);
        let rho = RankFunction::of_presentation(&pres).unwrap();
        let p = polymatroid_points(&rho).unwrap();
        prop_assert!(is_discrete_polymatroid(p.as_set()));
        prop_assert!(augmentation_condition(p.as_set()));
        prop_assert!(conv_lattice_check(&p));
        prop_assert_eq!(rank_function_of(&p), rho.clone());
        prop_assert_eq!(p.as_set(), &points_by_box(&rho, pres.m() as u32));
        let maxima = p.as_set().maximal_elements();
        prop_assert_eq!(maxima, transversal_bases(&pres));
    }
}
