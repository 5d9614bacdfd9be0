//! Fixed checks of the polymatroid property suite.

use num_bigint::BigInt;
use polybase_core::combinatorics::for_each_composition;
use polybase_core::hilbert::ehrhart_ring_hvector;
use polybase_core::polymatroid::{
    bases_exchange_check, ehrhart_gorenstein_check, find_transversal_presentation, polymatroid_points, rho_closed_sets,
    rho_inseparable_sets, sort_subsets, subset_from, transversal_bases, transversal_rank, RankFunction, Subset,
};
use polybase_core::ExponentSet;
use rand::Rng;
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::eval::Job;
use crate::record::{big_strs, Input, ResultRecord};
use crate::sampling::{random_presentation, rng};

pub const CHECKS: [&str; 4] =
    ["rank-closed-sets", "non-transversal", "ehrhart-ring-simplices", "random-rank-functions"];
const RANDOM_SAMPLES: usize = 200;

pub fn validate(check: &str) -> CliResult<()> {
    if CHECKS.contains(&check) {
        Ok(())
    } else {
        Err(CliError::Input(format!("unknown check {check:?}")))
    }
}

pub fn run(job: &Job, rec: &mut ResultRecord) -> CliResult<()> {
    let Input::Check { check, seed, .. } = &job.input else {
        return Err(CliError::Input("expected a named check".into()));
    };
    match check.as_str() {
        "rank-closed-sets" => rank_closed_sets(rec),
        "non-transversal" => non_transversal(rec),
        "ehrhart-ring-simplices" => ehrhart_ring_simplices(rec),
        "random-rank-functions" => random_rank_functions(rec, seed.unwrap_or(0)),
        other => Err(CliError::Input(format!("unknown check {other:?}"))),
    }
}

fn subsets(lists: &[&[usize]]) -> Vec<Subset> {
    let mut out: Vec<Subset> = lists.iter().map(|l| subset_from(l)).collect();
    sort_subsets(&mut out);
    out
}

fn rank_closed_sets(rec: &mut ResultRecord) -> CliResult<()> {
    let rho = RankFunction::from_values(3, vec![0, 1, 2, 3, 2, 2, 4, 4])?;
    let points = polymatroid_points(&rho)?;
    rec.agree("point_count", points.as_set().len() == 15);
    rec.agree("closed_sets", rho_closed_sets(&rho) == subsets(&[&[1], &[2], &[1, 2], &[1, 3]]));
    rec.agree("inseparable_sets", rho_inseparable_sets(&rho) == subsets(&[&[1], &[2], &[3], &[1, 3]]));
    Ok(())
}

fn non_transversal(rec: &mut ResultRecord) -> CliResult<()> {
    let mut tops = Vec::new();
    for_each_composition(3, 4, |u| {
        if u.iter().all(|&x| x <= 2) {
            tops.push(u.to_vec());
        }
    });
    let bases: ExponentSet = tops.into();
    rec.agree("base_count", bases.len() == 16);
    rec.agree("exchange", bases_exchange_check(&bases, true)?);
    rec.agree("no_presentation", find_transversal_presentation(&bases, 3)?.is_none());
    Ok(())
}

fn ehrhart_ring_simplices(rec: &mut ResultRecord) -> CliResult<()> {
    let expected = [(3, vec![1, 16, 10], false), (4, vec![1, 31, 31, 1], true)];
    for (k, h, gorenstein) in expected {
        let rho = RankFunction::from_fn(3, |s| if s == 0 { 0 } else { k })?;
        let points = polymatroid_points(&rho)?;
        let series = ehrhart_ring_hvector(&points)?;
        let h: Vec<BigInt> = h.into_iter().map(BigInt::from).collect();
        rec.set_detail(&format!("simplex_{k}"), json!(big_strs(series.numerator())));
        rec.agree(&format!("simplex_{k}_h_vector"), series.numerator() == h.as_slice() && series.denom_power() == 4);
        rec.agree(&format!("simplex_{k}_gorenstein"), ehrhart_gorenstein_check(&points)?.is_some() == gorenstein);
    }
    Ok(())
}

fn random_rank_functions(rec: &mut ResultRecord, seed: u64) -> CliResult<()> {
    let mut rng = rng(seed);
    let (mut submodular, mut exchange, mut attained) = (true, true, true);
    for _ in 0..RANDOM_SAMPLES {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(1..=6);
        let pres = random_presentation(&mut rng, n, m)?;
        submodular &= RankFunction::of_presentation(&pres)?.is_nondecreasing_submodular();
        let bases = transversal_bases(&pres);
        exchange &= bases_exchange_check(&bases, true)?;
        attained &=
            (0..1u64 << n).all(|x| bases.iter().map(|b| b.masked_sum(x)).max() == Some(transversal_rank(&pres, x)));
    }
    rec.set_detail("samples", json!(RANDOM_SAMPLES));
    rec.agree("nondecreasing_submodular", submodular);
    rec.agree("symmetric_exchange", exchange);
    rec.agree("rank_attained_by_bases", attained);
    Ok(())
}
