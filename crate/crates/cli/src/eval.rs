//! Evaluation of a single job into a result record.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use polybase_core::canonical::{
    canonical_generators_closed, canonical_generators_exact, family_generators_bruteforce, ring_invariants,
    type_formula, CanonicalGenerators,
};
use polybase_core::combinatorics::{eulerian_row, numerator_from_hilbert, trim_trailing_zeros, worpitzky_check};
use polybase_core::cone::{
    cone_facets_bruteforce, det_check, det_closed_form, extremal_rays, family_cone_rep, family_exponents,
    irreducible_rep_check, FamilyParams,
};
use polybase_core::hilbert::{
    chain_series, ehrhart_bruteforce, ehrhart_formula, ehrhart_ring_hvector, free_series, h_vector, hadamard,
    hibi_count_formula, hibi_relations, open_problem_report, segre_h_vector, series_coefficient, shape_checks,
    EhrhartConstraints, HilbertSeries, OpenProblemInput, Verdict,
};
use polybase_core::intersect::{
    bruteforce_is_base_ring, classify, construct_presentation, intersection_a_invariant,
    intersection_canonical_generators, intersection_exponents, IntersectionSpec,
};
use polybase_core::polymatroid::{ehrhart_gorenstein_check, transversal_bases, PolymatroidPoints};
use polybase_core::{Error, ExponentSet, ExponentVector};
use serde_json::json;

use crate::checks;
use crate::error::{CliError, CliResult};
use crate::record::{big_str, big_strs, vectors_json, Input, PresentationJson, ResultRecord};

/// Largest `m` for which the Hibi relations are enumerated explicitly.
const HIBI_ENUMERATION_LIMIT: u32 = 8;
/// Largest `n` searched exhaustively for presentations.
const SEARCH_LIMIT: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Invariants,
    Hvector,
    Cone,
    Canonical,
    IntersectClassify,
    IntersectConstruct,
    IntersectSearch,
    Segre,
    EhrhartRing,
    VerifyType,
    VerifyIntersection,
    Chapter1,
    OpenProblem,
}

impl Command {
    pub const ALL: [Command; 13] = [
        Command::Invariants,
        Command::Hvector,
        Command::Cone,
        Command::Canonical,
        Command::IntersectClassify,
        Command::IntersectConstruct,
        Command::IntersectSearch,
        Command::Segre,
        Command::EhrhartRing,
        Command::VerifyType,
        Command::VerifyIntersection,
        Command::Chapter1,
        Command::OpenProblem,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Invariants => "invariants",
            Command::Hvector => "hvector",
            Command::Cone => "cone",
            Command::Canonical => "canonical",
            Command::IntersectClassify => "intersect-classify",
            Command::IntersectConstruct => "intersect-construct",
            Command::IntersectSearch => "intersect-search",
            Command::Segre => "segre",
            Command::EhrhartRing => "ehrhart-ring",
            Command::VerifyType => "verify-type",
            Command::VerifyIntersection => "verify-intersection",
            Command::Chapter1 => "verify-chapter1",
            Command::OpenProblem => "openproblem",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Input(format!("unknown command {s:?}")))
    }
}

/// One unit of work: a command applied to one input.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Job {
    pub command: Command,
    pub input: Input,
    pub cutoff: Option<u32>,
    pub bruteforce: bool,
}

impl Job {
    pub fn new(command: Command, input: Input) -> Self {
        Self { command, input, cutoff: None, bruteforce: false }
    }

    pub fn with_cutoff(mut self, cutoff: Option<u32>) -> Self {
        self.cutoff = cutoff;
        self
    }

    pub fn with_bruteforce(mut self, bruteforce: bool) -> Self {
        self.bruteforce = bruteforce;
        self
    }

    /// The job that produced `record`.
    pub fn of_record(record: &ResultRecord) -> CliResult<Self> {
        Ok(Self {
            command: record.command.parse()?,
            input: record.input.clone(),
            cutoff: record.cutoff,
            bruteforce: record.bruteforce,
        })
    }

    /// Rejects inputs the command cannot accept, before any work is done.
    pub fn validate(&self) -> CliResult<()> {
        match (&self.command, &self.input) {
            (Command::Invariants | Command::Hvector | Command::Cone | Command::VerifyType, Input::Family { .. })
            | (Command::Canonical | Command::OpenProblem, Input::Family { .. }) => family_of(&self.input).map(|_| ()),
            (Command::Canonical | Command::IntersectSearch, Input::Intersection { .. }) => {
                spec_of(&self.input).map(|_| ())
            }
            (
                Command::IntersectClassify | Command::IntersectConstruct | Command::VerifyIntersection,
                Input::Classification { n, i1, t2, i2 },
            ) => IntersectionSpec::new(*n, vec![(*i1, 0), (*i2, *t2)]).map(|_| ()).map_err(Into::into),
            (Command::OpenProblem, Input::Presentation { presentation, .. }) => {
                presentation.to_presentation().map(|_| ())
            }
            (Command::Segre, Input::Chain { m }) if *m >= 1 => Ok(()),
            (Command::EhrhartRing, Input::Polymatroid { .. }) => points_of(&self.input).map(|_| ()),
            (Command::Chapter1, Input::Check { check, .. }) => checks::validate(check),
            (command, input) => Err(CliError::Input(format!("{command} does not accept {input:?}"))),
        }
    }
}

pub fn family_of(input: &Input) -> CliResult<FamilyParams> {
    match *input {
        Input::Family { n, i, j, t } => Ok(FamilyParams::new(n, i, j, t)?),
        _ => Err(CliError::Input("expected a family input".into())),
    }
}

fn spec_of(input: &Input) -> CliResult<IntersectionSpec> {
    match input {
        Input::Intersection { n, pairs } => Ok(IntersectionSpec::new(*n, pairs.clone())?),
        Input::Classification { n, i1, t2, i2 } => Ok(IntersectionSpec::new(*n, vec![(*i1, 0), (*i2, *t2)])?),
        _ => Err(CliError::Input("expected an intersection input".into())),
    }
}

fn points_of(input: &Input) -> CliResult<PolymatroidPoints> {
    match input {
        Input::Polymatroid { n, tops } => {
            if tops.is_empty() || tops.iter().any(|v| v.len() != *n) {
                return Err(CliError::Input(format!("every top vector must have {n} coordinates")));
            }
            let set: ExponentSet = tops.clone().into();
            Ok(PolymatroidPoints::subvector_closure(&set)?)
        }
        _ => Err(CliError::Input("expected a polymatroid input".into())),
    }
}

/// Runs a job. Cutoff exhaustion yields an inconclusive record, every
/// other library failure is returned.
pub fn evaluate(job: &Job) -> CliResult<ResultRecord> {
    job.validate()?;
    let mut rec = ResultRecord::new(job.command.name(), job.input.clone());
    rec.cutoff = job.cutoff;
    rec.bruteforce = job.bruteforce;
    let outcome = match job.command {
        Command::Invariants => invariants(job, &mut rec),
        Command::Hvector => hvector(job, &mut rec),
        Command::Cone => cone(job, &mut rec),
        Command::Canonical => canonical(job, &mut rec),
        Command::IntersectClassify => intersect_classify(job, &mut rec),
        Command::IntersectConstruct => intersect_construct(job, &mut rec),
        Command::IntersectSearch => intersect_search(job, &mut rec),
        Command::Segre => segre(job, &mut rec),
        Command::EhrhartRing => ehrhart_ring(job, &mut rec),
        Command::VerifyType => verify_type(job, &mut rec),
        Command::VerifyIntersection => verify_intersection(job, &mut rec),
        Command::Chapter1 => checks::run(job, &mut rec),
        Command::OpenProblem => openproblem(job, &mut rec),
    };
    match outcome {
        Ok(()) => Ok(rec),
        Err(CliError::Core(Error::Inconclusive { cutoff })) => {
            rec.mark_inconclusive();
            rec.set_detail("inconclusive_cutoff", json!(cutoff));
            Ok(rec)
        }
        Err(e) => Err(e),
    }
}

fn set_series(rec: &mut ResultRecord, s: &HilbertSeries) {
    rec.invariants.h_vector = Some(big_strs(s.numerator()));
    rec.invariants.denom_power = Some(s.denom_power());
}

/// `1 + h_{n-2} - h_1` for `r = 1`, `h_{n-r}` otherwise.
fn identity_rhs(s: &HilbertSeries, n: usize, r: usize) -> BigInt {
    if r == 1 {
        BigInt::one() + s.h(n - 2) - s.h(1)
    } else {
        n.checked_sub(r).map(|k| s.h(k)).unwrap_or_default()
    }
}

fn set_generators(rec: &mut ResultRecord, gens: &CanonicalGenerators) {
    rec.set_detail("generators", vectors_json(&gens.generators));
    rec.set_detail("generator_degrees", json!(gens.degrees));
    if !gens.inconclusive {
        if let Some(r) = gens.min_degree() {
            rec.invariants.ring_type = Some(gens.len().to_string());
            rec.invariants.r = Some(r as usize);
            rec.invariants.a_invariant = Some(-(r as i64));
            rec.invariants.gorenstein = Some(gens.len() == 1);
        }
    }
}

fn invariants(job: &Job, rec: &mut ResultRecord) -> CliResult<()> {
    let p = family_of(&job.input)?;
    let inv = ring_invariants(&p);
    let series = h_vector(&p)?;
    set_series(rec, &series);
    rec.invariants.ring_type = Some(big_str(&inv.ring_type));
    rec.invariants.published_type = Some(big_str(&type_formula(&p)));
    rec.invariants.a_invariant = Some(inv.a_invariant);
    rec.invariants.gorenstein = Some(inv.gorenstein);
    rec.invariants.r = Some(inv.r);
    rec.agree("a_invariant_from_series", series.degree() - p.n as i64 == inv.a_invariant);
    let rhs = identity_rhs(&series, p.n, inv.r);
    rec.set_detail("identity", json!({ "rhs": big_str(&rhs), "holds": rhs == inv.ring_type }));
    Ok(())
}

fn hvector(job: &Job, rec: &mut ResultRecord) -> CliResult<()> {
    let p = family_of(&job.input)?;
    let series = h_vector(&p)?;
    set_series(rec, &series);
    let round_trip = (0..=p.n as u32).all(|t| series_coefficient(&series, t as usize) == ehrhart_formula(&p, t));
    rec.agree("series_round_trip", round_trip);
    if job.bruteforce {
        let c = EhrhartConstraints::family(&p);
        let brute = (0..=3).all(|t| ehrhart_bruteforce(&c, p.n as u32, t) == ehrhart_formula(&p, t));
        rec.agree("ehrhart_bruteforce", brute);
    }
    Ok(())
}

fn cone(job: &Job, rec: &mut ResultRecord) -> CliResult<()> {
    let p = family_of(&job.input)?;
    let rep = family_cone_rep(&p);
    let a = family_exponents(&p);
    let rays = extremal_rays(&rep)?;
    let det = det_check(&p)?;
    let normals: Vec<Vec<i64>> = rep.normals().iter().map(|h| h.raw().to_vec()).collect();
    rec.set_detail("normals", json!(normals));
    rec.set_detail("extremal_rays", json!(rays.len()));
    rec.set_detail("det", json!(big_str(&det)));
    rec.agree("irreducible", irreducible_rep_check(&a, &rep)?);
    rec.agree("ray_count", rays.len() == (p.i + 1) * (p.n - p.i));
    rec.agree("det_closed_form", det == det_closed_form(&p));
    if job.bruteforce {
        rec.agree("facets_bruteforce", cone_facets_bruteforce(&a)?.same_normals(&rep));
    }
    Ok(())
}

fn canonical(job: &Job, rec: &mut ResultRecord) -> CliResult<()> {
    if let Input::Family { .. } = job.input {
        let p = family_of(&job.input)?;
        let brute = family_generators_bruteforce(&p, job.cutoff)?;
        set_generators(rec, &brute);
        if brute.inconclusive {
            rec.mark_inconclusive();
            return Ok(());
        }
        rec.agree("exact_closed_form", canonical_generators_exact(&p).generators == brute.generators);
        rec.agree("published_closed_form", canonical_generators_closed(&p).generators == brute.generators);
        return Ok(());
    }
    let spec = spec_of(&job.input)?;
    let gens = intersection_canonical_generators(&spec, job.cutoff)?;
    set_generators(rec, &gens);
    if gens.inconclusive {
        rec.mark_inconclusive();
        return Ok(());
    }
    agree_intersection_gorenstein(rec, &spec, &gens);
    Ok(())
}

fn agree_intersection_gorenstein(rec: &mut ResultRecord, spec: &IntersectionSpec, gens: &CanonicalGenerators) {
    let ones: ExponentSet = std::iter::once(ExponentVector::ones(spec.n())).collect();
    rec.agree("gorenstein", gens.generators == ones);
    rec.agree("a_invariant", gens.min_degree().map(|d| -(d as i64)) == Some(intersection_a_invariant(spec)));
}

fn cell_of(input: &Input) -> CliResult<(usize, usize, usize, usize)> {
    match *input {
        Input::Classification { n, i1, t2, i2 } => Ok((n, i1, t2, i2)),
        _ => Err(CliError::Input("expected a classification cell".into())),
    }
}

fn classify_into(rec: &mut ResultRecord, input: &Input) -> CliResult<bool> {
    let (n, i1, t2, i2) = cell_of(input)?;
    let verdict = classify(n, i1, t2, i2)?;
    rec.verdict = Some(if verdict.is_base_ring { "base-ring" } else { "not-base-ring" }.into());
    if let Some(c) = verdict.condition {
        rec.set_detail("condition", json!(c.label().to_string()));
    }
    if let Some((kind, pres)) = &verdict.construction {
        rec.set_detail("construction", json!(kind.to_string()));
        rec.set_detail("presentation", json!(PresentationJson::from(pres)));
    }
    if n <= SEARCH_LIMIT {
        let target = intersection_exponents(&spec_of(input)?);
        let found = bruteforce_is_base_ring(n, &target)?;
        rec.agree("bruteforce", found.is_some() == verdict.is_base_ring);
    }
    Ok(verdict.is_base_ring)
}

fn intersect_classify(job: &Job, rec: &mut ResultRecord) -> CliResult<()> {
    classify_into(rec, &job.input).map(|_| ())
}

fn intersect_construct(job: &Job, rec: &mut ResultRecord) -> CliResult<()> {
    let (n, i1, t2, i2) = cell_of(&job.input)?;
    let (kind, pres) = construct_presentation(n, i1, t2, i2)?;
    rec.set_detail("construction", json!(kind.to_string()));
    rec.set_detail("presentation", json!(PresentationJson::from(&pres)));
    let target = intersection_exponents(&spec_of(&job.input)?);
    rec.agree("reproduces_intersection", transversal_bases(&pres) == target);
    Ok(())
}

fn intersect_search(job: &Job, rec: &mut ResultRecord) -> CliResult<()> {
    let spec = spec_of(&job.input)?;
    let found = bruteforce_is_base_ring(spec.n(), &intersection_exponents(&spec))?;
    rec.verdict = Some(if found.is_some() { "base-ring" } else { "not-base-ring" }.into());
    if let Some(pres) = &found {
        rec.set_detail("presentation", json!(PresentationJson::from(pres)));
    }
    Ok(())
}

fn verify_intersection(job: &Job, rec: &mut ResultRecord) -> CliResult<()> {
    classify_into(rec, &job.input)?;
    let spec = spec_of(&job.input)?;
    let gens = intersection_canonical_generators(&spec, job.cutoff)?;
    if gens.inconclusive {
        rec.mark_inconclusive();
    } else {
        agree_intersection_gorenstein(rec, &spec, &gens);
    }
    Ok(())
}

fn segre(job: &Job, rec: &mut ResultRecord) -> CliResult<()> {
    let Input::Chain { m } = job.input else {
        return Err(CliError::Input("expected a chain input".into()));
    };
    let h = segre_h_vector(m)?.0;
    rec.invariants.h_vector = Some(big_strs(&h));
    rec.invariants.denom_power = Some(m + 1);

    let values: Vec<BigInt> = (0..=m + 1).map(|k| BigInt::from(k + 1).pow(m)).collect();
    let mut numerator = numerator_from_hilbert(&values, m + 1);
    trim_trailing_zeros(&mut numerator);
    rec.agree("power_numerator", numerator == h);
    rec.agree("eulerian_row", eulerian_row(m)? == h);
    rec.agree("worpitzky", (1..=10).all(|k| worpitzky_check(m, k)));
    let shape = shape_checks(&h);
    rec.agree("symmetric", shape.symmetric);
    rec.agree("unimodal", shape.unimodal);
    rec.agree("log_concave", shape.log_concave);
    let order = 3 * m as usize + 6;
    let step = hadamard(&chain_series(m)?, &free_series(2), order)?;
    rec.agree("hadamard_step", step == chain_series(m + 1)?);
    if m <= HIBI_ENUMERATION_LIMIT {
        rec.agree("hibi_count", BigInt::from(hibi_relations(m).len()) == hibi_count_formula(m));
    }
    Ok(())
}

fn ehrhart_ring(job: &Job, rec: &mut ResultRecord) -> CliResult<()> {
    let points = points_of(&job.input)?;
    let series = ehrhart_ring_hvector(&points)?;
    set_series(rec, &series);
    let delta = ehrhart_gorenstein_check(&points)?;
    rec.invariants.gorenstein = Some(delta.is_some());
    if let Some(d) = delta {
        rec.set_detail("delta", json!(d));
    }
    rec.agree("symmetric_iff_gorenstein", shape_checks(series.numerator()).symmetric == delta.is_some());
    Ok(())
}

fn verify_type(job: &Job, rec: &mut ResultRecord) -> CliResult<()> {
    let p = family_of(&job.input)?;
    let brute = family_generators_bruteforce(&p, job.cutoff)?;
    set_generators(rec, &brute);
    let published = type_formula(&p);
    rec.invariants.published_type = Some(big_str(&published));
    if brute.inconclusive {
        rec.mark_inconclusive();
        return Ok(());
    }
    let count = BigInt::from(brute.len());
    rec.agree("exact_closed_form", canonical_generators_exact(&p).generators == brute.generators);
    rec.agree("published_type", published == count);
    rec.agree("published_closed_form", canonical_generators_closed(&p).generators == brute.generators);
    rec.agree("gorenstein_line", (brute.len() == 1) == (p.i + p.j + 1 == p.n));
    Ok(())
}

fn openproblem(job: &Job, rec: &mut ResultRecord) -> CliResult<()> {
    let input = match &job.input {
        Input::Family { .. } => OpenProblemInput::Family(family_of(&job.input)?),
        Input::Presentation { presentation, .. } => OpenProblemInput::Presentation(presentation.to_presentation()?),
        other => return Err(CliError::Input(format!("openproblem does not accept {other:?}"))),
    };
    let report = open_problem_report(&input, job.cutoff)?;
    if let Some(s) = &report.series {
        set_series(rec, s);
    }
    rec.invariants.ring_type = report.ring_type.as_ref().map(big_str);
    rec.invariants.a_invariant = report.a_invariant;
    rec.invariants.r = report.r;
    rec.invariants.gorenstein = report.ring_type.as_ref().map(|t| t.is_one());
    if let Some(rhs) = &report.predicted {
        rec.set_detail("rhs", json!(big_str(rhs)));
    }
    rec.verdict = Some(match &report.verdict {
        Verdict::Holds => "holds".into(),
        Verdict::Fails => "fails".into(),
        Verdict::Inconclusive { cutoff } => {
            rec.mark_inconclusive();
            rec.set_detail("inconclusive_cutoff", json!(cutoff));
            "inconclusive".into()
        }
        Verdict::NotApplicable(reason) => {
            rec.set_detail("reason", json!(reason));
            "not-applicable".into()
        }
    });
    Ok(())
}
