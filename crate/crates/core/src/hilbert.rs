//! Hilbert functions, h-vectors and series arithmetic.
//!
//! A [`HilbertSeries`] is `numerator(t) / (1 - t)^d`. Products and
//! re-expressions always pass through truncated expansions and
//! [`numerator_from_hilbert`], so degree bounds are checked rather than
//! assumed.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::canonical::{canonical_generators_bruteforce, default_family_cutoff, CanonicalGenerators};
use crate::combinatorics::{
    binomial, eulerian_row, factorial, for_each_composition, numerator_from_hilbert, trim_trailing_zeros, IntSequence,
};
use crate::cone::{cone_facets_bruteforce, family_cone_rep, family_exponents, linalg, ConeRep, FamilyParams};
use crate::exponent::ExponentVector;
use crate::polymatroid::{
    for_each_point_under, rank_function_of, transversal_bases, PolymatroidPoints, Presentation, RankFunction,
};
use crate::{Error, Result};

/// `numerator(t) / (1 - t)^denom_power` with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: IntSequence,
    denom_power: u32,
}

impl HilbertSeries {
    pub fn new(mut numerator: IntSequence, denom_power: u32) -> Self {
        trim_trailing_zeros(&mut numerator);
        Self { numerator, denom_power }
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn denom_power(&self) -> u32 {
        self.denom_power
    }

    /// Degree of the numerator; `-1` for the zero series.
    pub fn degree(&self) -> i64 {
        self.numerator.len() as i64 - 1
    }

    /// `deg(numerator) - d + 1`.
    pub fn regularity_index(&self) -> i64 {
        self.degree() - self.denom_power as i64 + 1
    }

    /// Numerator coefficient `h_k`, zero past the end.
    pub fn h(&self, k: usize) -> BigInt {
        self.numerator.get(k).cloned().unwrap_or_default()
    }

    /// Expansion coefficients `0..=order`.
    pub fn expand(&self, order: usize) -> IntSequence {
        (0..=order).map(|k| series_coefficient(self, k)).collect()
    }
}

/// Coefficient vector of an h-polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HVector(pub IntSequence);

/// Coefficient of `t^k` in `numerator(t) / (1 - t)^d`.
pub fn series_coefficient(s: &HilbertSeries, k: usize) -> BigInt {
    let d = s.denom_power as i64;
    s.numerator.iter().enumerate().take(k + 1).map(|(j, h)| h * binomial(d - 1 + (k - j) as i64, (k - j) as i64)).sum()
}

/// Closed-form Hilbert function of the family ring.
pub fn ehrhart_formula(p: &FamilyParams, t: u32) -> BigInt {
    let (n, i, j) = (p.n as i64, p.i as i64, p.j as i64);
    let t = t as i64;
    (0..=(n - j) * t).map(|k| binomial(k + i - 1, k) * binomial(n * t - k + n - i - 1, n * t - k)).sum()
}

/// Linear constraints whose dilations are counted by [`ehrhart_bruteforce`].
#[derive(Debug, Clone)]
pub enum EhrhartConstraints {
    /// `Σ_{k in mask} x_k <= bound` per unit of dilation.
    Window { n: usize, mask: u64, bound: u32 },
    /// `x(F) <= ρ(F)` per unit of dilation, for every `F`.
    Rank(RankFunction),
}

impl EhrhartConstraints {
    pub fn family(p: &FamilyParams) -> Self {
        Self::Window { n: p.n, mask: p.window_mask(), bound: (p.n - p.j) as u32 }
    }
}

/// Counts `x >= 0` with `|x| = t * rank` inside the `t`-th dilation.
pub fn ehrhart_bruteforce(constraints: &EhrhartConstraints, rank: u32, t: u32) -> BigInt {
    let mut count: u64 = 0;
    match constraints {
        EhrhartConstraints::Window { n, mask, bound } => {
            for_each_composition(t * rank, *n, |x| {
                let s: u32 = (0..*n).filter(|k| mask >> k & 1 == 1).map(|k| x[k]).sum();
                if s <= bound * t {
                    count += 1;
                }
            });
        }
        EhrhartConstraints::Rank(rho) => {
            for_each_point_under(rho, t, Some(t * rank), |_| count += 1);
        }
    }
    BigInt::from(count)
}

/// Turns Hilbert values `h(0..)` into a series over `(1 - t)^d`, requiring
/// the numerator to vanish past `max_degree`.
fn series_from_values(values: &[BigInt], d: u32, max_degree: usize) -> Result<HilbertSeries> {
    let mut num = numerator_from_hilbert(values, d);
    if let Some((k, _)) = num.iter().enumerate().skip(max_degree + 1).find(|(_, h)| !h.is_zero()) {
        return Err(Error::InvariantViolation(format!(
            "numerator coefficient {k} is nonzero past degree {max_degree}"
        )));
    }
    num.truncate(max_degree + 1);
    Ok(HilbertSeries::new(num, d))
}

/// Family Hilbert series, numerator of degree `n - r` over `(1 - t)^n`.
pub fn h_vector(p: &FamilyParams) -> Result<HilbertSeries> {
    let values: Vec<BigInt> = (0..=p.n as u32 + 1).map(|t| ehrhart_formula(p, t)).collect();
    let s = series_from_values(&values, p.n as u32, p.n - p.r())?;
    if s.degree() != (p.n - p.r()) as i64 {
        return Err(Error::InvariantViolation(format!(
            "numerator degree {} differs from n - r = {}",
            s.degree(),
            p.n - p.r()
        )));
    }
    Ok(s)
}

/// Hilbert series of the Ehrhart ring of a polymatroid over `(1 - t)^(n+1)`.
pub fn ehrhart_ring_hvector(points: &PolymatroidPoints) -> Result<HilbertSeries> {
    let rho = rank_function_of(points);
    let n = points.n();
    let values: Vec<BigInt> = (0..=n as u32 + 2)
        .map(|k| {
            let mut c: u64 = 0;
            for_each_point_under(&rho, k, None, |_| c += 1);
            BigInt::from(c)
        })
        .collect();
    series_from_values(&values, n as u32 + 1, n)
}

/// Coefficientwise product, re-expressed over `(1 - t)^(d_a + d_b - 1)`.
pub fn hadamard(a: &HilbertSeries, b: &HilbertSeries, order: usize) -> Result<HilbertSeries> {
    let d = a.denom_power + b.denom_power;
    if d == 0 {
        return Err(Error::Parameter("hadamard needs a positive denominator power".into()));
    }
    let d = d - 1;
    let bound = (a.regularity_index().max(b.regularity_index()) + d as i64 - 1).max(0) as usize;
    if order < bound {
        return Err(Error::Parameter(format!("order {order} is below the stabilization bound {bound}")));
    }
    let values: Vec<BigInt> = a.expand(order).into_iter().zip(b.expand(order)).map(|(x, y)| x * y).collect();
    series_from_values(&values, d, bound)
}

/// `[A(m,1), ..., A(m,m)]`, the h-vector of the product of `m` two-element
/// chains.
pub fn segre_h_vector(m: u32) -> Result<HVector> {
    Ok(HVector(eulerian_row(m)?))
}

/// `Σ A(m,k+1) t^k / (1 - t)^(m+1)`.
pub fn chain_series(m: u32) -> Result<HilbertSeries> {
    Ok(HilbertSeries::new(eulerian_row(m)?, m + 1))
}

/// `1 / (1 - t)^d`.
pub fn free_series(d: u32) -> HilbertSeries {
    HilbertSeries::new(vec![BigInt::one()], d)
}

/// Applies `(1/(l-1)!) d^{l-1}/dt^{l-1} (t^{l-1} ·)` to `Σ C(i+l-1,i)^m t^i`
/// and compares with the exponent `m + 1`, up to `order`.
pub fn derivative_recurrence_check(m: u32, l: u32, order: usize) -> bool {
    if l < 2 {
        return false;
    }
    let shift = (l - 1) as usize;
    let coeff = |i: usize, e: u32| binomial(i as i64 + shift as i64, i as i64).pow(e);
    let scale = factorial(l - 1);
    (0..=order).all(|i| {
        // t^{i+l-1} differentiated l-1 times gives (i+l-1)!/i! t^i
        let falling: BigInt = (i + 1..=i + shift).map(BigInt::from).product();
        let lhs = coeff(i, m) * falling / &scale;
        lhs == coeff(i, m + 1)
    })
}

/// `s_α s_β - s_{α∨β} s_{α∧β}` for an incomparable pair in a product of
/// chains, with coordinates given as ground-set labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HibiRelation {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub join: Vec<usize>,
    pub meet: Vec<usize>,
}

/// Hibi relations of the path presentation `A_k = {k, k+1}`, `k = 1..m`.
pub fn hibi_relations(chain_m: u32) -> Vec<HibiRelation> {
    let m = chain_m as usize;
    let label = |bits: u32| -> Vec<usize> { (0..m).map(|k| k + 1 + (bits >> k & 1) as usize).collect() };
    let mut out = Vec::new();
    for a in 0..1u32 << m {
        for b in a + 1..1u32 << m {
            if a & b == a || a & b == b {
                continue;
            }
            out.push(HibiRelation { alpha: label(a), beta: label(b), join: label(a | b), meet: label(a & b) });
        }
    }
    out
}

/// `2^(2m-1) + 2^(m-1) - 3^m`.
pub fn hibi_count_formula(m: u32) -> BigInt {
    let two = BigInt::from(2);
    two.pow(2 * m - 1) + two.pow(m - 1) - BigInt::from(3).pow(m)
}

/// Shape predicates of a coefficient sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapeReport {
    pub symmetric: bool,
    pub unimodal: bool,
    pub log_concave: bool,
}

pub fn shape_checks(v: &[BigInt]) -> ShapeReport {
    let symmetric = v.iter().eq(v.iter().rev());
    let peak = v.windows(2).take_while(|w| w[0] <= w[1]).count();
    let unimodal = v[peak.min(v.len())..].windows(2).all(|w| w[0] >= w[1]);
    let log_concave = v.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2]);
    ShapeReport { symmetric, unimodal, log_concave }
}

/// Input of the open-problem experiment.
#[derive(Debug, Clone)]
pub enum OpenProblemInput {
    Family(FamilyParams),
    Presentation(Presentation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive { cutoff: u32 },
    NotApplicable(String),
}

/// Per-instance outcome of the open-problem identity check.
#[derive(Debug, Clone)]
pub struct OpenProblemReport {
    pub n: usize,
    pub series: Option<HilbertSeries>,
    pub generators: Option<CanonicalGenerators>,
    pub ring_type: Option<BigInt>,
    pub a_invariant: Option<i64>,
    pub r: Option<usize>,
    /// The right-hand side of the identity for the observed `r`.
    pub predicted: Option<BigInt>,
    pub verdict: Verdict,
}

impl OpenProblemReport {
    fn skipped(n: usize, reason: &str) -> Self {
        Self {
            n,
            series: None,
            generators: None,
            ring_type: None,
            a_invariant: None,
            r: None,
            predicted: None,
            verdict: Verdict::NotApplicable(reason.into()),
        }
    }
}

/// Compares the brute-force type with the h-vector expression predicted
/// for the observed `r`: `1 + h_{n-2} - h_1` when `r = 1`, `h_{n-r}`
/// otherwise.
pub fn open_problem_report(input: &OpenProblemInput, cutoff: Option<u32>) -> Result<OpenProblemReport> {
    let (n, a, rep, series, cutoff): (usize, _, ConeRep, HilbertSeries, u32) = match input {
        OpenProblemInput::Family(p) => {
            if p.n < 4 {
                return Err(Error::Precondition("the experiment needs n >= 4".into()));
            }
            (
                p.n,
                family_exponents(p),
                family_cone_rep(p),
                h_vector(p)?,
                cutoff.unwrap_or_else(|| default_family_cutoff(p)),
            )
        }
        OpenProblemInput::Presentation(pres) => {
            let n = pres.n();
            if n < 4 || pres.m() != n {
                return Err(Error::Precondition("the experiment needs n >= 4 and n sets".into()));
            }
            let a = transversal_bases(pres);
            let pts: Vec<Vec<i64>> = a.iter().map(ExponentVector::to_i64).collect();
            if linalg::rank(&pts) < n {
                return Ok(OpenProblemReport::skipped(n, "cone is not full-dimensional"));
            }
            let rep = cone_facets_bruteforce(&a)?;
            let rho = RankFunction::of_presentation(pres)?;
            let constraints = EhrhartConstraints::Rank(rho);
            let values: Vec<BigInt> =
                (0..=n as u32 + 1).map(|t| ehrhart_bruteforce(&constraints, n as u32, t)).collect();
            let series = series_from_values(&values, n as u32, n - 1)?;
            (n, a, rep, series, cutoff.unwrap_or(n as u32))
        }
    };
    let gens = canonical_generators_bruteforce(&a, &rep, cutoff)?;
    let mut report = OpenProblemReport {
        n,
        series: Some(series.clone()),
        generators: Some(gens.clone()),
        ring_type: None,
        a_invariant: None,
        r: None,
        predicted: None,
        verdict: Verdict::Inconclusive { cutoff },
    };
    if gens.inconclusive || gens.is_empty() {
        return Ok(report);
    }
    let r = gens.min_degree().expect("nonempty generators") as usize;
    let ring_type = BigInt::from(gens.len());
    let predicted = if r == 1 {
        BigInt::one() + series.h(n - 2) - series.h(1)
    } else {
        n.checked_sub(r).map(|k| series.h(k)).unwrap_or_default()
    };
    report.verdict = if predicted == ring_type { Verdict::Holds } else { Verdict::Fails };
    report.ring_type = Some(ring_type);
    report.a_invariant = Some(-(r as i64));
    report.r = Some(r);
    report.predicted = Some(predicted);
    Ok(report)
}
