//! Argument definitions and the translation of arguments into jobs.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polybase_core::combinatorics::compositions;
use polybase_core::cone::FamilyParams;
use polybase_core::intersect::condition;

use crate::error::{CliError, CliResult};
use crate::eval::{Command, Job};
use crate::grid::{parse_pair, parse_range_list, parse_spec, parse_vectors};
use crate::record::{batch_exit_code, Input, PresentationJson, ResultRecord, Status};
use crate::sampling::sample_presentations;
use crate::{reverify, run_jobs, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "polybase", version, about = "Invariants of base rings of transversal polymatroids")]
pub struct Cli {
    /// Worker threads for grid evaluation.
    #[arg(long, global = true, env = "POLYBASE_WORKERS")]
    pub workers: Option<usize>,
    /// Write records here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Attach wall-clock time to each record.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Type,
    Hilbert,
    Facets,
    Intersection,
    Segre,
    Chapter1,
}

/// A single family `(n, i, j, t)` or a grid of `n` values.
#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub t: usize,
    /// Values of `n`, e.g. `4-6`; `--i` and `--j` then filter the cells.
    #[arg(long)]
    pub grid: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Type, h-vector, a-invariant and Gorenstein flag.
    Invariants(FamilyArgs),
    /// Hilbert series numerator.
    Hvector {
        #[command(flatten)]
        family: FamilyArgs,
        /// Also count lattice points directly for t <= 3.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Facets, extremal rays and lattice determinant.
    Cone {
        #[command(flatten)]
        family: FamilyArgs,
        /// Also recompute the facets by double description.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Canonical-module generators by semigroup search.
    Canonical {
        #[command(flatten)]
        family: FamilyArgs,
        /// Intersection spec `n;i1,t1;i2,t2;...` instead of a family.
        #[arg(long, conflicts_with_all = ["n", "grid"])]
        spec: Option<String>,
        #[arg(long)]
        cutoff: Option<u32>,
    },
    /// Intersections of two Gorenstein windows.
    Intersect {
        #[command(subcommand)]
        action: IntersectAction,
    },
    /// Eulerian h-vectors of products of two-element chains.
    Segre {
        #[arg(long, required_unless_present = "grid")]
        m: Option<u32>,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Ehrhart ring of a polymatroid.
    EhrhartRing {
        /// `n,k`: all vectors of `[n]` with total at most `k`.
        #[arg(long, required_unless_present = "tops")]
        simplex: Option<String>,
        /// Maximal vectors, `1,2,1;0,2,2`.
        #[arg(long)]
        tops: Option<String>,
    },
    /// Formula-against-oracle suites, or offline re-verification of records.
    Verify {
        #[arg(long, value_enum, required_unless_present = "records")]
        suite: Option<Suite>,
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        cutoff: Option<u32>,
        /// Recompute every record of this file.
        #[arg(long, conflicts_with = "suite")]
        records: Option<PathBuf>,
    },
    /// Checks the conjectured type identity per instance.
    Openproblem {
        #[command(flatten)]
        family: FamilyArgs,
        /// Random presentations with `--n` sets over `[n]`.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        cutoff: Option<u32>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CellArgs {
    /// `n;i1,0;i2,t2`.
    #[arg(long, required_unless_present = "grid")]
    pub spec: Option<String>,
    /// Values of `n`; every cell of each.
    #[arg(long)]
    pub grid: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum IntersectAction {
    /// Decide whether the intersection is a transversal base ring.
    Classify(CellArgs),
    /// Build and verify the presentation of a true cell.
    Construct(CellArgs),
    /// Exhaustive presentation search, n <= 4.
    Search {
        #[arg(long)]
        spec: String,
    },
}

fn family_jobs(args: &FamilyArgs, command: Command, min_n: usize) -> CliResult<Vec<Job>> {
    let family = |n, i, j, t| Input::Family { n, i, j, t };
    if let Some(grid) = &args.grid {
        let mut jobs = Vec::new();
        for n in parse_range_list(grid)?.into_iter().filter(|&n| n >= min_n) {
            for p in FamilyParams::grid(n..=n) {
                if args.i.is_some_and(|i| i != p.i) || args.j.is_some_and(|j| j != p.j) {
                    continue;
                }
                jobs.push(Job::new(command, family(p.n, p.i, p.j, args.t % p.n)));
            }
        }
        return Ok(jobs);
    }
    match (args.n, args.i, args.j) {
        (Some(n), Some(i), Some(j)) => Ok(vec![Job::new(command, family(n, i, j, args.t))]),
        _ => Err(CliError::Input("give --n, --i and --j, or --grid".into())),
    }
}

fn cell_input(spec: &str) -> CliResult<Input> {
    match parse_spec(spec)? {
        (n, pairs) if pairs.len() == 2 && pairs[0].1 == 0 => {
            Ok(Input::Classification { n, i1: pairs[0].0, t2: pairs[1].1, i2: pairs[1].0 })
        }
        _ => Err(CliError::Input(format!("{spec:?} must name two windows, the first with shift 0"))),
    }
}

fn cell_jobs(args: &CellArgs, command: Command, true_only: bool) -> CliResult<Vec<Job>> {
    if let Some(spec) = &args.spec {
        return Ok(vec![Job::new(command, cell_input(spec)?)]);
    }
    let grid = args.grid.as_deref().unwrap_or_default();
    let mut jobs = Vec::new();
    for n in parse_range_list(grid)? {
        if n < 3 {
            return Err(CliError::Input(format!("n = {n} must be at least 3")));
        }
        for i1 in 1..=n - 2 {
            for t2 in 0..n {
                for i2 in 1..=n - 2 {
                    if !true_only || condition(n, i1, t2, i2).is_some() {
                        jobs.push(Job::new(command, Input::Classification { n, i1, t2, i2 }));
                    }
                }
            }
        }
    }
    Ok(jobs)
}

fn chain_jobs(m: Option<u32>, grid: Option<&str>, default: &str) -> CliResult<Vec<Job>> {
    let ms = match (m, grid) {
        (Some(m), _) => vec![m as usize],
        (None, g) => parse_range_list(g.unwrap_or(default))?,
    };
    Ok(ms.into_iter().map(|m| Job::new(Command::Segre, Input::Chain { m: m as u32 })).collect())
}

fn suite_jobs(suite: Suite, grid: Option<&str>, seed: Option<u64>, cutoff: Option<u32>) -> CliResult<Vec<Job>> {
    let families = |command, default: &str| {
        let args = FamilyArgs { n: None, i: None, j: None, t: 0, grid: Some(grid.unwrap_or(default).into()) };
        family_jobs(&args, command, 3)
    };
    let jobs = match suite {
        Suite::Type => families(Command::VerifyType, "3-6")?,
        Suite::Hilbert => families(Command::Hvector, "3-6")?.into_iter().map(|j| j.with_bruteforce(true)).collect(),
        Suite::Facets => families(Command::Cone, "3-6")?.into_iter().map(|j| j.with_bruteforce(true)).collect(),
        Suite::Intersection => {
            let args = CellArgs { spec: None, grid: Some(grid.unwrap_or("4").into()) };
            cell_jobs(&args, Command::VerifyIntersection, false)?
        }
        Suite::Segre => chain_jobs(None, grid, "1-10")?,
        Suite::Chapter1 => crate::checks::CHECKS
            .iter()
            .map(|c| {
                let seed = (*c == "random-rank-functions").then(|| seed.unwrap_or(0));
                Job::new(Command::Chapter1, Input::Check { suite: "chapter1".into(), check: (*c).into(), seed })
            })
            .collect(),
    };
    Ok(jobs.into_iter().map(|j| j.with_cutoff(cutoff)).collect())
}

fn openproblem_jobs(family: &FamilyArgs, seed: Option<u64>, samples: usize) -> CliResult<Vec<Job>> {
    let Some(seed) = seed else {
        return family_jobs(family, Command::OpenProblem, 4);
    };
    let n = family.n.ok_or_else(|| CliError::Input("--seed needs --n".into()))?;
    if n < 4 {
        return Err(CliError::Input("the experiment needs n >= 4".into()));
    }
    Ok(sample_presentations(seed, n, samples)?
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let input = Input::Presentation { sample: Some(k as u64), presentation: PresentationJson::from(p) };
            Job::new(Command::OpenProblem, input)
        })
        .collect())
}

fn simplex_tops(spec: &str) -> CliResult<Input> {
    let (n, k) = parse_pair(spec)?;
    if n == 0 {
        return Err(CliError::Input("the simplex needs n >= 1".into()));
    }
    Ok(Input::Polymatroid { n, tops: compositions(k, n) })
}

/// The jobs named by the arguments, in output order.
pub fn jobs(cmd: &Cmd) -> CliResult<Vec<Job>> {
    match cmd {
        Cmd::Invariants(f) => family_jobs(f, Command::Invariants, 1),
        Cmd::Hvector { family, bruteforce } => {
            Ok(family_jobs(family, Command::Hvector, 1)?.into_iter().map(|j| j.with_bruteforce(*bruteforce)).collect())
        }
        Cmd::Cone { family, bruteforce } => {
            Ok(family_jobs(family, Command::Cone, 1)?.into_iter().map(|j| j.with_bruteforce(*bruteforce)).collect())
        }
        Cmd::Canonical { family, spec, cutoff } => {
            let jobs = match spec {
                Some(s) => {
                    let (n, pairs) = parse_spec(s)?;
                    vec![Job::new(Command::Canonical, Input::Intersection { n, pairs })]
                }
                None => family_jobs(family, Command::Canonical, 1)?,
            };
            Ok(jobs.into_iter().map(|j| j.with_cutoff(*cutoff)).collect())
        }
        Cmd::Intersect { action } => match action {
            IntersectAction::Classify(c) => cell_jobs(c, Command::IntersectClassify, false),
            IntersectAction::Construct(c) => cell_jobs(c, Command::IntersectConstruct, c.spec.is_none()),
            IntersectAction::Search { spec } => {
                let (n, pairs) = parse_spec(spec)?;
                Ok(vec![Job::new(Command::IntersectSearch, Input::Intersection { n, pairs })])
            }
        },
        Cmd::Segre { m, grid } => chain_jobs(*m, grid.as_deref(), "1"),
        Cmd::EhrhartRing { simplex, tops } => {
            let input = match (simplex, tops) {
                (Some(s), _) => simplex_tops(s)?,
                (None, Some(t)) => {
                    let tops = parse_vectors(t)?;
                    Input::Polymatroid { n: tops[0].len(), tops }
                }
                (None, None) => return Err(CliError::Input("give --simplex or --tops".into())),
            };
            Ok(vec![Job::new(Command::EhrhartRing, input)])
        }
        Cmd::Verify { suite, grid, seed, cutoff, .. } => match suite {
            Some(s) => suite_jobs(*s, grid.as_deref(), *seed, *cutoff),
            None => Err(CliError::Input("give --suite or --records".into())),
        },
        Cmd::Openproblem { family, seed, samples, cutoff } => {
            Ok(openproblem_jobs(family, *seed, *samples)?.into_iter().map(|j| j.with_cutoff(*cutoff)).collect())
        }
    }
}

fn read_records(path: &PathBuf) -> CliResult<Vec<ResultRecord>> {
    fs::read_to_string(path)?.lines().filter(|l| !l.trim().is_empty()).map(ResultRecord::from_line).collect()
}

/// Computes the records for `cli` without writing them.
pub fn records(cli: &Cli) -> CliResult<Vec<ResultRecord>> {
    let config = RunConfig { workers: cli.workers, timing: cli.timing };
    if let Cmd::Verify { records: Some(path), .. } = &cli.command {
        return read_records(path)?.iter().map(reverify).collect();
    }
    run_jobs(&jobs(&cli.command)?, config)
}

fn write_records(cli: &Cli, records: &[ResultRecord]) -> CliResult<()> {
    let mut text = String::new();
    for rec in records {
        text.push_str(&rec.to_line()?);
        text.push('\n');
    }
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Runs the command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let outcome = records(cli).and_then(|recs| write_records(cli, &recs).map(|_| recs));
    match outcome {
        Ok(recs) => {
            for rec in recs.iter().filter(|r| r.status == Status::Mismatch) {
                let failed: Vec<&str> = rec.agreement.iter().filter(|(_, ok)| !**ok).map(|(k, _)| k.as_str()).collect();
                eprintln!("mismatch: {} {:?}: {}", rec.command, rec.input, failed.join(", "));
            }
            batch_exit_code(&recs)
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
