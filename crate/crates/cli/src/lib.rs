//! Command-line front end: job construction, parallel evaluation and JSON
//! line output.

pub mod args;
mod checks;
pub mod error;
pub mod eval;
pub mod grid;
pub mod record;
pub mod sampling;

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;

pub use error::{CliError, CliResult};
pub use eval::{evaluate, Command, Job};
pub use record::{batch_exit_code, Input, ResultRecord, Status, SCHEMA_VERSION};

/// How a batch is executed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunConfig {
    /// Worker threads; `None` uses the rayon default.
    pub workers: Option<usize>,
    pub timing: bool,
}

/// The job with the sample index stripped, so repeated samples share work.
fn dedup_key(job: &Job) -> Job {
    let mut key = job.clone();
    if let Input::Presentation { sample, .. } = &mut key.input {
        *sample = None;
    }
    key
}

fn evaluate_timed(job: &Job, timing: bool) -> CliResult<ResultRecord> {
    let start = Instant::now();
    let mut rec = evaluate(job)?;
    if timing {
        rec.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(rec)
}

/// Evaluates every job and returns the records in job order. All jobs are
/// validated before any is run.
pub fn run_jobs(jobs: &[Job], config: RunConfig) -> CliResult<Vec<ResultRecord>> {
    jobs.iter().try_for_each(Job::validate)?;
    let mut unique: Vec<Job> = Vec::new();
    let mut index: HashMap<Job, usize> = HashMap::new();
    let slots: Vec<usize> = jobs
        .iter()
        .map(|job| {
            *index.entry(dedup_key(job)).or_insert_with_key(|key| {
                unique.push(key.clone());
                unique.len() - 1
            })
        })
        .collect();

    let compute = || unique.par_iter().map(|j| evaluate_timed(j, config.timing)).collect::<CliResult<Vec<_>>>();
    let computed = match config.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| CliError::Input(format!("cannot start {w} workers: {e}")))?
            .install(compute),
        None => compute(),
    }?;

    Ok(jobs
        .iter()
        .zip(slots)
        .map(|(job, slot)| ResultRecord { input: job.input.clone(), ..computed[slot].clone() })
        .collect())
}

/// Recomputes a parsed record from its input echo. The returned record
/// carries a `reproduced` flag comparing everything but timing.
pub fn reverify(original: &ResultRecord) -> CliResult<ResultRecord> {
    let mut rec = evaluate(&Job::of_record(original)?)?;
    let same = rec == original.untimed();
    rec.agree("reproduced", same);
    Ok(rec)
}
