//! The line-oriented JSON result format.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use polybase_core::polymatroid::{subset_elements, subset_from, Presentation};
use polybase_core::ExponentSet;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// A presentation as `{"n": .., "sets": [[1-based elements], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PresentationJson {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

impl From<&Presentation> for PresentationJson {
    fn from(p: &Presentation) -> Self {
        Self { n: p.n(), sets: p.sets().iter().map(|&s| subset_elements(s)).collect() }
    }
}

impl PresentationJson {
    pub fn to_presentation(&self) -> CliResult<Presentation> {
        Ok(Presentation::new(self.n, self.sets.iter().map(|s| subset_from(s)).collect())?)
    }
}

/// What a record was computed from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Input {
    Family {
        n: usize,
        i: usize,
        j: usize,
        t: usize,
    },
    Intersection {
        n: usize,
        pairs: Vec<(usize, usize)>,
    },
    Classification {
        n: usize,
        i1: usize,
        t2: usize,
        i2: usize,
    },
    Presentation {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sample: Option<u64>,
        presentation: PresentationJson,
    },
    Chain {
        m: u32,
    },
    /// The subvector closure of `tops`.
    Polymatroid {
        n: usize,
        tops: Vec<Vec<u32>>,
    },
    /// A fixed named check of a verification suite.
    Check {
        suite: String,
        check: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub ring_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub published_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_vector: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denom_power: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_invariant: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gorenstein: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
}

impl Invariants {
    pub fn is_empty(&self) -> bool {
        *self == Self::default()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    #[default]
    Ok,
    Inconclusive,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema: u32,
    pub command: String,
    pub input: Input,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<u32>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub bruteforce: bool,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Invariants::is_empty")]
    pub invariants: Invariants,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    /// Named oracle comparisons.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub agreement: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub details: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ResultRecord {
    pub fn new(command: &str, input: Input) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            command: command.into(),
            input,
            cutoff: None,
            bruteforce: false,
            status: Status::Ok,
            invariants: Invariants::default(),
            verdict: None,
            agreement: BTreeMap::new(),
            details: Value::Null,
            elapsed_ms: None,
        }
    }

    /// Records a comparison and downgrades the status on disagreement.
    pub fn agree(&mut self, name: &str, ok: bool) {
        self.agreement.insert(name.into(), ok);
        if !ok {
            self.status = self.status.max(Status::Mismatch);
        }
    }

    pub fn mark_inconclusive(&mut self) {
        self.status = self.status.max(Status::Inconclusive);
    }

    pub fn set_detail(&mut self, key: &str, value: Value) {
        if !self.details.is_object() {
            self.details = Value::Object(Default::default());
        }
        self.details[key] = value;
    }

    /// The record without its timing field.
    pub fn untimed(&self) -> Self {
        Self { elapsed_ms: None, ..self.clone() }
    }

    pub fn to_line(&self) -> CliResult<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_line(line: &str) -> CliResult<Self> {
        let record: Self = serde_json::from_str(line)?;
        if record.schema != SCHEMA_VERSION {
            return Err(CliError::Input(format!("unsupported schema {}", record.schema)));
        }
        Ok(record)
    }
}

pub fn big_str(x: &BigInt) -> String {
    x.to_string()
}

pub fn big_strs(xs: &[BigInt]) -> Vec<String> {
    xs.iter().map(big_str).collect()
}

pub fn vectors_json(set: &ExponentSet) -> Value {
    Value::Array(set.iter().map(|v| serde_json::json!(v.coords())).collect())
}

/// Exit status for a batch: mismatches dominate inconclusive results.
pub fn batch_exit_code(records: &[ResultRecord]) -> i32 {
    match records.iter().map(|r| r.status).max() {
        Some(Status::Mismatch) => 1,
        Some(Status::Inconclusive) => 3,
        _ => 0,
    }
}
