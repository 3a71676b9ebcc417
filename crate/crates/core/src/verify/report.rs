//! Report schema for the verification harness: one record per check
//! instance, canonically ordered and free of timestamps so that reruns with
//! the same configuration serialize to identical bytes.

use crate::verify::corpus::GeneratorSpec;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Current report schema version; bump on any breaking field change.
pub const SCHEMA_VERSION: u32 = 1;

/// Outcome of one check instance. `Vacuous` records a check whose premise
/// was unavailable on this instance (zero denominator, boundary-starved
/// window family, nonzero discretization gap); it is not a pass and not a
/// failure, and the reason is preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous(String),
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail)
    }

    pub fn as_str(&self) -> String {
        match self {
            Verdict::Pass => "pass".into(),
            Verdict::Fail => "fail".into(),
            Verdict::Vacuous(reason) if reason.is_empty() => "vacuous".into(),
            Verdict::Vacuous(reason) => format!("vacuous-{reason}"),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_str())
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.as_str())
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(match s.as_str() {
            "pass" => Verdict::Pass,
            "fail" => Verdict::Fail,
            "vacuous" => Verdict::Vacuous(String::new()),
            other => match other.strip_prefix("vacuous-") {
                Some(reason) => Verdict::Vacuous(reason.to_string()),
                None => return Err(serde::de::Error::custom(format!("unknown verdict `{s}`"))),
            },
        })
    }
}

/// Everything needed to replay one check instance. Optional fields are
/// omitted from the serialized form when absent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
pub struct Instance {
    /// Free-form instance label, unique within a check.
    pub label: String,
    pub dim: usize,
    /// Cells per axis (grids are square in 2D).
    pub n: usize,
    pub h: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<f64>,
    pub boundary: String,
    pub max_scale: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub symbol: Option<GeneratorSpec>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub data: Option<GeneratorSpec>,
    /// Anchor and side of the probed cube, when the check is cube-local.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cube: Option<(Vec<i64>, usize)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exponents: Option<(f64, f64, f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

/// An empirical constant realizing a "there exists C" claim, with the
/// instance attaining it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantRecord {
    pub name: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub argmax: Option<String>,
}

/// One check instance: what ran, on what, what came out, and the verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub instance: Instance,
    /// Named scalar outcomes (residuals, ratios, margins, gaps).
    pub quantities: BTreeMap<String, f64>,
    /// The tolerance governing this report's verdict.
    pub tolerance: f64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub constants: Vec<ConstantRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn new(check_id: &str, instance: Instance, tolerance: f64) -> Self {
        VerificationReport {
            check_id: check_id.to_string(),
            instance,
            quantities: BTreeMap::new(),
            tolerance,
            verdict: Verdict::Pass,
            constants: Vec::new(),
            note: None,
        }
    }

    pub fn quantity(&mut self, name: &str, value: f64) -> &mut Self {
        self.quantities.insert(name.to_string(), value);
        self
    }

    pub fn constant(&mut self, name: &str, value: f64, argmax: Option<String>) -> &mut Self {
        self.constants.push(ConstantRecord { name: name.to_string(), value, argmax });
        self
    }

    /// Record a hard assertion: a failed condition flips the verdict to
    /// `Fail` permanently; a vacuous verdict set earlier survives passes but
    /// not failures.
    pub fn assert_that(&mut self, ok: bool, note_on_fail: &str) -> &mut Self {
        if !ok {
            self.verdict = Verdict::Fail;
            let msg = note_on_fail.to_string();
            self.note = Some(match self.note.take() {
                Some(prev) if !prev.is_empty() => format!("{prev}; {msg}"),
                _ => msg,
            });
        }
        self
    }

    /// Mark the instance vacuous for `reason` unless it already failed.
    pub fn vacuous(&mut self, reason: &str) -> &mut Self {
        if !self.verdict.is_fail() {
            self.verdict = Verdict::Vacuous(reason.to_string());
        }
        self
    }
}

/// The on-disk report artifact: schema version, the exact configuration
/// that produced it, and the canonically ordered reports.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportFile<C> {
    pub schema_version: u32,
    pub config: C,
    pub reports: Vec<VerificationReport>,
}

impl<C> ReportFile<C> {
    pub fn new(config: C, mut reports: Vec<VerificationReport>) -> Self {
        canonicalize(&mut reports);
        ReportFile { schema_version: SCHEMA_VERSION, config, reports }
    }
}

/// Deterministic report order: by check id, then by the serialized instance
/// descriptor. Serialization is total on the descriptor, so the order is
/// independent of execution interleaving.
pub fn canonicalize(reports: &mut [VerificationReport]) {
    reports.sort_by_cached_key(|r| {
        let inst = serde_json::to_string(&r.instance).unwrap_or_default();
        (r.check_id.clone(), inst)
    });
}
