//! Run configuration and machine-readable verification reports.
//!
//! Reports serialize to JSON with sorted keys and no wall-clock data, so a
//! fixed configuration yields byte-identical output; timings appear in the
//! text rendering only.

use serde_json::{json, Map, Value};

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub precision_bits: u32,
    /// Override for per-check trial counts; checks use their own defaults
    /// when absent.
    pub trials: Option<usize>,
    pub m: Option<usize>,
    /// Optional user-supplied sextic coefficients (ascending).
    pub sextic: Option<Vec<sl2geom::ExactScalar>>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            precision_bits: sl2geom::DEFAULT_PRECISION_BITS,
            trials: None,
            m: None,
            sextic: None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    /// The mathematical statement this check verifies.
    pub anchor: String,
    pub witness: Value,
    pub wall_time_ms: u128,
}

impl CheckResult {
    pub fn new(
        name: impl Into<String>,
        status: Status,
        anchor: impl Into<String>,
        witness: Value,
    ) -> Self {
        CheckResult {
            name: name.into(),
            status,
            anchor: anchor.into(),
            witness,
            wall_time_ms: 0,
        }
    }

    pub fn pass(name: impl Into<String>, anchor: impl Into<String>, witness: Value) -> Self {
        CheckResult::new(name, Status::Pass, anchor, witness)
    }

    pub fn from_bool(
        name: impl Into<String>,
        ok: bool,
        anchor: impl Into<String>,
        witness: Value,
    ) -> Self {
        CheckResult::new(
            name,
            if ok { Status::Pass } else { Status::Fail },
            anchor,
            witness,
        )
    }
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: String,
    pub checks: Vec<CheckResult>,
    pub wall_time_ms: u128,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub config: RunConfig,
    pub suites: Vec<SuiteResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed())
    }

    /// Deterministic JSON: sorted keys (serde_json maps are ordered), no
    /// timing fields.
    pub fn to_json(&self) -> Value {
        let mut suites: Vec<&SuiteResult> = self.suites.iter().collect();
        suites.sort_by(|a, b| a.name.cmp(&b.name));
        let suites_json: Vec<Value> = suites
            .iter()
            .map(|s| {
                json!({
                    "name": s.name,
                    "status": if s.passed() { "pass" } else { "fail" },
                    "checks": s.checks.iter().map(|c| {
                        json!({
                            "name": c.name,
                            "status": c.status.as_str(),
                            "anchor": c.anchor,
                            "witness": c.witness,
                        })
                    }).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut root = Map::new();
        root.insert("schema_version".into(), json!(1));
        root.insert(
            "config".into(),
            json!({
                "seed": self.config.seed,
                "precision_bits": self.config.precision_bits,
                "trials": self.config.trials,
                "m": self.config.m,
                "sextic": self.config.sextic.as_ref().map(|cs| {
                    cs.iter().map(|c| c.to_string()).collect::<Vec<_>>()
                }),
            }),
        );
        root.insert("suites".into(), Value::Array(suites_json));
        root.insert(
            "status".into(),
            json!(if self.passed() { "pass" } else { "fail" }),
        );
        Value::Object(root)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serialization")
    }

    /// Human-readable rendering, including wall-clock times.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for suite in &self.suites {
            out.push_str(&format!(
                "suite {} [{}] ({} ms)\n",
                suite.name,
                if suite.passed() { "pass" } else { "FAIL" },
                suite.wall_time_ms
            ));
            for c in &suite.checks {
                out.push_str(&format!(
                    "  {:<44} {:<4} ({} ms)\n    {}\n",
                    c.name,
                    c.status.as_str(),
                    c.wall_time_ms,
                    c.anchor
                ));
                if c.status == Status::Fail {
                    out.push_str(&format!("    witness: {}\n", c.witness));
                }
            }
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.passed() { "pass" } else { "FAIL" }
        ));
        out
    }
}
