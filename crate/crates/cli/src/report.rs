//! Job descriptions and verdict reports, both round-tripping through JSON.

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub vars: Vec<String>,
    /// 0 for the rationals.
    pub char: u64,
}

impl RingSpec {
    pub fn new(vars: &str, char: u64) -> Self {
        Self { vars: vars.split(',').map(|v| v.trim().to_string()).collect(), char }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IdealSource {
    Inline { text: String },
    Corpus { path: PathBuf, index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Command {
    Compute { op: String },
    Suite { name: String },
    Reproduce { id: String },
}

/// Tunable windows and caps; unset fields take the documented defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rr_window: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra_gens: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub num: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub den: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub member: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub coeffs: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ring: Option<RingSpec>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ideal: Option<IdealSource>,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub output: Option<PathBuf>,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        Self { command, ring: None, ideal: None, params: Params::default(), seed: 0, output: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Error => "ERROR",
        })
    }
}

/// Everything needed to replay a failing check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub seed: u64,
    pub ring: String,
    pub instance: String,
    pub data: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into(), witness: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum InstanceStatus {
    Pass,
    Fail,
    Skipped { reason: String },
    Error { message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceOutcome {
    pub index: usize,
    pub seed: u64,
    pub dim: usize,
    pub ideal: String,
    #[serde(flatten)]
    pub status: InstanceStatus,
    pub checks: Vec<Check>,
    /// Supporting data: reductions, reduction numbers, windows.
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub errors: usize,
    /// Index of the instance at which a theorem suite stopped.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub halted_at: Option<usize>,
}

/// Wall-clock and cache statistics; excluded from report comparisons.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Runtime {
    pub elapsed_ms: u64,
    pub cache_hits: u64,
    pub cache_misses: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub schema: u32,
    pub version: String,
    pub job: JobSpec,
    pub characteristic: u64,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub instances: Vec<InstanceOutcome>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub summary: Option<SuiteSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub result: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    pub runtime: Runtime,
}

impl VerdictReport {
    pub fn new(job: JobSpec, characteristic: u64) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            version: VERSION.to_string(),
            job,
            characteristic,
            verdict: Verdict::Pass,
            checks: Vec::new(),
            instances: Vec::new(),
            summary: None,
            result: None,
            error: None,
            runtime: Runtime::default(),
        }
    }

    /// Sets the verdict from the checks: PASS iff every check passed.
    pub fn settle(&mut self) {
        if self.error.is_some() {
            self.verdict = Verdict::Error;
        } else if self.checks.iter().all(|c| c.passed) {
            self.verdict = Verdict::Pass;
        } else {
            self.verdict = Verdict::Fail;
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// The report as JSON without the runtime block.
    pub fn comparable(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("runtime");
        }
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        if let Some(s) = &self.summary {
            write!(
                f,
                "instances: {} passed, {} failed, {} skipped, {} errors of {}",
                s.passed, s.failed, s.skipped, s.errors, s.trials
            )?;
            if let Some(i) = s.halted_at {
                write!(f, " (halted at instance {i})")?;
            }
            writeln!(f)?;
            for inst in &self.instances {
                match &inst.status {
                    InstanceStatus::Fail => {
                        writeln!(f, "  instance {} (seed {}) FAIL: {}", inst.index, inst.seed, inst.ideal)?;
                        for c in inst.checks.iter().filter(|c| !c.passed) {
                            writeln!(f, "    {}: {}", c.name, c.detail)?;
                        }
                        for n in &inst.notes {
                            writeln!(f, "    {n}")?;
                        }
                    }
                    InstanceStatus::Error { message } => {
                        writeln!(f, "  instance {} (seed {}) ERROR: {message}", inst.index, inst.seed)?
                    }
                    _ => {}
                }
            }
        }
        if let Some(r) = &self.result {
            writeln!(f, "{}", serde_json::to_string_pretty(r).expect("serializable"))?;
        }
        if let Some(e) = &self.error {
            writeln!(f, "error: {e}")?;
        }
        write!(f, "{}", self.verdict)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn job_spec_round_trips() {
        let mut job = JobSpec::new(Command::Compute { op: "colon".into() });
        job.ring = Some(RingSpec::new("x, y", 32003));
        job.ideal = Some(IdealSource::Corpus { path: "c.json".into(), index: 2 });
        job.params.num = Some("I^4".into());
        job.params.coeffs = true;
        job.seed = 7;
        let text = serde_json::to_string(&job).unwrap();
        assert_eq!(serde_json::from_str::<JobSpec>(&text).unwrap(), job);
        let bare = JobSpec::new(Command::Suite { name: "lemma21".into() });
        let text = serde_json::to_string(&bare).unwrap();
        assert_eq!(serde_json::from_str::<JobSpec>(&text).unwrap(), bare);
    }

    #[test]
    fn report_carries_schema_and_ignores_runtime_in_comparisons() {
        let mut a = VerdictReport::new(JobSpec::new(Command::Reproduce { id: "2.13".into() }), 32003);
        a.checks.push(Check::new("r", true, "2"));
        a.settle();
        let mut b = a.clone();
        b.runtime.elapsed_ms = 99;
        assert_eq!(a.comparable(), b.comparable());
        let v = serde_json::to_value(&a).unwrap();
        assert_eq!(v["schema"], 1);
        let back: VerdictReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, a);
    }
}
