use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;
use vc_core::graph::{NodeId, PortGraph};
use vc_core::oracle::{solve, OracleOptions, DEFAULT_MAX_NODES};
use vc_core::ratio::ExactRatio;
use vc_core::simulator::Transcript;
use vc_core::verify::{verify, Verified};

use crate::error::CliError;

/// Named checks in their canonical order, as `"pass"` or `"fail"`.
#[derive(Debug)]
pub struct Checks(Vec<(&'static str, bool)>);

impl Serialize for Checks {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (name, ok) in &self.0 {
            map.serialize_entry(name, if *ok { "pass" } else { "fail" })?;
        }
        map.end()
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub cover_size: usize,
    pub lower_bound: usize,
    /// `null` when the cover is empty.
    pub certified_ratio: Option<String>,
    pub rounds_run: u32,
    pub last_active_step: u32,
    pub oracle_size: Option<usize>,
    pub true_ratio: Option<String>,
    pub cover: Vec<NodeId>,
    pub checks: Checks,
}

/// `(check, reason)` pairs.
pub type Failures = Vec<(&'static str, String)>;

pub struct Evaluation {
    pub report: RunReport,
    pub transcript: Transcript,
    /// Every failed check, including the oracle comparison when an optimum
    /// is known.
    pub failures: Failures,
}

/// Exact optimum for graphs within the solver's cap, `None` otherwise.
pub fn optimum(g: &PortGraph) -> Option<usize> {
    if g.node_count() > DEFAULT_MAX_NODES {
        return None;
    }
    solve(g, OracleOptions::default()).ok().map(|r| r.optimum_size)
}

pub fn evaluate(g: &PortGraph, oracle_size: Option<usize>) -> Result<Evaluation, CliError> {
    let Verified { result, transcript, certificate, checks, .. } = verify(g)?;
    let mut failures: Failures =
        checks.iter().filter_map(|(name, r)| r.as_ref().err().map(|e| (*name, e.clone()))).collect();
    let true_ratio = oracle_size.and_then(|opt| ExactRatio::new(result.cover_size() as u64, opt as u64));
    if let Some(opt) = oracle_size {
        if result.cover_size() > 3 * opt {
            failures.push(("true-ratio-le-3", format!("|C| = {} exceeds 3 * {opt}", result.cover_size())));
        }
    }
    let report = RunReport {
        n: g.node_count(),
        m: g.edge_count(),
        delta: g.max_degree(),
        cover_size: result.cover_size(),
        lower_bound: certificate.as_ref().map_or(0, |c| c.lower_bound),
        certified_ratio: certificate.as_ref().map(|c| c.ratio.to_string()),
        rounds_run: result.rounds_run,
        last_active_step: result.last_active_step,
        oracle_size,
        true_ratio: true_ratio.map(|r| r.to_string()),
        cover: result.cover.iter().copied().collect(),
        checks: Checks(checks.iter().map(|(name, r)| (*name, r.is_ok())).collect()),
    };
    Ok(Evaluation { report, transcript, failures })
}

pub fn describe(failures: &[(&'static str, String)]) -> String {
    failures.iter().map(|(name, why)| format!("{name}: {why}")).collect::<Vec<_>>().join("; ")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Array(items) if items.is_empty() => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

/// One `key: value` line per field; nested objects are indented.
pub fn to_text(value: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(fields) = value {
        for (key, v) in fields {
            match v {
                Value::Object(inner) => {
                    out += &format!("{key}:\n");
                    for (k, x) in inner {
                        out += &format!("  {k}: {}\n", scalar(x));
                    }
                }
                _ => out += &format!("{key}: {}\n", scalar(v)),
            }
        }
    }
    out
}

/// All fields on one line as `key=value`.
pub fn to_line(value: &Value) -> String {
    match value {
        Value::Object(fields) => fields
            .iter()
            .map(|(k, v)| match v {
                Value::Array(items) => {
                    format!("{k}=[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(" "))
                }
                _ => format!("{k}={}", scalar(v)),
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => scalar(other),
    }
}

/// JSON on one line, or the text form.
pub fn render(value: &impl Serialize, json: bool) -> String {
    let value = serde_json::to_value(value).expect("reports serialize");
    if json {
        format!("{value}\n")
    } else {
        to_text(&value)
    }
}
