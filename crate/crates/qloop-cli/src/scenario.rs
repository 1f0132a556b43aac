//! Named end-to-end scenarios stored as versioned JSON.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::commands::{run, IrredMode, Op, Request};
use crate::error::CliError;
use crate::input::{assignments, parse_gauge, DiagramSpec, RepSpec, ShiftSpec};
use crate::render::Outcome;

pub const SCHEMA_VERSION: u32 = 1;

/// Scenarios compiled into the binary, by name.
pub const SHIPPED: &[(&str, &str)] = &[
    (
        "qonsager-sl2-fundamental",
        include_str!("../scenarios/qonsager-sl2-fundamental.json"),
    ),
    ("sl2-fundamental-rmatrix", include_str!("../scenarios/sl2-fundamental-rmatrix.json")),
    ("qonsager-sl2-spin1", include_str!("../scenarios/qonsager-sl2-spin1.json")),
    ("sl3-vector", include_str!("../scenarios/sl3-vector.json")),
];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    pub name: String,
    pub description: String,
    pub steps: Vec<Step>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Step {
    pub op: String,
    #[serde(default)]
    pub diagram: Option<DiagramSpec>,
    #[serde(default)]
    pub gauge: Option<String>,
    #[serde(default)]
    pub shift: Option<String>,
    #[serde(default)]
    pub reps: Vec<String>,
    #[serde(default)]
    pub vars: BTreeMap<String, String>,
    #[serde(default)]
    pub at: Vec<BTreeMap<String, String>>,
    #[serde(default)]
    pub mode: Option<String>,
    #[serde(default)]
    pub expect: Expect,
}

/// What a step must produce for the scenario to pass.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    /// Expected `pass` of the step itself; defaults to true.
    #[serde(default)]
    pub pass: Option<bool>,
    #[serde(default)]
    pub kernel_dimension: Option<u64>,
    /// Degeneration kinds, one per evaluation point.
    #[serde(default)]
    pub loci: Option<Vec<String>>,
}

fn pairs(m: &BTreeMap<String, String>) -> Vec<String> {
    m.iter().map(|(k, v)| format!("{k}={v}")).collect()
}

impl Step {
    fn request(&self) -> Result<Request, CliError> {
        let op = Op::from_name(&self.op).ok_or_else(|| CliError::Usage(format!("unknown op `{}`", self.op)))?;
        let mut req = Request::new(op);
        req.diagram = self.diagram.clone();
        if let Some(g) = &self.gauge {
            req.gauge = parse_gauge(g)?;
        }
        if let Some(s) = &self.shift {
            req.shift = ShiftSpec::parse(s)?;
        }
        if let Some(m) = &self.mode {
            req.mode = IrredMode::parse(m)?;
        }
        req.reps = self.reps.iter().map(|r| RepSpec::parse(r)).collect::<Result<_, _>>()?;
        req.vars = assignments(pairs(&self.vars).iter().map(String::as_str))?;
        req.at = self
            .at
            .iter()
            .map(|p| assignments(pairs(p).iter().map(String::as_str)))
            .collect::<Result<_, _>>()?;
        Ok(req)
    }

    fn meets(&self, o: &Outcome) -> bool {
        let j = o.to_json();
        let pass_ok = o.pass == self.expect.pass.unwrap_or(true);
        let kernel_ok = self
            .expect
            .kernel_dimension
            .is_none_or(|k| j["k_matrix"]["kernel_dimension"].as_u64() == Some(k));
        let loci_ok = self.expect.loci.as_ref().is_none_or(|want| {
            let got: Vec<&str> = j["loci"]
                .as_array()
                .map(|a| a.iter().filter_map(|x| x["kind"].as_str()).collect())
                .unwrap_or_default();
            got == want.iter().map(String::as_str).collect::<Vec<_>>()
        });
        pass_ok && kernel_ok && loci_ok
    }
}

pub fn parse(text: &str) -> Result<Scenario, CliError> {
    let s: Scenario = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad scenario: {e}")))?;
    if s.schema_version != SCHEMA_VERSION {
        return Err(CliError::Usage(format!(
            "scenario schema version {} is not supported (expected {SCHEMA_VERSION})",
            s.schema_version
        )));
    }
    Ok(s)
}

/// A shipped name, or else a path to a scenario file.
pub fn load(name_or_path: &str) -> Result<Scenario, CliError> {
    if let Some((_, text)) = SHIPPED.iter().find(|(n, _)| *n == name_or_path) {
        return parse(text);
    }
    let p = Path::new(name_or_path);
    if p.is_file() {
        let text = std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
        return parse(&text);
    }
    let names: Vec<&str> = SHIPPED.iter().map(|(n, _)| *n).collect();
    Err(CliError::Usage(format!(
        "no scenario `{name_or_path}`; shipped: {}",
        names.join(", ")
    )))
}

pub fn run_scenario(s: &Scenario) -> Result<Outcome, CliError> {
    // parse every step first so a typo fails before any computation
    let requests: Vec<Request> = s.steps.iter().map(Step::request).collect::<Result<_, _>>()?;
    let mut steps = Vec::new();
    let mut all = true;
    let mut lines = Vec::new();
    for (i, (step, req)) in s.steps.iter().zip(&requests).enumerate() {
        let o = run(req)?;
        let ok = step.meets(&o);
        all &= ok;
        lines.push(format!("step {}: {}: {}", i + 1, step.op, if ok { "ok" } else { "unexpected" }));
        steps.push(json!({ "op": step.op, "ok": ok, "result": o.to_json() }));
    }
    let mut o = Outcome::new("pipeline run", all);
    o.set("scenario", s.name.clone());
    o.set("schema_version", s.schema_version);
    o.set("description", s.description.clone());
    o.set("steps", Value::from(steps));
    for l in lines {
        o.line(l);
    }
    Ok(o)
}
