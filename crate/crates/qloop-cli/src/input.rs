//! Textual inputs: representation specs, diagrams, assignments.

use std::collections::BTreeMap;

use qloop::braid::Gauge;
use qloop::repcore::{eval_sl2, tensor, trivial, vector_sl_n, Rep};
use qloop::rootdata::{CartanDatum, GradingShift, QspParams, SatakeDiagram};
use qloop::scalars::{parse_rat, Rat, Var};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::CliError;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn rat(s: &str) -> Result<Rat, CliError> {
    parse_rat(s).map_err(|e| usage(format!("bad literal `{s}`: {e}")))
}

/// `name=literal` pairs separated by commas, e.g. `a=2,g0=1/3`.
pub fn assignments<'a>(items: impl IntoIterator<Item = &'a str>) -> Result<Vec<(Var, Rat)>, CliError> {
    let mut out: Vec<(Var, Rat)> = Vec::new();
    for item in items.into_iter().flat_map(|s| s.split(',')) {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("expected name=value, got `{item}`")))?;
        let var = Var::from_name(name.trim()).ok_or_else(|| usage(format!("unknown variable `{name}`")))?;
        if var == Var::P {
            return Err(usage("the deformation parameter stays symbolic"));
        }
        if out.iter().any(|(v, _)| *v == var) {
            return Err(usage(format!("`{name}` assigned twice")));
        }
        out.push((var, rat(value.trim())?));
    }
    Ok(out)
}

pub fn assignment_json(a: &[(Var, Rat)]) -> Value {
    let m: serde_json::Map<String, Value> =
        a.iter().map(|(v, r)| (v.name().to_string(), Value::from(r.to_string()))).collect();
    Value::Object(m)
}

/// A builder representation named on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepSpec {
    text: String,
    kind: RepKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum RepKind {
    EvalSl2 { spin2: u32, point: Rat },
    VectorSl { n: usize, point: Rat },
    Trivial { n: usize },
}

impl RepSpec {
    /// `eval-sl2:<2j>:<a>`, `vector-sl:<n>:<a>` or `trivial:<n>`.
    pub fn parse(s: &str) -> Result<RepSpec, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        let int = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| usage(format!("`{t}` is not a nonnegative integer in `{s}`")))
        };
        let kind = match parts.as_slice() {
            ["eval-sl2", j, a] => RepKind::EvalSl2 { spin2: int(j)? as u32, point: rat(a)? },
            ["vector-sl", n, a] => RepKind::VectorSl { n: int(n)?, point: rat(a)? },
            ["trivial", n] => RepKind::Trivial { n: int(n)? },
            _ => return Err(usage(format!("unknown representation `{s}`"))),
        };
        Ok(RepSpec { text: s.to_string(), kind })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn build(&self, vars: &[(Var, Rat)]) -> Result<Rep, CliError> {
        let sub = |a: &Rat| a.substitute(vars).map_err(|e| CliError::Math(e.to_string()));
        let rep = match &self.kind {
            RepKind::EvalSl2 { spin2, point } => eval_sl2(*spin2, sub(point)?)?,
            RepKind::VectorSl { n, point } => vector_sl_n(*n, sub(point)?)?,
            RepKind::Trivial { n } => trivial(CartanDatum::affine_a(*n).map_err(|e| usage(e.to_string()))?),
        };
        Ok(rep)
    }
}

pub fn build_reps(specs: &[RepSpec], vars: &[(Var, Rat)]) -> Result<Vec<Rep>, CliError> {
    let reps: Vec<Rep> = specs.iter().map(|s| s.build(vars)).collect::<Result<_, _>>()?;
    if let Some(first) = reps.first() {
        if reps.iter().any(|r| r.cartan() != first.cartan()) {
            return Err(usage("all representations must share one affine type"));
        }
    }
    Ok(reps)
}

pub fn tensor_all(reps: &[Rep]) -> Result<Rep, CliError> {
    let mut it = reps.iter();
    let first = it.next().ok_or_else(|| usage("at least one --rep is required"))?.clone();
    it.try_fold(first, |acc, r| Ok(tensor(&acc, r)?))
}

/// Diagram plus parameter overrides, as given in scenarios and flags.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramSpec {
    #[serde(rename = "type", default = "type_a")]
    pub kind: String,
    pub n: usize,
    #[serde(rename = "X", default)]
    pub x: Vec<usize>,
    /// Identity when absent.
    #[serde(default)]
    pub tau: Option<Vec<usize>>,
    /// Node index to literal; unset nodes keep the symbolic default.
    #[serde(default)]
    pub gamma: BTreeMap<usize, String>,
    #[serde(default)]
    pub sigma: BTreeMap<usize, String>,
}

fn type_a() -> String {
    "A".into()
}

impl DiagramSpec {
    pub fn cartan(&self) -> Result<CartanDatum, CliError> {
        if self.kind != "A" {
            return Err(usage(format!("unsupported type `{}`; only A is available", self.kind)));
        }
        CartanDatum::affine_a(self.n).map_err(|e| usage(e.to_string()))
    }

    pub fn tau(&self) -> Vec<usize> {
        self.tau.clone().unwrap_or_else(|| (0..=self.n).collect())
    }

    pub fn diagram(&self) -> Result<SatakeDiagram, CliError> {
        let c = self.cartan()?;
        SatakeDiagram::new(c, &self.x, &self.tau()).map_err(|e| CliError::Math(e.to_string()))
    }

    pub fn params(&self, d: &SatakeDiagram, vars: &[(Var, Rat)]) -> Result<QspParams, CliError> {
        let mut p = QspParams::symbolic(d);
        let size = d.cartan().size();
        for (slot, over) in [(&mut p.gamma, &self.gamma), (&mut p.sigma, &self.sigma)] {
            for (&i, lit) in over {
                if i >= size {
                    return Err(usage(format!("parameter index {i} out of range")));
                }
                slot[i] = rat(lit)?;
            }
        }
        p.substitute(vars).map_err(|e| CliError::Math(e.to_string()))
    }

    pub fn to_json(&self, params: Option<&QspParams>) -> Value {
        let mut j = json!({ "type": self.kind, "n": self.n, "X": self.x, "tau": self.tau() });
        if let Some(p) = params {
            let m = |v: &[Rat]| -> Value {
                Value::Object(v.iter().enumerate().map(|(i, r)| (i.to_string(), Value::from(r.to_string()))).collect())
            };
            j["gamma"] = m(&p.gamma);
            j["sigma"] = m(&p.sigma);
        }
        j
    }
}

pub fn parse_tau(s: &str) -> Result<Option<Vec<usize>>, CliError> {
    if s == "id" {
        return Ok(None);
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| usage(format!("bad τ entry `{t}`"))))
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

pub fn parse_nodes(items: &[String]) -> Result<Vec<usize>, CliError> {
    items
        .iter()
        .flat_map(|s| s.split(','))
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| usage(format!("bad node `{t}`"))))
        .collect()
}

pub fn parse_gauge(s: &str) -> Result<Gauge, CliError> {
    match s {
        "semi-standard" => Ok(Gauge::SemiStandard),
        "standard" => Ok(Gauge::Standard),
        "auxiliary" => Ok(Gauge::Auxiliary),
        _ => Err(usage(format!("unknown gauge `{s}`"))),
    }
}

pub fn gauge_name(g: Gauge) -> &'static str {
    match g {
        Gauge::SemiStandard => "semi-standard",
        Gauge::Standard => "standard",
        Gauge::Auxiliary => "auxiliary",
    }
}

/// Named shift or an explicit comma-separated list of exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftSpec {
    TauMinimal,
    Principal,
    Explicit(Vec<i64>),
}

impl ShiftSpec {
    pub fn parse(s: &str) -> Result<ShiftSpec, CliError> {
        match s {
            "tau-minimal" => Ok(ShiftSpec::TauMinimal),
            "principal" => Ok(ShiftSpec::Principal),
            _ => s
                .split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| usage(format!("bad shift `{s}`"))))
                .collect::<Result<Vec<_>, _>>()
                .map(ShiftSpec::Explicit),
        }
    }

    pub fn resolve(&self, d: &SatakeDiagram) -> Result<GradingShift, CliError> {
        Ok(match self {
            ShiftSpec::TauMinimal => GradingShift::tau_minimal(d),
            ShiftSpec::Principal => GradingShift::principal(d.cartan()),
            ShiftSpec::Explicit(v) if v.len() == d.cartan().size() => GradingShift(v.clone()),
            ShiftSpec::Explicit(_) => return Err(usage("shift needs one exponent per node")),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rep_specs() {
        assert!(RepSpec::parse("eval-sl2:1:a").is_ok());
        assert!(RepSpec::parse("vector-sl:3:q^2*b").is_ok());
        assert!(RepSpec::parse("trivial:2").is_ok());
        for bad in ["eval-sl2:x:a", "spin:1:a", "eval-sl2:1", "vector-sl:3:a+"] {
            assert!(matches!(RepSpec::parse(bad), Err(CliError::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn assignment_lists() {
        let a = assignments(["a=2,g0=1/3", "b=q^-2"]).unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a[2], (Var::B, Rat::q_pow(-2)));
        assert!(assignments(["a=1,a=2"]).is_err());
        assert!(assignments(["x=1"]).is_err());
        assert!(assignments(["p=1"]).is_err());
    }

    #[test]
    fn shifts_and_tau() {
        assert_eq!(ShiftSpec::parse("1,0").unwrap(), ShiftSpec::Explicit(vec![1, 0]));
        assert_eq!(parse_tau("id").unwrap(), None);
        assert_eq!(parse_tau("1,0").unwrap(), Some(vec![1, 0]));
        assert!(parse_tau("1,x").is_err());
    }
}
