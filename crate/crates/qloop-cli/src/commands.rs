//! The subcommands, as functions from a [`Request`] to an [`Outcome`].

use qloop::braid::{Gauge, TwistSpec};
use qloop::irred::{
    check_generic_tensor_irreducible, check_irreducible, check_modified_nilpotent_irreducible, qsp_deformations,
};
use qloop::kmat::{
    convert_grading, paired_unitarity, proportionality, regular_at_zero, solve_k, verify_gre, verify_standard_re,
};
use qloop::report::Check;
use qloop::repcore::{verify_relations, Rep};
use qloop::rmat::{check_unitarity, check_ybe, detect_degeneration, solve_r};
use qloop::rootdata::{validate_gsat, validate_params, GradingShift, QspParams, SatakeDiagram};
use qloop::scalars::{Rat, Var};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::input::{
    assignment_json, build_reps, gauge_name, tensor_all, DiagramSpec, RepSpec, ShiftSpec,
};
use crate::render::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    GsatValidate,
    RepBuild,
    RepCheck,
    RCompute,
    RYbe,
    RUnitarity,
    RDegeneration,
    KCompute,
    KGre,
    KRe,
    KUnitarity,
    KConvert,
    IrredCheck,
}

impl Op {
    pub const ALL: [Op; 13] = [
        Op::GsatValidate,
        Op::RepBuild,
        Op::RepCheck,
        Op::RCompute,
        Op::RYbe,
        Op::RUnitarity,
        Op::RDegeneration,
        Op::KCompute,
        Op::KGre,
        Op::KRe,
        Op::KUnitarity,
        Op::KConvert,
        Op::IrredCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Op::GsatValidate => "gsat validate",
            Op::RepBuild => "rep build",
            Op::RepCheck => "rep check",
            Op::RCompute => "rmatrix compute",
            Op::RYbe => "rmatrix verify-ybe",
            Op::RUnitarity => "rmatrix verify-unitarity",
            Op::RDegeneration => "rmatrix degeneration",
            Op::KCompute => "kmatrix compute",
            Op::KGre => "kmatrix verify-gre",
            Op::KRe => "kmatrix verify-re",
            Op::KUnitarity => "kmatrix verify-unitarity",
            Op::KConvert => "kmatrix convert-grading",
            Op::IrredCheck => "irred check",
        }
    }

    pub fn from_name(s: &str) -> Option<Op> {
        Op::ALL.into_iter().find(|o| o.name() == s)
    }

    fn rep_count(self) -> Option<usize> {
        match self {
            Op::GsatValidate => Some(0),
            Op::RCompute | Op::RUnitarity | Op::RDegeneration | Op::KGre | Op::KRe => Some(2),
            Op::RYbe => Some(3),
            Op::KCompute | Op::KUnitarity | Op::KConvert => Some(1),
            Op::RepBuild | Op::RepCheck | Op::IrredCheck => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrredMode {
    Auto,
    Generators,
    Lowering,
    Coideal,
    Tensor,
}

impl IrredMode {
    pub fn parse(s: &str) -> Result<IrredMode, CliError> {
        Ok(match s {
            "auto" => IrredMode::Auto,
            "generators" => IrredMode::Generators,
            "lowering" => IrredMode::Lowering,
            "coideal" => IrredMode::Coideal,
            "tensor" => IrredMode::Tensor,
            _ => return Err(CliError::Usage(format!("unknown irreducibility mode `{s}`"))),
        })
    }
}

/// Fully parsed input of one operation, shared by flags and scenarios.
#[derive(Debug, Clone)]
pub struct Request {
    pub op: Op,
    pub diagram: Option<DiagramSpec>,
    pub gauge: Gauge,
    pub shift: ShiftSpec,
    pub reps: Vec<RepSpec>,
    pub vars: Vec<(Var, Rat)>,
    /// Evaluation points for `rmatrix degeneration`.
    pub at: Vec<Vec<(Var, Rat)>>,
    pub mode: IrredMode,
}

impl Request {
    pub fn new(op: Op) -> Request {
        Request {
            op,
            diagram: None,
            gauge: Gauge::SemiStandard,
            shift: ShiftSpec::TauMinimal,
            reps: Vec::new(),
            vars: Vec::new(),
            at: Vec::new(),
            mode: IrredMode::Auto,
        }
    }

    fn check_shape(&self) -> Result<(), CliError> {
        let n = self.reps.len();
        let ok = match self.op.rep_count() {
            Some(k) => n == k,
            None if self.op == Op::IrredCheck => (1..=2).contains(&n),
            None => n >= 1,
        };
        if !ok {
            return Err(CliError::Usage(format!("{} does not take {n} --rep argument(s)", self.op.name())));
        }
        if self.op == Op::GsatValidate && self.diagram.is_none() {
            return Err(CliError::Usage("gsat validate needs --n".into()));
        }
        if self.op == Op::RDegeneration && self.at.is_empty() {
            return Err(CliError::Usage("rmatrix degeneration needs at least one --at".into()));
        }
        Ok(())
    }
}

/// Runs a request. Usage errors propagate; mathematical errors become a
/// failing outcome carrying the message.
pub fn run(req: &Request) -> Result<Outcome, CliError> {
    req.check_shape()?;
    let name = req.op.name();
    let result = match req.op {
        Op::GsatValidate => gsat_validate(req),
        Op::RepBuild => rep_build(req),
        Op::RepCheck => rep_check(req),
        Op::RCompute | Op::RYbe | Op::RUnitarity | Op::RDegeneration => rmatrix(req),
        Op::KCompute | Op::KGre | Op::KRe | Op::KUnitarity | Op::KConvert => kmatrix(req),
        Op::IrredCheck => irred(req),
    };
    match result {
        Ok(mut o) => {
            if !req.vars.is_empty() {
                o.set("vars", assignment_json(&req.vars));
            }
            Ok(o)
        }
        Err(CliError::Math(msg)) => {
            let mut o = Outcome::failure(name, &msg);
            o.set("reps", rep_texts(&req.reps));
            Ok(o)
        }
        Err(e) => Err(e),
    }
}

fn rep_texts(reps: &[RepSpec]) -> Value {
    Value::from(reps.iter().map(|r| r.text().to_string()).collect::<Vec<_>>())
}

fn check_json(c: &Check) -> Value {
    serde_json::to_value(c).expect("plain record")
}

fn check_line(c: &Check) -> String {
    match &c.detail {
        None => format!("{}: pass", c.name),
        Some(d) => format!("{}: {} ({d})", c.name, if c.pass { "pass" } else { "fail" }),
    }
}

fn gsat_validate(req: &Request) -> Result<Outcome, CliError> {
    let spec = req.diagram.as_ref().expect("checked");
    let c = spec.cartan()?;
    let mut report = validate_gsat(&c, &spec.x, &spec.tau());
    let mut params = None;
    let mut extra = None;
    if report.valid {
        let d = spec.diagram()?;
        let p = spec.params(&d, &req.vars)?;
        let pv = validate_params(&d, &p);
        report.violations.extend(pv.violations);
        report.valid = report.violations.is_empty();
        extra = Some(json!({
            "restricted_rank": d.restricted_rank(),
            "restrictable": d.is_restrictable(),
        }));
        params = Some(p);
    }
    let mut o = Outcome::new(Op::GsatValidate.name(), report.valid);
    o.set("diagram", spec.to_json(params.as_ref()));
    o.set("valid", report.valid);
    o.set("violations", serde_json::to_value(&report.violations).expect("plain record"));
    if let Some(Value::Object(m)) = extra {
        for (k, v) in m {
            o.set(&k, v);
        }
    }
    if report.valid {
        o.line("valid generalized Satake diagram");
    }
    for v in &report.violations {
        o.line(format!("{}: {}", v.condition, v.detail));
    }
    Ok(o)
}

fn rep_json(spec: &str, v: &Rep) -> Value {
    let mut gens = serde_json::Map::new();
    for i in v.cartan().nodes() {
        gens.insert(format!("E{i}"), v.e(i).to_json());
        gens.insert(format!("F{i}"), v.f(i).to_json());
        gens.insert(format!("K{i}"), v.k(i).to_json());
    }
    json!({
        "spec": spec,
        "dim": v.dim(),
        "weights": v.weights().iter().map(|w| w.0.clone()).collect::<Vec<_>>(),
        "generators": gens,
    })
}

fn rep_build(req: &Request) -> Result<Outcome, CliError> {
    let reps = build_reps(&req.reps, &req.vars)?;
    let v = tensor_all(&reps)?;
    let label = req.reps.iter().map(RepSpec::text).collect::<Vec<_>>().join(" ⊗ ");
    let mut o = Outcome::new(Op::RepBuild.name(), true);
    o.set("reps", rep_texts(&req.reps));
    o.set("representation", rep_json(&label, &v));
    o.line(format!("{label}: dimension {}", v.dim()));
    for i in v.cartan().nodes() {
        o.matrix(&format!("E_{i}"), v.e(i));
        o.matrix(&format!("F_{i}"), v.f(i));
    }
    Ok(o)
}

fn rep_check(req: &Request) -> Result<Outcome, CliError> {
    let reps = build_reps(&req.reps, &req.vars)?;
    let mut items: Vec<(String, Rep)> = req.reps.iter().map(|s| s.text().to_string()).zip(reps.clone()).collect();
    if reps.len() > 1 {
        let label = req.reps.iter().map(RepSpec::text).collect::<Vec<_>>().join(" ⊗ ");
        items.push((label, tensor_all(&reps)?));
    }
    let mut all = true;
    let mut out = Vec::new();
    let mut lines = Vec::new();
    for (label, v) in &items {
        let r = verify_relations(v);
        all &= r.passed();
        lines.push(match r.first_failure() {
            None => format!("{label}: {} relations hold", r.checks.len()),
            Some(f) => format!("{label}: fails {f}"),
        });
        out.push(json!({
            "rep": label,
            "pass": r.passed(),
            "relations": serde_json::to_value(&r.checks).expect("plain record"),
        }));
    }
    let mut o = Outcome::new(Op::RepCheck.name(), all);
    o.set("reps", rep_texts(&req.reps));
    o.set("results", out);
    for l in lines {
        o.line(l);
    }
    Ok(o)
}

fn rmatrix(req: &Request) -> Result<Outcome, CliError> {
    let reps = build_reps(&req.reps, &req.vars)?;
    let mut o = match req.op {
        Op::RCompute => {
            let r = solve_r(&reps[0], &reps[1])?;
            let mut o = Outcome::new(req.op.name(), true);
            o.set("r_matrix", r.to_json());
            o.line(format!("kernel dimension {}", r.kernel_dim));
            o.matrix("R(z)", &r.matrix);
            o
        }
        Op::RYbe => {
            let r = qloop::exec::map(&[(0, 1), (0, 2), (1, 2)], |&(i, j)| solve_r(&reps[i], &reps[j]));
            let [uv, uw, vw] = <[_; 3]>::try_from(r).expect("three pairs");
            let c = check_ybe(&uv?, &uw?, &vw?)?;
            check_outcome(req.op, &c)
        }
        Op::RUnitarity => {
            let vw = solve_r(&reps[0], &reps[1])?;
            let wv = solve_r(&reps[1], &reps[0])?;
            check_outcome(req.op, &check_unitarity(&vw, &wv)?)
        }
        Op::RDegeneration => {
            // solved generically; --vars joins each evaluation point
            let generic = build_reps(&req.reps, &[])?;
            let r = solve_r(&generic[0], &generic[1])?;
            let mut o = Outcome::new(req.op.name(), true);
            let mut found = Vec::new();
            for at in &req.at {
                let point: Vec<(Var, Rat)> = req.vars.iter().chain(at).cloned().collect();
                let kind = detect_degeneration(&r, &point)?;
                o.line(format!("{}: {}", assignment_json(&point), kind.as_str()));
                found.push(json!({ "point": assignment_json(&point), "kind": kind.as_str() }));
            }
            o.set("loci", found);
            o
        }
        _ => unreachable!("R-matrix operation"),
    };
    o.set("reps", rep_texts(&req.reps));
    Ok(o)
}

fn check_outcome(op: Op, c: &Check) -> Outcome {
    let mut o = Outcome::new(op.name(), c.pass);
    o.set("check", check_json(c));
    o.line(check_line(c));
    o
}

struct KSetup {
    spec: DiagramSpec,
    diagram: SatakeDiagram,
    params: QspParams,
    twist: TwistSpec,
    shift: GradingShift,
}

fn k_setup(req: &Request, reps: &[Rep]) -> Result<KSetup, CliError> {
    let spec = match &req.diagram {
        Some(s) => s.clone(),
        None => DiagramSpec {
            kind: "A".into(),
            n: reps[0].cartan().size() - 1,
            ..DiagramSpec::default()
        },
    };
    if spec.cartan()? != *reps[0].cartan() {
        return Err(CliError::Usage("diagram and representation types differ".into()));
    }
    let report = validate_gsat(&spec.cartan()?, &spec.x, &spec.tau());
    if !report.valid {
        return Err(CliError::Math(format!("not a generalized Satake diagram: {report}")));
    }
    let diagram = spec.diagram()?;
    let params = spec.params(&diagram, &req.vars)?;
    let twist = TwistSpec::new(diagram.clone(), req.gauge, &params);
    let shift = req.shift.resolve(&diagram)?;
    Ok(KSetup { spec, diagram, params, twist, shift })
}

fn kmatrix(req: &Request) -> Result<Outcome, CliError> {
    let reps = build_reps(&req.reps, &req.vars)?;
    let s = k_setup(req, &reps)?;
    let mut o = match req.op {
        Op::KCompute => {
            let k = solve_k(&reps[0], &s.twist, &s.shift, &s.params)?;
            let mut o = Outcome::new(req.op.name(), true);
            o.set("k_matrix", k.to_json());
            o.set("regular_at_zero", regular_at_zero(&k.matrix));
            o.line(format!("kernel dimension {}", k.kernel_dim));
            o.line(format!("canonical normalization: {}", k.normalization.canonical));
            o.matrix("K(z)", &k.matrix);
            o
        }
        Op::KGre => {
            let (c, _) = verify_gre(&reps[0], &reps[1], &s.twist, &s.shift, &s.params)?;
            check_outcome(req.op, &c)
        }
        Op::KRe => {
            let c = verify_standard_re(&reps[0], &reps[1], &s.twist, &s.shift, &s.params)?;
            check_outcome(req.op, &c)
        }
        Op::KUnitarity => {
            let (c, kv, kpsi) = paired_unitarity(&reps[0], &s.twist, &s.shift, &s.params)?;
            let mut o = check_outcome(req.op, &c);
            o.set("k_matrix", kv.to_json());
            o.set("k_twisted", kpsi.to_json());
            o.matrix("K_V(z)", &kv.matrix);
            o.matrix("K_{\\psi V}(z)", &kpsi);
            o
        }
        Op::KConvert => {
            let v = &reps[0];
            let principal = GradingShift::principal(s.diagram.cartan());
            let kpr = solve_k(v, &s.twist, &principal, &s.params)?;
            let conv = convert_grading(&kpr, v, &s.diagram, &s.params)?;
            let direct = solve_k(v, &s.twist, &GradingShift::tau_minimal(&s.diagram), &s.params)?;
            let lifted = direct
                .at(&Rat::mono(Var::Z, conv.exponent as i32))
                .map_err(|e| CliError::Math(e.to_string()))?;
            let factor = proportionality(conv.matrix.vec(), lifted.vec());
            let pass = conv.intertwines && factor.is_some();
            let mut o = Outcome::new(req.op.name(), pass);
            o.set("h_tau", conv.h_tau.to_string());
            o.set("root_order", conv.root_order);
            o.set("exponent", conv.exponent);
            o.set("intertwines", conv.intertwines);
            o.set("proportional_to_direct", factor.is_some());
            if let Some(f) = &factor {
                o.set("factor", f.to_string());
            }
            o.set("matrix", conv.matrix.to_json());
            o.line(format!("h_tau = {}, root order {}", conv.h_tau, conv.root_order));
            o.line(format!(
                "intertwines: {}, proportional to direct solve: {}",
                conv.intertwines,
                factor.is_some()
            ));
            o.matrix("K^{conv}(z)", &conv.matrix);
            o
        }
        _ => unreachable!("K-matrix operation"),
    };
    o.set("diagram", s.spec.to_json(Some(&s.params)));
    o.set("gauge", gauge_name(req.gauge));
    o.set("shift", s.shift.0.clone());
    o.set("reps", rep_texts(&req.reps));
    Ok(o)
}

fn irred(req: &Request) -> Result<Outcome, CliError> {
    let reps = build_reps(&req.reps, &req.vars)?;
    let mode = match (req.mode, reps.len()) {
        (IrredMode::Auto, 1) => IrredMode::Lowering,
        (IrredMode::Auto, _) => IrredMode::Tensor,
        (m, _) => m,
    };
    let two = reps.len() == 2;
    if (mode == IrredMode::Tensor) != two {
        return Err(CliError::Usage("tensor mode takes exactly two --rep, the others one".into()));
    }
    let mut specialization = None;
    let (label, verdict) = match mode {
        IrredMode::Generators => ("generators", check_irreducible(&reps[0].generators())?),
        IrredMode::Lowering => ("lowering", check_modified_nilpotent_irreducible(&reps[0], &[])?),
        IrredMode::Coideal => {
            let s = k_setup(req, &reps)?;
            let defs = qsp_deformations(&reps[0], &s.diagram, &s.params)?;
            ("coideal", check_modified_nilpotent_irreducible(&reps[0], &defs)?)
        }
        IrredMode::Tensor => {
            let t = check_generic_tensor_irreducible(&reps[0], &reps[1])?;
            specialization = t.specialization;
            ("tensor", t.verdict)
        }
        IrredMode::Auto => unreachable!("resolved above"),
    };
    let mut o = Outcome::new(Op::IrredCheck.name(), verdict.is_irreducible());
    o.set("mode", label);
    o.set("verdict", verdict.to_json());
    if let Some(sp) = &specialization {
        o.set("specialization", assignment_json(sp));
    }
    o.set("reps", rep_texts(&req.reps));
    o.line(format!("{label}: {}", verdict.to_json()["verdict"].as_str().unwrap_or("?")));
    Ok(o)
}
