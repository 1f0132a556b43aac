mod commands;
mod error;
mod input;
mod render;
mod scenario;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{IrredMode, Op, Request};
use error::CliError;
use input::{assignments, parse_gauge, parse_nodes, parse_tau, DiagramSpec, RepSpec, ShiftSpec};
use render::{Format, Outcome};

/// Exact R- and K-matrices for quantum loop algebra representations.
#[derive(Debug, Parser)]
#[command(name = "qloop", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    output: Format,
    /// Substitutions `name=literal`, comma separated, applied before solving.
    #[arg(long, global = true, value_name = "ASSIGN")]
    vars: Vec<String>,
    #[command(subcommand)]
    group: Group,
}

#[derive(Debug, Subcommand)]
enum Group {
    /// Generalized Satake diagrams.
    Gsat {
        #[command(subcommand)]
        cmd: GsatCmd,
    },
    /// Builder representations.
    Rep {
        #[command(subcommand)]
        cmd: RepCmd,
    },
    /// R-matrices of tensor products.
    Rmatrix {
        #[command(subcommand)]
        cmd: RCmd,
    },
    /// K-matrices for a coideal datum.
    Kmatrix {
        #[command(subcommand)]
        cmd: KCmd,
    },
    /// Irreducibility checks.
    Irred {
        #[command(subcommand)]
        cmd: IrredCmd,
    },
    /// End-to-end scenarios.
    Pipeline {
        #[command(subcommand)]
        cmd: PipelineCmd,
    },
}

#[derive(Debug, Subcommand)]
enum GsatCmd {
    Validate(DiagramArgs),
}

#[derive(Debug, Subcommand)]
enum RepCmd {
    /// Generator matrices; several --rep give their tensor product.
    Build(Reps),
    /// Defining relations of each rep and of their tensor product.
    Check(Reps),
}

#[derive(Debug, Subcommand)]
enum RCmd {
    Compute(Reps),
    VerifyYbe(Reps),
    VerifyUnitarity(Reps),
    /// Classify R at points given by --at (plus --vars).
    Degeneration {
        #[command(flatten)]
        reps: Reps,
        #[arg(long, value_name = "ASSIGN", required = true)]
        at: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
enum KCmd {
    Compute(KArgs),
    VerifyGre(KArgs),
    VerifyRe(KArgs),
    VerifyUnitarity(KArgs),
    /// Principal-shift solution converted to the τ-minimal shift.
    ConvertGrading(KArgs),
}

#[derive(Debug, Subcommand)]
enum IrredCmd {
    Check {
        #[command(flatten)]
        k: KArgs,
        /// auto, generators, lowering, coideal or tensor.
        #[arg(long, default_value = "auto")]
        mode: String,
    },
}

#[derive(Debug, Subcommand)]
enum PipelineCmd {
    /// Run a shipped scenario by name, or a scenario file.
    Run { scenario: String },
    /// Names of the shipped scenarios.
    List,
}

#[derive(Debug, Args)]
struct Reps {
    /// `eval-sl2:<2j>:<a>`, `vector-sl:<n>:<a>` or `trivial:<n>`.
    #[arg(long = "rep", value_name = "SPEC")]
    reps: Vec<String>,
}

#[derive(Debug, Args)]
struct DiagramArgs {
    #[arg(long = "type", default_value = "A")]
    kind: String,
    /// Rank of the affine type; taken from the reps when omitted.
    #[arg(long)]
    n: Option<usize>,
    /// Black nodes, comma separated.
    #[arg(long = "X", value_name = "NODES")]
    x: Vec<String>,
    /// `id` or the images of the nodes, comma separated.
    #[arg(long, default_value = "id")]
    tau: String,
    /// `node=literal` overrides of the symbolic γ.
    #[arg(long, value_name = "ASSIGN")]
    gamma: Vec<String>,
    #[arg(long, value_name = "ASSIGN")]
    sigma: Vec<String>,
}

#[derive(Debug, Args)]
struct KArgs {
    #[command(flatten)]
    reps: Reps,
    #[command(flatten)]
    diagram: DiagramArgs,
    /// semi-standard, standard or auxiliary.
    #[arg(long, default_value = "semi-standard")]
    gauge: String,
    /// tau-minimal, principal, or exponents per node.
    #[arg(long, default_value = "tau-minimal")]
    shift: String,
}

fn overrides(items: &[String]) -> Result<std::collections::BTreeMap<usize, String>, CliError> {
    let mut out = std::collections::BTreeMap::new();
    for item in items.iter().flat_map(|s| s.split(',')).filter(|s| !s.trim().is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected node=literal, got `{item}`")))?;
        let node = k
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("bad node `{k}`")))?;
        out.insert(node, v.trim().to_string());
    }
    Ok(out)
}

impl DiagramArgs {
    fn spec(&self) -> Result<Option<DiagramSpec>, CliError> {
        let Some(n) = self.n else {
            let given = !self.x.is_empty() || self.tau != "id" || !self.gamma.is_empty() || !self.sigma.is_empty();
            return if given {
                Err(CliError::Usage("diagram options need --n".into()))
            } else {
                Ok(None)
            };
        };
        Ok(Some(DiagramSpec {
            kind: self.kind.clone(),
            n,
            x: parse_nodes(&self.x)?,
            tau: parse_tau(&self.tau)?,
            gamma: overrides(&self.gamma)?,
            sigma: overrides(&self.sigma)?,
        }))
    }
}

fn reps(r: &Reps) -> Result<Vec<RepSpec>, CliError> {
    r.reps.iter().map(|s| RepSpec::parse(s)).collect()
}

fn k_request(op: Op, k: &KArgs) -> Result<Request, CliError> {
    let mut req = Request::new(op);
    req.reps = reps(&k.reps)?;
    req.diagram = k.diagram.spec()?;
    req.gauge = parse_gauge(&k.gauge)?;
    req.shift = ShiftSpec::parse(&k.shift)?;
    Ok(req)
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let vars = assignments(cli.vars.iter().map(String::as_str))?;
    let mut req = match &cli.group {
        Group::Gsat { cmd: GsatCmd::Validate(d) } => {
            let mut req = Request::new(Op::GsatValidate);
            req.diagram = d.spec()?;
            req
        }
        Group::Rep { cmd } => {
            let (op, r) = match cmd {
                RepCmd::Build(r) => (Op::RepBuild, r),
                RepCmd::Check(r) => (Op::RepCheck, r),
            };
            let mut req = Request::new(op);
            req.reps = reps(r)?;
            req
        }
        Group::Rmatrix { cmd } => {
            let (op, r) = match cmd {
                RCmd::Compute(r) => (Op::RCompute, r),
                RCmd::VerifyYbe(r) => (Op::RYbe, r),
                RCmd::VerifyUnitarity(r) => (Op::RUnitarity, r),
                RCmd::Degeneration { reps, .. } => (Op::RDegeneration, reps),
            };
            let mut req = Request::new(op);
            req.reps = reps(r)?;
            if let RCmd::Degeneration { at, .. } = cmd {
                req.at = at.iter().map(|a| assignments([a.as_str()])).collect::<Result<_, _>>()?;
            }
            req
        }
        Group::Kmatrix { cmd } => {
            let (op, k) = match cmd {
                KCmd::Compute(k) => (Op::KCompute, k),
                KCmd::VerifyGre(k) => (Op::KGre, k),
                KCmd::VerifyRe(k) => (Op::KRe, k),
                KCmd::VerifyUnitarity(k) => (Op::KUnitarity, k),
                KCmd::ConvertGrading(k) => (Op::KConvert, k),
            };
            k_request(op, k)?
        }
        Group::Irred { cmd: IrredCmd::Check { k, mode } } => {
            let mut req = k_request(Op::IrredCheck, k)?;
            req.mode = IrredMode::parse(mode)?;
            req
        }
        Group::Pipeline { cmd: PipelineCmd::Run { scenario } } => {
            if !vars.is_empty() {
                return Err(CliError::Usage("scenarios carry their own substitutions".into()));
            }
            return scenario::run_scenario(&scenario::load(scenario)?);
        }
        Group::Pipeline { cmd: PipelineCmd::List } => {
            let mut o = Outcome::new("pipeline list", true);
            let names: Vec<&str> = scenario::SHIPPED.iter().map(|(n, _)| *n).collect();
            for n in &names {
                o.line(*n);
            }
            o.set("scenarios", names);
            return Ok(o);
        }
    };
    req.vars = vars;
    commands::run(&req)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(o) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = out.write_all(o.render(cli.output).as_bytes());
            if o.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Math(msg)) => {
            let o = Outcome::failure("qloop", &msg);
            print!("{}", o.render(cli.output));
            ExitCode::from(1)
        }
    }
}
