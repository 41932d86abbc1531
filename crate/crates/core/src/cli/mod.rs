//! The `dtau` command line: one model file, many subcommands, one JSON report
//! on stdout.
//!
//! Exit codes: 0 when the command succeeds or the check passes, 1 when a
//! mathematical check fails, 2 for input and usage errors.

mod model;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

pub use model::{Model, NamedMap, SectionEntry, SectionTarget};

use crate::atlas::{check_cocycle, sigma_compatible, tangent_atlas, tau_atlas, AtlasManifold, CocycleFailure};
use crate::basefield::{BaseField, RatFunc, Rational};
use crate::dgroup::{
    check_dgroup_kind, check_group_axioms, dpoint_check, prolong_group, AffineAlgGroup, DGroup, DGroupSection,
    IdentityCheck,
};
use crate::error::{Error, Result};
use crate::ideals::{buchberger, OrderKind, TermOrder, DEFAULT_DEGREE_CAP};
use crate::polyalg::{parse_point, parse_poly, parse_ratfn};
use crate::prolong::{
    check_nabla_in_tau, correspondence_transfer, derive_point, doubled_names, f_del_rational, fiber_solve_kind,
    nabla, prolong_map, prolong_variety_kind, AffineMap, AffineVariety, ProlongKind,
};
use crate::series::{solve_dpoint, verify_on_variety, SeriesPoint, TruncSeries};

#[derive(Parser, Debug)]
#[command(name = "dtau", version, about = "Exact prolongation calculus over Q and Q(t)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Model file (JSON).
    #[arg(short = 'i', long = "input", global = true)]
    input: Option<PathBuf>,
    #[arg(short = 'v', long, global = true)]
    variety: Option<String>,
    #[arg(short = 'g', long, global = true)]
    group: Option<String>,
    #[arg(short = 's', long, global = true)]
    section: Option<String>,
    #[arg(short = 'a', long, global = true)]
    atlas: Option<String>,
    #[arg(short = 'c', long, global = true)]
    correspondence: Option<String>,
    #[arg(short = 'm', long, global = true)]
    map: Option<String>,
    /// Series truncation order, or `r` for `nabla`.
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Initial point for `solve-series`, comma-separated rationals.
    #[arg(long, global = true)]
    init: Option<String>,
    #[arg(long, value_enum, default_value_t = TermOrderArg::Grevlex, global = true)]
    term_order: TermOrderArg,
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP, global = true)]
    degree_cap: u32,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// A point, comma-separated base-field elements.
    #[arg(long, global = true, allow_hyphen_values = true)]
    point: Option<String>,
    /// Second point (the right-hand side of `transfer`).
    #[arg(long, global = true, allow_hyphen_values = true)]
    point2: Option<String>,
    /// A standalone expression.
    #[arg(long, global = true, allow_hyphen_values = true)]
    expr: Option<String>,
    /// Variables of `--expr`, comma-separated.
    #[arg(long, value_delimiter = ',', global = true)]
    vars: Vec<String>,
    /// Series coefficients: comma-separated per variable, `;` between variables.
    #[arg(long, global = true, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// Use `D`/`T` instead of `τ`.
    #[arg(long, global = true)]
    tangent: bool,
    /// Add wall-clock timing to the report (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TermOrderArg {
    Grevlex,
    Lex,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Validate a model (or one `--expr`) and print it canonically.
    Parse,
    /// Reduced Gröbner basis of a variety's ideal.
    Gb,
    /// Normal form of `--expr` modulo a variety's ideal.
    Nf,
    /// Coefficient-derived map `F^∂`.
    Fdel,
    /// `τ(F)` (or `D(F)` with `--tangent`).
    TauMap,
    /// `T(V)`.
    TVariety,
    /// `τ(V)`.
    TauVariety,
    /// `(a, ∂a, …, ∂^r a)`.
    Nabla,
    /// Whether `(a, ∂a)` lies on `τ(V)`.
    CheckNabla,
    /// The fiber `τ(V)_a`.
    Fiber,
    /// Fiber transfer along a correspondence at `(a, b)`.
    Transfer,
    /// Cocycle conditions of an atlas.
    CheckCocycle,
    /// Prolonged atlas, re-verified, plus a σ-compatibility spot check.
    TauAtlas,
    /// Group axioms modulo the variety's ideal.
    CheckGroup,
    /// `τ(G)` (or `T(G)`), re-verified.
    TauGroup,
    /// Section and homomorphism conditions of a D-group.
    CheckDgroup,
    /// Whether `σ(g) = ∂g`.
    CheckDpoint,
    /// Power-series solution of `∂a = σ(a)`.
    SolveSeries,
    /// Residuals of a series point on a variety.
    VerifySeries,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Parse => "parse",
            Command::Gb => "gb",
            Command::Nf => "nf",
            Command::Fdel => "fdel",
            Command::TauMap => "tau-map",
            Command::TVariety => "t-variety",
            Command::TauVariety => "tau-variety",
            Command::Nabla => "nabla",
            Command::CheckNabla => "check-nabla",
            Command::Fiber => "fiber",
            Command::Transfer => "transfer",
            Command::CheckCocycle => "check-cocycle",
            Command::TauAtlas => "tau-atlas",
            Command::CheckGroup => "check-group",
            Command::TauGroup => "tau-group",
            Command::CheckDgroup => "check-dgroup",
            Command::CheckDpoint => "check-dpoint",
            Command::SolveSeries => "solve-series",
            Command::VerifySeries => "verify-series",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// What a run produced: exit code, JSON report, diagnostics.
#[derive(Clone, Debug)]
pub struct Output {
    pub status: Status,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

struct Outcome {
    status: Status,
    details: Value,
}

impl Outcome {
    fn pass(details: Value) -> Self {
        Outcome { status: Status::Pass, details }
    }

    fn check(ok: bool, details: Value) -> Self {
        Outcome { status: if ok { Status::Pass } else { Status::Fail }, details }
    }
}

/// Errors that mean "the mathematics said no" rather than "bad input".
fn is_check_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::NoSolution
            | Error::TransferNotFunctional
            | Error::GroupAxiomsFailed(_)
            | Error::IndeterminateOnVariety
            | Error::CocycleViolation(_)
            | Error::ChartIncompatibility(_)
    )
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "DivisionByZero",
        Error::ArityMismatch { .. } => "ArityMismatch",
        Error::IndexOutOfRange { .. } => "IndexOutOfRange",
        Error::IdenticallyZeroDenominator => "IdenticallyZeroDenominator",
        Error::DenominatorVanishes => "DenominatorVanishes",
        Error::Syntax { .. } => "Syntax",
        Error::UnknownVariable(_) => "UnknownVariable",
        Error::TInQField => "TInQField",
        Error::NotAPolynomial(_) => "NotAPolynomial",
        Error::DegreeCapExceeded { .. } => "DegreeCapExceeded",
        Error::PointNotOnVariety(_) => "PointNotOnVariety",
        Error::NoSolution => "NoSolution",
        Error::TransferNotFunctional => "TransferNotFunctional",
        Error::CocycleViolation(_) => "CocycleViolation",
        Error::ChartIncompatibility(_) => "ChartIncompatibility",
        Error::GroupAxiomsFailed(_) => "GroupAxiomsFailed",
        Error::IndeterminateOnVariety => "IndeterminateOnVariety",
        Error::NonUnitConstantTerm => "NonUnitConstantTerm",
        Error::DenominatorVanishesAtInitialPoint => "DenominatorVanishesAtInitialPoint",
        Error::OrderMismatch(..) => "OrderMismatch",
        Error::PoleAtOrigin(_) => "PoleAtOrigin",
        Error::Model(_) => "Model",
    }
}

/// Runs one command line (program name included) and renders its report.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let argv: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output { status: Status::Pass, stdout: e.to_string(), stderr: String::new() };
            }
            let report = json!({
                "argv": argv,
                "command": Value::Null,
                "details": { "error": { "kind": "Usage", "message": e.kind().to_string() } },
                "status": "error",
            });
            return Output { status: Status::Error, stdout: render(&report), stderr: e.to_string() };
        }
    };
    let started = Instant::now();
    let (outcome, stderr) = match dispatch(&cli) {
        Ok(o) => (o, String::new()),
        Err(e) => {
            let status = if is_check_failure(&e) { Status::Fail } else { Status::Error };
            let details = json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } });
            (Outcome { status, details }, format!("dtau {}: {e}\n", cli.command.name()))
        }
    };
    let mut report = Map::new();
    report.insert("argv".into(), json!(argv));
    report.insert("command".into(), json!(cli.command.name()));
    report.insert("details".into(), outcome.details);
    report.insert("status".into(), json!(outcome.status.as_str()));
    if cli.timing {
        report.insert("timing_ms".into(), json!(started.elapsed().as_secs_f64() * 1000.0));
    }
    Output { status: outcome.status, stdout: render(&Value::Object(report)), stderr }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn need<'a>(opt: &'a Option<String>, flag: &str) -> Result<&'a str> {
    opt.as_deref().ok_or_else(|| Error::Model(format!("missing required flag {flag}")))
}

fn load(cli: &Cli) -> Result<Model> {
    let path = cli.input.as_ref().ok_or_else(|| Error::Model("missing required flag -i <model.json>".into()))?;
    Model::load(path)
}

fn kind(cli: &Cli) -> ProlongKind {
    if cli.tangent {
        ProlongKind::Tangent
    } else {
        ProlongKind::Tau
    }
}

fn term_order(cli: &Cli, n: usize) -> TermOrder {
    match cli.term_order {
        TermOrderArg::Grevlex => TermOrder::new(OrderKind::Grevlex, n),
        TermOrderArg::Lex => TermOrder::new(OrderKind::Lex, n),
    }
}

fn field_of(cli: &Cli) -> Result<BaseField> {
    Ok(match &cli.input {
        Some(_) => load(cli)?.field,
        None => BaseField::Qt,
    })
}

fn strs(xs: &[RatFunc]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn rat_strs(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn affine_json(m: &AffineMap) -> Value {
    json!({
        "matrix": m.matrix.iter().map(|r| strs(r)).collect::<Vec<_>>(),
        "offset": strs(&m.offset),
    })
}

fn checks_json(checks: &[IdentityCheck]) -> Value {
    let items: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "component": c.component,
                "condition": c.condition,
                "holds": c.holds,
                "witness": c.witness_string(),
            })
        })
        .collect();
    json!({ "checks": items, "passed": checks.iter().all(|c| c.holds) })
}

fn variety_json(v: &AffineVariety) -> Value {
    json!({ "gens": v.gen_strings(), "vars": v.vars() })
}

fn group_json(g: &AffineAlgGroup) -> Value {
    let doubled = crate::dgroup::product_names(g.variety.vars(), 2);
    json!({
        "identity": strs(&g.identity),
        "inv": g.inv.to_strings(g.variety.vars()),
        "mult": g.mult.to_strings(&doubled),
        "variety": g.variety.name(),
        "vars": g.variety.vars(),
    })
}

fn atlas_transitions_json(m: &AtlasManifold) -> Value {
    let mut out = Map::new();
    for ((i, j), phi) in m.transitions() {
        out.insert(format!("{i},{j}"), json!(phi.to_strings(&m.vars)));
    }
    Value::Object(out)
}

fn cocycle_failure(f: &CocycleFailure) -> String {
    match f {
        CocycleFailure::Composition { i, j, k } => format!("composition ({i},{j},{k})"),
        CocycleFailure::Inverse { i, j } => format!("inverse ({i},{j})"),
        CocycleFailure::Identity { i } => format!("identity ({i},{i})"),
        CocycleFailure::Degenerate { i, j, k } => format!("degenerate ({i},{j},{k})"),
    }
}

/// The section named by `-s`, with the variety (and group, if any) it lives on.
fn resolve_section<'m>(
    model: &'m Model,
    cli: &Cli,
) -> Result<(&'m AffineVariety, Option<&'m AffineAlgGroup>, &'m SectionEntry)> {
    let name = need(&cli.section, "-s <section>")?;
    let entry = model.section(name)?;
    match &entry.target {
        SectionTarget::Group(g) => {
            if let Some(requested) = &cli.group {
                if requested != g {
                    return Err(Error::Model(format!("section `{name}` belongs to group `{g}`, not `{requested}`")));
                }
            }
            let group = model.group(g)?;
            Ok((&group.variety, Some(group), entry))
        }
        SectionTarget::Variety(v) => {
            if cli.group.is_some() {
                return Err(Error::Model(format!("section `{name}` is attached to variety `{v}`, not a group")));
            }
            Ok((model.variety(v)?, None, entry))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let cap = cli.degree_cap;
    match cli.command {
        Command::Parse => cmd_parse(cli),
        Command::Gb => {
            let model = load(cli)?;
            let v = model.variety(need(&cli.variety, "-v <variety>")?)?;
            let order = term_order(cli, v.ambient());
            let gb = buchberger(&v.ideal(), &order, cap)?;
            Ok(Outcome::pass(json!({
                "basis": gb.gens().iter().map(|g| g.to_string_with(v.vars())).collect::<Vec<_>>(),
                "term_order": format!("{:?}", order.kind).to_lowercase(),
                "unit": gb.is_unit(),
                "vars": v.vars(),
            })))
        }
        Command::Nf => {
            let model = load(cli)?;
            let v = model.variety(need(&cli.variety, "-v <variety>")?)?;
            let p = parse_poly(need(&cli.expr, "--expr <polynomial>")?, v.vars(), model.field)?;
            let gb = buchberger(&v.ideal(), &term_order(cli, v.ambient()), cap)?;
            let nf = gb.normal_form(&p)?;
            Ok(Outcome::pass(json!({
                "input": p.to_string_with(v.vars()),
                "member": nf.is_zero(),
                "normal_form": nf.to_string_with(v.vars()),
            })))
        }
        Command::Fdel => {
            let model = load(cli)?;
            let m = model.map(need(&cli.map, "-m <map>")?)?;
            Ok(Outcome::pass(json!({
                "components": f_del_rational(&m.map).to_strings(&m.vars),
                "vars": m.vars,
            })))
        }
        Command::TauMap => {
            let model = load(cli)?;
            let m = model.map(need(&cli.map, "-m <map>")?)?;
            let names = doubled_names(&m.vars);
            let prolonged = prolong_map(&m.map, kind(cli))?;
            Ok(Outcome::pass(json!({
                "components": prolonged.to_strings(&names),
                "kind": kind(cli),
                "vars": names,
            })))
        }
        Command::TVariety | Command::TauVariety => {
            let model = load(cli)?;
            let v = model.variety(need(&cli.variety, "-v <variety>")?)?;
            let k = if cli.command == Command::TVariety { ProlongKind::Tangent } else { ProlongKind::Tau };
            let pv = prolong_variety_kind(v, k);
            let vars = pv.total.vars().to_vec();
            Ok(Outcome::pass(json!({
                "base_gens": v.gen_strings(),
                "fiber_gens": pv.fiber_gens().iter().map(|g| g.to_string_with(&vars)).collect::<Vec<_>>(),
                "gens": pv.total.gen_strings(),
                "name": pv.total.name(),
                "vars": vars,
            })))
        }
        Command::Nabla => {
            let field = field_of(cli)?;
            let a = parse_point(need(&cli.point, "--point <a>")?, field)?;
            let r = cli.order.unwrap_or(1);
            let levels: Vec<Vec<String>> = nabla(&a, r, field).iter().map(|l| strs(l)).collect();
            Ok(Outcome::pass(json!({ "levels": levels, "order": r })))
        }
        Command::CheckNabla => {
            let model = load(cli)?;
            let v = model.variety(need(&cli.variety, "-v <variety>")?)?;
            let a = parse_point(need(&cli.point, "--point <a>")?, model.field)?;
            let ok = check_nabla_in_tau(v, &a)?;
            Ok(Outcome::check(ok, json!({ "derivative": strs(&derive_point(&a, model.field)), "point": strs(&a) })))
        }
        Command::Fiber => {
            let model = load(cli)?;
            let v = model.variety(need(&cli.variety, "-v <variety>")?)?;
            let a = parse_point(need(&cli.point, "--point <a>")?, model.field)?;
            let f = fiber_solve_kind(v, &a, kind(cli))?;
            Ok(Outcome::pass(json!({
                "dim": f.dim(),
                "kernel": f.kernel.iter().map(|k| strs(k)).collect::<Vec<_>>(),
                "kind": kind(cli),
                "particular": strs(&f.particular),
                "rank": f.rank,
            })))
        }
        Command::Transfer => {
            let model = load(cli)?;
            let c = model.correspondence(need(&cli.correspondence, "-c <correspondence>")?)?;
            let a = parse_point(need(&cli.point, "--point <a>")?, model.field)?;
            let b = parse_point(need(&cli.point2, "--point2 <b>")?, model.field)?;
            let t = correspondence_transfer(c, &a, &b)?;
            let roundtrip = t.inverse.as_ref().map(|inv| inv.compose(&t.forward).is_identity());
            Ok(Outcome::pass(json!({
                "fiber_dim": t.fiber_dim,
                "forward": affine_json(&t.forward),
                "inverse": t.inverse.as_ref().map(affine_json),
                "invertible": t.invertible(),
                "inverse_after_forward_is_identity": roundtrip,
            })))
        }
        Command::CheckCocycle => {
            let model = load(cli)?;
            let m = model.atlas(need(&cli.atlas, "-a <atlas>")?)?;
            let rep = check_cocycle(m);
            Ok(Outcome::check(
                rep.passed(),
                json!({
                    "failures": rep.failures.iter().map(cocycle_failure).collect::<Vec<_>>(),
                    "inverses_checked": rep.inverses_checked,
                    "triples_checked": rep.triples_checked,
                }),
            ))
        }
        Command::TauAtlas => cmd_tau_atlas(cli),
        Command::CheckGroup => {
            let model = load(cli)?;
            let g = model.group(need(&cli.group, "-g <group>")?)?;
            let rep = check_group_axioms(g, cap)?;
            Ok(Outcome::check(rep.passed(), checks_json(&rep.checks)))
        }
        Command::TauGroup => {
            let model = load(cli)?;
            let g = model.group(need(&cli.group, "-g <group>")?)?;
            let (tg, _) = prolong_group(g, kind(cli), cap)?;
            let mut details = group_json(&tg.group);
            details["gens"] = json!(tg.group.variety.gen_strings());
            details["kind"] = json!(kind(cli));
            Ok(Outcome::pass(details))
        }
        Command::CheckDgroup => {
            let model = load(cli)?;
            let (_, group, entry) = resolve_section(&model, cli)?;
            let g = group.ok_or_else(|| Error::Model("check-dgroup needs a section attached to a group".into()))?;
            let axioms = check_group_axioms(g, cap)?;
            if !axioms.passed() {
                return Ok(Outcome::check(false, json!({ "group_axioms": checks_json(&axioms.checks) })));
            }
            let s = DGroupSection::new(need(&cli.section, "-s")?, g, entry.sigma.clone())?;
            let rep = check_dgroup_kind(g, &s, kind(cli), cap)?;
            Ok(Outcome::check(
                rep.passed(),
                json!({
                    "homomorphism": checks_json(&rep.homomorphism),
                    "kind": rep.kind,
                    "section": checks_json(&rep.section),
                }),
            ))
        }
        Command::CheckDpoint => {
            let model = load(cli)?;
            let (_, group, entry) = resolve_section(&model, cli)?;
            let g = group.ok_or_else(|| Error::Model("check-dpoint needs a section attached to a group".into()))?;
            let p = parse_point(need(&cli.point, "--point <g>")?, model.field)?;
            let section = DGroupSection::new(need(&cli.section, "-s")?, g, entry.sigma.clone())?;
            let d = DGroup { group: g.clone(), section };
            let ok = dpoint_check(&d, &p)?;
            Ok(Outcome::check(
                ok,
                json!({
                    "derivative": strs(&derive_point(&p, model.field)),
                    "point": strs(&p),
                    "sigma": strs(&d.section.sigma.eval(&p)?),
                }),
            ))
        }
        Command::SolveSeries => {
            let model = load(cli)?;
            let (v, _, entry) = resolve_section(&model, cli)?;
            let init = parse_point(need(&cli.init, "--init <a0>")?, BaseField::Q)?;
            let a0: Vec<Rational> = init.iter().map(|c| c.as_rational().expect("constant")).collect();
            let order = cli.order.unwrap_or(10);
            let sol = solve_dpoint(v, &entry.sigma, &a0, order)?;
            Ok(Outcome::check(
                sol.residuals.passed,
                json!({
                    "coefficients": series_json(v.vars(), &sol.point),
                    "vars": v.vars(),
                    "init": rat_strs(&a0),
                    "order": order,
                    "residuals": residuals_json(&sol.residuals.residuals),
                    "residuals_zero": sol.residuals.passed,
                }),
            ))
        }
        Command::VerifySeries => {
            let model = load(cli)?;
            let v = match (&cli.variety, &cli.section) {
                (Some(name), _) => model.variety(name)?,
                (None, Some(_)) => resolve_section(&model, cli)?.0,
                (None, None) => match &cli.group {
                    Some(g) => &model.group(g)?.variety,
                    None => return Err(Error::Model("verify-series needs -v, -g or -s".into())),
                },
            };
            let p = parse_series(need(&cli.coeffs, "--coeffs <c0,c1,..;..>")?)?;
            if p.components.len() != v.ambient() {
                return Err(Error::ArityMismatch { expected: v.ambient(), found: p.components.len() });
            }
            let rep = verify_on_variety(v, &p)?;
            Ok(Outcome::check(
                rep.passed,
                json!({ "order": p.order(), "residuals": residuals_json(&rep.residuals), "residuals_zero": rep.passed }),
            ))
        }
    }
}

fn series_json(vars: &[String], p: &SeriesPoint) -> Value {
    let mut out = Map::new();
    for (v, s) in vars.iter().zip(&p.components) {
        out.insert(v.clone(), json!(s.to_strings()));
    }
    Value::Object(out)
}

fn residuals_json(rs: &[TruncSeries]) -> Value {
    json!(rs.iter().map(TruncSeries::to_strings).collect::<Vec<_>>())
}

fn parse_series(src: &str) -> Result<SeriesPoint> {
    let comps = src
        .split(';')
        .map(|part| {
            let cs = parse_point(part, BaseField::Q)?;
            Ok(TruncSeries::new(cs.iter().map(|c| c.as_rational().expect("constant")).collect()))
        })
        .collect::<Result<Vec<_>>>()?;
    SeriesPoint::new(comps)
}

fn cmd_parse(cli: &Cli) -> Result<Outcome> {
    if let Some(expr) = &cli.expr {
        let (field, vars) = match &cli.input {
            Some(_) => {
                let model = load(cli)?;
                let vars = match &cli.variety {
                    Some(v) => model.variety(v)?.vars().to_vec(),
                    None => cli.vars.clone(),
                };
                (model.field, vars)
            }
            None => (BaseField::Qt, cli.vars.clone()),
        };
        let r = parse_ratfn(expr, &vars, field)?;
        return Ok(Outcome::pass(json!({
            "canonical": r.to_string_with(&vars),
            "polynomial": r.as_poly().is_some(),
            "vars": vars,
        })));
    }
    let model = load(cli)?;
    let mut varieties = Map::new();
    for (name, v) in &model.varieties {
        varieties.insert(name.clone(), variety_json(v));
    }
    let mut maps = Map::new();
    for (name, m) in &model.maps {
        maps.insert(name.clone(), json!({ "exprs": m.map.to_strings(&m.vars), "vars": m.vars }));
    }
    let mut groups = Map::new();
    for (name, g) in &model.groups {
        groups.insert(name.clone(), group_json(g));
    }
    let mut sections = Map::new();
    for (name, s) in &model.sections {
        let (key, target, vars) = match &s.target {
            SectionTarget::Group(g) => ("group", g, model.group(g)?.variety.vars().to_vec()),
            SectionTarget::Variety(v) => ("variety", v, model.variety(v)?.vars().to_vec()),
        };
        sections.insert(name.clone(), json!({ key: target, "sigma": s.sigma.to_strings(&vars) }));
    }
    let mut atlases = Map::new();
    for (name, a) in &model.atlases {
        atlases.insert(
            name.clone(),
            json!({ "charts": a.charts, "dim": a.dim, "transitions": atlas_transitions_json(a), "vars": a.vars }),
        );
    }
    let mut correspondences = Map::new();
    for (name, c) in &model.correspondences {
        correspondences.insert(
            name.clone(),
            json!({ "gens": c.graph.gen_strings(), "left": c.left.name(), "right": c.right.name() }),
        );
    }
    Ok(Outcome::pass(json!({
        "atlases": atlases,
        "basefield": model.field,
        "correspondences": correspondences,
        "groups": groups,
        "maps": maps,
        "sections": sections,
        "varieties": varieties,
    })))
}

const SIGMA_SAMPLES: usize = 20;

fn cmd_tau_atlas(cli: &Cli) -> Result<Outcome> {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    let model = load(cli)?;
    let m = model.atlas(need(&cli.atlas, "-a <atlas>")?)?;
    let k = kind(cli);
    let prolonged = match k {
        ProlongKind::Tangent => tangent_atlas(m)?,
        ProlongKind::Tau => tau_atlas(m)?,
    };
    let pm = prolonged.as_manifold();
    let mut details = json!({
        "kind": k,
        "transitions": atlas_transitions_json(&pm),
        "vars": pm.vars,
    });
    if k == ProlongKind::Tangent {
        return Ok(Outcome::pass(details));
    }
    let pairs: Vec<(usize, usize)> = m.transitions().keys().copied().filter(|(i, j)| i != j).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut attempts = 0;
    while checked < SIGMA_SAMPLES && !pairs.is_empty() && attempts < 50 * SIGMA_SAMPLES {
        attempts += 1;
        let (i, j) = pairs[rng.gen_range(0..pairs.len())];
        let sample = |rng: &mut ChaCha8Rng| -> Vec<RatFunc> {
            (0..m.dim)
                .map(|_| {
                    let c = RatFunc::from(crate::basefield::rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)));
                    match model.field {
                        BaseField::Q => c,
                        BaseField::Qt => c.add(&RatFunc::from(rng.gen_range(-2..=2_i64)).mul(&RatFunc::t())),
                    }
                })
                .collect()
        };
        let a = sample(&mut rng);
        let u = sample(&mut rng);
        match sigma_compatible(m, i, j, &a, &u) {
            Ok(true) => checked += 1,
            Ok(false) => {
                checked += 1;
                failures.push(json!({ "chart_pair": format!("{i},{j}"), "point": strs(&a), "fiber": strs(&u) }));
            }
            Err(Error::DenominatorVanishes) => {}
            Err(e) => return Err(e),
        }
    }
    details["sigma_compatibility"] = json!({ "failures": failures, "samples": checked, "seed": cli.seed });
    Ok(Outcome::check(failures.is_empty(), details))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_2_with_a_report() {
        let out = run(["dtau", "no-such-command"]);
        assert_eq!(out.exit_code(), 2);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["status"], "error");
        let out = run(["dtau", "gb"]);
        assert_eq!(out.exit_code(), 2);
        assert!(out.stdout.contains("missing required flag -i"));
    }

    #[test]
    fn standalone_expression() {
        let out = run(["dtau", "parse", "--expr", "x*(y + t) - 1/2", "--vars", "x,y"]);
        assert_eq!(out.exit_code(), 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["details"]["canonical"], "x*y + t*x - 1/2");
        assert_eq!(v["details"]["polynomial"], true);
        let out = run(["dtau", "nabla", "--point", "t^2,1/t", "--order", "2"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["details"]["levels"], json!([["t^2", "1/t"], ["2*t", "-1/t^2"], ["2", "2/t^3"]]));
    }
}
