//! Command-line front end. [`run_command`] parses an argument vector,
//! runs one subcommand and returns the exit code with the full text of
//! both output streams, so nothing is written until the command is done.
//!
//! Exit codes: 0 success, 1 counterexample or infeasibility found,
//! 2 usage or parse error, 3 internal invariant violation.

pub mod format;
pub mod parse;
pub mod spec;

use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};

use crate::error::Error;
use crate::poly::{quantum_integer, Poly};
use crate::ratfunc::RatFunc;
use crate::ring::{RingCtx, Scalar};
use crate::rules::{
    rule_add_zero, rule_affine, rule_canonical, rule_classify, rule_expand, rule_sides,
    rule_verify, zero_identity, zero_verify, LinearRule, ZeroIdentity,
};
use crate::solve::linear::{fe_linear_recover, fe_linear_solution, fe_linear_verify};
use crate::solve::mult::{mult_family, mult_verify, MultFamilySpec};
use crate::solve::prove::{prove_bounded, ProofOutcome, ProofReport, RuleForm, SequencePair};
use crate::solve::quad::{quad_closed_form, quad_rule_apply, QuadraticRule};
use crate::verify::VerifyReport;

use self::parse::parse_poly;
use self::spec::{parse_family_spec, parse_rule_spec, RuleSpec};

const DEFAULT_RANGE: usize = 32;
const DEFAULT_PROVE_RANGE: usize = 4;
const DEFAULT_PROVE_DEGREE: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Lib(#[from] Error),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Lib(e) => match e {
                Error::InconsistentRule { .. } => 1,
                Error::InexactDivision { .. } | Error::DimensionMismatch(_) => 3,
                _ => 2,
            },
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "qrules",
    version,
    about = "Exact computation with linear quantum addition rules"
)]
struct Cli {
    /// Coefficient ring: ZZ, QQ or Fp:<p>
    #[arg(long, global = true, default_value = "QQ")]
    ring: String,
    /// Index range M or M,N (default 32, or 4 for `prove`)
    #[arg(long, global = true, value_name = "M[,N]")]
    max: Option<String>,
    /// Degree bound for `prove` (default 10)
    #[arg(long, global = true, value_name = "D")]
    degree: Option<usize>,
    /// Print the report as JSON
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the quantum integer [n]_q
    Qint { n: usize },
    /// Parse a polynomial and print it in canonical form
    Parse { expr: String },
    /// Linear addition rules
    #[command(subcommand)]
    Rule(RuleCommand),
    /// Zero identities
    #[command(subcommand)]
    Zero(ZeroCommand),
    /// Functional equations
    #[command(subcommand)]
    Solve(SolveCommand),
    /// The multiplicative rule and its solution family
    #[command(subcommand)]
    Mult(MultCommand),
    /// Settle a rule form at bounded degree by exact linear algebra
    Prove {
        /// add_mm, add_mn, add_nm, zero_nm, zero_mm or zero_mn
        #[arg(long)]
        form: String,
    },
}

#[derive(Args, Debug)]
struct RuleSource {
    /// Canonical parameter z
    #[arg(long, conflicts_with = "spec")]
    z: Option<String>,
    /// Rule-spec JSON file
    #[arg(long)]
    spec: Option<String>,
}

#[derive(Subcommand, Debug)]
enum RuleCommand {
    /// Show the coefficients of a rule
    Show {
        #[command(flatten)]
        source: RuleSource,
        /// Expand at one index pair m,n
        #[arg(long, value_name = "m,n")]
        at: Option<String>,
    },
    /// Recover z from u_1 and v_1
    Classify {
        #[arg(long)]
        u1: String,
        #[arg(long)]
        v1: String,
    },
    /// Check [m+n]_q = u*[m]_q + v*[n]_q on the index range
    Verify {
        #[command(flatten)]
        source: RuleSource,
    },
    /// Affine combination of canonical rules
    Combine {
        #[arg(long = "z", required = true)]
        zs: Vec<String>,
        #[arg(long = "alpha", required = true, allow_hyphen_values = true)]
        alphas: Vec<String>,
    },
    /// Add a zero identity to a rule
    AddZero {
        #[arg(long)]
        z: String,
        /// z of the zero identity
        #[arg(long)]
        zero: String,
    },
}

#[derive(Subcommand, Debug)]
enum ZeroCommand {
    /// Check s_n*[m]_q + t_m*[n]_q = 0 on the index range
    Verify {
        #[command(flatten)]
        source: RuleSource,
    },
}

#[derive(Subcommand, Debug)]
enum SolveCommand {
    /// Recover f_1..f_n for a rule from f_1 and check f_n = f_1*[n]_q
    Linear {
        #[arg(long)]
        z: String,
        #[arg(long)]
        f1: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Closed forms of a quadratic rule's sequence from f_1
    Quadratic {
        /// 1: f + g - (1-q)fg; 2: q^n f + q^m g + (1-q)fg
        #[arg(long)]
        variant: u8,
        #[arg(long)]
        f1: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum MultCommand {
    /// Check f_m(q)*f_n(q^m) = f_mn for [n]_q or a family member
    Verify {
        /// Family-spec JSON file (default: f_n = [n]_q)
        #[arg(long)]
        family: Option<String>,
    },
    /// Print f_1..f_n of a family
    Family {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
}

/// A report with a status word and ordered fields; rendered as text lines
/// or as a JSON object with the same fields.
#[derive(Debug, Default)]
struct Report {
    status: Option<&'static str>,
    fields: Vec<(String, Value)>,
    code: i32,
}

impl Report {
    fn status(status: &'static str, code: i32) -> Report {
        Report {
            status: Some(status),
            fields: Vec::new(),
            code,
        }
    }

    fn text(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.fields
            .push((key.into(), Value::String(value.to_string())));
        self
    }

    fn num(&mut self, key: impl Into<String>, value: usize) -> &mut Self {
        self.fields.push((key.into(), Value::from(value)));
        self
    }

    fn list(&mut self, key: impl Into<String>, items: Vec<String>) -> &mut Self {
        self.fields.push((
            key.into(),
            Value::Array(items.into_iter().map(Value::String).collect()),
        ));
        self
    }

    fn render(&self, json: bool) -> String {
        if json {
            let mut obj = Map::new();
            if let Some(s) = self.status {
                obj.insert("status".into(), Value::String(s.into()));
            }
            for (k, v) in &self.fields {
                obj.insert(k.clone(), v.clone());
            }
            let mut out = serde_json::to_string_pretty(&Value::Object(obj)).expect("json");
            out.push('\n');
            return out;
        }
        let mut out = String::new();
        if let Some(s) = self.status {
            out.push_str(s);
            out.push('\n');
        }
        for (k, v) in &self.fields {
            match v {
                Value::Array(items) => {
                    out.push_str(k);
                    out.push_str(":\n");
                    for item in items {
                        out.push_str("  ");
                        out.push_str(item.as_str().unwrap_or_default());
                        out.push('\n');
                    }
                }
                Value::String(s) => out.push_str(&format!("{k} = {s}\n")),
                other => out.push_str(&format!("{k} = {other}\n")),
            }
        }
        out
    }
}

struct Globals {
    ring: RingCtx,
    max: Option<(usize, usize)>,
    degree: Option<usize>,
}

impl Globals {
    fn range(&self) -> (usize, usize) {
        self.max.unwrap_or((DEFAULT_RANGE, DEFAULT_RANGE))
    }

    fn poly(&self, text: &str, what: &str) -> Result<Poly, CliError> {
        parse_poly(text, &self.ring).map_err(|e| CliError::Usage(format!("{what}: {e}")))
    }

    /// The ring, lifted from ℤ to ℚ where a field is needed.
    fn field(&self) -> Result<RingCtx, CliError> {
        match &self.ring {
            RingCtx::Integers => Ok(RingCtx::Rationals),
            r if r.is_field() => Ok(r.clone()),
            _ => Err(Error::RequiresField.into()),
        }
    }
}

fn parse_pair(text: &str, what: &str) -> Result<(usize, usize), CliError> {
    let bad = || {
        CliError::Usage(format!(
            "{what} expects M or M,N with positive integers, got '{text}'"
        ))
    };
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(bad)
    };
    match text.split_once(',') {
        Some((a, b)) => Ok((parse(a)?, parse(b)?)),
        None => {
            let v = parse(text)?;
            Ok((v, v))
        }
    }
}

fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))
}

/// Parses and runs one command line (`argv[0]` is the program name).
pub fn run_command<I, S>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutput {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandOutput {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let json = cli.json;
    match catch_unwind(AssertUnwindSafe(|| dispatch(cli))) {
        Ok(Ok(report)) => CommandOutput {
            code: report.code,
            stdout: report.render(json),
            stderr: String::new(),
        },
        Ok(Err(e)) => CommandOutput {
            code: e.code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| panic.downcast_ref::<&str>().copied())
                .unwrap_or("panic");
            CommandOutput {
                code: 3,
                stdout: String::new(),
                stderr: format!("error: internal invariant violated: {msg}\n"),
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<Report, CliError> {
    let ring = cli
        .ring
        .parse::<RingCtx>()
        .map_err(|e| CliError::Usage(format!("--ring: {e}")))?;
    let g = Globals {
        ring,
        max: cli
            .max
            .as_deref()
            .map(|m| parse_pair(m, "--max"))
            .transpose()?,
        degree: cli.degree,
    };
    match cli.command {
        Command::Qint { n } => {
            let mut r = Report::default();
            r.text(format!("[{n}]_q"), quantum_integer(n, &g.ring)?);
            Ok(r)
        }
        Command::Parse { expr } => {
            let f = g.poly(&expr, "expression")?;
            let mut r = Report::default();
            r.text("f", &f)
                .text("degree", f.degree())
                .text("ring", &g.ring);
            Ok(r)
        }
        Command::Rule(c) => rule_command(&g, c),
        Command::Zero(ZeroCommand::Verify { source }) => match load_source(&g, &source, true)? {
            RuleSpec::Zero(zid) => Ok(zero_verify_report(&zid, g.range())?),
            RuleSpec::Rule(_) => Err(CliError::Usage(
                "the spec file describes an addition rule; use `rule verify`".into(),
            )),
        },
        Command::Solve(c) => solve_command(&g, c),
        Command::Mult(c) => mult_command(&g, c),
        Command::Prove { form } => {
            let form: RuleForm = form
                .parse()
                .map_err(|e: Error| CliError::Usage(e.to_string()))?;
            let (m, n) = g.max.unwrap_or((DEFAULT_PROVE_RANGE, DEFAULT_PROVE_RANGE));
            let degree = g.degree.unwrap_or(DEFAULT_PROVE_DEGREE);
            let ctx = g.field()?;
            let report = prove_bounded(form, degree, m, n, &ctx)?;
            prove_report(&report, &ctx)
        }
    }
}

/// Rule or zero identity from `--z` (interpreted as a rule for `rule`
/// commands, as a zero identity for `zero` ones) or from `--spec`.
fn load_source(g: &Globals, source: &RuleSource, zero: bool) -> Result<RuleSpec, CliError> {
    match (&source.z, &source.spec) {
        (_, Some(path)) => parse_rule_spec(&read_file(path)?, &g.ring),
        (Some(z), None) if zero => Ok(RuleSpec::Zero(zero_identity(g.poly(z, "z")?))),
        (Some(z), None) => Ok(RuleSpec::Rule(rule_canonical(g.poly(z, "z")?))),
        (None, None) => Err(CliError::Usage("one of --z or --spec is required".into())),
    }
}

fn counterexample_fields(r: &mut Report, report: &VerifyReport<Poly>, lhs: &str, rhs: &str) {
    if let Some(c) = &report.counterexample {
        r.num("m", c.m)
            .num("n", c.n)
            .text(lhs, &c.lhs)
            .text(rhs, &c.rhs);
    }
}

fn verify_status<T>(report: &VerifyReport<T>) -> Report {
    if report.verified {
        Report::status("VERIFIED", 0)
    } else {
        Report::status("COUNTEREXAMPLE", 1)
    }
}

fn zero_verify_report(zid: &ZeroIdentity, (m, n): (usize, usize)) -> Result<Report, CliError> {
    let report = zero_verify(zid, m, n)?;
    let mut r = verify_status(&report);
    r.text(
        "identity",
        "s_n*[m]_q + t_m*[n]_q = 0 with s_n = z*[n]_q, t_m = -z*[m]_q",
    )
    .text("z", &zid.z)
    .text("range", report.range_text());
    counterexample_fields(&mut r, &report, "s_n*[m]_q + t_m*[n]_q", "expected");
    Ok(r)
}

fn rule_command(g: &Globals, c: RuleCommand) -> Result<Report, CliError> {
    match c {
        RuleCommand::Show { source, at } => {
            let RuleSpec::Rule(rule) = load_source(g, &source, false)? else {
                return Err(CliError::Usage(
                    "the spec file describes a zero identity".into(),
                ));
            };
            let mut r = Report::default();
            match &rule {
                LinearRule::Canonical { z } => {
                    r.text("z", z)
                        .text("u_n", "1 + z*[n]_q")
                        .text("v_m", "q^m - z*[m]_q");
                }
                LinearRule::Tabulated(t) => {
                    r.text("kind", "tabulated").num("bound", t.bound());
                }
            }
            if let Some(at) = at {
                let (m, n) = parse_pair(&at, "--at")?;
                let (u, v) = rule_expand(&rule, m, n)?;
                let (lhs, rhs) = rule_sides(&rule, m, n)?;
                let (u_key, v_key) = match rule {
                    LinearRule::Canonical { .. } => (format!("u_{n}"), format!("v_{m}")),
                    LinearRule::Tabulated(_) => {
                        (format!("u_{{{m},{n}}}"), format!("v_{{{m},{n}}}"))
                    }
                };
                r.text(u_key, u)
                    .text(v_key, v)
                    .text(format!("[{}]_q", m + n), lhs)
                    .text(format!("u*[{m}]_q + v*[{n}]_q"), rhs);
            }
            Ok(r)
        }
        RuleCommand::Classify { u1, v1 } => {
            let u1 = g.poly(&u1, "u1")?;
            let v1 = g.poly(&v1, "v1")?;
            match rule_classify(&u1, &v1) {
                Ok(z) => {
                    let mut r = Report::default();
                    r.text("z", z);
                    Ok(r)
                }
                Err(Error::InconsistentRule { u_side, v_side }) => {
                    let mut r = Report::status("INCONSISTENT", 1);
                    r.text("u_1 - 1", u_side).text("q - v_1", v_side);
                    Ok(r)
                }
                Err(e) => Err(e.into()),
            }
        }
        RuleCommand::Verify { source } => {
            let RuleSpec::Rule(rule) = load_source(g, &source, false)? else {
                return Err(CliError::Usage(
                    "the spec file describes a zero identity; use `zero verify`".into(),
                ));
            };
            let (m, n) = g.range();
            let report = rule_verify(&rule, m, n)?;
            let mut r = verify_status(&report);
            r.text("identity", "[m+n]_q = u*[m]_q + v*[n]_q");
            if let Some(z) = rule.z() {
                r.text("z", z);
            }
            r.text("range", report.range_text());
            counterexample_fields(&mut r, &report, "[m+n]_q", "u*[m]_q + v*[n]_q");
            Ok(r)
        }
        RuleCommand::Combine { zs, alphas } => {
            let rules = zs
                .iter()
                .map(|z| Ok(rule_canonical(g.poly(z, "z")?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let alphas = alphas
                .iter()
                .map(|a| {
                    let p = g.poly(a, "alpha")?;
                    if !p.is_constant() {
                        return Err(CliError::Usage(format!(
                            "alpha must be a constant, got {p}"
                        )));
                    }
                    Ok(p.coeff_scalar(0))
                })
                .collect::<Result<Vec<Scalar>, CliError>>()?;
            let combined = rule_affine(&rules, &alphas)?;
            let mut r = Report::default();
            r.text(
                "z",
                combined.z().expect("affine combinations are canonical"),
            );
            Ok(r)
        }
        RuleCommand::AddZero { z, zero } => {
            let rule = rule_canonical(g.poly(&z, "z")?);
            let zid = zero_identity(g.poly(&zero, "zero")?);
            let sum = rule_add_zero(&rule, &zid)?;
            let mut r = Report::default();
            r.text("z", sum.z().expect("canonical"));
            Ok(r)
        }
    }
}

fn solve_command(g: &Globals, c: SolveCommand) -> Result<Report, CliError> {
    match c {
        SolveCommand::Linear { z, f1, n } => {
            if n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            let rule = rule_canonical(g.poly(&z, "z")?);
            let f1 = g.poly(&f1, "f1")?;
            let seq = fe_linear_recover(&rule, &f1, n)?;
            for (i, f) in seq.iter().enumerate() {
                if f != &fe_linear_solution(&f1, i + 1)? {
                    return Err(CliError::Invariant(format!(
                        "recovered f_{} differs from f_1*[{}]_q",
                        i + 1,
                        i + 1
                    )));
                }
            }
            let half = n / 2;
            let mut r = Report::default();
            r.text("z", rule.z().expect("canonical"))
                .text("h", &f1)
                .list(
                    "sequence",
                    seq.iter()
                        .enumerate()
                        .map(|(i, f)| format!("f_{} = {f}", i + 1))
                        .collect(),
                )
                .text("closed form", "f_n = h*[n]_q for every listed n");
            if half >= 1 {
                let report = fe_linear_verify(&rule, &seq, half, half)?;
                if !report.verified {
                    return Err(CliError::Invariant(
                        "recovered sequence fails the functional equation".into(),
                    ));
                }
                r.text(
                    "functional equation",
                    format!("holds on {}", report.range_text()),
                );
            }
            Ok(r)
        }
        SolveCommand::Quadratic { variant, f1, n } => {
            if n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            let rule =
                QuadraticRule::from_id(variant).map_err(|e| CliError::Usage(e.to_string()))?;
            let f1 = g.poly(&f1, "f1")?;
            let seq = (1..=n)
                .map(|k| quad_closed_form(rule, &f1, k))
                .collect::<Result<Vec<_>, _>>()?;
            for a in 1..n {
                for b in 1..=n - a {
                    if quad_rule_apply(rule, &seq[a - 1], &seq[b - 1], a, b)? != seq[a + b - 1] {
                        return Err(CliError::Invariant(format!(
                            "closed form breaks the rule at (m, n) = ({a}, {b})"
                        )));
                    }
                }
            }
            let mut r = Report::default();
            r.text("rule", rule)
                .text("f_1", &f1)
                .list(
                    "sequence",
                    seq.iter()
                        .enumerate()
                        .map(|(i, f)| format!("f_{} = {f}", i + 1))
                        .collect(),
                )
                .text(
                    "recursion",
                    format!("f_(m+n) = f_m (+) f_n holds for m + n <= {n}"),
                );
            Ok(r)
        }
    }
}

fn load_family(g: &Globals, path: &str) -> Result<MultFamilySpec, CliError> {
    parse_family_spec(&read_file(path)?, &g.field()?)
}

fn mult_command(g: &Globals, c: MultCommand) -> Result<Report, CliError> {
    match c {
        MultCommand::Verify { family } => {
            let (m, n) = g.range();
            let identity = "f_m(q)*f_n(q^m) = f_(mn)";
            match family {
                None => {
                    let ctx = g.ring.clone();
                    let report = mult_verify(|k| quantum_integer(k, &ctx), m, n)?;
                    let mut r = verify_status(&report);
                    r.text("identity", identity)
                        .text("f_n", "[n]_q")
                        .text("range", report.range_text());
                    counterexample_fields(&mut r, &report, "f_m(q)*f_n(q^m)", "f_(mn)");
                    Ok(r)
                }
                Some(path) => {
                    let spec = load_family(g, &path)?;
                    let report: VerifyReport<RatFunc> =
                        mult_verify(|k| mult_family(&spec, k), m, n)?;
                    let mut r = verify_status(&report);
                    r.text("identity", identity)
                        .text("f_n", "lambda(n)*q^(t0*(n-1))*prod_r [n]_(q^r)^(t_r)")
                        .text("range", report.range_text());
                    if let Some(c) = &report.counterexample {
                        r.num("m", c.m)
                            .num("n", c.n)
                            .text("f_m(q)*f_n(q^m)", &c.lhs)
                            .text("f_(mn)", &c.rhs);
                    }
                    Ok(r)
                }
            }
        }
        MultCommand::Family { family, n } => {
            let spec = load_family(g, &family)?;
            let seq = (1..=n)
                .map(|k| Ok(format!("f_{k} = {}", mult_family(&spec, k)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let mut r = Report::default();
            r.text("t0", spec.t0())
                .text(
                    "exponents",
                    spec.exponents()
                        .iter()
                        .map(|(k, t)| format!("t_{k} = {t}"))
                        .collect::<Vec<_>>()
                        .join(", "),
                )
                .list("sequence", seq);
            Ok(r)
        }
    }
}

fn sequence_lines(form: RuleForm, s: &SequencePair) -> Vec<String> {
    let (a, b) = form.names();
    let name = |prefix: &str, seq: &[Poly]| -> Vec<String> {
        seq.iter()
            .enumerate()
            .map(|(i, p)| format!("{prefix}_{} = {p}", i + 1))
            .collect()
    };
    let mut out = name(a, &s.first);
    out.extend(name(b, &s.second));
    out
}

fn prove_report(report: &ProofReport, ctx: &RingCtx) -> Result<Report, CliError> {
    let d = report.degree_bound;
    let (m, n) = report.range;
    let mut r = match &report.outcome {
        ProofOutcome::Unique { .. } => Report::status("UNIQUE", 0),
        ProofOutcome::SolutionSpace { .. } => Report::status("SOLUTION SPACE", 0),
        ProofOutcome::Infeasible { .. } => Report::status("INFEASIBLE", 1),
    };
    r.text(
        "form",
        format!("{}: {}", report.form, report.form.identity_text()),
    )
    .num("degree bound", d)
    .text("range", format!("1 <= m <= {m}, 1 <= n <= {n}"))
    .text("ring", ctx)
    .num("unknowns", report.unknowns)
    .num("equations", report.equations);
    match &report.outcome {
        ProofOutcome::Unique { witness } => {
            r.text(
                "claim",
                format!("exactly one solution with all degrees <= {d} on this range"),
            )
            .list("solution", sequence_lines(report.form, witness));
        }
        ProofOutcome::SolutionSpace {
            dimension,
            particular,
            basis,
            z_basis,
        } => {
            r.num("dimension", *dimension)
                .text("claim", format!("solutions with all degrees <= {d} on this range form an affine space of dimension {dimension}"))
                .list("particular", sequence_lines(report.form, particular));
            if let Some(zb) = z_basis {
                r.list("z basis", zb.iter().map(ToString::to_string).collect());
            }
            r.list(
                "directions",
                basis
                    .iter()
                    .map(|b| {
                        sequence_lines(report.form, b)
                            .into_iter()
                            .filter(|l| !l.ends_with("= 0"))
                            .collect::<Vec<_>>()
                            .join("; ")
                    })
                    .collect(),
            );
        }
        ProofOutcome::Infeasible { certificate, value } => {
            r.text(
                "claim",
                format!("no solution with all degrees <= {d} on this range"),
            )
            .list(
                "certificate",
                certificate
                    .iter()
                    .map(|(l, c)| {
                        format!("{} * [m={}, n={}, q^{}]", Poly::constant(c), l.m, l.n, l.k)
                    })
                    .collect(),
            )
            .text("combination", format!("0 = {}", Poly::constant(value)));
        }
    }
    if !report.recheck(ctx)? {
        return Err(CliError::Invariant(
            "prover result failed its recheck".into(),
        ));
    }
    r.text("recheck", "passed");
    Ok(r)
}
