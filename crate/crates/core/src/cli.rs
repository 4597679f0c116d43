//! Command-line front end. `run` is the whole program minus process I/O, so
//! it can be driven from tests.
//!
//! Exit codes: 0 verdict true or all fixtures pass, 1 verdict false or a
//! fixture fails, 2 usage or input error, 3 internal error.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cp3::{chart_pushforward_cp3, is_poisson_cp3, Method, Verdict};
use crate::error::Error;
use crate::fixtures::{run_examples, FixtureReport};
use crate::foliation::{bivector_of_form, pencil_form, OneForm};
use crate::hp1::{hp1_chart_pushforward, is_poisson_hp1, realify, Hp1Verdict, RealBivector};
use crate::multivector::MVec;
use crate::parse::{parse_form, parse_mvec, parse_mvec_of_grade, parse_poly};
use crate::tensor::Tensor2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Quotient,
    Charts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ChartArg {
    Cp3(usize),
    Hp1(usize),
}

fn parse_chart(s: &str) -> Result<ChartArg, String> {
    match s {
        "0" | "1" | "2" | "3" => Ok(ChartArg::Cp3(s.parse().expect("digit"))),
        "v0" => Ok(ChartArg::Hp1(0)),
        "v1" => Ok(ChartArg::Hp1(1)),
        _ => Err(format!("expected 0, 1, 2, 3, v0 or v1, got `{s}`")),
    }
}

/// Exact Poisson-structure checks on CP^3 and HP^1.
///
/// Expressions use z0..z3, zb0..zb3, i, p/q, ^, *, +, -, parentheses,
/// partials d0..d3 and db0..db3, the wedge /\ and covectors dz0..dz3.
/// A bivector argument of the form @PATH is read from a file holding either
/// an expression or a tensor JSON array.
#[derive(Debug, Parser)]
#[command(name = "poisson-forge", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Schouten bracket of two multivectors.
    Bracket { a: String, b: String },
    /// Whether a quadratic bivector induces a Poisson structure on CP^3.
    CheckCp3 {
        bivector: String,
        #[arg(long, value_enum, default_value = "quotient")]
        method: MethodArg,
    },
    /// Whether a quadratic bivector induces a Poisson structure on HP^1.
    CheckHp1 { bivector: String },
    /// A bivector in an affine chart: 0..3 on CP^3, v0 or v1 on HP^1.
    Chart {
        bivector: String,
        #[arg(long, value_parser = parse_chart)]
        chart: ChartArg,
    },
    /// The real bivector determined by a real coefficient tensor.
    Realify { bivector: String },
    /// The bivector of a foliation, given as a 1-form or as a pencil of quadrics.
    FromFoliation {
        #[arg(long, conflicts_with_all = ["f", "g"], required_unless_present_all = ["f", "g"])]
        form: Option<String>,
        #[arg(long, requires = "g")]
        f: Option<String>,
        #[arg(long, requires = "f")]
        g: Option<String>,
    },
    /// Run the built-in worked examples.
    Examples {
        #[arg(default_value = "all")]
        name: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    column: Option<usize>,
}

fn error_kind(e: &Error) -> (&'static str, i32) {
    match e {
        Error::Syntax { .. } => ("syntax", 2),
        Error::UnknownIdentifier { .. } => ("unknown_identifier", 2),
        Error::GradeMismatch { .. } | Error::GradeZero => ("grade", 2),
        Error::NotInvariant { .. } => ("not_invariant", 2),
        Error::InvalidForm(_) => ("invalid_form", 2),
        Error::InvalidPoly(_) => ("invalid_poly", 2),
        Error::TensorJson(_) => ("tensor_json", 2),
        Error::UnknownFixture(_) => ("unknown_fixture", 2),
        Error::BadChart(_) => ("bad_chart", 2),
        Error::NotPhiFixed => ("not_real", 1),
        Error::DimensionMismatch { .. } | Error::ZeroPoint => ("internal", 3),
    }
}

fn column_of(e: &Error) -> Option<usize> {
    match e {
        Error::Syntax { column, .. } | Error::UnknownIdentifier { column, .. } => Some(*column),
        _ => None,
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn fail(format: Format, f: Failure) -> Outcome {
    let (kind, code, message, column) = match &f {
        Failure::Lib(e) => {
            let (kind, code) = error_kind(e);
            (kind, code, e.to_string(), column_of(e))
        }
        Failure::Io(m) => ("io", 2, m.clone(), None),
    };
    match format {
        Format::Json => Outcome {
            stdout: json(&ErrorDoc {
                error: ErrorBody { kind, message, column },
            }),
            stderr: String::new(),
            code,
        },
        Format::Text => Outcome {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code,
        },
    }
}

fn read_arg(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure::Io(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn read_bivector(arg: &str) -> Result<MVec, Failure> {
    let text = read_arg(arg)?;
    if text.starts_with('[') {
        return Ok(Tensor2::from_json(&text)?.to_mvec());
    }
    Ok(parse_mvec_of_grade(&text, 2)?)
}

fn read_tensor(arg: &str) -> Result<Tensor2, Failure> {
    Ok(Tensor2::from_mvec(&read_bivector(arg)?)?)
}

fn bool_lines(pairs: &[(&str, bool)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
}

fn verdict_text(v: &Verdict) -> String {
    bool_lines(&[
        ("poisson", v.poisson),
        ("nontrivial", v.nontrivial),
        ("bracket_zero_on_C4", v.bracket_zero_on_c4),
    ])
}

fn hp1_text(v: &Hp1Verdict) -> String {
    bool_lines(&[
        ("poisson", v.poisson),
        ("phi_real", v.phi_fixed),
        ("cp3_poisson", v.cp3_poisson),
        ("nontrivial", v.nontrivial),
    ])
}

fn ok(stdout: String, code: i32) -> Outcome {
    Outcome {
        stdout,
        stderr: String::new(),
        code,
    }
}

fn verdict_code(v: bool) -> i32 {
    if v {
        0
    } else {
        1
    }
}

#[derive(Serialize)]
struct BracketDoc {
    bracket: String,
    grade: usize,
    zero: bool,
}

#[derive(Serialize)]
struct ChartDoc {
    chart: String,
    field: String,
    zero: bool,
    bracket_zero: bool,
}

#[derive(Serialize)]
struct RealifyDoc {
    real_bivector: String,
}

#[derive(Serialize)]
struct FoliationDoc {
    form: String,
    bivector: String,
    cp3: Verdict,
    hp1: Hp1Verdict,
}

#[derive(Serialize)]
struct ExamplesDoc {
    passed: usize,
    total: usize,
    fixtures: Vec<FixtureReport>,
}

fn bracket(format: Format, a: &str, b: &str) -> Result<Outcome, Failure> {
    let a = parse_mvec(&read_arg(a)?)?;
    let b = parse_mvec(&read_arg(b)?)?;
    let br = MVec::schouten(&a, &b)?;
    Ok(ok(
        match format {
            Format::Json => json(&BracketDoc {
                bracket: br.to_string(),
                grade: br.grade(),
                zero: br.is_zero(),
            }),
            Format::Text => format!("{br}\n"),
        },
        0,
    ))
}

fn check_cp3(format: Format, w: &str, method: MethodArg) -> Result<Outcome, Failure> {
    let t = read_tensor(w)?;
    let method = match method {
        MethodArg::Quotient => Method::Quotient,
        MethodArg::Charts => Method::Charts,
    };
    let v = is_poisson_cp3(&t, method);
    let out = match format {
        Format::Json => json(&v),
        Format::Text => verdict_text(&v),
    };
    Ok(ok(out, verdict_code(v.poisson)))
}

fn check_hp1(format: Format, w: &str) -> Result<Outcome, Failure> {
    let t = read_tensor(w)?;
    let v = is_poisson_hp1(&t);
    let out = match format {
        Format::Json => json(&v),
        Format::Text => hp1_text(&v),
    };
    Ok(ok(out, verdict_code(v.poisson)))
}

/// A holomorphic input is realified through its tensor; anything else must
/// already be a real bivector.
fn real_bivector(w: &MVec) -> Result<RealBivector, Failure> {
    if w.is_holomorphic() {
        Ok(realify(&Tensor2::from_mvec(w)?)?)
    } else {
        Ok(RealBivector::new(w.clone())?)
    }
}

fn chart(format: Format, w: &str, which: ChartArg) -> Result<Outcome, Failure> {
    let w = read_bivector(w)?;
    let doc = match which {
        ChartArg::Cp3(r) => {
            let c = chart_pushforward_cp3(&Tensor2::from_mvec(&w)?, r)?;
            ChartDoc {
                chart: format!("U{r}"),
                field: c.render(),
                zero: c.is_zero(),
                bracket_zero: c.schouten(&c)?.is_zero(),
            }
        }
        ChartArg::Hp1(m) => {
            let real = real_bivector(&w)?;
            let c = hp1_chart_pushforward(real.field(), m)?;
            ChartDoc {
                chart: format!("V{m}"),
                field: c.render(),
                zero: c.is_zero(),
                bracket_zero: c.schouten(&c)?.is_zero(),
            }
        }
    };
    Ok(ok(
        match format {
            Format::Json => json(&doc),
            Format::Text => format!(
                "{}: {}\n{}",
                doc.chart,
                doc.field,
                bool_lines(&[("zero", doc.zero), ("bracket_zero", doc.bracket_zero)])
            ),
        },
        0,
    ))
}

fn realify_cmd(format: Format, w: &str) -> Result<Outcome, Failure> {
    let real = realify(&read_tensor(w)?)?;
    let text = real.field().to_string();
    Ok(ok(
        match format {
            Format::Json => json(&RealifyDoc { real_bivector: text }),
            Format::Text => format!("{text}\n"),
        },
        0,
    ))
}

fn from_foliation(
    format: Format,
    form: Option<&str>,
    f: Option<&str>,
    g: Option<&str>,
) -> Result<Outcome, Failure> {
    let omega: OneForm = match (form, f, g) {
        (Some(s), _, _) => parse_form(&read_arg(s)?)?,
        (None, Some(f), Some(g)) => pencil_form(&parse_poly(&read_arg(f)?)?, &parse_poly(&read_arg(g)?)?)?,
        _ => unreachable!("clap enforces the argument groups"),
    };
    let w = bivector_of_form(&omega)?;
    let t = Tensor2::from_mvec(&w)?;
    let doc = FoliationDoc {
        form: omega.to_string(),
        bivector: w.to_string(),
        cp3: is_poisson_cp3(&t, Method::Quotient),
        hp1: is_poisson_hp1(&t),
    };
    let code = verdict_code(doc.cp3.poisson);
    Ok(ok(
        match format {
            Format::Json => json(&doc),
            Format::Text => {
                let mut s = format!("form: {}\nbivector: {}\n", doc.form, doc.bivector);
                for line in verdict_text(&doc.cp3).lines() {
                    s.push_str(&format!("cp3.{line}\n"));
                }
                for line in hp1_text(&doc.hp1).lines() {
                    s.push_str(&format!("hp1.{line}\n"));
                }
                s
            }
        },
        code,
    ))
}

fn examples(format: Format, name: &str) -> Result<Outcome, Failure> {
    let reports = run_examples(name)?;
    let passed = reports.iter().filter(|r| r.pass).count();
    let total = reports.len();
    let out = match format {
        Format::Json => json(&ExamplesDoc {
            passed,
            total,
            fixtures: reports,
        }),
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&format!("{} {}\n", if r.pass { "pass" } else { "FAIL" }, r.name));
                for c in r.checks.iter().filter(|c| !c.pass) {
                    s.push_str(&format!(
                        "    {}: expected {}, got {}\n",
                        c.what, c.expected, c.actual
                    ));
                }
            }
            s.push_str(&format!("{passed}/{total} pass\n"));
            s
        }
    };
    Ok(ok(out, verdict_code(passed == total)))
}

/// Runs the program on `args`, the first of which is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                ok(text, 0)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let format = cli.format;
    let result = match &cli.command {
        Command::Bracket { a, b } => bracket(format, a, b),
        Command::CheckCp3 { bivector, method } => check_cp3(format, bivector, *method),
        Command::CheckHp1 { bivector } => check_hp1(format, bivector),
        Command::Chart { bivector, chart: c } => chart(format, bivector, *c),
        Command::Realify { bivector } => realify_cmd(format, bivector),
        Command::FromFoliation { form, f, g } => {
            from_foliation(format, form.as_deref(), f.as_deref(), g.as_deref())
        }
        Command::Examples { name } => examples(format, name),
    };
    result.unwrap_or_else(|f| fail(format, f))
}
