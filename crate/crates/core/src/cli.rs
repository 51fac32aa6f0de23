//! The `riordan` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 domain error, 3 a
//! requested check failed.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::analysis::{b_sequence, default_depth, jfraction_expand, BSequence, JFraction};
use crate::construct::{
    chebyshev_array, corollary_rt, cross_validate, family_rst, involution_from, ortho_rs_array, Comparison,
    CrossValidation, FamilyParams, OrthoRecurrence,
};
use crate::expr::eval_str;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::riordan::{InvolutionCheck, RiordanElement, TriangleMatrix};
use crate::series::TruncatedSeries;
use crate::{Error, DEFAULT_ORDER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "riordan", version, about = "Exact Riordan-array computations")]
pub struct CliConfig {
    /// Truncation order of every series.
    #[arg(long, global = true, env = "RIORDAN_ORDER", default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    /// Matrix rows to print [default: 8, capped at order + 1].
    #[arg(long, global = true)]
    pub rows: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

impl CliConfig {
    /// Rows to print: the explicit `--rows`, else `min(8, order + 1)`.
    pub fn rows(&self) -> usize {
        self.rows.unwrap_or(8.min(self.order + 1))
    }
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// g(x), e.g. "1/(1-x)"
    #[arg(long, allow_hyphen_values = true)]
    pub g: String,
    /// f(x), e.g. "x/(1-x)"
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
}

#[derive(Debug, Args)]
pub struct RstArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    pub r: Rational,
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    pub s: Rational,
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    pub t: Rational,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand an expression as a power series.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Product (g, f) · (u, v).
    Product {
        #[command(flatten)]
        left: PairArgs,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Group inverse of (g, f).
    Inverse(PairArgs),
    /// Matrix of (g, f).
    Matrix(PairArgs),
    /// Row sums of the matrix of (g, f).
    RowSums(PairArgs),
    /// Is (g, f) an involution?
    CheckInvolution(PairArgs),
    /// Is (g, f) a pseudo-involution?
    CheckPseudo(PairArgs),
    /// The involution (g, f)^-1 · P · (g(-x), f(-x)).
    Construct {
        #[command(flatten)]
        base: PairArgs,
        /// g-part of the pseudo-involution P.
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        pg: String,
        /// f-part of the pseudo-involution P.
        #[arg(long, allow_hyphen_values = true, default_value = "x")]
        pf: String,
    },
    /// The three-parameter involution family.
    Family(RstArgs),
    /// The s = 0 family member, from r and t.
    Corollary {
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        r: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        t: Rational,
    },
    /// Generalized Chebyshev coefficient array.
    Chebyshev {
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        r: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        s: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        a: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        b: Rational,
    },
    /// Two-parameter orthogonal polynomial coefficient array.
    Ortho {
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        r: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        s: Rational,
    },
    /// J-fraction coefficients of a series with constant term 1.
    Jfraction {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// B-sequence of a series f = x + ...
    Bseq {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Compare the four routes to the family member.
    CrossValidate(RstArgs),
}

enum Report {
    Series(TruncatedSeries),
    Element(RiordanElement, TriangleMatrix),
    Matrix(usize, TriangleMatrix),
    RowSums(usize, Vec<Rational>),
    Check(&'static str, InvolutionCheck),
    Ortho(RiordanElement, TriangleMatrix, OrthoRecurrence),
    JFraction(JFraction),
    BSequence(BSequence),
    CrossValidation(CrossValidation),
}

fn strings(values: &[Rational]) -> Value {
    Value::Array(values.iter().map(|q| Value::String(format_rational(q))).collect())
}

fn matrix_rows(m: &TriangleMatrix) -> Value {
    Value::Array(m.rows().iter().map(|r| strings(r)).collect())
}

fn matrix_csv(m: &TriangleMatrix) -> String {
    let n = m.nrows();
    let mut out = String::new();
    for i in 0..n {
        let cells: Vec<String> = (0..n).map(|k| format_rational(&m.get(i, k))).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn join(values: &[Rational]) -> String {
    values.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

fn element_table(e: &RiordanElement, m: &TriangleMatrix) -> String {
    format!("order: {}\ng: {}\nf: {}\n\n{}", e.order(), join(e.g().coeffs()), join(e.f().coeffs()), m.to_table())
}

fn element_json(e: &RiordanElement, m: &TriangleMatrix) -> Map<String, Value> {
    let mut obj = Map::new();
    obj.insert("order".into(), json!(e.order()));
    obj.insert("g".into(), strings(e.g().coeffs()));
    obj.insert("f".into(), strings(e.f().coeffs()));
    obj.insert("rows".into(), matrix_rows(m));
    obj
}

fn check_json(kind: &str, c: &InvolutionCheck) -> Value {
    let mut obj = Map::new();
    obj.insert("order".into(), json!(c.order));
    obj.insert(kind.into(), json!(c.holds()));
    obj.insert("fails_at_order".into(), json!(c.failing_order()));
    if let Some(m) = &c.failure {
        obj.insert("part".into(), json!(m.part.to_string()));
        obj.insert("index".into(), json!(m.index));
        obj.insert("found".into(), json!(format_rational(&m.found)));
        obj.insert("expected".into(), json!(format_rational(&m.expected)));
    }
    Value::Object(obj)
}

fn cross_json(cv: &CrossValidation) -> Value {
    let pairs: Vec<Value> = cv
        .pairs
        .iter()
        .map(|p| {
            let mut obj = Map::new();
            obj.insert("left".into(), json!(p.left.label()));
            obj.insert("right".into(), json!(p.right.label()));
            match &p.outcome {
                Comparison::Agree => {
                    obj.insert("outcome".into(), json!("agree"));
                }
                Comparison::Mismatch(m) => {
                    obj.insert("outcome".into(), json!("mismatch"));
                    obj.insert("part".into(), json!(m.part.to_string()));
                    obj.insert("index".into(), json!(m.index));
                    obj.insert("left_value".into(), json!(format_rational(&m.left)));
                    obj.insert("right_value".into(), json!(format_rational(&m.right)));
                }
                Comparison::Unavailable(why) => {
                    obj.insert("outcome".into(), json!("unavailable"));
                    obj.insert("reason".into(), json!(why));
                }
            }
            Value::Object(obj)
        })
        .collect();
    json!({
        "params": {
            "r": format_rational(&cv.params.r),
            "s": format_rational(&cv.params.s),
            "t": format_rational(&cv.params.t),
        },
        "order": cv.order,
        "pairs": pairs,
    })
}

/// Pretty JSON with arrays of scalars kept on one line.
pub fn render_json(value: &Value) -> String {
    fn scalar(v: &Value) -> bool {
        !matches!(v, Value::Array(_) | Value::Object(_))
    }
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent + 1);
        let close = "  ".repeat(indent);
        match v {
            Value::Array(items) if items.iter().all(scalar) => {
                out.push_str(&serde_json::to_string(v).expect("json values serialize"));
            }
            Value::Array(items) => {
                out.push_str("[\n");
                for (i, item) in items.iter().enumerate() {
                    out.push_str(&pad);
                    go(item, indent + 1, out);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                out.push_str(&close);
                out.push(']');
            }
            Value::Object(map) if map.is_empty() => out.push_str("{}"),
            Value::Object(map) => {
                out.push_str("{\n");
                for (i, (k, item)) in map.iter().enumerate() {
                    out.push_str(&pad);
                    out.push_str(&serde_json::to_string(k).expect("json keys serialize"));
                    out.push_str(": ");
                    go(item, indent + 1, out);
                    out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
                }
                out.push_str(&close);
                out.push('}');
            }
            other => out.push_str(&serde_json::to_string(other).expect("json values serialize")),
        }
    }
    let mut out = String::new();
    go(value, 0, &mut out);
    out.push('\n');
    out
}

/// `{"order": N, "rows": [...]}`, the layout of the golden matrix files.
pub fn matrix_json(order: usize, m: &TriangleMatrix) -> String {
    render_json(&json!({ "order": order, "rows": matrix_rows(m) }))
}

fn recurrence_json(rec: &OrthoRecurrence) -> Value {
    json!({
        "alpha": strings(&rec.alpha),
        "beta": strings(&rec.beta),
        "p0": strings(&rec.p0),
        "p1": strings(&rec.p1),
    })
}

impl Report {
    fn render(&self, format: Format) -> String {
        match (self, format) {
            (Report::Series(s), Format::Table) => format!("order: {}\ncoefficients: {}\n", s.order(), join(s.coeffs())),
            (Report::Series(s), Format::Json) => {
                render_json(&json!({ "order": s.order(), "coeffs": strings(s.coeffs()) }))
            }
            (Report::Series(s), Format::Csv) => {
                let mut out = String::from("n,coeff\n");
                for (i, c) in s.coeffs().iter().enumerate() {
                    out.push_str(&format!("{i},{}\n", format_rational(c)));
                }
                out
            }
            (Report::Element(e, m), Format::Table) => element_table(e, m),
            (Report::Element(e, m), Format::Json) => render_json(&Value::Object(element_json(e, m))),
            (Report::Element(_, m), Format::Csv) | (Report::Ortho(_, m, _), Format::Csv) => matrix_csv(m),
            (Report::Matrix(_, m), Format::Table) => m.to_table(),
            (Report::Matrix(order, m), Format::Json) => matrix_json(*order, m),
            (Report::Matrix(_, m), Format::Csv) => matrix_csv(m),
            (Report::RowSums(_, v), Format::Table) => format!("row sums: {}\n", join(v)),
            (Report::RowSums(order, v), Format::Json) => {
                render_json(&json!({ "order": order, "row_sums": strings(v) }))
            }
            (Report::RowSums(_, v), Format::Csv) => {
                let mut out = String::from("n,sum\n");
                for (i, c) in v.iter().enumerate() {
                    out.push_str(&format!("{i},{}\n", format_rational(c)));
                }
                out
            }
            (Report::Check(kind, c), Format::Table) => format!("{kind}: {c}\n"),
            (Report::Check(kind, c), Format::Json) => render_json(&check_json(kind, c)),
            (Report::Check(kind, c), Format::Csv) => format!(
                "check,holds,fails_at_order\n{kind},{},{}\n",
                c.holds(),
                c.failing_order().map(|o| o.to_string()).unwrap_or_default()
            ),
            (Report::Ortho(e, m, rec), Format::Table) => {
                let rows = m.nrows();
                let mut out = element_table(e, m);
                out.push_str("\nrecurrence polynomials:\n");
                for (n, p) in rec.polynomials(rows).iter().enumerate() {
                    out.push_str(&format!("P_{n}: {}\n", join(p)));
                }
                out.push_str(&format!("matches matrix: {}\n", rec.coefficient_matrix(rows) == *m));
                out
            }
            (Report::Ortho(e, m, rec), Format::Json) => {
                let mut obj = element_json(e, m);
                obj.insert("recurrence".into(), recurrence_json(rec));
                obj.insert("matches_matrix".into(), json!(rec.coefficient_matrix(m.nrows()) == *m));
                render_json(&Value::Object(obj))
            }
            (Report::JFraction(jf), Format::Table) => format!("{jf}\n"),
            (Report::JFraction(jf), Format::Json) => render_json(&json!({
                "alpha": strings(&jf.alphas),
                "beta": strings(&jf.betas),
                "terminated": jf.terminated,
            })),
            (Report::JFraction(jf), Format::Csv) => {
                let mut out = String::from("k,alpha,beta\n");
                for (k, a) in jf.alphas.iter().enumerate() {
                    let b = jf.betas.get(k).map(format_rational).unwrap_or_default();
                    out.push_str(&format!("{k},{},{b}\n", format_rational(a)));
                }
                out
            }
            (Report::BSequence(b), Format::Table) => format!("{b}\n"),
            (Report::BSequence(b), Format::Json) => {
                render_json(&json!({ "terms": strings(&b.terms), "residual_ok": b.residual_ok }))
            }
            (Report::BSequence(b), Format::Csv) => {
                let mut out = String::from("k,b\n");
                for (k, v) in b.terms.iter().enumerate() {
                    out.push_str(&format!("{k},{}\n", format_rational(v)));
                }
                out
            }
            (Report::CrossValidation(cv), Format::Table) => cv.to_string(),
            (Report::CrossValidation(cv), Format::Json) => render_json(&cross_json(cv)),
            (Report::CrossValidation(cv), Format::Csv) => {
                let mut out = String::from("left,right,outcome,part,index,left_value,right_value\n");
                for p in &cv.pairs {
                    let tail = match &p.outcome {
                        Comparison::Agree => "agree,,,,".to_string(),
                        Comparison::Mismatch(m) => format!(
                            "mismatch,{},{},{},{}",
                            m.part,
                            m.index,
                            format_rational(&m.left),
                            format_rational(&m.right)
                        ),
                        Comparison::Unavailable(_) => "unavailable,,,,".to_string(),
                    };
                    out.push_str(&format!("{},{},{tail}\n", p.left.label(), p.right.label()));
                }
                out
            }
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            Report::Check(_, c) if !c.holds() => EXIT_CHECK_FAILED,
            _ => EXIT_OK,
        }
    }
}

fn pair(args: &PairArgs, order: usize) -> Result<RiordanElement, Error> {
    RiordanElement::from_exprs(&args.g, &args.f, order)
}

fn element_report(e: RiordanElement, rows: usize) -> Result<Report, Error> {
    let m = e.matrix(rows)?;
    Ok(Report::Element(e, m))
}

fn execute(cfg: &CliConfig) -> Result<Report, Error> {
    let order = cfg.order;
    let rows = cfg.rows();
    match &cfg.command {
        Command::Eval { expr } => Ok(Report::Series(eval_str(expr, order)?)),
        Command::Product { left, u, v } => {
            let a = pair(left, order)?;
            let b = RiordanElement::from_exprs(u, v, order)?;
            element_report(a.product(&b), rows)
        }
        Command::Inverse(p) => element_report(pair(p, order)?.inverse()?, rows),
        Command::Matrix(p) => {
            let e = pair(p, order)?;
            Ok(Report::Matrix(e.order(), e.matrix(rows)?))
        }
        Command::RowSums(p) => {
            let e = pair(p, order)?;
            Ok(Report::RowSums(e.order(), e.matrix(rows)?.row_sums()))
        }
        Command::CheckInvolution(p) => Ok(Report::Check("involution", pair(p, order)?.is_involution())),
        Command::CheckPseudo(p) => Ok(Report::Check("pseudo-involution", pair(p, order)?.is_pseudo_involution())),
        Command::Construct { base, pg, pf } => {
            let g = eval_str(&base.g, order)?;
            let f = eval_str(&base.f, order)?;
            let p = RiordanElement::from_exprs(pg, pf, order)?;
            element_report(involution_from(g, f, &p)?, rows)
        }
        Command::Family(a) => {
            element_report(family_rst(&FamilyParams::new(a.r.clone(), a.s.clone(), a.t.clone()), order)?, rows)
        }
        Command::Corollary { r, t } => element_report(corollary_rt(r, t, order)?, rows),
        Command::Chebyshev { r, s, a, b } => {
            let (e, rec) = chebyshev_array(r, s, a, b, order)?;
            let m = e.matrix(rows)?;
            Ok(Report::Ortho(e, m, rec))
        }
        Command::Ortho { r, s } => {
            let (e, rec) = ortho_rs_array(r, s, order)?;
            let m = e.matrix(rows)?;
            Ok(Report::Ortho(e, m, rec))
        }
        Command::Jfraction { g, depth } => {
            let g = eval_str(g, order)?;
            Ok(Report::JFraction(jfraction_expand(&g, depth.unwrap_or_else(|| default_depth(order)))?))
        }
        Command::Bseq { f, depth } => {
            let f = eval_str(f, order)?;
            Ok(Report::BSequence(b_sequence(&f, depth.unwrap_or_else(|| order.saturating_sub(1) / 2))?))
        }
        Command::CrossValidate(a) => Ok(Report::CrossValidation(cross_validate(
            &FamilyParams::new(a.r.clone(), a.s.clone(), a.t.clone()),
            order,
        ))),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    if cfg.order < 1 {
        let _ = writeln!(err, "error: --order must be at least 1");
        return EXIT_USAGE;
    }
    if let Some(rows) = cfg.rows.filter(|&r| r > cfg.order + 1) {
        let _ = writeln!(err, "error: --rows {} needs --order at least {}", rows, rows - 1);
        return EXIT_USAGE;
    }
    match execute(&cfg) {
        Ok(report) => {
            let _ = out.write_all(report.render(cfg.format).as_bytes());
            report.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Parse(_) => EXIT_USAGE,
                _ => EXIT_DOMAIN,
            }
        }
    }
}
