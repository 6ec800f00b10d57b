//! Command-line front end. [`run`] never prints; it returns the exact bytes
//! for stdout and stderr together with the exit code, so identical
//! invocations give identical output.
//!
//! Exit codes: 0 success, 2 domain or parse error, 3 no convergence,
//! 4 identity failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::experiments::{self, FdScheme, SweepOptions};
use crate::poly::{self, PolyReal};
use crate::quadrature::{integrate_box_2d, BoxSpec, MAX_TOL, MIN_TOL};
use crate::symbolic::{self, IdentitySpec, OpPair, QUARTIC_OPERATORS};

pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;
pub const EXIT_IDENTITY_FAILURE: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "nongauss",
    version,
    about = "Renormalized integrals of binary forms and their discriminant identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Requested absolute/relative tolerance, within [1e-12, 1e-3].
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Half-width of the integration box.
    #[arg(long = "R", global = true, default_value_t = 2.0)]
    pub r: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Discriminant (and E for quartics) by both routes.
    Disc {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Renormalized cubic integral against the closed form.
    VerifyCubic {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "sample")]
        coeffs: Option<String>,
        /// Number of random admissible cubics.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Integral of 1/(ax² + bx + c) against 2π/√(−D).
    Gauss {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "sample")]
        coeffs: Option<String>,
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Ratio test over a quartic family (default x⁴ + cx² + 1, c ∈ {−1, 0, 1}).
    QuarticSweep {
        /// CSV with header a,b,c,d,e[,label].
        #[arg(long, conflicts_with = "control")]
        family: Option<PathBuf>,
        /// Admit members with real roots.
        #[arg(long)]
        extended: bool,
        /// Run the scaling orbit λ(x⁴ + 1), λ ∈ {1, 2, 4}.
        #[arg(long)]
        control: bool,
    },
    /// Operator identities, exactly (--symbolic) or by finite differences.
    Identities {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=4))]
        degree: u32,
        #[arg(long)]
        symbolic: bool,
        /// FD base point.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        /// FD operator such as "(a,c)-(b,d)"; repeatable.
        #[arg(long = "op")]
        ops: Vec<String>,
        /// FD step (default 1e-3 for cubics, 2e-2 for quartics).
        #[arg(long)]
        h: Option<f64>,
        /// Exponent of the cubic closed form under test.
        #[arg(long, allow_hyphen_values = true, default_value_t = -1.0 / 6.0)]
        exponent: f64,
    },
    /// Box integral of exp(−(ax³ + bx²y + cxy² + dy³)) over [−R, R]².
    Box2d {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Compare against the negated coefficients.
        #[arg(long)]
        z2: bool,
    },
    /// How E changes when the coefficients are shifted, reversed or rescaled.
    ProbeE {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1,-0.5")]
        shifts: String,
        #[arg(long, allow_hyphen_values = true, default_value = "2")]
        scales: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NoConvergence { .. } => EXIT_NO_CONVERGENCE,
        _ => EXIT_DOMAIN,
    }
}

/// Parses a comma-separated list of reals; positions are byte offsets.
pub fn parse_reals(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut pos = 0;
    for token in text.split(',') {
        let trimmed = token.trim();
        let at = pos + token.len() - token.trim_start().len();
        let v: f64 = trimmed.parse().map_err(|_| Error::Parse {
            position: at,
            message: format!("expected a real number, found {trimmed:?}"),
        })?;
        if !v.is_finite() {
            return Err(Error::Parse {
                position: at,
                message: format!("non-finite value {trimmed:?}"),
            });
        }
        out.push(v);
        pos += token.len() + 1;
    }
    Ok(out)
}

/// Reads a family file with header `a,b,c,d,e[,label]`. Error positions are
/// 1-based line numbers.
pub fn read_family(path: &Path) -> Result<Vec<(PolyReal, Option<String>)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(false)
        .from_path(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| Error::Parse {
            position: 1,
            message: e.to_string(),
        })?
        .iter()
        .map(str::to_owned)
        .collect();
    let labelled = match header.iter().map(String::as_str).collect::<Vec<_>>()[..] {
        ["a", "b", "c", "d", "e"] => false,
        ["a", "b", "c", "d", "e", "label"] => true,
        _ => {
            return Err(Error::Parse {
                position: 1,
                message: format!(
                    "expected header a,b,c,d,e[,label], found {}",
                    header.join(",")
                ),
            })
        }
    };
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| Error::Parse {
            position: line,
            message: e.to_string(),
        })?;
        let mut coeffs = Vec::with_capacity(5);
        for field in rec.iter().take(5) {
            coeffs.push(field.parse::<f64>().map_err(|_| Error::Parse {
                position: line,
                message: format!("expected a real number, found {field:?}"),
            })?);
        }
        let label = labelled.then(|| rec[5].to_owned());
        out.push((PolyReal::new(coeffs)?, label));
    }
    if out.is_empty() {
        return Err(Error::Domain(format!("{} has no rows", path.display())));
    }
    Ok(out)
}

/// Shortest round-trip representation, always with a decimal point or exponent.
pub fn fmt_num(x: f64) -> String {
    serde_json::to_string(&x).unwrap_or_else(|_| "null".into())
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

fn fmt_coeffs(c: &[f64]) -> String {
    c.iter().map(|&v| fmt_num(v)).collect::<Vec<_>>().join(" ")
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    trailer: Option<String>,
}

struct Report {
    json: Value,
    table: Table,
    code: i32,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn record_table(records: &[experiments::ExperimentRecord]) -> Table {
    Table {
        header: vec![
            "coeffs",
            "D",
            "E",
            "integral",
            "err",
            "predicted",
            "rel_deviation",
        ],
        rows: records
            .iter()
            .map(|r| {
                vec![
                    fmt_coeffs(&r.inputs),
                    fmt_num(r.d),
                    fmt_opt(r.e),
                    fmt_opt(r.numeric_integral),
                    fmt_opt(r.abs_error),
                    fmt_opt(r.predicted),
                    fmt_opt(r.rel_deviation),
                ]
            })
            .collect(),
        trailer: None,
    }
}

fn residual_table(residuals: &[experiments::Residual]) -> Table {
    Table {
        header: vec!["name", "value", "budget", "pass"],
        rows: residuals
            .iter()
            .map(|r| {
                vec![
                    r.name.clone(),
                    fmt_num(r.value),
                    fmt_opt(r.budget),
                    r.passes().to_string(),
                ]
            })
            .collect(),
        trailer: None,
    }
}

fn poly_from(text: &str) -> Result<PolyReal> {
    PolyReal::new(parse_reals(text)?)
}

fn cmd_disc(coeffs: &str) -> Result<Report> {
    let p = poly_from(coeffs)?;
    let n = p.degree();
    if !(2..=4).contains(&n) {
        return Err(Error::degree("2, 3 or 4", n));
    }
    let explicit = poly::DiscriminantReport::from_real(&p)?;
    let exact = p.to_exact()?;
    let resultant = poly::discriminant_resultant(&exact)?;
    let agreement = explicit.d_exact.as_ref() == Some(&resultant);
    let mut json = json!({ "degree": n, "D": explicit.d });
    if let Some(e) = explicit.e {
        json["E"] = json!(e);
    }
    json["route_agreement"] = json!(agreement);
    let table = Table {
        header: vec!["degree", "D", "E", "route_agreement"],
        rows: vec![vec![
            n.to_string(),
            fmt_num(explicit.d),
            fmt_opt(explicit.e),
            agreement.to_string(),
        ]],
        trailer: None,
    };
    Ok(Report {
        json,
        table,
        code: 0,
    })
}

fn cmd_verify_cubic(cfg: &Cli, coeffs: Option<&str>, sample: Option<usize>) -> Result<Report> {
    if let Some(n) = sample {
        let s = experiments::verify_cubic_sample(n, cfg.seed, cfg.tol)?;
        let table = record_table(&s.records);
        return Ok(Report {
            json: json!({
                "seed": cfg.seed,
                "count": n,
                "max_rel_deviation": s.max_rel_deviation,
                "max_constant_deviation": s.max_constant_deviation,
                "records": to_value(&s.records),
            }),
            table: Table {
                trailer: Some(format!(
                    "max_rel_deviation={}",
                    fmt_num(s.max_rel_deviation)
                )),
                ..table
            },
            code: 0,
        });
    }
    let p = poly_from(coeffs.unwrap_or("1,0,1,0"))?;
    let rec = experiments::verify_cubic_formula(&p, cfg.tol)?;
    Ok(Report {
        table: record_table(std::slice::from_ref(&rec)),
        json: to_value(&rec),
        code: 0,
    })
}

fn cmd_gauss(cfg: &Cli, coeffs: Option<&str>, sample: Option<usize>) -> Result<Report> {
    let triples = match sample {
        Some(n) => experiments::sample_quadratics(n, cfg.seed),
        None => {
            let c = parse_reals(coeffs.unwrap_or("1,0,1"))?;
            let arr: [f64; 3] = c
                .as_slice()
                .try_into()
                .map_err(|_| Error::degree("2", c.len().saturating_sub(1)))?;
            vec![arr]
        }
    };
    let records = triples
        .iter()
        .map(|&[a, b, c]| experiments::verify_gaussian(a, b, c, cfg.tol))
        .collect::<Result<Vec<_>>>()?;
    let json = if sample.is_some() {
        json!({ "seed": cfg.seed, "records": to_value(&records) })
    } else {
        to_value(&records[0])
    };
    Ok(Report {
        json,
        table: record_table(&records),
        code: 0,
    })
}

fn cmd_quartic_sweep(
    cfg: &Cli,
    family: Option<&Path>,
    extended: bool,
    control: bool,
) -> Result<Report> {
    let (members, labels): (Vec<PolyReal>, Vec<Option<String>>) = match family {
        Some(path) => read_family(path)?.into_iter().unzip(),
        None if control => {
            let ls = [1.0, 2.0, 4.0];
            (
                experiments::scaling_orbit(&ls),
                ls.iter().map(|l| Some(format!("lambda={l}"))).collect(),
            )
        }
        None => {
            let cs = [-1.0, 0.0, 1.0];
            (
                experiments::c_family(&cs),
                cs.iter().map(|c| Some(format!("c={c}"))).collect(),
            )
        }
    };
    let rep = experiments::quartic_sweep(&members, cfg.tol, SweepOptions { extended })?;
    let rows = rep
        .records
        .iter()
        .zip(&rep.ratios)
        .map(|(r, &ratio)| {
            vec![
                fmt_coeffs(&r.inputs),
                fmt_num(r.d),
                fmt_opt(r.e),
                fmt_opt(r.numeric_integral),
                fmt_opt(r.abs_error),
                fmt_num(ratio),
            ]
        })
        .collect();
    let mut json = to_value(&rep);
    json["labels"] = to_value(&labels);
    Ok(Report {
        json,
        table: Table {
            header: vec!["coeffs", "D", "E", "integral", "err", "ratio"],
            rows,
            trailer: Some(format!(
                "verdict {} spread={} budget={}",
                rep.verdict,
                fmt_num(rep.spread),
                fmt_num(rep.error_budget)
            )),
        },
        code: 0,
    })
}

#[derive(Serialize)]
struct SymbolicRow {
    #[serde(flatten)]
    spec: IdentitySpec,
    holds: bool,
    witness: symbolic::MultiPolyQ,
}

fn cmd_identities_symbolic(degree: u32) -> Result<Report> {
    let specs = if degree == 3 {
        IdentitySpec::all_cubic_annihilations()
    } else {
        IdentitySpec::all_quartic_residuals()
    };
    let mut rows = Vec::with_capacity(specs.len());
    for spec in specs {
        let check = if degree == 3 {
            symbolic::check_annihilation(&spec)?
        } else {
            symbolic::check_residual_identity(&spec)?
        };
        rows.push(SymbolicRow {
            spec,
            holds: check.holds,
            witness: check.witness,
        });
    }
    let all_hold = rows.iter().all(|r| r.holds);
    let table = Table {
        header: vec!["op", "branch", "s", "kappa", "R", "holds", "witness"],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    r.spec.op.to_string(),
                    to_value(&r.spec.branch)
                        .as_str()
                        .unwrap_or_default()
                        .to_owned(),
                    r.spec.s.to_string(),
                    r.spec.rhs_constant.to_string(),
                    r.spec.rhs_factor.to_string(),
                    r.holds.to_string(),
                    r.witness.to_string(),
                ]
            })
            .collect(),
        trailer: Some(format!(
            "{} of {} identities hold",
            rows.iter().filter(|r| r.holds).count(),
            rows.len()
        )),
    };
    Ok(Report {
        json: json!({
            "degree": degree,
            "mode": "symbolic",
            "all_hold": all_hold,
            "checks": to_value(&rows),
        }),
        table,
        code: if all_hold { 0 } else { EXIT_IDENTITY_FAILURE },
    })
}

fn cmd_identities_fd(
    cfg: &Cli,
    degree: u32,
    coeffs: Option<&str>,
    ops: &[String],
    h: Option<f64>,
    exponent: f64,
) -> Result<Report> {
    let mut scheme = FdScheme::for_degree(degree as usize);
    if let Some(h) = h {
        scheme.h = h;
    }
    let rep = if degree == 3 {
        if !ops.is_empty() {
            return Err(Error::Domain(
                "custom operators are only supported for degree 4".into(),
            ));
        }
        let base = poly_from(coeffs.unwrap_or("1,0,1,0"))?;
        experiments::fd_residuals_cubic_closed_form(&base, &scheme, exponent)?
    } else {
        let base = poly_from(coeffs.unwrap_or("1,0,1,0,1"))?;
        let parsed = if ops.is_empty() {
            QUARTIC_OPERATORS.to_vec()
        } else {
            ops.iter()
                .map(|s| OpPair::parse(s))
                .collect::<Result<Vec<_>>>()?
        };
        experiments::fd_residuals_quartic_ops(&base, &scheme, cfg.tol, &parsed)?
    };
    let all_pass = rep.record.all_residuals_pass();
    let mut json = to_value(&rep);
    json["mode"] = json!("finite-difference");
    json["all_pass"] = json!(all_pass);
    Ok(Report {
        json,
        table: Table {
            trailer: Some(format!(
                "second_derivative_scale={}",
                fmt_num(rep.second_derivative_scale)
            )),
            ..residual_table(&rep.record.residuals)
        },
        code: if all_pass { 0 } else { EXIT_IDENTITY_FAILURE },
    })
}

fn cmd_box2d(cfg: &Cli, coeffs: &str, z2: bool) -> Result<Report> {
    let c = parse_reals(coeffs)?;
    let arr: [f64; 4] = c.as_slice().try_into().map_err(|_| {
        Error::Domain(format!(
            "box integral needs 4 coefficients, got {}",
            c.len()
        ))
    })?;
    let spec = BoxSpec::new(arr, cfg.r, cfg.tol);
    if z2 {
        let rec = experiments::z2_symmetry_check(&spec)?;
        let code = if rec.all_residuals_pass() {
            0
        } else {
            EXIT_IDENTITY_FAILURE
        };
        return Ok(Report {
            table: residual_table(&rec.residuals),
            json: to_value(&rec),
            code,
        });
    }
    let r = integrate_box_2d(&spec)?;
    Ok(Report {
        json: json!({
            "coeffs": arr,
            "R": cfg.r,
            "value": r.value,
            "abs_error": r.abs_error_estimate,
            "n_evals": r.n_evals,
        }),
        table: Table {
            header: vec!["coeffs", "R", "value", "abs_error"],
            rows: vec![vec![
                fmt_coeffs(&arr),
                fmt_num(cfg.r),
                fmt_num(r.value),
                fmt_num(r.abs_error_estimate),
            ]],
            trailer: None,
        },
        code: 0,
    })
}

fn cmd_probe_e(coeffs: &str, shifts: &str, scales: &str) -> Result<Report> {
    let p = poly_from(coeffs)?;
    let rec = experiments::probe_E(&p, &parse_reals(shifts)?, &parse_reals(scales)?)?;
    Ok(Report {
        table: residual_table(&rec.residuals),
        json: to_value(&rec),
        code: 0,
    })
}

fn dispatch(cli: &Cli) -> Result<Report> {
    if !(MIN_TOL..=MAX_TOL).contains(&cli.tol) {
        return Err(Error::Domain(format!(
            "--tol {} is outside [{MIN_TOL:e}, {MAX_TOL:e}]",
            cli.tol
        )));
    }
    match &cli.command {
        Command::Disc { coeffs } => cmd_disc(coeffs),
        Command::VerifyCubic { coeffs, sample } => {
            cmd_verify_cubic(cli, coeffs.as_deref(), *sample)
        }
        Command::Gauss { coeffs, sample } => cmd_gauss(cli, coeffs.as_deref(), *sample),
        Command::QuarticSweep {
            family,
            extended,
            control,
        } => cmd_quartic_sweep(cli, family.as_deref(), *extended, *control),
        Command::Identities {
            degree,
            symbolic: true,
            ..
        } => cmd_identities_symbolic(*degree),
        Command::Identities {
            degree,
            coeffs,
            ops,
            h,
            exponent,
            ..
        } => cmd_identities_fd(cli, *degree, coeffs.as_deref(), ops, *h, *exponent),
        Command::Box2d { coeffs, z2 } => cmd_box2d(cli, coeffs, *z2),
        Command::ProbeE {
            coeffs,
            shifts,
            scales,
        } => cmd_probe_e(coeffs, shifts, scales),
    }
}

fn render_csv(t: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.header).expect("in-memory write");
    for row in &t.rows {
        w.write_record(row).expect("in-memory write");
    }
    let mut out = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
    if let Some(tr) = &t.trailer {
        out.push_str(tr);
        out.push('\n');
    }
    out
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_text(val, indent + 1, out);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", scalar(val));
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, val) in items.iter().enumerate() {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        let _ = writeln!(out, "{pad}[{i}]");
                        render_text(val, indent + 1, out);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}- {}", scalar(val));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Json => {
                    let mut s = report.json.to_string();
                    s.push('\n');
                    s
                }
                Format::Csv => render_csv(&report.table),
                Format::Text => {
                    let mut s = String::new();
                    render_text(&report.json, 0, &mut s);
                    s
                }
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code: report.code,
            }
        }
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit_code(&e),
        },
    }
}

/// Parses `args` (program name first) and runs; clap errors map to exit 2.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_DOMAIN } else { 0 };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    code,
                }
            } else {
                Outcome {
                    stdout: rendered,
                    stderr: String::new(),
                    code,
                }
            }
        }
    }
}
