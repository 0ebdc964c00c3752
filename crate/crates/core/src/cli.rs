//! Command-line front end.
//!
//! Exit codes: `0` success (or every identity held), `1` an exact identity
//! failed, `2` invalid arguments.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::cfrac::{convergents, gen_fibonacci, sequence, CfParams, GenFibParams};
use crate::error::Error;
use crate::exactnum::{parse_rational, QuadElem, QuadField, Rational};
use crate::hankel::{scan_kperiodic, DEFAULT_MAX_ORDER};
use crate::matrix::PsdVerdict;
use crate::measures::{binet_tau, build_rho, classify_positivity, mu_theta, nu_theta};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "pcf-moments",
    version,
    about = "Exact moment measures of 2-periodic continued fraction convergents"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Digits after the decimal point in decimal previews.
    #[arg(long, global = true, default_value_t = 12)]
    pub digits: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Args)]
pub struct CfArgs {
    /// First period a > 0 (integer, p/q or exact decimal).
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    pub a: Rational,
    /// Second period b > 0.
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    pub b: Rational,
    /// Innermost tail w >= 0.
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg, default_value = "0")]
    pub w: Rational,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// N_n, D_n and s_n = N_n/D_n for n = 0..=n_max.
    Convergents {
        #[command(flatten)]
        cf: CfArgs,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Check that the moments of rho equal s_n exactly.
    Verify {
        #[command(flatten)]
        cf: CfArgs,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        /// Atoms per family in the truncated-sum cross-check.
        #[arg(long = "k", default_value_t = 50)]
        k: u32,
    },
    /// Decide whether rho is a positive measure.
    Classify {
        #[command(flatten)]
        cf: CfArgs,
    },
    /// Hankel determinants and PSD verdicts for a k-periodic fraction.
    HankelScan {
        /// Comma-separated positive periods, e.g. 1,1,2.
        #[arg(long, allow_hyphen_values = true, value_parser = rational_list_arg)]
        periods: RationalList,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg, default_value = "1")]
        w: Rational,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    /// Generalized Fibonacci numbers for a = 2 sinh(theta) and their moment measures.
    Fibonacci {
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        a: Rational,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalList(pub Vec<Rational>);

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn rational_list_arg(s: &str) -> Result<RationalList, String> {
    s.split(',')
        .map(rational_arg)
        .collect::<Result<Vec<_>, _>>()
        .map(RationalList)
}

/// Replaces `--args-file PATH` (or `--args-file=PATH`) with the flags
/// listed in that file, one per line. Blank lines and `#` comments are skipped.
pub fn expand_args_file(args: Vec<String>) -> io::Result<Vec<String>> {
    let mut out = Vec::with_capacity(args.len());
    let mut iter = args.into_iter();
    while let Some(arg) = iter.next() {
        let path = if arg == "--args-file" {
            iter.next().ok_or_else(|| {
                io::Error::new(io::ErrorKind::InvalidInput, "--args-file needs a path")
            })?
        } else if let Some(p) = arg.strip_prefix("--args-file=") {
            p.to_string()
        } else {
            out.push(arg);
            continue;
        };
        for line in fs::read_to_string(&path)?.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            out.extend(line.split_whitespace().map(str::to_string));
        }
    }
    Ok(out)
}

/// One run's machine-readable result.
#[derive(Debug, Clone, Default)]
pub struct Emission {
    pub params: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub verdict: Map<String, Value>,
}

impl Emission {
    pub fn to_json(&self) -> Value {
        let params: Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| (c.to_string(), Value::String(v.clone())))
                        .collect(),
                )
            })
            .collect();
        json!({ "params": params, "rows": rows, "verdict": self.verdict })
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn to_plain(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.params {
            s.push_str(&format!("# {k} = {v}\n"));
        }
        if !self.columns.is_empty() {
            let widths: Vec<usize> = self
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    self.rows
                        .iter()
                        .map(|r| r[i].len())
                        .chain([c.len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
                    + "\n"
            };
            s.push_str(&line(self.columns.clone()));
            for row in &self.rows {
                s.push_str(&line(row.iter().map(String::as_str).collect()));
            }
        }
        for (k, v) in &self.verdict {
            let shown = match v {
                Value::String(x) => x.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("{k}: {shown}\n"));
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                serde_json::to_string_pretty(&self.to_json()).expect("serializable") + "\n"
            }
            Format::Csv => self.to_csv(),
            Format::Plain => self.to_plain(),
        }
    }
}

/// Decimal preview of a rational.
fn decimal(x: &Rational, digits: usize) -> String {
    let q = QuadField::new(Rational::from_integer(0.into())).expect("0 >= 0");
    QuadElem::from_rational(&q, x.clone()).to_decimal(digits)
}

fn cf_params(cf: &CfArgs) -> Result<CfParams, Error> {
    CfParams::new(cf.a.clone(), cf.b.clone(), cf.w.clone())
}

fn cf_param_list(cf: &CfArgs) -> Vec<(String, String)> {
    vec![
        ("a".into(), cf.a.to_string()),
        ("b".into(), cf.b.to_string()),
        ("w".into(), cf.w.to_string()),
    ]
}

fn yes(b: bool) -> String {
    b.to_string()
}

/// Runs one command and returns its emission plus exit code.
pub fn execute(cfg: &RunConfig) -> Result<(Emission, i32), Error> {
    let digits = cfg.digits;
    match &cfg.command {
        Command::Convergents { cf, n_max } => {
            let p = cf_params(cf)?;
            let mut e = Emission {
                params: cf_param_list(cf),
                columns: vec!["n", "N", "D", "s", "s_decimal"],
                ..Default::default()
            };
            e.params.push(("n_max".into(), n_max.to_string()));
            for c in convergents(&p, *n_max) {
                let s = c.value();
                e.rows.push(vec![
                    c.n.to_string(),
                    c.numer.to_string(),
                    c.denom.to_string(),
                    s.to_string(),
                    decimal(&s, digits),
                ]);
            }
            let limit = crate::cfrac::cf_limit(&p)?;
            e.verdict.insert("limit".into(), json!(limit.to_string()));
            e.verdict
                .insert("limit_decimal".into(), json!(limit.to_decimal(digits)));
            Ok((e, EXIT_OK))
        }
        Command::Verify { cf, n_max, k } => {
            let p = cf_params(cf)?;
            let rho = build_rho(&p)?;
            let mut e = Emission {
                params: cf_param_list(cf),
                columns: vec![
                    "n",
                    "s",
                    "closed_form_moment",
                    "match",
                    "truncated_within_bound",
                    "tail_bound_decimal",
                    "s_decimal",
                ],
                ..Default::default()
            };
            e.params.push(("n_max".into(), n_max.to_string()));
            e.params.push(("K".into(), k.to_string()));
            e.params.push(("delta".into(), p.delta().to_string()));
            let mut all = true;
            for (n, s) in sequence(&p, *n_max).iter().enumerate() {
                let n32 = u32::try_from(n)
                    .map_err(|_| Error::InvariantViolation("n too large".into()))?;
                let closed = rho.moment_closed(n32);
                let matched = closed.as_rational() == Some(s);
                let t = rho.moment_truncated(n32, *k)?;
                let err = (&closed - &t.value).abs();
                let within = !(&t.tail_bound - &err).is_negative();
                all &= matched && within;
                e.rows.push(vec![
                    n.to_string(),
                    s.to_string(),
                    closed.to_string(),
                    yes(matched),
                    yes(within),
                    t.tail_bound.to_decimal(digits),
                    decimal(s, digits),
                ]);
            }
            e.verdict.insert("all_match".into(), json!(all));
            Ok((e, if all { EXIT_OK } else { EXIT_MISMATCH }))
        }
        Command::Classify { cf } => {
            let p = cf_params(cf)?;
            let v = classify_positivity(&p)?;
            let fields: Vec<(&'static str, String)> = vec![
                ("positive", yes(v.is_positive)),
                ("cond_alpha_nonneg", yes(v.cond_alpha_nonneg)),
                ("cond_a_ge_b", yes(v.cond_a_ge_b)),
                ("cond_w1", yes(v.cond_w1)),
                ("cond_w2", yes(v.cond_w2)),
                ("alpha", v.alpha.to_string()),
                ("beta", v.beta.to_string()),
                ("alpha_decimal", v.alpha.to_decimal(digits)),
                ("beta_decimal", v.beta.to_decimal(digits)),
            ];
            let mut e = Emission {
                params: cf_param_list(cf),
                columns: fields.iter().map(|(k, _)| *k).collect(),
                rows: vec![fields.iter().map(|(_, v)| v.clone()).collect()],
                ..Default::default()
            };
            for (k, val) in fields {
                let json_val = match val.as_str() {
                    "true" => json!(true),
                    "false" => json!(false),
                    _ => json!(val),
                };
                e.verdict.insert(k.into(), json_val);
            }
            Ok((e, EXIT_OK))
        }
        Command::HankelScan {
            periods,
            w,
            max_order,
        } => {
            let report = scan_kperiodic(&periods.0, w, *max_order)?;
            let periods_str: Vec<String> = periods.0.iter().map(|p| p.to_string()).collect();
            let mut e = Emission {
                params: vec![
                    ("periods".into(), periods_str.join(",")),
                    ("w".into(), w.to_string()),
                    ("max_order".into(), max_order.to_string()),
                ],
                columns: vec![
                    "order",
                    "determinant",
                    "det_sign",
                    "psd",
                    "violated_coefficient",
                ],
                ..Default::default()
            };
            for o in &report.orders {
                let sign = match o.determinant.numer().sign() {
                    num_bigint::Sign::Minus => "-1",
                    num_bigint::Sign::NoSign => "0",
                    num_bigint::Sign::Plus => "+1",
                };
                let violated = match &o.verdict {
                    PsdVerdict::Psd => String::new(),
                    PsdVerdict::NotPsd(c) => c.coefficient_index.to_string(),
                };
                e.rows.push(vec![
                    o.order.to_string(),
                    o.determinant.to_string(),
                    sign.to_string(),
                    yes(o.verdict.is_psd()),
                    violated,
                ]);
            }
            e.verdict.insert("all_psd".into(), json!(report.all_psd()));
            e.verdict.insert(
                "first_failure_order".into(),
                report
                    .first_failure()
                    .map_or(Value::Null, |(o, _)| json!(o)),
            );
            e.verdict.insert(
                "negative_determinant_orders".into(),
                json!(report.negative_determinant_orders()),
            );
            Ok((e, EXIT_OK))
        }
        Command::Fibonacci { a, n_max } => {
            let gp = GenFibParams::new(a.clone())?;
            let fib = gen_fibonacci(&gp, n_max + 3);
            let s = sequence(&gp.cf_params(), *n_max);
            let mu = mu_theta(&gp)?;
            let nu = nu_theta(&gp)?;
            let is_golden = a == &Rational::from_integer(1.into());
            let tau = binet_tau();
            let mut e = Emission {
                params: vec![
                    ("a".into(), a.to_string()),
                    ("n_max".into(), n_max.to_string()),
                ],
                columns: vec![
                    "n",
                    "F",
                    "ratio_lower",
                    "ratio_upper",
                    "convergent_match",
                    "mu_moment_match",
                    "nu_moment_match",
                    "tau_moment_match",
                ],
                ..Default::default()
            };
            let mut all = true;
            for n in 0..=*n_max {
                let n32 = u32::try_from(n)
                    .map_err(|_| Error::InvariantViolation("n too large".into()))?;
                let lower = &fib[n + 1] / &fib[n + 2];
                let upper = &fib[n + 3] / &fib[n + 2];
                let cf_ok = s[n] == lower;
                let mu_ok = mu.moment_closed(n32).as_rational() == Some(&lower);
                let nu_ok = nu.moment_closed(n32).as_rational() == Some(&upper);
                let tau_ok =
                    is_golden.then(|| tau.moment_closed(n32).as_rational() == Some(&fib[n + 1]));
                all &= cf_ok && mu_ok && nu_ok && tau_ok.unwrap_or(true);
                e.rows.push(vec![
                    n.to_string(),
                    fib[n].to_string(),
                    lower.to_string(),
                    upper.to_string(),
                    yes(cf_ok),
                    yes(mu_ok),
                    yes(nu_ok),
                    tau_ok.map(yes).unwrap_or_default(),
                ]);
            }
            e.verdict.insert("all_match".into(), json!(all));
            e.verdict
                .insert("mu_mass".into(), json!(mu.mass().to_string()));
            Ok((e, if all { EXIT_OK } else { EXIT_MISMATCH }))
        }
    }
}

/// Full CLI entry point over explicit argument and output streams.
pub fn run(args: Vec<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let args = match expand_args_file(args) {
        Ok(a) => a,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            return EXIT_USAGE;
        }
    };
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
            let rendered = err.render().to_string();
            let _ = if err.use_stderr() {
                write!(stderr, "{rendered}")
            } else {
                write!(stdout, "{rendered}")
            };
            return code;
        }
    };
    let (emission, code) = match execute(&cfg) {
        Ok(x) => x,
        Err(err @ Error::InvalidParameter { .. }) => {
            let _ = writeln!(stderr, "error: {err}");
            return EXIT_USAGE;
        }
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            return EXIT_MISMATCH;
        }
    };
    let text = emission.render(cfg.format);
    let written = match &cfg.output {
        Some(path) => fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(err) = written {
        let _ = writeln!(stderr, "error: cannot write output: {err}");
        return EXIT_USAGE;
    }
    code
}
