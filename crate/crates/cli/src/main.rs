mod compute;
mod expr;

use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use drinfeld_core::geometry::{
    imaginary_norm, in_fundamental_domain, reduce_to_fundamental, CInfPoint, PointField, StepKind,
};
use drinfeld_core::uexp::UExpEngine;
use drinfeld_core::verify::{run_suite, Suite, VerifyConfig, ENGINE_VERSION};
use drinfeld_core::{Error, Field, FqField, Result};
use serde_json::{json, Value};

use compute::{compute, uexp_form, Computed, Params};

#[derive(Parser, Debug)]
#[command(name = "drinfeld", version, about = "Carlitz module and Drinfeld modular form arithmetic over F_q[θ]")]
struct Cli {
    /// Field size q, a prime power.
    #[arg(long, global = true, default_value_t = 2)]
    q: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Trunc {
    /// u-order U of expansions.
    #[arg(long, env = "DRINFELD_ORDER")]
    order: Option<usize>,
    /// Working precision P in 1/θ-digits.
    #[arg(long, env = "DRINFELD_PRECISION")]
    precision: Option<i64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Out {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    Carlitz,
    Uexp,
    Perkins,
    Geometry,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Carlitz => Suite::Carlitz,
            SuiteArg::Uexp => Suite::Uexp,
            SuiteArg::Perkins => Suite::Perkins,
            SuiteArg::Geometry => Suite::Geometry,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Compute one object: brackets, exp-c, log-c, pi, omega, zeta, mzv, goss,
    /// u-a, uexp:g|h|delta|eisenstein:<w>, eisenstein-chi:<j>.
    Compute {
        object: String,
        #[command(flatten)]
        trunc: Trunc,
        /// Largest bracket index.
        #[arg(long, default_value_t = 3)]
        i: usize,
        /// τ-order for exp-c/log-c, index for goss.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// t-order for omega and eisenstein-chi.
        #[arg(long, default_value_t = 6)]
        t_order: usize,
        /// Weight for zeta, an expression in q.
        #[arg(long)]
        w: Option<String>,
        /// Comma-separated weights for mzv, e.g. "q-1,q(q-1)".
        #[arg(long)]
        weights: Option<String>,
        /// Monic polynomial a for u-a, low-to-high coefficients.
        #[arg(long, default_value = "[0,1]")]
        a: String,
        #[arg(long, value_enum, default_value = "json")]
        out: Out,
    },
    /// Run a verification suite; exit 0 iff every check passes.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        trunc: Trunc,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cases per randomized family.
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long)]
        z_order: Option<usize>,
        #[arg(long)]
        t_order: Option<usize>,
    },
    /// u-expansion of g, h, Δ or E_w.
    Uexp {
        #[arg(long)]
        form: String,
        #[command(flatten)]
        trunc: Trunc,
        #[arg(long, value_enum, default_value = "json")]
        out: Out,
    },
    /// Reduce a point of Ω to the fundamental domain.
    Reduce {
        /// Point JSON: a Laurent series in π^{1/e} plus "m" and "e".
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 64)]
        max_steps: usize,
    },
    /// Randomized checks on the upper half-plane.
    GeometryVerify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

/// Outcome of a command: text for stdout and whether everything passed.
struct Output {
    text: String,
    pass: bool,
}

fn field_of(q: u64) -> Result<Field> {
    if q < 2 {
        return Err(Error::Invalid(format!("q = {q} is not a prime power")));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    if r != 1 {
        return Err(Error::Invalid(format!("q = {q} is not a prime power")));
    }
    FqField::new(p, e)
}

fn render(v: &Value) -> String {
    v.to_string()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn emit(q: u32, object: &str, c: Computed, out: Out) -> Result<Output> {
    let text = match out {
        Out::Json => render(&json!({
            "object": object,
            "q": q,
            "formula": c.formula,
            "truncation": c.truncation,
            "engine": ENGINE_VERSION,
            "value": c.value,
        })),
        Out::Csv => {
            let rows = c
                .table
                .ok_or_else(|| Error::Invalid(format!("{object} has no flat coefficient table; use --out json")))?;
            let mut s = String::from("m,coefficient\n");
            for (m, v) in rows {
                s.push_str(&format!("{m},{}\n", csv_field(&v)));
            }
            s.pop();
            s
        }
    };
    Ok(Output { text, pass: true })
}

fn point_field(base: &Field, v: &Value) -> Result<Arc<PointField>> {
    let m = v["m"].as_u64().ok_or_else(|| Error::Json("point needs an integer m".into()))?;
    PointField::new(base, m as u32)
}

fn run(cli: Cli) -> Result<Output> {
    let field = field_of(cli.q)?;
    let q = field.q();
    let order = |t: &Trunc| t.order.unwrap_or_else(|| UExpEngine::default_order(q));
    let precision = |t: &Trunc| t.precision.unwrap_or(UExpEngine::DEFAULT_PRECISION);
    match cli.cmd {
        Cmd::Compute { object, trunc, i, n, t_order, w, weights, a, out } => {
            let prm = Params { order: order(&trunc), precision: precision(&trunc), i, n, t_order, w, weights, a };
            emit(q, &object, compute(&field, &object, &prm)?, out)
        }
        Cmd::Uexp { form, trunc, out } => {
            let c = uexp_form(&field, &form, order(&trunc), precision(&trunc))?;
            emit(q, &format!("uexp:{form}"), c, out)
        }
        Cmd::Verify { suite, trunc, seed, cases, z_order, t_order } => {
            let mut cfg = VerifyConfig::defaults(q);
            cfg.order = order(&trunc);
            cfg.precision = precision(&trunc);
            cfg.perkins_precision = trunc.precision;
            cfg.seed = seed;
            cfg.cases = cases;
            cfg.z_order = z_order;
            cfg.t_order = t_order;
            if cfg.order < 2 || cfg.precision < 1 || cfg.cases == 0 {
                return Err(Error::Invalid("order >= 2, precision >= 1 and cases >= 1 are required".into()));
            }
            let r = run_suite(&field, suite.into(), &cfg)?;
            Ok(Output { text: render(&r.to_json()), pass: r.pass() })
        }
        Cmd::GeometryVerify { seed, cases } => {
            let mut cfg = VerifyConfig::defaults(q);
            cfg.seed = seed;
            cfg.cases = cases;
            let r = run_suite(&field, Suite::Geometry, &cfg)?;
            Ok(Output { text: render(&r.to_json()), pass: r.pass() })
        }
        Cmd::Reduce { point, max_steps } => {
            let v: Value = serde_json::from_str(&point).map_err(|e| Error::Json(e.to_string()))?;
            let pf = point_field(&field, &v)?;
            let z = CInfPoint::from_json(&pf, &v)?;
            let before = imaginary_norm(&z)?.log_q;
            let r = reduce_to_fundamental(&z, max_steps)?;
            let steps: Vec<Value> = r
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "kind": match s.kind { StepKind::Translation => "translation", StepKind::Inversion => "inversion" },
                        "logImBefore": s.log_im_before.to_string(),
                        "logImAfter": s.log_im_after.to_string(),
                    })
                })
                .collect();
            let after = imaginary_norm(&r.point)?.log_q;
            Ok(Output {
                text: render(&json!({
                    "q": q,
                    "engine": ENGINE_VERSION,
                    "gamma": r.gamma.to_json(),
                    "point": r.point.to_json(),
                    "steps": steps,
                    "logImBefore": before.to_string(),
                    "logImAfter": after.to_string(),
                    "inFundamentalDomain": in_fundamental_domain(&r.point)?,
                })),
                pass: true,
            })
        }
    }
}

fn error_body(kind: &str, message: &str) -> String {
    render(&json!({"error": {"kind": kind, "message": message}}))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprintln!("{}", error_body("Usage", e.to_string().trim_end()));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(o) => {
            // a closed pipe is not an error of the computation
            let _ = writeln!(std::io::stdout().lock(), "{}", o.text);
            if o.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", error_body(e.kind(), &e.to_string()));
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
