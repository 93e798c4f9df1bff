//! The subcommands behind the `lchi` binary, returning their serialized
//! output so they can be driven and compared in tests.

use std::fmt;
use std::io;
use std::sync::Arc;

use lchi_core::carlitz::{l1_product, pi_qm1};
use lchi_core::exact::RatFunc;
use lchi_core::ffield::{Field, FqElem};
use lchi_core::lambda::{lambda_solve, min_nu, LambdaResult};
use lchi_core::lseries::{
    dirichlet_value, euler_product, lchit, zeta, zeta_special_check, LParams,
};
use lchi_core::series::{TSeries, TruncLaurent};
use lchi_core::uexp::{d2_solve, goss_poly, modular_delta, modular_g, modular_h, USeries};
use lchi_core::Error;
use serde_json::{json, Map, Value};

use crate::cache::{self, Cache};
use crate::config::{Format, RunConfig, XiSpec};
use crate::json::{self, FIELD_REF, SCHEMA};
use crate::par::par_map;
use crate::text;
use crate::verify::Suite;

const EXT_FIELD_REF: &str = "#/ext_field";

/// `Nu` used by `uexp` and `verify` when none is given.
pub const DEFAULT_NU: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Pi,
    Zeta,
    Lseries,
    Lambda,
    Uexp,
    Dirichlet,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Pi => "pi",
            Command::Zeta => "zeta",
            Command::Lseries => "lseries",
            Command::Lambda => "lambda",
            Command::Uexp => "uexp",
            Command::Dirichlet => "dirichlet",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug)]
pub enum RunError {
    /// Invalid configuration; exit status 2.
    Usage(String),
    /// A computation failed; exit status 1.
    Compute {
        context: String,
        error: Error,
    },
    /// A verified identity has a nonzero certified digit; exit status 1.
    /// `output` is the full report for stdout.
    Verify {
        output: String,
        report: Value,
    },
    Io(io::Error),
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Io(e)
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Usage(s) => write!(f, "usage error: {s}"),
            RunError::Compute { context, error } => write!(f, "{context}: {error}"),
            RunError::Verify { report, .. } => write!(f, "verification failed: {report}"),
            RunError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => 2,
            _ => 1,
        }
    }

    /// The JSON failure report written to stderr.
    pub fn report(&self) -> Value {
        match self {
            RunError::Verify { report, .. } => report.clone(),
            RunError::Usage(s) => json!({ "schema": SCHEMA, "object": "usage_error", "error": s }),
            RunError::Compute { context, error } => json!({
                "schema": SCHEMA,
                "object": "error",
                "context": context,
                "error": error.to_string(),
            }),
            RunError::Io(e) => {
                json!({ "schema": SCHEMA, "object": "io_error", "error": e.to_string() })
            }
        }
    }
}

fn compute<T>(context: impl Into<String>, r: lchi_core::Result<T>) -> Result<T, RunError> {
    r.map_err(|error| RunError::Compute {
        context: context.into(),
        error,
    })
}

enum Item {
    Laurent(TruncLaurent, &'static str),
    Series(TSeries),
    U(USeries),
    Lambda(Box<LambdaResult>),
    /// A residual record and whether it vanishes on its window.
    Residual(Value, bool),
}

struct Entry {
    name: String,
    tags: Value,
    item: Item,
}

fn entry(name: impl Into<String>, tags: Value, item: Item) -> Entry {
    Entry {
        name: name.into(),
        tags,
        item,
    }
}

struct Doc {
    object: &'static str,
    field: Arc<Field>,
    ext_field: Option<Arc<Field>>,
    window: Option<Value>,
    entries: Vec<Entry>,
}

impl Item {
    fn to_json(&self) -> Value {
        match self {
            Item::Laurent(x, r) => json::laurent(x, r),
            Item::Series(x) => json::tseries(x, FIELD_REF),
            Item::U(x) => json::useries(x),
            Item::Lambda(x) => json::lambda_result(x),
            Item::Residual(v, ok) => {
                let mut v = v.clone();
                v["vanishes"] = json!(ok);
                v
            }
        }
    }

    fn to_text(&self) -> String {
        match self {
            Item::Laurent(x, _) => text::laurent(x),
            Item::Series(x) => text::tseries(x),
            Item::U(x) => text::useries(x),
            Item::Lambda(x) => format!(
                "lambda = {}\nphi:\n{}\npsi:\n{}",
                text::ratfunc(&x.lambda),
                text::useries(&x.phi),
                text::useries(&x.psi)
            ),
            Item::Residual(v, ok) => format!("{} {v}", if *ok { "vanishes" } else { "NONZERO" }),
        }
    }
}

impl Doc {
    fn render(&self, cfg: &RunConfig) -> String {
        match cfg.format {
            Format::Json => {
                let mut m = Map::new();
                m.insert("schema".into(), json!(SCHEMA));
                m.insert("object".into(), json!(self.object));
                m.insert("params".into(), cfg.key_params());
                m.insert("field".into(), json::field(&self.field));
                if let Some(f) = &self.ext_field {
                    m.insert("ext_field".into(), json::field(f));
                }
                if let Some(w) = &self.window {
                    m.insert("window".into(), w["window"].clone());
                }
                let results: Vec<Value> = self
                    .entries
                    .iter()
                    .map(|e| {
                        let mut r = Map::new();
                        r.insert("name".into(), json!(e.name));
                        if let Value::Object(t) = &e.tags {
                            r.extend(t.clone());
                        }
                        r.insert("value".into(), e.item.to_json());
                        Value::Object(r)
                    })
                    .collect();
                m.insert("results".into(), Value::Array(results));
                let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = format!("{} over F_{}\n", self.object, self.field.q());
                for e in &self.entries {
                    let tags = match &e.tags {
                        Value::Object(t) if !t.is_empty() => format!(" {}", e.tags),
                        _ => String::new(),
                    };
                    s.push_str(&format!("== {}{tags}\n{}\n", e.name, e.item.to_text()));
                }
                s
            }
        }
    }
}

fn base_field(cfg: &RunConfig) -> Result<Arc<Field>, RunError> {
    Field::prime_power(cfg.p, cfg.e).map_err(|e| RunError::Usage(e.to_string()))
}

fn pi(cfg: &RunConfig, f: Arc<Field>) -> Result<Doc, RunError> {
    let x = pi_qm1(&f, cfg.prec_theta);
    Ok(Doc {
        object: "pi_qm1",
        field: f,
        ext_field: None,
        window: Some(json::window(None, cfg.prec_theta)),
        entries: vec![entry("pi_qm1", json!({}), Item::Laurent(x, FIELD_REF))],
    })
}

fn zeta_cmd(cfg: &RunConfig, f: Arc<Field>) -> Result<Doc, RunError> {
    let prec = cfg.prec_theta;
    let mut entries = Vec::new();
    for &s in &cfg.alpha {
        let z = compute(format!("zeta({s})"), zeta(&f, s, prec))?;
        entries.push(entry(
            "zeta",
            json!({ "s": s }),
            Item::Laurent(z, FIELD_REF),
        ));
    }
    for &k in &cfg.k {
        let r = compute(
            format!("zeta_special_check({k})"),
            zeta_special_check(&f, k, prec),
        )?;
        let ok = r.is_zero() && r.prec() >= prec;
        entries.push(entry(
            "zeta_special_check",
            json!({ "k": k }),
            Item::Residual(json::residual_laurent(&r), ok),
        ));
    }
    Ok(Doc {
        object: "zeta",
        field: f,
        ext_field: None,
        window: Some(json::window(None, prec)),
        entries,
    })
}

fn lseries(cfg: &RunConfig, f: Arc<Field>) -> Result<Doc, RunError> {
    let per_alpha = par_map(
        cfg.jobs,
        cfg.alpha.clone(),
        |alpha| -> Result<Vec<Entry>, RunError> {
            let mut p = compute("parameters", LParams::new(alpha, cfg.nt, cfg.prec_theta))?;
            if let Some(d) = cfg.deg_cutoff {
                p = p.with_cutoff(d);
            }
            let tags = json!({ "alpha": alpha, "D": p.d, "window": { "Nt": cfg.nt, "theta_prec": p.window() } });
            let mut out = vec![
                entry(
                    "Lchit",
                    tags.clone(),
                    Item::Series(compute("Lchit", lchit(&f, &p))?),
                ),
                entry(
                    "euler_product",
                    tags.clone(),
                    Item::Series(compute("euler_product", euler_product(&f, &p))?),
                ),
            ];
            if alpha == 1 {
                let l = l1_product(&f, cfg.nt, cfg.prec_theta);
                out.push(entry("L1_product", json!({ "alpha": 1 }), Item::Series(l)));
            }
            Ok(out)
        },
    );
    let mut entries = Vec::new();
    for e in per_alpha {
        entries.extend(e?);
    }
    Ok(Doc {
        object: "lseries",
        field: f,
        ext_field: None,
        window: Some(json::window(Some(cfg.nt), cfg.prec_theta)),
        entries,
    })
}

fn lambda(cfg: &RunConfig, f: Arc<Field>) -> Result<Doc, RunError> {
    let q = f.q();
    let results = par_map(cfg.jobs, cfg.alpha.clone(), |alpha| {
        let nu = cfg.nu.unwrap_or(min_nu(q, alpha as usize));
        let r = compute(
            format!("lambda_{alpha}"),
            lambda_solve(&f, alpha as usize, nu),
        )?;
        Ok::<_, RunError>(entry(
            "lambda",
            json!({ "alpha": alpha, "Nu": nu }),
            Item::Lambda(Box::new(r)),
        ))
    });
    Ok(Doc {
        object: "lambda",
        field: f,
        ext_field: None,
        window: None,
        entries: results.into_iter().collect::<Result<_, _>>()?,
    })
}

fn uexp(cfg: &RunConfig, f: Arc<Field>) -> Result<Doc, RunError> {
    let nu = cfg.nu.unwrap_or(DEFAULT_NU);
    let tags = json!({ "Nu": nu });
    let mut entries = vec![
        entry("g", tags.clone(), Item::U(compute("g", modular_g(&f, nu))?)),
        entry("h", tags.clone(), Item::U(compute("h", modular_h(&f, nu))?)),
        entry(
            "Delta",
            tags.clone(),
            Item::U(compute("Delta", modular_delta(&f, nu))?),
        ),
    ];
    for &k in &cfg.k {
        let g: Vec<RatFunc> = compute(format!("G_{k}"), goss_poly(&f, k as usize))?;
        entries.push(entry(
            "goss",
            json!({ "k": k }),
            Item::U(USeries::new(&f, g)),
        ));
    }
    entries.push(entry("d2", tags, Item::U(compute("d2", d2_solve(&f, nu))?)));
    Ok(Doc {
        object: "uexp",
        field: f,
        ext_field: None,
        window: None,
        entries,
    })
}

fn dirichlet(cfg: &RunConfig, f: Arc<Field>) -> Result<Doc, RunError> {
    let r = cfg.ext_r;
    let (fr, _) = compute("extension field", f.extension(r))?;
    let xs = match &cfg.xi {
        XiSpec::All => fr.elements().filter(|&x| fr.frob_k(x, r) == x).collect(),
        XiSpec::List(v) => v
            .iter()
            .map(|d| {
                fr.from_digits(d)
                    .map_err(|e| RunError::Usage(format!("--xi: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    let fref = if r == 1 { FIELD_REF } else { EXT_FIELD_REF };
    let prec = cfg.prec_theta;
    let per_xi = par_map(cfg.jobs, xs, |x| {
        let v = compute(
            "dirichlet_value",
            dirichlet_value(&FqElem::new(&fr, x), r, prec),
        )?;
        let tags = json!({ "xi": json::fq(&fr, x), "r": r });
        let res = |name: &str, t: &TruncLaurent| {
            let ok = t.is_zero() && t.prec() >= prec;
            entry(
                name,
                tags.clone(),
                Item::Residual(json::residual_laurent(t), ok),
            )
        };
        let mut out = vec![
            entry("L1", tags.clone(), Item::Laurent(v.l1.clone(), fref)),
            res("rho_check", &v.rho_check),
        ];
        if let Some(pc) = &v.period_check {
            out.push(res("period_check", pc));
        }
        Ok::<_, RunError>(out)
    });
    let mut entries = Vec::new();
    for e in per_xi {
        entries.extend(e?);
    }
    Ok(Doc {
        object: "dirichlet",
        field: f,
        ext_field: (r > 1).then_some(fr),
        window: Some(json::window(None, prec)),
        entries,
    })
}

/// Suite parameters for `verify`: the configured field and window, with
/// the `lambda` window capped at `(Nt, prec) = (4, 20)`.
pub fn suite_for(cfg: &RunConfig) -> Suite {
    Suite {
        fields: vec![(cfg.p, cfg.e)],
        nt: cfg.nt,
        prec: cfg.prec_theta,
        d: cfg.deg_cutoff.unwrap_or(cfg.prec_theta as usize),
        zeta_prec: cfg.prec_theta,
        dirichlet_prec: cfg.prec_theta,
        dirichlet_max_r: cfg.ext_r.max(3),
        lambda_nt: cfg.nt.min(4),
        lambda_prec: cfg.prec_theta.min(20),
        nu: Some(cfg.nu.unwrap_or(DEFAULT_NU)),
        random_ops: 200,
        seed: Suite::acceptance().seed,
    }
}

fn verify(cfg: &RunConfig) -> Result<String, RunError> {
    let reports = suite_for(cfg).run_all(cfg.jobs);
    let output = match cfg.format {
        Format::Json => {
            let v = json!({
                "schema": SCHEMA,
                "object": "verify",
                "params": cfg.key_params(),
                "passed": reports.iter().all(|r| r.passed()),
                "criteria": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Text => reports.iter().map(|r| r.summary_line() + "\n").collect(),
    };
    let failed = reports
        .iter()
        .find_map(|r| r.first_failure().map(|c| (r.number, c)));
    match failed {
        None => Ok(output),
        Some((n, c)) => Err(RunError::Verify {
            output,
            report: json!({
                "schema": SCHEMA,
                "object": "verify_failure",
                "criterion": n,
                "identity": c.identity,
                "q": c.q,
                "residual": c.detail,
            }),
        }),
    }
}

/// Runs `cmd`, returning what goes to stdout. Results other than `verify`
/// are served from and stored into the cache when a cache directory is set.
pub fn run_command(cmd: Command, cfg: &RunConfig) -> Result<String, RunError> {
    cfg.validate().map_err(RunError::Usage)?;
    if cmd == Command::Verify {
        return verify(cfg);
    }
    let fresh = || -> Result<String, RunError> {
        let f = base_field(cfg)?;
        let doc = match cmd {
            Command::Pi => pi(cfg, f),
            Command::Zeta => zeta_cmd(cfg, f),
            Command::Lseries => lseries(cfg, f),
            Command::Lambda => lambda(cfg, f),
            Command::Uexp => uexp(cfg, f),
            Command::Dirichlet => dirichlet(cfg, f),
            Command::Verify => unreachable!(),
        }?;
        Ok(doc.render(cfg))
    };
    match &cfg.cache_dir {
        None => fresh(),
        Some(dir) => {
            let key = cache::key(cmd.name(), &cfg.key_params());
            Cache::new(dir).get_or_insert_with(&key, fresh)
        }
    }
}
