use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use superpi_core::algebras::{evaluate_mat, generic_f, gordienko_a1, grassmann_truncated, m11_over_grassmann, ut2, AlgebraDoc, FinDimAlgebra, MatSC};
use superpi_core::catalog::NAMES;
use superpi_core::expr::{eval_str, EvalError, Value};
use superpi_core::freealg::{derangements, gamma_basis, NCPoly};
use superpi_core::report::SuiteConfig;
use superpi_core::suites::{run_suite, SUITES};
use superpi_core::tideal::spaces::{consequences_gamma, consequences_pn, identities_pn, identities_pn_m11, m11_witness, membership_residuals, proper_dimension};
use superpi_core::tideal::young::gamma_v_dim;
use superpi_core::tideal::{Limits, TidealError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "superpi", version, about = "Polynomial identities of the generic algebra K[C1, C2] and related algebras")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text", env = "SUPERPI_FORMAT")]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate an expression, optionally substituting into an algebra.
    Eval {
        expr: String,
        /// `F`, `ut2`, `a1`, `grassmann:K`, `m11:K` or a JSON algebra file.
        #[arg(long)]
        on: Option<String>,
        /// `tI=EXPR` for the matrix algebra `F`; defaults are t1=C1, t2=C2.
        #[arg(long = "assign", value_name = "tI=EXPR")]
        assign: Vec<String>,
    },
    /// Decide whether an expression lies in the T-ideal generated by `--gens`.
    Member {
        expr: String,
        /// A catalog list such as `fbasis` or `popov`, or expressions separated by `;`.
        #[arg(long)]
        gens: String,
        /// Largest degree the computation may reach.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Dimensions of Γ_n and of Γ_n modulo the basis `fbasis`, for a range `A..B`.
    Dims { range: String },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// The catalog of named objects.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Finite-dimensional algebras as JSON structure constants.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List,
}

#[derive(Subcommand, Debug)]
enum AlgebraCmd {
    /// Write a built-in algebra as JSON.
    Export {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Read a JSON algebra and summarize it.
    Import { path: PathBuf },
}

#[derive(clap::Args, Debug)]
struct ConfigArgs {
    #[arg(long, env = "SUPERPI_DEGREE_BOUND", default_value_t = 6)]
    degree_bound: usize,
    #[arg(long, env = "SUPERPI_TRUNC", default_value_t = 4)]
    trunc: usize,
    #[arg(long, env = "SUPERPI_SEED", default_value_t = 1)]
    seed: u64,
    #[arg(long, env = "SUPERPI_TRIALS", default_value_t = 20)]
    trials: usize,
    #[arg(long, env = "SUPERPI_SUITE_BUDGET_SECONDS")]
    suite_budget_seconds: Option<u64>,
    /// Include the slow checks that are skipped by default.
    #[arg(long, env = "SUPERPI_HEAVY")]
    heavy: bool,
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<TidealError> for Failure {
    fn from(e: TidealError) -> Failure {
        match e {
            TidealError::Budget { .. } => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn emit(format: Format, text: String, doc: Json) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&doc).unwrap()),
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.cmd {
        Cmd::Eval { expr, on, assign } => eval_cmd(cli.format, expr, on.as_deref(), assign),
        Cmd::Member { expr, gens, degree } => member_cmd(cli.format, expr, gens, *degree),
        Cmd::Dims { range } => dims_cmd(cli.format, range),
        Cmd::Verify { suite, cfg } => verify_cmd(cli.format, suite, cfg),
        Cmd::Catalog { cmd: CatalogCmd::List } => {
            let text = NAMES.iter().map(|(n, p, d)| format!("{:<8} {:<12} {d}", n, if p.is_empty() { "-" } else { p })).collect::<Vec<_>>().join("\n");
            let doc = NAMES.iter().map(|(n, p, d)| json!({"name": n, "params": p, "description": d})).collect();
            emit(cli.format, text, Json::Array(doc));
            Ok(0)
        }
        Cmd::Algebra { cmd } => algebra_cmd(cli.format, cmd),
    }
}

fn polys(expr: &str) -> Result<Vec<NCPoly>, Failure> {
    Ok(eval_str(expr)?.into_polys()?)
}

fn builtin_algebra(name: &str) -> Result<FinDimAlgebra, Failure> {
    let k = |s: &str| s.parse::<usize>().ok().filter(|k| (1..=8).contains(k)).ok_or_else(|| Failure::Usage(format!("bad truncation `{s}`, expected 1..=8")));
    match name.split_once(':') {
        None if name == "ut2" => Ok(ut2()),
        None if name == "a1" => Ok(gordienko_a1()),
        Some(("grassmann", s)) => Ok(grassmann_truncated(k(s)?)),
        Some(("m11", s)) => Ok(m11_over_grassmann(k(s)?)),
        _ => {
            let text = std::fs::read_to_string(name).map_err(|e| Failure::Usage(format!("unknown algebra `{name}` ({e})")))?;
            let doc: AlgebraDoc = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{name}: {e}")))?;
            FinDimAlgebra::from_json(&doc).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn eval_cmd(format: Format, expr: &str, on: Option<&str>, assign: &[String]) -> Result<u8, Failure> {
    match on {
        None => {
            let v = eval_str(expr)?;
            emit(format, v.to_string(), json!({"input": expr, "kind": v.kind(), "value": v.to_string(), "zero": v.is_zero()}));
        }
        Some("F") => {
            let fs = polys(expr)?;
            let (c1, c2) = generic_f();
            let mut values: Vec<Option<MatSC>> = vec![Some(c1), Some(c2)];
            for a in assign {
                let (var, e) = a.split_once('=').ok_or_else(|| Failure::Usage(format!("assignment `{a}` is not of the form tI=EXPR")))?;
                let i: usize = var.trim().strip_prefix('t').and_then(|s| s.parse().ok()).filter(|&i| i > 0).ok_or_else(|| Failure::Usage(format!("bad variable `{var}`")))?;
                let m = match eval_str(e)? {
                    Value::Mat(m) => m,
                    other => return Err(Failure::Usage(format!("`{e}` is a {}, not a matrix", other.kind()))),
                };
                if values.len() < i {
                    values.resize(i, None);
                }
                values[i - 1] = Some(m);
            }
            let mut text = Vec::new();
            let mut docs = Vec::new();
            for f in &fs {
                let need = f.max_variable() as usize;
                let mut vals = Vec::with_capacity(need);
                for i in 0..need {
                    match values.get(i).cloned().flatten() {
                        Some(m) => vals.push(m),
                        None => return Err(Failure::Usage(format!("t{} has no value; pass --assign t{}=EXPR", i + 1, i + 1))),
                    }
                }
                let m = evaluate_mat(f, &vals).map_err(|e| Failure::Usage(e.to_string()))?;
                text.push(if m.is_zero() { "0".to_string() } else { m.to_string() });
                docs.push(json!({"value": m.to_string(), "zero": m.is_zero()}));
            }
            emit(format, text.join("\n"), json!({"input": expr, "on": "F", "results": docs}));
        }
        Some(name) => {
            let alg = builtin_algebra(name)?;
            let mut docs = Vec::new();
            let mut text = Vec::new();
            for f in polys(expr)? {
                let (identity, witness) = identity_on(&alg, name, &f)?;
                text.push(match (&witness, identity) {
                    (_, true) => format!("{f}: identity of {}", alg.name()),
                    (Some(w), false) => format!("{f}: not an identity of {}; nonzero at ({w})", alg.name()),
                    (None, false) => format!("{f}: not an identity of {}", alg.name()),
                });
                docs.push(json!({"polynomial": f.to_string(), "identity": identity, "witness": witness}));
            }
            emit(format, text.join("\n"), json!({"input": expr, "on": alg.name(), "results": docs}));
        }
    }
    Ok(0)
}

fn identity_on(alg: &FinDimAlgebra, name: &str, f: &NCPoly) -> Result<(bool, Option<String>), Failure> {
    let comps = f.linearization_components();
    let m11_k = name.strip_prefix("m11:").and_then(|s| s.parse::<usize>().ok());
    for c in comps {
        let n = match c.degree() {
            Some(n) => n,
            None => continue,
        };
        let limits = Limits::with_degree(n.max(1));
        if let Some(k) = m11_k {
            if let Some(t) = m11_witness(&c, k, alg) {
                let labels: Vec<String> = t.iter().map(|&i| alg.labels()[i].clone()).collect();
                return Ok((false, Some(labels.join(", "))));
            }
            if !identities_pn_m11(k, n, &limits)?.contains(&c)? {
                return Ok((false, None));
            }
        } else if !identities_pn(alg, n, &limits)?.contains(&c)? {
            return Ok((false, None));
        }
    }
    Ok((true, None))
}

fn member_cmd(format: Format, expr: &str, gens: &str, degree: Option<usize>) -> Result<u8, Failure> {
    let f = {
        let mut v = polys(expr)?;
        if v.len() != 1 {
            return Err(Failure::Usage("member expects a single polynomial".into()));
        }
        v.pop().unwrap()
    };
    let mut g = Vec::new();
    for part in gens.split(';').filter(|s| !s.trim().is_empty()) {
        g.extend(polys(part)?);
    }
    let deg = f.degree().unwrap_or(0);
    let bound = degree.unwrap_or(deg).max(deg);
    let limits = Limits { pn_degree: bound, gamma_degree: bound, multidegree_total: bound, deadline: None };
    let start = Instant::now();
    let residuals = membership_residuals(&g, &f, &limits)?;
    let inside = residuals.is_empty();
    let mut doc = json!({"input": expr, "generators": g.iter().map(|p| p.to_string()).collect::<Vec<_>>(), "member": inside, "degree": deg});
    let mut text = if inside { "IN" } else { "OUT" }.to_string();
    if f.is_multilinear(deg) && deg >= 1 {
        let c = consequences_pn(&g, deg, &limits)?;
        doc["consequence_dim"] = json!(c.dim());
        doc["ambient_dim"] = json!((1..=deg as u64).product::<u64>());
        text.push_str(&format!(" (dim T(gens) ∩ P_{deg} = {})", c.dim()));
    }
    if let Some(r) = residuals.first() {
        doc["residual"] = json!(r.to_string());
        text.push_str(&format!("\nresidual: {r}"));
    }
    doc["seconds"] = json!(start.elapsed().as_secs_f64());
    emit(format, text, doc);
    Ok(0)
}

fn dims_cmd(format: Format, range: &str) -> Result<u8, Failure> {
    let bad = || Failure::Usage(format!("bad range `{range}`, expected A..B or N with 2 <= A <= B"));
    let (a, b) = match range.split_once("..") {
        Some((a, b)) => (a.parse().map_err(|_| bad())?, b.trim_start_matches('=').parse().map_err(|_| bad())?),
        None => {
            let n = range.parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if a < 2 || a > b {
        return Err(bad());
    }
    let fbasis = polys("fbasis")?;
    let mut rows = Vec::new();
    let mut text = vec![format!("{:>3} {:>8} {:>10} {:>10} {:>12} {:>10}", "n", "D_n", "rank", "basis", "codim(rank)", "hook sum")];
    for n in a..=b {
        let limits = Limits { pn_degree: n, gamma_degree: n, multidegree_total: n.max(8), deadline: None };
        let rank = proper_dimension(n, &limits)?;
        let basis = gamma_basis(n).len();
        let codim = consequences_gamma(&fbasis, n, &limits)?.codim();
        let hook = (n >= 4).then(|| gamma_v_dim(n) as u64);
        let hook_text = hook.map_or("-".to_string(), |h| h.to_string());
        text.push(format!("{n:>3} {:>8} {rank:>10} {basis:>10} {codim:>12} {hook_text:>10}", derangements(n)));
        rows.push(json!({"n": n, "derangements": derangements(n), "gamma_rank": rank, "gamma_basis": basis, "gamma_v_rank": codim, "gamma_v_hook": hook}));
    }
    emit(format, text.join("\n"), Json::Array(rows));
    Ok(0)
}

fn verify_cmd(format: Format, suite: &str, a: &ConfigArgs) -> Result<u8, Failure> {
    if !SUITES.contains(&suite) {
        return Err(Failure::Usage(format!("unknown suite `{suite}`; expected one of {}", SUITES.join(", "))));
    }
    let cfg = SuiteConfig { degree_bound: a.degree_bound, trunc: a.trunc, seed: a.seed, trials: a.trials, budget_seconds: a.suite_budget_seconds, heavy: a.heavy };
    if cfg.degree_bound < 4 || cfg.trunc < 1 {
        return Err(Failure::Usage("--degree-bound must be at least 4 and --trunc at least 1".into()));
    }
    let report = run_suite(suite, &cfg).map_err(|e| Failure::Usage(e.to_string()))?;
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    Ok(report.exit_code() as u8)
}

fn algebra_cmd(format: Format, cmd: &AlgebraCmd) -> Result<u8, Failure> {
    match cmd {
        AlgebraCmd::Export { name, output } => {
            let text = serde_json::to_string_pretty(&builtin_algebra(name)?.to_json()).unwrap();
            match output {
                Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
                None => println!("{text}"),
            }
        }
        AlgebraCmd::Import { path } => {
            let alg = builtin_algebra(&path.to_string_lossy())?;
            let nonzero = (0..alg.dim()).flat_map(|i| (0..alg.dim()).map(move |j| (i, j))).filter(|&(i, j)| !alg.basis_product(i, j).is_empty()).count();
            emit(
                format,
                format!("{}: dimension {}, {} nonzero basis products, {}", alg.name(), alg.dim(), nonzero, if alg.unit().is_some() { "unital" } else { "no unit" }),
                json!({"name": alg.name(), "dim": alg.dim(), "labels": alg.labels(), "unital": alg.unit().is_some(), "nonzero_products": nonzero}),
            );
        }
    }
    Ok(0)
}
