//! Command-line front end: argument parsing, dispatch, JSON documents and
//! the on-disk result cache.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource bound.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::arrangement::{characteristic_brute, characteristic_quasi_polynomial, subset_members, Arrangement};
use crate::coboundary::{b_brute, coboundary_quasi_polynomial, tutte_check};
use crate::codes::{
    dual_code, image_code, macwilliams_sides, dual_example_experiment, weight_enumerator, Code, WeightMode,
};
use crate::error::Error;
use crate::io::{parse_arrangement, parse_ideal};
use crate::layers::build_layer_poset;
use crate::poly::{BiPoly, UniPoly};
use crate::quasi::{quasi_evaluate, quasi_evaluate_bivariate};
use crate::ring::{Ideal, RingSpec};
use crate::verify::{verify_arrangement, Status};
use crate::Limits;

pub const CACHE_ENV: &str = "QUASICHAR_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".quasichar-cache";

#[derive(Parser, Debug)]
#[command(name = "quasichar", version, about = "Quasi-polynomials of central arrangements over Z and quadratic rings")]
struct Cli {
    /// Recompute even when a cached document exists.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Cache directory (overrides the environment variable).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    /// Largest number of points enumerated by brute force.
    #[arg(long, global = true, value_name = "N")]
    max_points: Option<u64>,
    /// Largest arrangement size for subset loops.
    #[arg(long, global = true, value_name = "N")]
    max_subsets: Option<usize>,
    /// Largest ideal norm for divisor and residue-ring enumeration.
    #[arg(long, global = true, value_name = "N")]
    max_norm: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Characteristic quasi-polynomial.
    Charpoly { file: PathBuf },
    /// Coboundary quasi-polynomial.
    Coboundary { file: PathBuf },
    /// Poset of layers, optionally writing its Hasse diagram as DOT.
    Layers {
        file: PathBuf,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Tutte polynomial and the coboundary relation.
    Tutte { file: PathBuf },
    /// Codes over O/a spanned by the arrangement.
    Codes {
        file: PathBuf,
        #[arg(long, value_name = "SPEC")]
        ideal: String,
        #[arg(value_enum)]
        action: CodeAction,
    },
    /// Evaluates both quasi-polynomials at an ideal.
    Eval {
        file: PathBuf,
        #[arg(long, value_name = "SPEC")]
        ideal: String,
    },
    /// Runs the invariant suite.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 12)]
        qmax: u64,
    },
    /// The fixed duality experiment for q = 2..12.
    Section4,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CodeAction {
    Weight,
    Dual,
    Macwilliams,
}

impl CodeAction {
    fn name(self) -> &'static str {
        match self {
            CodeAction::Weight => "weight",
            CodeAction::Dual => "dual",
            CodeAction::Macwilliams => "macwilliams",
        }
    }
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceBound { .. } => 3,
            Error::Internal(_)
            | Error::NonIntegerCoefficient(_)
            | Error::InconsistentSamples(_)
            | Error::IllDefinedMap
            | Error::InfiniteQuotient
            | Error::NotTorsion => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 2, message }
}

fn num(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn ideal_json(i: &Ideal) -> Value {
    json!({
        "label": i.label(),
        "norm": num(&i.norm()),
        "basis": i.basis_rows().iter().map(|r| r.iter().map(num).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn uni_json(p: &UniPoly) -> Value {
    let coeffs: Vec<Value> =
        p.coeffs().iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(|(i, c)| json!([i, 0, num(c)])).collect();
    json!({ "polynomial": p.render("t"), "coefficients": coeffs })
}

fn bi_json(p: &BiPoly, first: &str, second: &str) -> Value {
    let mut terms: Vec<(u32, u32, &BigInt)> = p.terms().collect();
    terms.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let coeffs: Vec<Value> = terms.into_iter().map(|(i, j, c)| json!([i, j, num(c)])).collect();
    json!({ "polynomial": p.render(first, second), "coefficients": coeffs })
}

fn ring_name(r: RingSpec) -> String {
    r.describe()
}

fn words_json(code: &Code) -> Value {
    let ring = code.ring().ideal().ring();
    Value::Array(
        code.words()
            .iter()
            .map(|w| {
                Value::Array(
                    w.iter()
                        .map(|x| match ring {
                            RingSpec::Integers => json!(x[0]),
                            RingSpec::Quadratic { .. } => json!([x[0], x[1]]),
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

struct Context {
    limits: Limits,
}

fn load(file: &Path) -> Result<(Vec<u8>, Arrangement), Failure> {
    let bytes = fs::read(file).map_err(|e| input_error(format!("cannot read {}: {e}", file.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| input_error(format!("{} is not UTF-8", file.display())))?;
    Ok((bytes, parse_arrangement(&text)?))
}

fn charpoly_doc(a: &Arrangement, ctx: &Context) -> Result<Value, Failure> {
    let chi = characteristic_quasi_polynomial(a, &ctx.limits)?;
    let constituents: Vec<Value> = chi
        .constituents()
        .iter()
        .map(|(k, p)| json!({ "divisor": ideal_json(k), "constituent": uni_json(p) }))
        .collect();
    Ok(json!({ "period": ideal_json(chi.period()), "constituents": constituents }))
}

fn coboundary_doc(a: &Arrangement, ctx: &Context) -> Result<Value, Failure> {
    let chi = coboundary_quasi_polynomial(a, &ctx.limits)?;
    let constituents: Vec<Value> = chi
        .constituents()
        .iter()
        .map(|(k, p)| json!({ "divisor": ideal_json(k), "constituent": bi_json(p, "t", "x") }))
        .collect();
    Ok(json!({
        "period": ideal_json(chi.period()),
        "parallel_classes": a.parallel_classes().iter().map(|c| c.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "constituents": constituents,
    }))
}

fn layers_doc(a: &Arrangement, ctx: &Context, dot: Option<&Path>) -> Result<Value, Failure> {
    let poset = build_layer_poset(a, &ctx.limits)?;
    if let Some(path) = dot {
        fs::write(path, poset.to_dot()).map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))?;
    }
    let elements: Vec<Value> = poset
        .layers()
        .iter()
        .enumerate()
        .map(|(i, z)| {
            json!({
                "index": i,
                "representative": poset.render_point(&z.representative),
                "subset": subset_members(z.subset).map(|j| j + 1).collect::<Vec<_>>(),
                "dim": z.dim,
                "atoms_below": z.atom_count,
                "mobius_from_bottom": num(poset.mobius(0, i)),
            })
        })
        .collect();
    let mut torsion = Vec::new();
    for (k, member) in poset.torsion_table() {
        torsion.push(json!({
            "divisor": ideal_json(k),
            "members": member.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect::<Vec<_>>(),
            "constituent": bi_json(&poset.constituent_from_poset(k)?, "t", "x"),
        }));
    }
    Ok(json!({
        "period": ideal_json(poset.period()),
        "elements": elements,
        "covers": poset.cover_relations(),
        "torsion_subposets": torsion,
    }))
}

fn tutte_doc(a: &Arrangement, ctx: &Context) -> Result<(Value, bool), Failure> {
    let chi = coboundary_quasi_polynomial(a, &ctx.limits)?;
    let check = tutte_check(a, &chi, &ctx.limits)?;
    let t = crate::coboundary::tutte_polynomial(a, &ctx.limits)?;
    let ok = check.holds();
    Ok((
        json!({
            "tutte": bi_json(&t, "x", "y"),
            "relation": {
                "lhs": bi_json(&check.lhs, "x", "y"),
                "rhs": bi_json(&check.rhs, "x", "y"),
                "holds": ok,
            },
        }),
        ok,
    ))
}

fn codes_doc(a: &Arrangement, ideal: &Ideal, action: CodeAction, ctx: &Context) -> Result<(Value, bool), Failure> {
    let code = image_code(a, ideal, &ctx.limits)?;
    let base = json!({ "ideal": ideal_json(ideal), "length": code.length(), "size": code.size() });
    let mut doc = base;
    let mut ok = true;
    match action {
        CodeAction::Weight => {
            let h = weight_enumerator(&code, &WeightMode::Hamming)?;
            let c = weight_enumerator(&code, &WeightMode::Classes(a.parallel_classes().to_vec()))?;
            doc["hamming_enumerator"] = bi_json(&h, "x", "y");
            doc["class_enumerator"] = bi_json(&c, "x", "y");
        }
        CodeAction::Dual => {
            let d = dual_code(&code, &ctx.limits)?;
            doc["dual_size"] = json!(d.size());
            doc["dual_words"] = words_json(&d);
            doc["dual_enumerator"] = bi_json(&weight_enumerator(&d, &WeightMode::Hamming)?, "x", "y");
        }
        CodeAction::Macwilliams => {
            let m = macwilliams_sides(&code, &ctx.limits)?;
            ok = m.holds();
            doc["lhs"] = bi_json(&m.lhs, "x", "y");
            doc["rhs"] = bi_json(&m.rhs, "x", "y");
            doc["holds"] = json!(ok);
        }
    }
    Ok((doc, ok))
}

fn eval_doc(a: &Arrangement, ideal: &Ideal, ctx: &Context) -> Result<(Value, bool), Failure> {
    let chi = characteristic_quasi_polynomial(a, &ctx.limits)?;
    let cob = coboundary_quasi_polynomial(a, &ctx.limits)?;
    let kappa = crate::ring::ideal_sum(ideal, chi.period())?;
    let value = quasi_evaluate(&chi, ideal)?;
    let b = quasi_evaluate_bivariate(&cob, ideal)?;
    let mut ok = true;
    let brute = match characteristic_brute(a, ideal, &ctx.limits) {
        Ok(n) => {
            let bb = UniPoly::new(b_brute(a, ideal, &ctx.limits)?);
            ok = BigInt::from(n) == value && bb == b;
            json!({ "characteristic": n, "coboundary": uni_json(&bb)["polynomial"].clone(), "agrees": ok })
        }
        Err(Error::ResourceBound { .. }) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    Ok((
        json!({
            "ideal": ideal_json(ideal),
            "class": ideal_json(&kappa),
            "characteristic": num(&value),
            "coboundary": b.render("x"),
            "brute_force": brute,
        }),
        ok,
    ))
}

fn verify_doc(a: &Arrangement, qmax: u64, ctx: &Context) -> Result<(Value, bool), Failure> {
    let checks = verify_arrangement(a, qmax, &ctx.limits)?;
    let ok = checks.iter().all(|c| c.status != Status::Fail);
    let items: Vec<Value> = checks
        .iter()
        .map(|c| {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Skip => "skip",
            };
            json!({ "name": c.name, "status": status, "detail": c.detail })
        })
        .collect();
    Ok((json!({ "qmax": qmax, "checks": items, "passed": ok }), ok))
}

fn dual_example_doc(ctx: &Context) -> Result<(Value, bool), Failure> {
    let rows = dual_example_experiment(&ctx.limits)?;
    let ok = rows.iter().all(|r| r.passes());
    let items: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "q": r.q,
                "image_size": r.image.size(),
                "image_enumerator": r.image_enumerator.render("x", "y"),
                "dual_words": words_json(&r.dual),
                "dual_enumerator": r.dual_enumerator.render("x", "y"),
                "star_words": words_json(&r.star),
                "star_equals_dual": r.star == r.dual,
                "macwilliams": r.macwilliams,
                "passed": r.passes(),
            })
        })
        .collect();
    Ok((json!({ "rows": items, "passed": ok }), ok))
}

fn cache_dir(cli: &Cli) -> PathBuf {
    cli.cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

fn cache_key(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

/// Stored documents carry the exit status on their first line.
fn cache_read(dir: &Path, key: &str) -> Option<(i32, String)> {
    let text = fs::read_to_string(dir.join(format!("{key}.json"))).ok()?;
    let (status, body) = text.split_once('\n')?;
    Some((status.parse().ok()?, body.to_string()))
}

fn cache_write(dir: &Path, key: &str, status: i32, body: &str) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".{key}.{}.tmp", std::process::id()));
    fs::write(&tmp, format!("{status}\n{body}"))?;
    fs::rename(&tmp, dir.join(format!("{key}.json")))
}

fn render(command: &str, digest: Option<&str>, ring: Option<RingSpec>, mut body: Value, elapsed_ms: u128) -> String {
    body["command"] = json!(command);
    if let Some(d) = digest {
        body["input_sha256"] = json!(d);
    }
    if let Some(r) = ring {
        body["ring"] = json!(ring_name(r));
    }
    body["timing"] = json!({ "elapsed_ms": elapsed_ms as u64 });
    let mut s = serde_json::to_string_pretty(&body).expect("values serialise");
    s.push('\n');
    s
}

fn execute(cli: &Cli, stderr: &mut dyn Write) -> Result<(i32, String), Failure> {
    let limits = Limits {
        max_points: cli.max_points.unwrap_or(Limits::default().max_points),
        max_subset_size: cli.max_subsets.unwrap_or(Limits::default().max_subset_size),
        max_norm: cli.max_norm.unwrap_or(Limits::default().max_norm),
    };
    let ctx = Context { limits };
    let (name, file, extra): (&str, Option<&PathBuf>, String) = match &cli.command {
        Command::Charpoly { file } => ("charpoly", Some(file), String::new()),
        Command::Coboundary { file } => ("coboundary", Some(file), String::new()),
        Command::Layers { file, .. } => ("layers", Some(file), String::new()),
        Command::Tutte { file } => ("tutte", Some(file), String::new()),
        Command::Codes { file, ideal, action } => ("codes", Some(file), format!("{ideal}|{}", action.name())),
        Command::Eval { file, ideal } => ("eval", Some(file), ideal.clone()),
        Command::Verify { file, qmax } => ("verify", Some(file), qmax.to_string()),
        Command::Section4 => ("section4", None, String::new()),
    };
    let loaded = file.map(|f| load(f)).transpose()?;
    let digest = loaded.as_ref().map(|(bytes, _)| hex::encode(Sha256::digest(bytes)));
    let limits_tag = format!("{}|{}|{}", limits.max_points, limits.max_subset_size, limits.max_norm);
    let key = cache_key(&[
        name.as_bytes(),
        extra.as_bytes(),
        limits_tag.as_bytes(),
        digest.as_deref().unwrap_or("").as_bytes(),
        env!("CARGO_PKG_VERSION").as_bytes(),
    ]);
    let writes_dot = matches!(&cli.command, Command::Layers { dot: Some(_), .. });
    let use_cache = !cli.no_cache && !writes_dot;
    let dir = cache_dir(cli);
    if use_cache {
        if let Some((status, body)) = cache_read(&dir, &key) {
            let _ = writeln!(stderr, "cache: hit {key}");
            return Ok((status, body));
        }
    }

    let start = Instant::now();
    let ring = loaded.as_ref().map(|(_, a)| a.ring());
    let (body, ok) = match (&cli.command, loaded.as_ref().map(|(_, a)| a)) {
        (Command::Charpoly { .. }, Some(a)) => (charpoly_doc(a, &ctx)?, true),
        (Command::Coboundary { .. }, Some(a)) => (coboundary_doc(a, &ctx)?, true),
        (Command::Layers { dot, .. }, Some(a)) => (layers_doc(a, &ctx, dot.as_deref())?, true),
        (Command::Tutte { .. }, Some(a)) => tutte_doc(a, &ctx)?,
        (Command::Codes { ideal, action, .. }, Some(a)) => codes_doc(a, &parse_ideal(a.ring(), ideal)?, *action, &ctx)?,
        (Command::Eval { ideal, .. }, Some(a)) => eval_doc(a, &parse_ideal(a.ring(), ideal)?, &ctx)?,
        (Command::Verify { qmax, .. }, Some(a)) => verify_doc(a, *qmax, &ctx)?,
        (Command::Section4, _) => dual_example_doc(&ctx)?,
        _ => unreachable!("every file command has a loaded arrangement"),
    };
    let status = if ok { 0 } else { 1 };
    let out = render(name, digest.as_deref(), ring, body, start.elapsed().as_millis());
    if use_cache {
        if let Err(e) = cache_write(&dir, &key, status, &out) {
            let _ = writeln!(stderr, "warning: cache disabled ({}): {e}", dir.display());
        } else {
            let _ = writeln!(stderr, "cache: stored {key}");
        }
    }
    Ok((status, out))
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run_with(args: impl IntoIterator<Item = OsString>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, stderr) {
        Ok((code, doc)) => {
            let _ = stdout.write_all(doc.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
