//! The `nfk` command line: argument parsing, reports in table or JSON form,
//! the fingerprint cache and the equivalence checker.
//!
//! [`run`] does all the work and returns what a process would print, so the
//! binary stays a thin wrapper and tests can drive commands in-process.

mod cache;
mod equiv;
mod fingerprint;
mod jset;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use cache::{FingerprintCache, Lookup, CACHE_VERSION};
pub use equiv::{compare, EquivMode, EquivVerdict, Outcome};
pub use fingerprint::{big_json, Fingerprint, PrimeEntry};

use crate::error::{Error, Result};
use crate::ideals::{ClassBackend, ClassData};
use crate::kinvariants::{fingerprint as invariants_fingerprint, FieldInvariants, Rank};
use crate::numberfield::NumberField;
use crate::torsion::roots_of_unity;

/// Label of the degree row; the estimate can only undercount.
pub const DEGREE_LABEL: &str =
    "degree (certified lower bound; exact when a totally split good prime is in range)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "nfk", version, about = "Number-field invariants at desk scale")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: Format,
    /// JSON-lines fingerprint store.
    #[arg(long, global = true)]
    pub cache: Option<std::path::PathBuf>,
    /// Worker threads for per-prime work.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for randomized factorization over finite fields.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basic data of a field.
    Field {
        #[command(subcommand)]
        sub: FieldCmd,
    },
    /// Splitting of all primes up to a bound.
    Split {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        bound: u64,
    },
    /// Torsion orders, rank and degree estimate.
    Invariants(InvariantsArgs),
    /// Compare splitting data of two fields.
    Equiv {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        bound: u64,
        #[arg(long, value_enum, default_value = "g")]
        mode: EquivMode,
    },
    /// Constructible sets at finite level.
    Jset {
        #[command(subcommand)]
        sub: jset::JsetCmd,
    },
}

#[derive(Debug, Subcommand)]
pub enum FieldCmd {
    Info {
        #[arg(long)]
        poly: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Forms,
    Search,
    Manual,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    #[arg(long)]
    pub poly: String,
    #[arg(long)]
    pub bound: u64,
    #[arg(long, value_enum)]
    pub class_backend: Option<BackendArg>,
    /// Class number.
    #[arg(long)]
    pub class_h: Option<u64>,
    /// `p:slot:k`, the order of a prime's class.
    #[arg(long, value_parser = parse_hp)]
    pub class_hp: Vec<(u64, usize, u64)>,
    /// Lattice point cap for the principality search.
    #[arg(long)]
    pub enum_cap: Option<u64>,
}

fn parse_hp(s: &str) -> std::result::Result<(u64, usize, u64), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || format!("expected p:slot:k, got {s:?}");
    if parts.len() != 3 {
        return Err(bad());
    }
    Ok((
        parts[0].parse().map_err(|_| bad())?,
        parts[1].parse().map_err(|_| bad())?,
        parts[2].parse().map_err(|_| bad())?,
    ))
}

/// What a process run would produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String, code: i32) -> Self {
        Output {
            stdout,
            stderr: String::new(),
            code,
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output::ok(text, 0)
            } else {
                Output {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let mut warnings = Vec::new();
    let result = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
        {
            Ok(pool) => pool.install(|| dispatch(&cli, &mut warnings)),
            Err(e) => Err(Error::Io(e.to_string())),
        },
        None => dispatch(&cli, &mut warnings),
    };
    let mut stderr: String = warnings.iter().map(|w| format!("{w}\n")).collect();
    match result {
        Ok((stdout, code)) => Output {
            stdout,
            stderr,
            code,
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            Output {
                stdout: String::new(),
                stderr,
                code: e.exit_code(),
            }
        }
    }
}

fn dispatch(cli: &Cli, warnings: &mut Vec<String>) -> Result<(String, i32)> {
    let json = cli.format == Format::Json;
    let field = |s: &str| -> Result<Arc<NumberField>> {
        let k = NumberField::parse(s)?;
        Ok(Arc::new(match cli.seed {
            Some(seed) => k.with_seed(seed),
            None => k,
        }))
    };
    match &cli.command {
        Command::Field {
            sub: FieldCmd::Info { poly },
        } => Ok((field_info(&field(poly)?, json)?, 0)),
        Command::Split { poly, bound } => {
            let k = field(poly)?;
            let fp = cached_fingerprint(cli, &k, *bound, warnings)?;
            Ok((render_fingerprint(&fp, json), 0))
        }
        Command::Invariants(a) => invariants(&field(&a.poly)?, a, json),
        Command::Equiv {
            left,
            right,
            bound,
            mode,
        } => {
            let (l, r) = (field(left)?, field(right)?);
            let fl = cached_fingerprint(cli, &l, *bound, warnings)?;
            let fr = cached_fingerprint(cli, &r, *bound, warnings)?;
            let v = compare(&fl, &fr, *mode);
            let out = if json {
                json_line(&v.to_json())
            } else {
                v.to_table()
            };
            Ok((out, v.exit_code()))
        }
        Command::Jset { sub } => jset::run(sub, cli.seed, json),
    }
}

fn json_line(v: &Value) -> String {
    format!("{v}\n")
}

fn cached_fingerprint(
    cli: &Cli,
    field: &NumberField,
    bound: u64,
    warnings: &mut Vec<String>,
) -> Result<Fingerprint> {
    let Some(path) = &cli.cache else {
        return Fingerprint::compute(field, bound);
    };
    let cache = FingerprintCache::new(path);
    let look = cache.get(&field.key(), bound)?;
    warnings.extend(look.warnings);
    if let Some(fp) = look.hit {
        return Ok(fp);
    }
    let fp = Fingerprint::compute(field, bound)?;
    cache.put(&fp)?;
    Ok(fp)
}

fn render_fingerprint(fp: &Fingerprint, json: bool) -> String {
    if json {
        let mut v = json!({ "schema": 1 });
        v.as_object_mut()
            .unwrap()
            .extend(fp.to_json().as_object().unwrap().clone());
        return json_line(&v);
    }
    let mut s = String::new();
    let _ = writeln!(s, "{:>6}  {:>3}  (e,f)", "p", "g");
    for (p, e) in &fp.primes {
        match e {
            PrimeEntry::Split { g, ef } => {
                let pairs: Vec<String> = ef.iter().map(|(e, f)| format!("({e},{f})")).collect();
                let _ = writeln!(s, "{p:>6}  {g:>3}  {}", pairs.join(" "));
            }
            PrimeEntry::Skipped(r) => {
                let _ = writeln!(s, "{p:>6}    -  skipped: {r}");
            }
        }
    }
    s
}

fn field_info(k: &Arc<NumberField>, json: bool) -> Result<String> {
    let t = roots_of_unity(k)?;
    let (r1, r2) = k.signature();
    let h = ClassData::automatic(k)?.class_number();
    let backends: Vec<&str> = if k.is_imaginary_quadratic() {
        vec!["forms", "search", "manual"]
    } else {
        vec!["search", "manual"]
    };
    if json {
        let v = json!({
            "schema": 1,
            "poly": k.key().iter().map(big_json).collect::<Vec<_>>(),
            "degree": k.degree(),
            "discriminant": big_json(k.poly_discriminant()),
            "signature": [r1, r2],
            "m": t.m,
            "zeta": t.zeta.to_strings(),
            "p_max": t.p_max,
            "index_unsafe": k.index_unsafe_primes(),
            "class_backends": backends,
            "class_number": h,
        });
        return Ok(json_line(&v));
    }
    let mut s = String::new();
    let _ = writeln!(s, "polynomial      {}", k.poly());
    if k.poly() != k.input_poly() {
        let _ = writeln!(s, "input           {}", k.input_poly());
    }
    let _ = writeln!(s, "degree          {}", k.degree());
    let _ = writeln!(s, "discriminant    {}", k.poly_discriminant());
    let _ = writeln!(s, "signature       ({r1}, {r2})");
    let _ = writeln!(s, "roots of unity  {}", t.m);
    let _ = writeln!(s, "zeta            [{}]", t.zeta.to_strings().join(", "));
    let _ = writeln!(s, "p_max           {}", t.p_max);
    if !k.index_unsafe_primes().is_empty() {
        let ps: Vec<String> = k.index_unsafe_primes().iter().map(u64::to_string).collect();
        let _ = writeln!(s, "index-unsafe    {}", ps.join(", "));
    }
    let _ = writeln!(s, "class backends  {}", backends.join(", "));
    let _ = writeln!(
        s,
        "class number    {}",
        h.map_or("unknown".to_string(), |h| h.to_string())
    );
    Ok(s)
}

fn class_data(k: &Arc<NumberField>, a: &InvariantsArgs) -> Result<ClassData> {
    let mut cd = match a.class_backend {
        None if a.class_hp.is_empty() => ClassData::automatic(k)?,
        Some(BackendArg::Forms) => ClassData::with_backend(k, ClassBackend::Forms)?,
        Some(BackendArg::Search) => ClassData::with_backend(k, ClassBackend::Search)?,
        None | Some(BackendArg::Manual) => {
            let entries: BTreeMap<(u64, usize), u64> =
                a.class_hp.iter().map(|&(p, i, k)| ((p, i), k)).collect();
            ClassData::manual(k, a.class_h, entries)?
        }
    };
    if let Some(h) = a.class_h {
        cd = cd.with_class_number(h);
    }
    if let Some(cap) = a.enum_cap {
        cd = cd.with_enum_cap(cap);
    }
    Ok(cd)
}

fn invariants(k: &Arc<NumberField>, a: &InvariantsArgs, json: bool) -> Result<(String, i32)> {
    let cd = class_data(k, a)?;
    let inv = invariants_fingerprint(k, a.bound, &cd)?;
    let missing = inv.missing_class_data();
    if !missing.is_empty() {
        let which: Vec<String> = missing
            .iter()
            .map(|r| format!("{}:{}", r.p, r.slot))
            .collect();
        return Err(Error::ClassDataUnavailable(format!(
            "h_P not certified for {}; supply --class-h/--class-hp or raise --enum-cap",
            which.join(", ")
        )));
    }
    let out = if json {
        json_line(&invariants_json(&inv, cd.backend()))
    } else {
        invariants_table(&inv, cd.backend())
    };
    Ok((out, 0))
}

fn opt_big(v: Option<&num_bigint::BigInt>) -> Value {
    v.map_or(Value::Null, big_json)
}

pub fn invariants_json(inv: &FieldInvariants, backend: ClassBackend) -> Value {
    let records: Vec<Value> = inv
        .records
        .iter()
        .map(|r| {
            json!({
                "p": r.p,
                "slot": r.slot,
                "N": big_json(&r.norm),
                "hp": r.h_p,
                "good": r.good,
                "ord": opt_big(r.ord.as_ref()),
            })
        })
        .collect();
    let skipped: Vec<Value> = inv
        .skipped
        .iter()
        .map(|(p, why)| json!({ "p": p, "skipped": why }))
        .collect();
    json!({
        "schema": 1,
        "poly": inv.poly.iter().map(big_json).collect::<Vec<_>>(),
        "bound": inv.bound,
        "m": inv.torsion.m,
        "p_max": inv.torsion.p_max,
        "class_number": inv.class_number,
        "class_backend": backend.name(),
        "records": records,
        "skipped": skipped,
        "rank_pi_star": match inv.rank_pi_star {
            Rank::Value(v) => json!(v),
            Rank::NotPurelyImaginary => json!("not purely imaginary"),
        },
        "degree_estimate": inv.degree_estimate,
    })
}

pub fn invariants_table(inv: &FieldInvariants, backend: ClassBackend) -> String {
    let mut s = String::new();
    let h = inv.class_number.map_or("unknown".into(), |h| h.to_string());
    let _ = writeln!(
        s,
        "m = {}, p_max = {}, h = {h} ({})",
        inv.torsion.m,
        inv.torsion.p_max,
        backend.name()
    );
    let _ = writeln!(
        s,
        "{:>6} {:>4} {:>10} {:>4} {:>5}  ord",
        "p", "slot", "N", "h_p", "good"
    );
    for r in &inv.records {
        let hp = r.h_p.map_or("-".into(), |h| h.to_string());
        let ord = r.ord.as_ref().map_or("-".into(), |o| o.to_string());
        let good = if r.good { "yes" } else { "no" };
        let _ = writeln!(
            s,
            "{:>6} {:>4} {:>10} {:>4} {:>5}  {ord}",
            r.p, r.slot, r.norm, hp, good
        );
    }
    for (p, why) in &inv.skipped {
        let _ = writeln!(s, "{p:>6} skipped: {why}");
    }
    let rank = match inv.rank_pi_star {
        Rank::Value(v) => v.to_string(),
        Rank::NotPurelyImaginary => "not purely imaginary".into(),
    };
    let _ = writeln!(s, "rank_pi_star  {rank}");
    let deg = inv
        .degree_estimate
        .map_or("insufficient data".into(), |d| d.to_string());
    let _ = writeln!(s, "{DEGREE_LABEL}  {deg}");
    s
}
