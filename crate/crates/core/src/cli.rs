//! Command-line front end.
//!
//! [`run`] parses arguments, does the work and returns everything it wants to
//! print plus the exit code, so output is emitted in one piece by `main` (and
//! tests can drive it without spawning a process).
//!
//! Exit codes: 0 when every check passes, 1 when one fails, 2 on bad input
//! (unknown names, invalid ranges, unreadable or corrupt cache files).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::cache;
use crate::conjecture::{sweep_with_jobs, Conjecture, SweepReport};
use crate::error::{Error, Result};
use crate::exact::{bernoulli, euler_number, harmonic, zeta_even_exact};
use crate::identities::{find, registry, registry_list, IdentityReport};
use crate::numeric::{
    beta_direct, closedform_eval, constant, render_fixed, render_magnitude, render_scientific,
    zeta_odd, Constant, NumericValue, PrecisionContext,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_DIGITS: u32 = 50;
pub const DEFAULT_SWEEP_DIGITS: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "betazeta",
    version,
    about = "Dirichlet beta and zeta series identities at arbitrary precision"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Target decimal digits P, at least 10 [default: 50, or 30 for sweep].
    #[arg(long, global = true)]
    digits: Option<u32>,
    /// Guard digits g (default 10 + ceil(P/10)).
    #[arg(long, global = true)]
    guard: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cache file, loaded before and saved after the command.
    #[arg(long, global = true, env = "BETAZETA_CACHE")]
    cache: Option<PathBuf>,
    /// Worker threads: a positive integer or "auto".
    #[arg(long, global = true, default_value = "auto")]
    jobs: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print constants: pi, ln2, lnpi, G, zeta:S, beta:S, bernoulli:N, euler:N, harmonic:N.
    Constants {
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Check registered identities ("all" for every one).
    Verify {
        #[arg(required_unless_present = "list")]
        ids: Vec<String>,
        /// List registered identities instead.
        #[arg(long)]
        list: bool,
    },
    /// Test conjecture26 or conjecture27 for every odd N in START..=END.
    Sweep { which: String, start: u32, end: u32 },
    /// Manage the cache file given by --cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Subcommand)]
enum CacheAction {
    /// Fill the caches and write them out.
    Warm {
        /// Bernoulli numbers B_0..B_N.
        #[arg(long, default_value_t = 200)]
        bernoulli: usize,
        /// Odd zeta values up to this argument at the current precision.
        #[arg(long, default_value_t = 99)]
        zeta: u32,
    },
    /// Validate the cache file without using it.
    Check,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub digits: u32,
    pub guard: Option<u32>,
    pub format: Format,
    pub cache_path: Option<PathBuf>,
    /// `None` means the rayon default.
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn context(&self) -> Result<PrecisionContext> {
        match self.guard {
            Some(g) => PrecisionContext::with_guard(self.digits, g),
            None => PrecisionContext::new(self.digits),
        }
    }
}

fn parse_jobs(s: &str) -> Result<Option<usize>> {
    if s == "auto" {
        return Ok(None);
    }
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(Some(n)),
        _ => Err(Error::Config(format!(
            "--jobs must be a positive integer or auto, got '{s}'"
        ))),
    }
}

/// Everything a run prints, and its exit code.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: EXIT_USAGE,
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Convergence(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let jobs = match parse_jobs(&cli.jobs) {
        Ok(j) => j,
        Err(e) => return Outcome::usage(e),
    };
    let default_digits = match cli.command {
        Command::Sweep { .. } => DEFAULT_SWEEP_DIGITS,
        _ => DEFAULT_DIGITS,
    };
    let cfg = RunConfig {
        digits: cli.digits.unwrap_or(default_digits),
        guard: cli.guard,
        format: cli.format,
        cache_path: cli.cache,
        jobs,
    };
    match execute(cli.command, &cfg) {
        Ok(out) => out,
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit_code(&e),
        },
    }
}

fn execute(command: Command, cfg: &RunConfig) -> Result<Outcome> {
    let ctx = cfg.context()?;
    if let Command::Cache { action } = command {
        return cmd_cache(action, &ctx, cfg);
    }
    if let Some(path) = &cfg.cache_path {
        if path.exists() {
            cache::load(path)?;
        }
    }
    let mut out = match command {
        Command::Constants { names } => cmd_constants(&names, &ctx, cfg)?,
        Command::Verify { list: true, .. } => cmd_list(cfg)?,
        Command::Verify { ids, .. } => cmd_verify(&ids, &ctx, cfg)?,
        Command::Sweep { which, start, end } => cmd_sweep(&which, start, end, &ctx, cfg)?,
        Command::Cache { .. } => unreachable!("handled above"),
    };
    if let Some(path) = &cfg.cache_path {
        if let Err(e) = cache::save(path) {
            let _ = writeln!(out.stderr, "warning: could not save cache: {e}");
        }
    }
    Ok(out)
}

fn elapsed_ms(d: Duration) -> u64 {
    d.as_millis() as u64
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

// constants

#[derive(Debug, Serialize)]
struct ConstantRow {
    name: String,
    value: String,
    exact: bool,
    digits: Option<u32>,
    truncated: bool,
}

fn arg_of<T: std::str::FromStr>(name: &str, arg: &str) -> Result<T> {
    arg.parse()
        .map_err(|_| Error::Config(format!("bad argument in constant '{name}'")))
}

fn numeric_constant(name: &str, ctx: &PrecisionContext) -> Result<Option<NumericValue>> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    let v = match (head, arg) {
        ("pi", None) => constant(Constant::Pi, ctx),
        ("ln2", None) => constant(Constant::Ln2, ctx),
        ("lnpi", None) => constant(Constant::LnPi, ctx),
        ("G", None) => beta_direct(2, ctx)?,
        ("zeta", Some(a)) => {
            let s: u32 = arg_of(name, a)?;
            if s >= 2 && s.is_multiple_of(2) {
                closedform_eval(&zeta_even_exact(s / 2)?, ctx)?
            } else {
                zeta_odd(s, ctx)?
            }
        }
        ("beta", Some(a)) => beta_direct(arg_of(name, a)?, ctx)?,
        _ => return Ok(None),
    };
    Ok(Some(v))
}

fn exact_constant(name: &str) -> Result<Option<String>> {
    let Some((head, a)) = name.split_once(':') else {
        return Ok(None);
    };
    let text = match head {
        "bernoulli" => bernoulli(arg_of(name, a)?).to_string(),
        "euler" => euler_number(arg_of(name, a)?).to_string(),
        "harmonic" => {
            let n: u32 = arg_of(name, a)?;
            if n == 0 {
                return Err(Error::Config("harmonic:N needs N >= 1".into()));
            }
            harmonic(n).to_string()
        }
        _ => return Ok(None),
    };
    Ok(Some(text))
}

fn constant_row(name: &str, ctx: &PrecisionContext) -> Result<ConstantRow> {
    if let Some(text) = exact_constant(name)? {
        return Ok(ConstantRow {
            name: name.into(),
            value: text,
            exact: true,
            digits: None,
            truncated: false,
        });
    }
    let v = numeric_constant(name, ctx)?
        .ok_or_else(|| Error::Config(format!("unknown constant '{name}'")))?;
    let r = render_fixed(&v, ctx.target_digits());
    Ok(ConstantRow {
        name: name.into(),
        value: r.text,
        exact: false,
        digits: Some(r.digits),
        truncated: r.truncated,
    })
}

pub fn cmd_constants(names: &[String], ctx: &PrecisionContext, cfg: &RunConfig) -> Result<Outcome> {
    let rows = names
        .iter()
        .map(|n| constant_row(n, ctx))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Outcome::default();
    match cfg.format {
        Format::Text => {
            for r in &rows {
                out.stdout.push_str(&r.value);
                if r.truncated {
                    out.stdout.push_str("  (truncated: error bound)");
                }
                out.stdout.push('\n');
            }
        }
        Format::Json => out.stdout = json(&rows),
        Format::Csv => {
            out.stdout.push_str("name,value\n");
            for r in &rows {
                let _ = writeln!(out.stdout, "{},{}", csv_field(&r.name), csv_field(&r.value));
            }
        }
    }
    Ok(out)
}

// verify

#[derive(Debug, Serialize)]
struct IdentityRow {
    id: String,
    lhs: String,
    rhs: String,
    abs_diff: String,
    digits_agreed: i64,
    terms_used: u64,
    pass: bool,
    elapsed_ms: u64,
    digits: u32,
    guard: u32,
}

fn identity_row(r: &IdentityReport) -> IdentityRow {
    IdentityRow {
        id: r.id.clone(),
        lhs: render_scientific(&r.lhs, r.digits).text,
        rhs: render_scientific(&r.rhs, r.digits).text,
        abs_diff: render_magnitude(&r.abs_diff),
        digits_agreed: r.digits_agreed,
        terms_used: r.terms_used,
        pass: r.pass(),
        elapsed_ms: elapsed_ms(r.elapsed),
        digits: r.digits,
        guard: r.guard,
    }
}

fn in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(j) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(f)),
    }
}

fn cmd_list(cfg: &RunConfig) -> Result<Outcome> {
    let list = registry_list();
    let mut out = Outcome::default();
    match cfg.format {
        Format::Json => out.stdout = json(&list),
        Format::Csv => {
            out.stdout.push_str("id,description,formula\n");
            for i in &list {
                let _ = writeln!(
                    out.stdout,
                    "{},{},{}",
                    csv_field(&i.id),
                    csv_field(&i.description),
                    csv_field(&i.formula)
                );
            }
        }
        Format::Text => {
            for i in &list {
                let _ = writeln!(out.stdout, "{:<22} {}", i.id, i.description);
            }
        }
    }
    Ok(out)
}

pub fn cmd_verify(ids: &[String], ctx: &PrecisionContext, cfg: &RunConfig) -> Result<Outcome> {
    let selected: Vec<&str> = if ids.iter().any(|i| i == "all") {
        registry().iter().map(|i| i.id.as_str()).collect()
    } else {
        ids.iter().map(String::as_str).collect()
    };
    // reject unknown ids before doing any work
    let idents = selected
        .iter()
        .map(|id| find(id))
        .collect::<Result<Vec<_>>>()?;
    let reports = in_pool(cfg.jobs, || {
        idents
            .par_iter()
            .map(|i| i.evaluate(ctx))
            .collect::<Result<Vec<_>>>()
    })??;
    let rows: Vec<IdentityRow> = reports.iter().map(identity_row).collect();
    let all_pass = rows.iter().all(|r| r.pass);
    let mut out = Outcome {
        code: if all_pass { EXIT_OK } else { EXIT_FAIL },
        ..Outcome::default()
    };
    match cfg.format {
        Format::Json => out.stdout = json(&rows),
        Format::Csv => {
            out.stdout
                .push_str("id,lhs,rhs,abs_diff,digits_agreed,pass\n");
            for r in &rows {
                let _ = writeln!(
                    out.stdout,
                    "{},{},{},{},{},{}",
                    csv_field(&r.id),
                    r.lhs,
                    r.rhs,
                    r.abs_diff,
                    r.digits_agreed,
                    r.pass
                );
            }
        }
        Format::Text => {
            for r in &rows {
                let _ = writeln!(
                    out.stdout,
                    "{:<22} lhs={} rhs={} abs_diff={} digits={} {}",
                    r.id,
                    r.lhs,
                    r.rhs,
                    r.abs_diff,
                    r.digits_agreed,
                    if r.pass { "PASS" } else { "FAIL" }
                );
            }
            let passed = rows.iter().filter(|r| r.pass).count();
            let _ = writeln!(out.stdout, "{passed}/{} PASS", rows.len());
        }
    }
    for r in rows.iter().filter(|r| !r.pass) {
        let _ = writeln!(
            out.stderr,
            "FAIL {}: only {} digits agree",
            r.id, r.digits_agreed
        );
    }
    Ok(out)
}

// sweep

#[derive(Debug, Serialize)]
struct SweepRow {
    #[serde(rename = "N")]
    n: u32,
    lhs: String,
    rhs: String,
    abs_diff: String,
    rel_diff: String,
    digits_agreed: i64,
    terms_used: u64,
    pass: bool,
    elapsed_ms: u64,
    digits: u32,
    guard: u32,
}

#[derive(Debug, Serialize)]
struct SweepJson {
    which: Conjecture,
    digits: u32,
    guard: u32,
    worst_digits_agreed: i64,
    all_pass: bool,
    results: Vec<SweepRow>,
}

fn sweep_rows(rep: &SweepReport) -> Vec<SweepRow> {
    rep.results
        .iter()
        .map(|r| SweepRow {
            n: r.n,
            lhs: render_scientific(&r.lhs, rep.digits).text,
            rhs: render_scientific(&r.rhs, rep.digits).text,
            abs_diff: render_magnitude(&r.abs_diff),
            rel_diff: render_magnitude(&r.rel_diff),
            digits_agreed: r.digits_agreed,
            terms_used: r.terms_used,
            pass: r.pass(),
            elapsed_ms: elapsed_ms(r.elapsed),
            digits: rep.digits,
            guard: rep.guard,
        })
        .collect()
}

pub fn cmd_sweep(
    which: &str,
    start: u32,
    end: u32,
    ctx: &PrecisionContext,
    cfg: &RunConfig,
) -> Result<Outcome> {
    let which: Conjecture = which.parse()?;
    let rep = sweep_with_jobs(which, start, end, ctx, cfg.jobs)?;
    let rows = sweep_rows(&rep);
    let all_pass = rep.all_pass();
    let mut out = Outcome {
        code: if all_pass { EXIT_OK } else { EXIT_FAIL },
        ..Outcome::default()
    };
    match cfg.format {
        Format::Json => {
            out.stdout = json(&SweepJson {
                which,
                digits: rep.digits,
                guard: rep.guard,
                worst_digits_agreed: rep.worst_digits_agreed,
                all_pass,
                results: rows,
            })
        }
        Format::Csv => {
            out.stdout.push_str("N,lhs,rhs,abs_diff,digits_agreed\n");
            for r in &rows {
                let _ = writeln!(
                    out.stdout,
                    "{},{},{},{},{}",
                    r.n, r.lhs, r.rhs, r.abs_diff, r.digits_agreed
                );
            }
        }
        Format::Text => {
            for r in &rows {
                let _ = writeln!(
                    out.stdout,
                    "N={:<5} lhs={} rhs={} abs_diff={} rel_diff={} digits={} {}",
                    r.n,
                    r.lhs,
                    r.rhs,
                    r.abs_diff,
                    r.rel_diff,
                    r.digits_agreed,
                    if r.pass { "PASS" } else { "FAIL" }
                );
            }
            let passed = rows.iter().filter(|r| r.pass).count();
            let _ = writeln!(
                out.stdout,
                "{which} N={start}..{end} P={} g={}: {passed}/{} PASS, worst digits_agreed {}",
                rep.digits,
                rep.guard,
                rows.len(),
                rep.worst_digits_agreed
            );
        }
    }
    for r in rep.failures() {
        let _ = writeln!(
            out.stderr,
            "FAIL {which} N={}: abs_diff {} rel_diff {}",
            r.n,
            render_magnitude(&r.abs_diff),
            render_magnitude(&r.rel_diff)
        );
    }
    Ok(out)
}

// cache

fn cmd_cache(action: CacheAction, ctx: &PrecisionContext, cfg: &RunConfig) -> Result<Outcome> {
    let path = cfg.cache_path.as_ref().ok_or_else(|| {
        Error::Config("cache commands need --cache PATH or BETAZETA_CACHE".into())
    })?;
    let mut out = Outcome::default();
    match action {
        CacheAction::Warm {
            bernoulli: nb,
            zeta,
        } => {
            if path.exists() {
                cache::load(path)?;
            }
            bernoulli(nb);
            for s in (3..=zeta).step_by(2) {
                zeta_odd(s, ctx)?;
            }
            let stats = cache::save(path)?;
            let _ = writeln!(
                out.stdout,
                "wrote {}: {} Bernoulli, {} zeta",
                path.display(),
                stats.bernoulli,
                stats.zeta
            );
        }
        CacheAction::Check => {
            let text = std::fs::read_to_string(path)?;
            match cache::parse(&text) {
                Ok(c) => {
                    let s = c.stats();
                    let _ = writeln!(
                        out.stdout,
                        "ok {}: {} Bernoulli, {} zeta",
                        path.display(),
                        s.bernoulli,
                        s.zeta
                    );
                }
                Err(e) => {
                    let _ = writeln!(out.stderr, "rejected {}: {e}", path.display());
                    out.code = EXIT_FAIL;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("betazeta").chain(args.iter().copied()))
    }

    #[test]
    fn catalan_constant() {
        let out = run_args(&["constants", "G", "--digits", "10"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(out.stdout, "0.9159655942\n");
    }

    #[test]
    fn exact_constants() {
        let out = run_args(&["constants", "bernoulli:12", "harmonic:5", "euler:6"]);
        assert_eq!(out.stdout, "-691/2730\n137/60\n-61\n");
    }

    #[test]
    fn bad_input_exits_2() {
        assert_eq!(run_args(&["constants", "nosuch"]).code, 2);
        assert_eq!(run_args(&["constants", "zeta:x"]).code, 2);
        assert_eq!(run_args(&["verify", "nosuch"]).code, 2);
        assert_eq!(run_args(&["sweep", "conjecture26", "2", "10"]).code, 2);
        assert_eq!(run_args(&["constants", "pi", "--digits", "5"]).code, 2);
        assert_eq!(run_args(&["constants", "pi", "--jobs", "0"]).code, 2);
        assert_eq!(run_args(&["frobnicate"]).code, 2);
    }

    #[test]
    fn verify_row() {
        let out = run_args(&["verify", "eq12", "--digits", "30"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.starts_with("eq12"));
        assert!(out.stdout.contains("PASS"));
    }

    #[test]
    fn sweep_csv() {
        let out = run_args(&[
            "sweep",
            "conjecture27",
            "1",
            "9",
            "--digits",
            "30",
            "--format",
            "csv",
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines[0], "N,lhs,rhs,abs_diff,digits_agreed");
        assert_eq!(lines.len(), 6);
        assert!(lines[1].starts_with("1,"));
    }

    #[test]
    fn sweep_defaults_to_thirty_digits() {
        let out = run_args(&["sweep", "conjecture26", "1", "3", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["digits"], 30);
        let out = run_args(&["verify", "eq18", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v[0]["digits"], 50);
    }

    #[test]
    fn jobs_parsing() {
        assert_eq!(parse_jobs("auto").unwrap(), None);
        assert_eq!(parse_jobs("3").unwrap(), Some(3));
        assert!(parse_jobs("-1").is_err());
    }
}
