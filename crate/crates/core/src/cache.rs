//! Line-based persistent cache.
//!
//! ```text
//! # betazeta cache
//! B 12 -691/2730
//! Z 3 43 1.2020569031595942853997381615114499907649862923405
//! ```
//!
//! `B <n> <num>/<den>` holds a Bernoulli number, `Z <s> <W> <decimal>` an odd
//! zeta value computed at `W` working digits. Blank lines and `#` comments
//! are ignored. A file is either accepted whole or rejected: every line is
//! parsed and checked before anything is merged.

use std::fs;
use std::path::Path;

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::exact::{bernoulli, bernoulli_cached_len};
use crate::numeric::{cached_zeta_values, insert_cached_zeta, zeta_odd, PrecisionContext};

const HEADER: &str = "# betazeta cache";
/// Largest Bernoulli index accepted from a file.
const MAX_BERNOULLI: usize = 20_000;
const MAX_ZETA_ARG: u32 = 1_000_000;
/// Zeta lines are spot-checked against a fresh value at this many digits.
const CHECK_DIGITS: u32 = 15;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub bernoulli: usize,
    pub zeta: usize,
}

#[derive(Debug, Clone, Default)]
pub struct CacheContents {
    pub bernoulli: Vec<(usize, Rational)>,
    pub zeta: Vec<(u32, u32, Float)>,
}

impl CacheContents {
    pub fn stats(&self) -> CacheStats {
        CacheStats {
            bernoulli: self.bernoulli.len(),
            zeta: self.zeta.len(),
        }
    }
}

/// Snapshot of the in-process caches.
pub fn snapshot() -> CacheContents {
    let bernoulli = (0..bernoulli_cached_len())
        .map(|n| (n, bernoulli(n)))
        .collect();
    CacheContents {
        bernoulli,
        zeta: cached_zeta_values(),
    }
}

pub fn render(contents: &CacheContents) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for (n, b) in &contents.bernoulli {
        out.push_str(&format!("B {n} {}/{}\n", b.numer(), b.denom()));
    }
    for (s, w, v) in &contents.zeta {
        out.push_str(&format!("Z {s} {w} {}\n", v.to_string_radix(10, None)));
    }
    out
}

fn bad(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Cache(format!("line {line}: {msg}"))
}

fn parse_num<T: std::str::FromStr>(field: Option<&str>, what: &str, line: usize) -> Result<T> {
    field
        .ok_or_else(|| bad(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| bad(line, format!("bad {what}")))
}

fn parse_bernoulli(fields: &[&str], line: usize) -> Result<(usize, Rational)> {
    let n: usize = parse_num(fields.first().copied(), "index", line)?;
    if n > MAX_BERNOULLI {
        return Err(bad(
            line,
            format!("Bernoulli index {n} above {MAX_BERNOULLI}"),
        ));
    }
    let text = fields.get(1).ok_or_else(|| bad(line, "missing value"))?;
    let (num, den) = text
        .split_once('/')
        .ok_or_else(|| bad(line, "value is not num/den"))?;
    let num: rug::Integer = num.parse().map_err(|_| bad(line, "bad numerator"))?;
    let den: rug::Integer = den.parse().map_err(|_| bad(line, "bad denominator"))?;
    if den <= 0 {
        return Err(bad(line, "denominator must be positive"));
    }
    let q = Rational::from((num.clone(), den.clone()));
    if *q.numer() != num || *q.denom() != den {
        return Err(bad(line, "value is not in lowest terms"));
    }
    if q != bernoulli(n) {
        return Err(bad(line, format!("B_{n} = {q} fails the recurrence")));
    }
    Ok((n, q))
}

fn parse_zeta(fields: &[&str], line: usize) -> Result<(u32, u32, Float)> {
    let s: u32 = parse_num(fields.first().copied(), "argument", line)?;
    let w: u32 = parse_num(fields.get(1).copied(), "digit count", line)?;
    if s < 3 || s.is_multiple_of(2) || s > MAX_ZETA_ARG {
        return Err(bad(
            line,
            format!("zeta argument {s} must be odd, >= 3 and <= {MAX_ZETA_ARG}"),
        ));
    }
    let min_w = PrecisionContext::MIN_DIGITS + PrecisionContext::MIN_GUARD;
    if w < min_w {
        return Err(bad(line, format!("working digits {w} below {min_w}")));
    }
    let text = fields.get(2).ok_or_else(|| bad(line, "missing value"))?;
    let parsed = Float::parse(text).map_err(|_| bad(line, "bad decimal"))?;
    let bits = crate::numeric::bits_for_digits(w);
    let value = Float::with_val(bits, parsed);
    let check_ctx = PrecisionContext::new(CHECK_DIGITS).expect("valid precision");
    let fresh = zeta_odd(s, &check_ctx)?;
    let diff = Float::with_val(64, &value - &fresh.value).abs();
    if diff > check_ctx.contract() {
        return Err(bad(
            line,
            format!("zeta({s}) value disagrees with a fresh evaluation"),
        ));
    }
    Ok((s, w, value))
}

/// Parses and validates a whole cache file without touching process state.
pub fn parse(text: &str) -> Result<CacheContents> {
    let mut contents = CacheContents::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match fields[0] {
            "B" if fields.len() == 3 => contents
                .bernoulli
                .push(parse_bernoulli(&fields[1..], line)?),
            "Z" if fields.len() == 4 => contents.zeta.push(parse_zeta(&fields[1..], line)?),
            "B" | "Z" => return Err(bad(line, "wrong number of fields")),
            other => return Err(bad(line, format!("unknown record '{other}'"))),
        }
    }
    Ok(contents)
}

/// Merges validated contents into the in-process caches. Bernoulli entries
/// were already regenerated by the recurrence during validation.
pub fn merge(contents: &CacheContents) -> Result<()> {
    for (s, w, v) in &contents.zeta {
        insert_cached_zeta(*s, *w, v)?;
    }
    Ok(())
}

pub fn load(path: &Path) -> Result<CacheStats> {
    let text = fs::read_to_string(path)?;
    let contents = parse(&text).map_err(|e| match e {
        Error::Cache(msg) => Error::Cache(format!("{}: {msg}; cache rejected", path.display())),
        other => other,
    })?;
    merge(&contents)?;
    Ok(contents.stats())
}

/// Writes the current caches to `path`, via a temporary file and rename.
pub fn save(path: &Path) -> Result<CacheStats> {
    let contents = snapshot();
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, render(&contents))?;
    fs::rename(&tmp, path)?;
    Ok(contents.stats())
}
