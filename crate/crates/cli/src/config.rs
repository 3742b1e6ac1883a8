use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use padic_circle::{default_generator, Error, PadicContext, Result};

/// Settings overridable on the command line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub p: Option<u64>,
    pub n: Option<u32>,
    pub m: Option<usize>,
    pub a: Option<i64>,
    pub m_max: Option<u32>,
    pub threads: Option<usize>,
}

/// Validated run parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub ctx: PadicContext,
    pub a: i64,
    pub m_max: u32,
    pub threads: Option<usize>,
}

const KEYS: [&str; 6] = ["p", "N", "M", "a", "mmax", "threads"];

/// Parse a flat `key = value` file; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<Overrides> {
    let mut entries = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidContext(format!("line {}: expected key=value", lineno + 1)))?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(Error::InvalidContext(format!("line {}: unknown key {key:?}", lineno + 1)));
        }
        entries.insert(key.to_string(), value.trim().to_string());
    }
    fn field<T: std::str::FromStr>(entries: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
        entries
            .get(key)
            .map(|v| v.parse().map_err(|_| Error::InvalidContext(format!("bad value {v:?} for {key}"))))
            .transpose()
    }
    Ok(Overrides {
        p: field(&entries, "p")?,
        n: field(&entries, "N")?,
        m: field(&entries, "M")?,
        a: field(&entries, "a")?,
        m_max: field(&entries, "mmax")?,
        threads: field(&entries, "threads")?,
    })
}

impl RunConfig {
    /// Command line over config file over defaults (p = 5, N = 12, M = 60).
    pub fn resolve(cli: &Overrides, file: Option<&Path>) -> Result<Self> {
        let from_file = match file {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Error::InvalidContext(format!("{}: {e}", path.display())))?;
                parse_config(&text)?
            }
            None => Overrides::default(),
        };
        let p = cli.p.or(from_file.p).unwrap_or(5);
        let n = cli.n.or(from_file.n).unwrap_or(12);
        let m = cli.m.or(from_file.m).unwrap_or(60);
        let ctx = PadicContext::new(p, n, m)?;
        let a = cli.a.or(from_file.a).unwrap_or_else(|| default_generator(p) as i64);
        if a.rem_euclid(p as i64) == 0 {
            return Err(Error::InvalidContext(format!("a = {a} is not a unit mod {p}")));
        }
        let m_max = cli.m_max.or(from_file.m_max).unwrap_or(3);
        if m_max == 0 {
            return Err(Error::InvalidContext("mmax must be at least 1".into()));
        }
        let threads = cli.threads.or(from_file.threads);
        if threads == Some(0) {
            return Err(Error::InvalidContext("threads must be at least 1".into()));
        }
        Ok(RunConfig { ctx, a, m_max, threads })
    }
}
