//! Argument parsing helpers shared by the subcommands.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use permbinom::field::DEFAULT_ENUMERATION_GUARD;
use permbinom::FieldSpec;

/// Environment variable overriding the enumeration guard.
pub const GUARD_ENV: &str = "PERMBINOM_GUARD";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" | "txt" => Ok(Format::Text),
            _ => bail!("unknown format {s:?}; expected json, csv or text"),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

/// `"p"` or `"p^k"`.
pub fn parse_field(s: &str) -> Result<(u64, u32)> {
    let s = s.trim();
    let (p, k) = match s.split_once('^') {
        Some((p, k)) => (p, k),
        None => (s, "1"),
    };
    let p: u64 = p.trim().parse().with_context(|| format!("bad prime in field {s:?}"))?;
    let k: u32 = k.trim().parse().with_context(|| format!("bad degree in field {s:?}"))?;
    Ok((p, k))
}

/// Comma-separated coefficients, constant term first.
pub fn parse_modulus(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|c| c.trim().parse::<u64>().with_context(|| format!("bad modulus coefficient {c:?}")))
        .collect()
}

/// Comma-separated list of indices `r`.
pub fn parse_r_set(s: &str) -> Result<Vec<u64>> {
    let mut out: Vec<u64> = s
        .split(',')
        .map(|c| c.trim().parse::<u64>().with_context(|| format!("bad index {c:?}")))
        .collect::<Result<_>>()?;
    out.sort_unstable();
    out.dedup();
    if out.is_empty() || out.iter().any(|r| *r != 2 && *r != 3) {
        bail!("index set must be a nonempty subset of {{2, 3}}");
    }
    Ok(out)
}

/// The guard in effect: `PERMBINOM_GUARD` if set, the default otherwise,
/// and no limit with `force`.
pub fn effective_guard(force: bool) -> Result<u64> {
    if force {
        return Ok(u64::MAX);
    }
    match std::env::var(GUARD_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| anyhow!("{GUARD_ENV} must be a positive integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_ENUMERATION_GUARD),
    }
}

pub fn build_field(field: &str, modulus: Option<&str>, guard: u64) -> Result<FieldSpec> {
    let (p, k) = parse_field(field)?;
    let modulus = modulus.map(parse_modulus).transpose()?;
    Ok(FieldSpec::new(p, k, modulus.as_deref())?.with_guard(guard))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_strings() {
        assert_eq!(parse_field("73").unwrap(), (73, 1));
        assert_eq!(parse_field("2^4").unwrap(), (2, 4));
        assert_eq!(parse_field(" 7 ^ 2 ").unwrap(), (7, 2));
        assert!(parse_field("x^2").is_err());
        assert!(parse_field("7^").is_err());
    }

    #[test]
    fn modulus_and_field() {
        assert_eq!(parse_modulus("1,1,0,0,1").unwrap(), vec![1, 1, 0, 0, 1]);
        let f = build_field("2^4", Some("1,1,0,0,1"), 1 << 20).unwrap();
        assert_eq!(f.q(), 16);
        assert!(build_field("2^4", Some("1,0,0,0,1"), 1 << 20).is_err());
    }

    #[test]
    fn r_sets() {
        assert_eq!(parse_r_set("3,2,3").unwrap(), vec![2, 3]);
        assert!(parse_r_set("4").is_err());
    }

    #[test]
    fn formats() {
        assert_eq!("CSV".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }
}
