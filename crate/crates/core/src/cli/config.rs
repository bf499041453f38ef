//! Run configuration: a flat `key = value` file overlaid by command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::algebra::rational::{self, from_f64_exact, parse_ratio};
use crate::algebra::{Polynomial, Rational};
use crate::error::{CrError, Result};
use crate::spectral::{SeedChoice, DEFAULT_PRECISION};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Perturbs the connection coefficient before the identity suite runs.
    CorruptOmega,
    /// Negates the Paneitz matrices before the eigensolve.
    NegateOperator,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub t: Vec<Rational>,
    /// `t` came from decimal input; exact determinant output is suppressed.
    pub numeric_only: bool,
    pub k_max: usize,
    pub max_degree: u32,
    pub precision: usize,
    pub seed_choice: SeedChoice,
    /// The `--seed-choice` text, echoed in reports.
    pub seed_label: String,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: usize,
    pub samples: usize,
    pub sample_seed: u64,
    pub fault: Option<Fault>,
}

/// Raw settings before validation. Keys use the long flag names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

const KEYS: [&str; 12] = [
    "t",
    "kmax",
    "max-degree",
    "precision",
    "seed-choice",
    "format",
    "out",
    "jobs",
    "float-t",
    "samples",
    "sample-seed",
    "inject-fault",
];

impl Settings {
    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        let key = key.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(CrError::Parse(format!("unknown configuration key `{key}`")));
        }
        self.values.insert(key, value.into().trim().to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Settings> {
        let mut out = Settings::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CrError::Parse(format!("line {}: expected key = value", n + 1)))?;
            out.set(k, v)?;
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<Settings> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CrError::Parse(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// `other` wins on conflicts.
    pub fn overlay(mut self, other: Settings) -> Settings {
        self.values.extend(other.values);
        self
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| CrError::Parse(format!("{key}: cannot parse {v:?}")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(CrError::Parse(format!("{key}: expected true or false, got {v:?}"))),
    }
}

fn parse_t_list(text: &str, float_t: bool) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let t = if float_t {
            let x: f64 = parse_num("t", part)?;
            from_f64_exact(x)?
        } else {
            parse_ratio(part).map_err(|_| {
                CrError::Parse(format!(
                    "t = {part:?} is not an exact rational p/q (use --float-t for decimal input)"
                ))
            })?
        };
        if !rational::is_positive(&(Rational::ONE - &t * &t)) {
            return Err(CrError::NotPseudoconvex(t));
        }
        out.push(t);
    }
    if out.is_empty() {
        return Err(CrError::Parse("empty t list".into()));
    }
    Ok(out)
}

/// `default`, `random:<seed>` or `file:<path>` (one polynomial per line).
pub fn parse_seed_choice(text: &str) -> Result<SeedChoice> {
    if text == "default" {
        return Ok(SeedChoice::Default);
    }
    if let Some(s) = text.strip_prefix("random:") {
        return Ok(SeedChoice::Random(parse_num("seed-choice", s)?));
    }
    if let Some(path) = text.strip_prefix("file:") {
        let body =
            std::fs::read_to_string(path).map_err(|e| CrError::Parse(format!("cannot read seed file {path}: {e}")))?;
        let seeds = body
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::parse::<Polynomial>)
            .collect::<Result<Vec<_>>>()?;
        if seeds.is_empty() {
            return Err(CrError::SeedRejected(format!("seed file {path} is empty")));
        }
        return Ok(SeedChoice::Explicit(seeds));
    }
    Err(CrError::Parse(format!(
        "seed-choice must be default, random:<seed> or file:<path>, got {text:?}"
    )))
}

impl RunConfig {
    /// Validates settings; `default_t` and `default_degree` are the
    /// command's defaults.
    pub fn from_settings(s: &Settings, default_t: &str, default_degree: u32) -> Result<RunConfig> {
        let float_t = s
            .get("float-t")
            .map(|v| parse_bool("float-t", v))
            .transpose()?
            .unwrap_or(false);
        let t = parse_t_list(s.get("t").unwrap_or(default_t), float_t)?;
        let k_max: usize = s.get("kmax").map(|v| parse_num("kmax", v)).transpose()?.unwrap_or(10);
        if k_max == 0 {
            return Err(CrError::InvalidParameter("kmax must be at least 1".into()));
        }
        let precision: usize = s
            .get("precision")
            .map(|v| parse_num("precision", v))
            .transpose()?
            .unwrap_or(DEFAULT_PRECISION);
        if precision < 64 {
            return Err(CrError::InvalidParameter(format!(
                "precision must be at least 64 bits, got {precision}"
            )));
        }
        let seed_label = s.get("seed-choice").unwrap_or("default").to_string();
        let format = match s.get("format").unwrap_or("json") {
            "json" => Format::Json,
            "csv" => Format::Csv,
            other => return Err(CrError::Parse(format!("format must be json or csv, got {other:?}"))),
        };
        let fault = match s.get("inject-fault") {
            None => None,
            Some("corrupt-omega") => Some(Fault::CorruptOmega),
            Some("negate-operator") => Some(Fault::NegateOperator),
            Some(other) => return Err(CrError::Parse(format!("unknown fault {other:?}"))),
        };
        Ok(RunConfig {
            t,
            numeric_only: float_t,
            k_max,
            max_degree: s
                .get("max-degree")
                .map(|v| parse_num("max-degree", v))
                .transpose()?
                .unwrap_or(default_degree),
            precision,
            seed_choice: parse_seed_choice(&seed_label)?,
            seed_label,
            format,
            out: s.get("out").map(PathBuf::from),
            jobs: s.get("jobs").map(|v| parse_num("jobs", v)).transpose()?.unwrap_or(0),
            samples: s
                .get("samples")
                .map(|v| parse_num("samples", v))
                .transpose()?
                .unwrap_or(20),
            sample_seed: s
                .get("sample-seed")
                .map(|v| parse_num("sample-seed", v))
                .transpose()?
                .unwrap_or(20),
            fault,
        })
    }
}
