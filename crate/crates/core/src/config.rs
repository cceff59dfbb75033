//! `key = value` run configuration.
//!
//! ```text
//! # reference swarm
//! M = 20
//! drone_value = 1500
//! lambda_a = 1
//! delta0 = 1
//! delta = 1
//! expected_nu = auto
//! ```
//!
//! `M`, `lambda_a`, `delta0` and `delta` are required. Everything else has a
//! default; unknown or repeated keys are rejected.

use std::collections::HashSet;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fluctuation::expected_exit_index;
use crate::model::SwarmParams;
use crate::probability::Probability;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExpectedNu {
    Fixed(f64),
    /// Derived from the exit-index generating function.
    Auto,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Swarm parameters. With [`ExpectedNu::Auto`] the `expected_nu` field
    /// holds a placeholder until [`RunConfig::resolved_params`] is called.
    pub params: SwarmParams,
    pub expected_nu: ExpectedNu,
    pub rho: Probability,
    pub episodes: u64,
    pub seed: u64,
    pub grid_size: usize,
    pub tolerance: f64,
}

impl RunConfig {
    /// Swarm parameters with `expected_nu` filled in.
    pub fn resolved_params(&self) -> Result<SwarmParams> {
        match self.expected_nu {
            ExpectedNu::Fixed(_) => Ok(self.params.clone()),
            ExpectedNu::Auto => {
                let expected_nu = expected_exit_index(&self.params)?;
                Ok(SwarmParams { expected_nu, ..self.params.clone() })
            }
        }
    }
}

const KEYS: &[&str] = &[
    "M",
    "drone_value",
    "lambda_a",
    "lambda_h",
    "delta0",
    "delta",
    "expected_nu",
    "ally_unit_cost",
    "rho",
    "episodes",
    "seed",
    "grid_size",
    "tolerance",
];

const REQUIRED: &[&str] = &["M", "lambda_a", "delta0", "delta"];

fn parse_value<T: FromStr>(line: usize, key: &str, raw: &str) -> Result<T> {
    raw.parse().map_err(|_| Error::Config {
        line,
        key: key.to_string(),
        message: format!("malformed value `{raw}`"),
    })
}

/// Parses and validates a run configuration.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut params = SwarmParams {
        swarm_size: 0,
        drone_value: 1500.0,
        lambda_a: 0.0,
        lambda_h: 0.0,
        delta0: 0.0,
        delta: 0.0,
        expected_nu: 3.0,
        ally_unit_cost: 3.0,
    };
    let mut expected_nu = ExpectedNu::Fixed(3.0);
    let mut rho: f64 = 0.5;
    let mut episodes = 100_000u64;
    let mut seed = 42u64;
    let mut grid_size = 101usize;
    let mut tolerance: f64 = 1e-5;

    let mut seen: HashSet<String> = HashSet::new();
    let mut lines_of: Vec<(String, usize)> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Error::Config {
                line,
                key: content.to_string(),
                message: "expected `key = value`".into(),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(Error::Config { line, key: key.into(), message: "unknown key".into() });
        }
        if !seen.insert(key.to_string()) {
            return Err(Error::Config { line, key: key.into(), message: "duplicate key".into() });
        }
        lines_of.push((key.to_string(), line));
        match key {
            "M" => params.swarm_size = parse_value(line, key, value)?,
            "drone_value" => params.drone_value = parse_value(line, key, value)?,
            "lambda_a" => params.lambda_a = parse_value(line, key, value)?,
            "lambda_h" => params.lambda_h = parse_value(line, key, value)?,
            "delta0" => params.delta0 = parse_value(line, key, value)?,
            "delta" => params.delta = parse_value(line, key, value)?,
            "expected_nu" => {
                expected_nu = if value.eq_ignore_ascii_case("auto") {
                    ExpectedNu::Auto
                } else {
                    let v = parse_value(line, key, value)?;
                    params.expected_nu = v;
                    ExpectedNu::Fixed(v)
                }
            }
            "ally_unit_cost" => params.ally_unit_cost = parse_value(line, key, value)?,
            "rho" => rho = parse_value(line, key, value)?,
            "episodes" => episodes = parse_value(line, key, value)?,
            "seed" => seed = parse_value(line, key, value)?,
            "grid_size" => grid_size = parse_value(line, key, value)?,
            "tolerance" => tolerance = parse_value(line, key, value)?,
            _ => unreachable!("key list checked above"),
        }
    }

    for key in REQUIRED {
        if !seen.contains(*key) {
            return Err(Error::MissingKey((*key).to_string()));
        }
    }
    if expected_nu == ExpectedNu::Auto {
        params.expected_nu = 1.0;
    }

    let line_for = |key: &str| lines_of.iter().find(|(k, _)| k == key).map_or(0, |(_, l)| *l);
    let invalid = |key: &str, message: String| Error::Config { line: line_for(key), key: key.into(), message };

    if let Err(Error::Domain(message)) = params.validate() {
        let key = KEYS
            .iter()
            .find(|k| message.starts_with(**k) || message.contains(&format!("({k})")))
            .copied()
            .unwrap_or("M");
        return Err(invalid(key, message));
    }
    let rho = Probability::new(rho).map_err(|e| invalid("rho", e.to_string()))?;
    if episodes == 0 {
        return Err(invalid("episodes", "must be >= 1".into()));
    }
    if grid_size < 2 {
        return Err(invalid("grid_size", "must be >= 2".into()));
    }
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(invalid("tolerance", "must be > 0".into()));
    }

    Ok(RunConfig { params, expected_nu, rho, episodes, seed, grid_size, tolerance })
}
