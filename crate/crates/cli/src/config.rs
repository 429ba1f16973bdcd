//! Run configuration: defaults, an optional `key = value` file, then flags.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub sieve_limit: u64,
    /// Relative target for the ζ truncation bound.
    pub zeta_tolerance: f64,
    /// Target for adaptive quadrature refinement.
    pub quad_tolerance: f64,
    /// Overrides each command's native format when set.
    pub output_format: Option<OutputFormat>,
    pub output_path: PathBuf,
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            sieve_limit: 1_000_000,
            zeta_tolerance: 1e-10,
            quad_tolerance: 1e-10,
            output_format: None,
            output_path: PathBuf::from("zetalab-out"),
            threads: 1,
        }
    }
}

impl RunConfig {
    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        self.apply_str(&text)
    }

    pub fn apply_str(&mut self, text: &str) -> Result<(), CliError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", lineno + 1)))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| CliError::Usage(format!("config line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let bad = |what: &str| format!("invalid {what} '{value}'");
        match key {
            "sieve_limit" => self.sieve_limit = parse_count(value).ok_or_else(|| bad(key))?,
            "zeta_tolerance" => self.zeta_tolerance = value.parse().map_err(|_| bad(key))?,
            "quad_tolerance" => self.quad_tolerance = value.parse().map_err(|_| bad(key))?,
            "output_format" => {
                self.output_format = Some(OutputFormat::from_str(value, true).map_err(|_| bad(key))?)
            }
            "output_path" => self.output_path = PathBuf::from(value),
            "threads" => self.threads = value.parse().map_err(|_| bad(key))?,
            _ => return Err(format!("unknown key '{key}'")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.sieve_limit < 2 {
            return Err(CliError::Usage("sieve_limit must be at least 2".into()));
        }
        if !(self.zeta_tolerance > 0.0) || !(self.quad_tolerance > 0.0) {
            return Err(CliError::Usage("tolerances must be positive".into()));
        }
        if self.threads < 1 {
            return Err(CliError::Usage("threads must be at least 1".into()));
        }
        Ok(())
    }
}

/// Parses integers written either plainly or as `1e6`.
pub fn parse_count(s: &str) -> Option<u64> {
    if let Ok(n) = s.parse::<u64>() {
        return Some(n);
    }
    let v: f64 = s.parse().ok()?;
    (v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64).then_some(v as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_overrides_defaults() {
        let mut c = RunConfig::default();
        c.apply_str("# comment\nsieve_limit = 1e5\nthreads=3\noutput_format = csv  # trailing\n")
            .unwrap();
        assert_eq!(c.sieve_limit, 100_000);
        assert_eq!(c.threads, 3);
        assert_eq!(c.output_format, Some(OutputFormat::Csv));
    }

    #[test]
    fn bad_lines_rejected() {
        let mut c = RunConfig::default();
        assert!(c.apply_str("colour = blue").is_err());
        assert!(c.apply_str("threads").is_err());
        assert!(c.apply_str("threads = many").is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e3"), Some(1000));
        assert_eq!(parse_count("42"), Some(42));
        assert_eq!(parse_count("1.5"), None);
        assert_eq!(parse_count("-1"), None);
    }
}
