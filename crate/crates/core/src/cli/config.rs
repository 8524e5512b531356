//! Flat `key = value` run configuration.
//!
//! ```text
//! # engine map with a finer grid
//! preset = fig4
//! n_q = 81
//! n_delta = 81
//! ```
//!
//! Blank lines and `#` comments are ignored; keys may use `-` or `_`.
//! Values given on the command line replace file values.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use super::CliError;

/// Every key accepted in a config file.
pub const KNOWN_KEYS: &[&str] = &[
    "preset",
    "method",
    "format",
    "out",
    "q",
    "delta",
    "alpha",
    "t",
    "x_min",
    "x_max",
    "samples",
    "scan",
    "scan_min",
    "scan_max",
    "scan_points",
    "alpha_h",
    "alpha_c",
    "t_h",
    "t_c",
    "truncation_bound",
    "regime_tol",
    "q_min",
    "q_max",
    "delta_min",
    "delta_max",
    "n_q",
    "n_delta",
];

#[derive(Debug, Clone, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

fn canonical(key: &str) -> String {
    key.trim().replace('-', "_")
}

impl Settings {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(CliError::usage(format!(
                    "{origin}:{}: expected `key = value`",
                    i + 1
                )));
            };
            let key = canonical(k);
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::usage(format!(
                    "{origin}:{}: unknown key `{key}`",
                    i + 1
                )));
            }
            values.insert(key, v.trim().to_owned());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Command-line value for `key`, if given, overrides the file.
    pub fn set<V: ToString>(&mut self, key: &str, value: Option<V>) {
        if let Some(v) = value {
            self.values.insert(key.to_owned(), v.to_string());
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get<V: FromStr>(&self, key: &str) -> Result<Option<V>, CliError> {
        match self.raw(key) {
            None => Ok(None),
            Some(s) => s
                .parse()
                .map(Some)
                .map_err(|_| CliError::usage(format!("invalid value for `{key}`: {s:?}"))),
        }
    }

    pub fn require<V: FromStr>(&self, key: &str) -> Result<V, CliError> {
        self.get(key)?.ok_or_else(|| {
            CliError::usage(format!(
                "missing `--{}` (or `{key}` in the config file)",
                key.replace('_', "-")
            ))
        })
    }

    pub fn or<V: FromStr>(&self, key: &str, default: V) -> Result<V, CliError> {
        Ok(self.get(key)?.unwrap_or(default))
    }

    /// Seeds `key` unless the file or the command line already set it.
    pub fn default_to<V: ToString>(&mut self, key: &str, value: V) {
        self.values
            .entry(key.to_owned())
            .or_insert_with(|| value.to_string());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_dashes() {
        let s = Settings::parse("# hi\n\nalpha-h = 1.1 # trailing\nq=0.9\n", "t").unwrap();
        assert_eq!(s.require::<f64>("alpha_h").unwrap(), 1.1);
        assert_eq!(s.require::<f64>("q").unwrap(), 0.9);
    }

    #[test]
    fn rejects_unknown_keys_and_garbage() {
        assert!(Settings::parse("bogus = 1", "t").is_err());
        assert!(Settings::parse("q 1", "t").is_err());
        let s = Settings::parse("q = abc", "t").unwrap();
        assert!(s.get::<f64>("q").is_err());
    }

    #[test]
    fn flags_override_file() {
        let mut s = Settings::parse("q = 0.5", "t").unwrap();
        s.set("q", Some(0.7));
        s.set::<f64>("delta", None);
        s.default_to("q", 0.1);
        assert_eq!(s.require::<f64>("q").unwrap(), 0.7);
        assert!(s.raw("delta").is_none());
    }
}
