//! Effective run configuration: defaults, then the config file, then flags.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

#[derive(Debug, Clone, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse_file_contents(text: &str) -> Result<Self, CliError> {
        let mut s = Self::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!(
                    "config line {}: expected key=value, got `{raw}`",
                    no + 1
                ))
            })?;
            s.set(k.trim(), v.trim());
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse_file_contents(&text)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.values.insert(key.replace('_', "-"), value.into());
    }

    pub fn set_opt(&mut self, key: &str, value: &Option<String>) {
        if let Some(v) = value {
            self.set(key, v.clone());
        }
    }

    /// Inserts `value` unless `key` is already present.
    pub fn or_default(&mut self, key: &str, value: impl Into<String>) {
        self.values
            .entry(key.to_string())
            .or_insert_with(|| value.into());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn remove(&mut self, key: &str) -> Option<String> {
        self.values.remove(key)
    }

    pub fn parse<T>(&self, key: &str) -> Result<T, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        let raw = self
            .get(key)
            .ok_or_else(|| CliError::Usage(format!("missing setting `{key}`")))?;
        raw.parse()
            .map_err(|e| CliError::Usage(format!("bad value `{raw}` for `{key}`: {e}")))
    }

    pub fn parse_list<T>(&self, key: &str) -> Result<Vec<T>, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        let raw = self
            .get(key)
            .ok_or_else(|| CliError::Usage(format!("missing setting `{key}`")))?;
        raw.split(',')
            .map(|p| {
                p.trim()
                    .parse()
                    .map_err(|e| CliError::Usage(format!("bad entry `{p}` in `{key}`: {e}")))
            })
            .collect()
    }

    /// Rejects keys outside `allowed`, so typos in config files surface.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<(), CliError> {
        match self.values.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(CliError::Usage(format!(
                "unknown setting `{k}` for this command"
            ))),
            None => Ok(()),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

/// Truncation given as `N=<even>,L=<odd>`.
pub fn parse_trunc(raw: &str) -> Result<(u32, u32), CliError> {
    let mut n = None;
    let mut l = None;
    for part in raw.split(',') {
        let (k, v) = part.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("bad truncation `{raw}`, expected N=<even>,L=<odd>"))
        })?;
        let v: u32 = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad truncation value `{v}`")))?;
        match k.trim() {
            "N" | "n" => n = Some(v),
            "L" | "l" => l = Some(v),
            other => return Err(CliError::Usage(format!("unknown truncation key `{other}`"))),
        }
    }
    match (n, l) {
        (Some(n), Some(l)) => Ok((n, l)),
        (None, Some(l)) => Ok((l.saturating_sub(1), l)),
        _ => Err(CliError::Usage(format!("truncation `{raw}` needs L"))),
    }
}
