//! Settings resolved from flags, then `CHARDEG_*` environment variables,
//! then an optional `key = value` config file, then defaults.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use chardeg_core::enumerator::DEFAULT_BUDGET;
use chardeg_core::group::DEFAULT_ELEMENT_CAP;
use chardeg_core::solver::DEFAULT_ORACLE_CAP;

use crate::args::{Format, GlobalArgs};
use crate::error::CliError;

const KEYS: [&str; 5] = ["format", "cache_dir", "element_cap", "oracle_cap", "budget"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    pub format: Format,
    pub cache_dir: PathBuf,
    pub use_cache: bool,
    pub timestamp: bool,
    pub element_cap: u64,
    pub oracle_cap: u32,
    pub budget: u64,
}

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_config_file(text: &str) -> Result<HashMap<String, String>, CliError> {
    let mut map = HashMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected `key = value`", no + 1)))?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(CliError::Config(format!("line {}: unknown key `{key}`", no + 1)));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

struct Layers<'a> {
    env: &'a HashMap<String, String>,
    file: HashMap<String, String>,
}

impl Layers<'_> {
    /// Environment value for `key`, else the config file's.
    fn lookup(&self, key: &str) -> Option<(String, &'static str)> {
        let env_key = format!("CHARDEG_{}", key.to_uppercase());
        if let Some(v) = self.env.get(&env_key) {
            return Some((v.clone(), "environment"));
        }
        self.file.get(key).map(|v| (v.clone(), "config file"))
    }

    fn resolve<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.lookup(key) {
            Some((text, origin)) => text
                .parse()
                .map_err(|_| CliError::Config(format!("invalid {key} `{text}` from {origin}"))),
            None => Ok(default),
        }
    }
}

fn default_cache_dir(env: &HashMap<String, String>) -> PathBuf {
    match env.get("HOME") {
        Some(home) => Path::new(home).join(".cache").join("chardeg"),
        None => PathBuf::from(".chardeg-cache"),
    }
}

impl Settings {
    /// `oracle_cap` and `budget` are the subcommand flags, when it has them.
    pub fn resolve(
        global: &GlobalArgs,
        oracle_cap: Option<u32>,
        budget: Option<u64>,
        env: &HashMap<String, String>,
    ) -> Result<Settings, CliError> {
        let file = match &global.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
                parse_config_file(&text)?
            }
            None => HashMap::new(),
        };
        let layers = Layers { env, file };
        Ok(Settings {
            format: layers.resolve(global.format, "format", Format::Pretty)?,
            cache_dir: layers.resolve(global.cache_dir.clone(), "cache_dir", default_cache_dir(env))?,
            use_cache: global.cache,
            timestamp: !global.no_timestamp,
            element_cap: layers.resolve(global.element_cap, "element_cap", DEFAULT_ELEMENT_CAP)?,
            oracle_cap: layers.resolve(oracle_cap, "oracle_cap", DEFAULT_ORACLE_CAP)?,
            budget: layers.resolve(budget, "budget", DEFAULT_BUDGET)?,
        })
    }
}
