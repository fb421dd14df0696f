use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use pnt_core::sieve::{EngineConfig, DEFAULT_MAX, DEFAULT_SEGMENT_SIZE, MIN_SEGMENT_SIZE};

pub const CONFIG_FILE: &str = "pnt.conf";
pub const ZEROS_ENV: &str = "PNT_ZEROS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PrecisionMode {
    /// value with its rounding bound
    Fast,
    /// outward-rounded f64 enclosure
    Interval,
    /// double-double enclosure
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Output {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigProfile {
    pub desk_max: u64,
    pub segment_size: u64,
    pub threads: usize,
    pub zero_file: Option<PathBuf>,
    pub precision_mode: PrecisionMode,
    pub output: Output,
}

impl Default for ConfigProfile {
    fn default() -> Self {
        let e = EngineConfig::default();
        ConfigProfile {
            desk_max: DEFAULT_MAX,
            segment_size: DEFAULT_SEGMENT_SIZE,
            threads: e.threads,
            zero_file: None,
            precision_mode: PrecisionMode::Interval,
            output: Output::Text,
        }
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn parse_value<T: FromStr>(line: usize, key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| ConfigError(format!("{CONFIG_FILE} line {line}: bad value `{v}` for `{key}`")))
}

fn parse_enum<T: clap::ValueEnum>(line: usize, key: &str, v: &str) -> Result<T, ConfigError> {
    T::from_str(v, true).map_err(|_| ConfigError(format!("{CONFIG_FILE} line {line}: bad value `{v}` for `{key}`")))
}

impl ConfigProfile {
    /// Apply `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("{CONFIG_FILE} line {line}: expected key = value")))?;
            let (key, value) = (key.trim(), value.trim().trim_matches('"'));
            match key {
                "desk_max" => self.desk_max = parse_value::<f64>(line, key, value)? as u64,
                "segment_size" => self.segment_size = parse_value(line, key, value)?,
                "threads" => self.threads = parse_value(line, key, value)?,
                "zero_file" => self.zero_file = Some(PathBuf::from(value)),
                "precision_mode" => self.precision_mode = parse_enum(line, key, value)?,
                "output" => self.output = parse_enum(line, key, value)?,
                _ => return Err(ConfigError(format!("{CONFIG_FILE} line {line}: unknown key `{key}`"))),
            }
        }
        Ok(())
    }

    pub fn load_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.desk_max > DEFAULT_MAX {
            return Err(ConfigError(format!("desk_max {} exceeds {DEFAULT_MAX}", self.desk_max)));
        }
        if self.threads < 1 {
            return Err(ConfigError("threads must be at least 1".into()));
        }
        if self.segment_size < MIN_SEGMENT_SIZE {
            return Err(ConfigError(format!("segment_size must be at least {MIN_SEGMENT_SIZE}")));
        }
        Ok(())
    }

    pub fn engine_config(&self) -> EngineConfig {
        EngineConfig { max: self.desk_max, segment_size: self.segment_size, threads: self.threads }
    }
}
