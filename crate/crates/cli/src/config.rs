//! Resolved experiment configurations and the flat key = value layer they
//! round-trip through. Precedence: built-in defaults, then config file,
//! then command-line flags.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use unobs_core::IndexMethod;

#[derive(Debug)]
pub enum ConfigError {
    UnknownKey(String),
    BadValue { key: String, detail: String },
    Io(String),
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::UnknownKey(k) => write!(f, "unknown config key '{k}'"),
            ConfigError::BadValue { key, detail } => {
                write!(f, "bad value for '{key}': {detail}")
            }
            ConfigError::Io(e) => write!(f, "cannot read config: {e}"),
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: std::fmt::Display,
{
    value.trim().parse().map_err(|e: T::Err| ConfigError::BadValue {
        key: key.to_string(),
        detail: e.to_string(),
    })
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, ConfigError>
where
    T::Err: std::fmt::Display,
{
    value.split(',').map(|p| parse(key, p)).collect()
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.17e}")
}

fn fmt_list<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn fmt_f64_list(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join(",")
}

/// Read a flat `key = value` file; '#' starts a comment.
pub fn read_config_file(path: &Path) -> Result<Vec<(String, String)>, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(e.to_string()))?;
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::BadValue {
                key: format!("line {}", lineno + 1),
                detail: format!("expected 'key = value', got '{line}'"),
            });
        };
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

pub trait KeyValueConfig: Sized {
    fn apply(&mut self, key: &str, value: &str) -> Result<(), ConfigError>;

    /// Flat representation; applying it to the defaults reproduces `self`.
    fn to_map(&self) -> BTreeMap<String, String>;

    fn apply_all(&mut self, pairs: &[(String, String)]) -> Result<(), ConfigError> {
        for (k, v) in pairs {
            self.apply(k, v)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct HeatConfig {
    pub length: f64,
    pub horizon: f64,
    pub sensor_x: f64,
    pub output_samples: usize,
    pub n_list: Vec<usize>,
    pub seed: u64,
}

impl Default for HeatConfig {
    fn default() -> Self {
        HeatConfig {
            length: 2.0 * PI,
            horizon: 10.0,
            sensor_x: 0.5,
            output_samples: 4001,
            n_list: (1..=8).collect(),
            seed: 0,
        }
    }
}

impl KeyValueConfig for HeatConfig {
    fn apply(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "length" => self.length = parse(key, value)?,
            "horizon" => self.horizon = parse(key, value)?,
            "sensor_x" => self.sensor_x = parse(key, value)?,
            "output_samples" => self.output_samples = parse(key, value)?,
            "n_list" => self.n_list = parse_list(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    fn to_map(&self) -> BTreeMap<String, String> {
        BTreeMap::from([
            ("length".into(), fmt_f64(self.length)),
            ("horizon".into(), fmt_f64(self.horizon)),
            ("sensor_x".into(), fmt_f64(self.sensor_x)),
            ("output_samples".into(), self.output_samples.to_string()),
            ("n_list".into(), fmt_list(&self.n_list)),
            ("seed".into(), self.seed.to_string()),
        ])
    }
}

#[derive(Debug, Clone)]
pub struct WaveConfig {
    pub length: f64,
    pub horizon: f64,
    /// None: use the highest mode k = n at every resolution.
    pub initial_mode: Option<usize>,
    pub n_list: Vec<usize>,
    pub seed: u64,
}

impl Default for WaveConfig {
    fn default() -> Self {
        WaveConfig {
            length: 1.0,
            horizon: 4.0,
            initial_mode: None,
            n_list: vec![10, 20, 40, 80],
            seed: 0,
        }
    }
}

impl KeyValueConfig for WaveConfig {
    fn apply(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "length" => self.length = parse(key, value)?,
            "horizon" => self.horizon = parse(key, value)?,
            "initial_mode" => {
                self.initial_mode = if value.trim() == "highest" {
                    None
                } else {
                    Some(parse(key, value)?)
                }
            }
            "n_list" => self.n_list = parse_list(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    fn to_map(&self) -> BTreeMap<String, String> {
        BTreeMap::from([
            ("length".into(), fmt_f64(self.length)),
            ("horizon".into(), fmt_f64(self.horizon)),
            (
                "initial_mode".into(),
                self.initial_mode.map_or("highest".into(), |k| k.to_string()),
            ),
            ("n_list".into(), fmt_list(&self.n_list)),
            ("seed".into(), self.seed.to_string()),
        ])
    }
}

#[derive(Debug, Clone)]
pub struct BurgersConfig {
    pub length: f64,
    pub horizon: f64,
    pub kappa: f64,
    pub nt_sensors: usize,
    pub sensor_x: Vec<f64>,
    pub kf: usize,
    pub rho: f64,
    pub dt_scale: f64,
    pub method: IndexMethod,
    pub n_list: Vec<usize>,
    pub seed: u64,
}

impl Default for BurgersConfig {
    fn default() -> Self {
        let length = 2.0 * PI;
        BurgersConfig {
            length,
            horizon: 5.0,
            kappa: 0.14,
            nt_sensors: 20,
            sensor_x: vec![length / 4.0, length / 2.0, 3.0 * length / 4.0],
            kf: 2,
            rho: 0.1,
            dt_scale: 1.0,
            method: IndexMethod::Empirical,
            n_list: (5..=19).map(|k| 4 * k).collect(),
            seed: 0,
        }
    }
}

impl KeyValueConfig for BurgersConfig {
    fn apply(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "length" => self.length = parse(key, value)?,
            "horizon" => self.horizon = parse(key, value)?,
            "kappa" => self.kappa = parse(key, value)?,
            "nt_sensors" => self.nt_sensors = parse(key, value)?,
            "sensor_x" => self.sensor_x = parse_list(key, value)?,
            "kf" => self.kf = parse(key, value)?,
            "rho" => self.rho = parse(key, value)?,
            "dt_scale" => self.dt_scale = parse(key, value)?,
            "method" => {
                self.method = match value.trim() {
                    "empirical" => IndexMethod::Empirical,
                    "direct" => IndexMethod::DirectSearch,
                    other => {
                        return Err(ConfigError::BadValue {
                            key: key.to_string(),
                            detail: format!("expected 'empirical' or 'direct', got '{other}'"),
                        })
                    }
                }
            }
            "n_list" => self.n_list = parse_list(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    fn to_map(&self) -> BTreeMap<String, String> {
        BTreeMap::from([
            ("length".into(), fmt_f64(self.length)),
            ("horizon".into(), fmt_f64(self.horizon)),
            ("kappa".into(), fmt_f64(self.kappa)),
            ("nt_sensors".into(), self.nt_sensors.to_string()),
            ("sensor_x".into(), fmt_f64_list(&self.sensor_x)),
            ("kf".into(), self.kf.to_string()),
            ("rho".into(), fmt_f64(self.rho)),
            ("dt_scale".into(), fmt_f64(self.dt_scale)),
            ("method".into(), self.method.to_string()),
            ("n_list".into(), fmt_list(&self.n_list)),
            ("seed".into(), self.seed.to_string()),
        ])
    }
}
