//! Run configuration: defaults, then a `key=value` file, then flags.

use std::fmt;
use std::path::PathBuf;

/// Environment variable that overrides the output directory.
pub const OUT_DIR_ENV: &str = "VABC_OUT_DIR";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub n_max: u32,
    /// Probe weight bound; `None` means `n_max - 1`.
    pub probe: Option<u32>,
    pub order: usize,
    pub seed: u64,
    pub scenario: String,
    pub out: Option<PathBuf>,
    pub eps_eval: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { n_max: 3, probe: None, order: 8, seed: 1, scenario: "shortseq".into(), out: None, eps_eval: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

fn parse_bool(v: &str) -> Option<bool> {
    match v {
        "true" | "yes" | "1" | "on" => Some(true),
        "false" | "no" | "0" | "off" => Some(false),
        _ => None,
    }
}

impl RunConfig {
    /// Applies one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = || ConfigError(format!("bad value `{value}` for {key}"));
        match key {
            "nmax" => self.n_max = value.parse().map_err(|_| bad())?,
            "probe" => self.probe = Some(value.parse().map_err(|_| bad())?),
            "order" => self.order = value.parse().map_err(|_| bad())?,
            "seed" => self.seed = value.parse().map_err(|_| bad())?,
            "scenario" => self.scenario = value.to_string(),
            "out" => self.out = Some(PathBuf::from(value)),
            "eps_eval" => self.eps_eval = parse_bool(value).ok_or_else(bad)?,
            _ => return Err(ConfigError(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Applies every line of a config file; blank lines and `#` comments
    /// are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("line {}: expected key=value", no + 1)))?;
            self.set(k.trim(), v.trim()).map_err(|e| ConfigError(format!("line {}: {}", no + 1, e.0)))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_max < 2 {
            return Err(ConfigError(format!("nmax must be at least 2, got {}", self.n_max)));
        }
        if self.order < 1 {
            return Err(ConfigError("order must be at least 1".into()));
        }
        if self.probe() > self.n_max {
            return Err(ConfigError(format!("probe {} exceeds nmax {}", self.probe(), self.n_max)));
        }
        Ok(())
    }

    pub fn probe(&self) -> u32 {
        self.probe.unwrap_or(self.n_max.saturating_sub(1))
    }

    /// The output directory after the environment override.
    pub fn out_dir(&self, env: Option<String>) -> Option<PathBuf> {
        env.filter(|s| !s.is_empty()).map(PathBuf::from).or_else(|| self.out.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_settings_and_comments() {
        let mut c = RunConfig::default();
        c.apply_text("# acceptance grid\nnmax = 3\nprobe=2 # inline\n\neps_eval=yes\nscenario=c2half\n").unwrap();
        assert_eq!((c.n_max, c.probe(), c.eps_eval, c.scenario.as_str()), (3, 2, true, "c2half"));
        assert!(c.validate().is_ok());
    }

    #[test]
    fn rejects_bad_lines_and_values() {
        let mut c = RunConfig::default();
        assert!(c.apply_text("nmax 3").is_err());
        assert!(c.apply_text("color=red").is_err());
        assert!(c.apply_text("nmax=-1").is_err());
        assert!(c.apply_text("eps_eval=maybe").is_err());
    }

    #[test]
    fn invariants() {
        let base = RunConfig::default();
        assert!(RunConfig { n_max: 1, probe: Some(1), ..base.clone() }.validate().is_err());
        assert!(RunConfig { order: 0, ..base.clone() }.validate().is_err());
        assert!(RunConfig { n_max: 2, probe: Some(3), ..base.clone() }.validate().is_err());
        assert_eq!(RunConfig { n_max: 4, ..base.clone() }.probe(), 3);
        assert!(base.validate().is_ok());
    }

    #[test]
    fn environment_overrides_output_directory() {
        let c = RunConfig { out: Some("a".into()), ..RunConfig::default() };
        assert_eq!(c.out_dir(Some("b".into())), Some(PathBuf::from("b")));
        assert_eq!(c.out_dir(None), Some(PathBuf::from("a")));
        assert_eq!(c.out_dir(Some(String::new())), Some(PathBuf::from("a")));
    }
}
