//! Run configuration: defaults, then a `key=value` file, then
//! `GAUSSFORGE_*` environment variables. Command-line flags win over all
//! three.

use std::path::Path;

use anyhow::{bail, Context, Result};
use gaussforge_core::lattice::DEFAULT_BUDGET;
use gaussforge_core::moves::DEFAULT_MAX_ARROWS;
use gaussforge_core::Bound;

const ENV_PREFIX: &str = "GAUSSFORGE_";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Size cap for random walks.
    pub max_arrows: usize,
    /// Largest generator count `rank` will present.
    pub max_generators: u128,
    pub m: Bound,
    pub max_degree: u32,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_arrows: DEFAULT_MAX_ARROWS,
            max_generators: DEFAULT_BUDGET,
            m: Bound::Finite(1),
            max_degree: 4,
            seed: 0,
        }
    }
}

fn positive<T: std::str::FromStr + PartialEq + Default>(key: &str, value: &str) -> Result<T> {
    let parsed: T = value.parse().map_err(|_| anyhow::anyhow!("`{key}` expects a positive integer, got `{value}`"))?;
    if parsed == T::default() {
        bail!("`{key}` must be positive");
    }
    Ok(parsed)
}

impl Config {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "max_arrows" => self.max_arrows = positive(key, value)?,
            "max_generators" => self.max_generators = positive(key, value)?,
            "m" => self.m = value.parse().with_context(|| format!("bad value for `{key}`"))?,
            "max_degree" => {
                let d: u32 = value.parse().with_context(|| format!("bad value for `{key}`"))?;
                if !d.is_multiple_of(2) {
                    bail!("`{key}` must be even, got {d}");
                }
                self.max_degree = d;
            }
            "seed" => self.seed = value.parse().with_context(|| format!("bad value for `{key}`"))?,
            other => bail!("unknown configuration key `{other}`"),
        }
        Ok(())
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) =
                line.split_once('=').with_context(|| format!("line {}: expected key=value", n + 1))?;
            self.set(key, value).with_context(|| format!("line {}", n + 1))?;
        }
        Ok(())
    }

    pub fn apply_env(&mut self, vars: impl IntoIterator<Item = (String, String)>) -> Result<()> {
        let mut vars: Vec<(String, String)> =
            vars.into_iter().filter(|(k, _)| k.starts_with(ENV_PREFIX)).collect();
        vars.sort();
        for (key, value) in vars {
            self.set(&key[ENV_PREFIX.len()..], &value).with_context(|| format!("environment variable {key}"))?;
        }
        Ok(())
    }

    pub fn load(file: Option<&Path>) -> Result<Config> {
        let mut config = Config::default();
        if let Some(path) = file {
            let text =
                std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
            config.apply_text(&text).with_context(|| format!("in config {}", path.display()))?;
        }
        config.apply_env(std::env::vars())?;
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_env() {
        let mut c = Config::default();
        c.apply_text("# limits\nmax_arrows = 10\nm=inf\n\nseed=7").unwrap();
        assert_eq!(c.max_arrows, 10);
        assert_eq!(c.m, Bound::Infinite);
        c.apply_env([("GAUSSFORGE_SEED".to_string(), "9".to_string()), ("HOME".into(), "/".into())]).unwrap();
        assert_eq!(c.seed, 9);
    }

    #[test]
    fn rejects_bad_entries() {
        let mut c = Config::default();
        assert!(c.apply_text("max_arrows=0").is_err());
        assert!(c.apply_text("max_degree=3").is_err());
        assert!(c.apply_text("colour=blue").is_err());
        assert!(c.apply_text("just words").is_err());
        assert!(c.apply_env([("GAUSSFORGE_M".to_string(), "0".to_string())]).is_err());
    }
}
