//! Tool configuration: an optional `oax.toml` file plus environment
//! variables, with prover executables resolved in the order
//! explicit flag, config file, environment variable, system `PATH`.

use std::collections::BTreeMap;
use std::env;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::interval::Density;
use crate::model::{expand, ModelError};
use crate::profile::AxisRegistry;

pub const VAMPIRE_ENV: &str = "OAX_VAMPIRE";
pub const Z3_ENV: &str = "OAX_Z3";

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub provers: Provers,
    #[serde(default)]
    pub run: RunSettings,
    /// Axis IRI (compact or full) to density override; the only supported
    /// value is "discrete".
    #[serde(default)]
    pub density: BTreeMap<String, String>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provers {
    pub vampire: Option<PathBuf>,
    pub z3: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSettings {
    #[serde(default = "default_timeout")]
    pub timeout_secs: u64,
    #[serde(default = "default_jobs")]
    pub jobs: usize,
}

fn default_timeout() -> u64 {
    10
}

fn default_jobs() -> usize {
    4
}

impl Default for RunSettings {
    fn default() -> RunSettings {
        RunSettings {
            timeout_secs: default_timeout(),
            jobs: default_jobs(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid config {path}: {source}")]
    Parse {
        path: String,
        source: toml::de::Error,
    },
    #[error("unknown density value {0:?} (expected \"discrete\")")]
    BadDensity(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Profile(#[from] crate::profile::ProfileError),
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        toml::from_str(&text).map_err(|e| ConfigError::Parse {
            path: path.display().to_string(),
            source: e,
        })
    }

    /// Loads `oax.toml` from the current directory when present, otherwise
    /// the defaults.
    pub fn discover() -> Result<Config, ConfigError> {
        let path = Path::new("oax.toml");
        if path.exists() {
            Config::load(path)
        } else {
            Ok(Config::default())
        }
    }

    /// Applies the `[density]` overrides to a registry.
    pub fn apply_densities(&self, registry: &mut AxisRegistry) -> Result<(), ConfigError> {
        for (key, value) in &self.density {
            if value != "discrete" {
                return Err(ConfigError::BadDensity(value.clone()));
            }
            let iri = expand(key)?;
            registry.set_density(&iri, Density::IntegerDiscrete)?;
        }
        Ok(())
    }
}

/// Finds an executable on the `PATH`.
fn search_path(name: &str) -> Option<PathBuf> {
    let path = env::var_os("PATH")?;
    for dir in env::split_paths(&path) {
        let candidate = dir.join(name);
        if candidate.is_file() {
            return Some(candidate);
        }
    }
    None
}

/// Resolution order: explicit CLI flag, config file, environment variable,
/// system path.
pub fn resolve_prover(
    flag: Option<&Path>,
    configured: Option<&Path>,
    env_var: &str,
    binary_name: &str,
) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    if let Some(p) = configured {
        return Some(p.to_path_buf());
    }
    if let Some(p) = env::var_os(env_var) {
        return Some(PathBuf::from(p));
    }
    search_path(binary_name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn parses_a_full_config() {
        let text = r#"
            [provers]
            vampire = "/opt/vampire"
            z3 = "/opt/z3"

            [run]
            timeout_secs = 5
            jobs = 2

            [density]
            "oax:absoluteSizeWidth" = "discrete"
        "#;
        let cfg: Config = toml::from_str(text).unwrap();
        assert_eq!(cfg.provers.vampire.as_deref(), Some(Path::new("/opt/vampire")));
        assert_eq!(cfg.run.timeout_secs, 5);
        assert_eq!(cfg.run.jobs, 2);

        let mut registry = AxisRegistry::standard();
        cfg.apply_densities(&mut registry).unwrap();
        let w = registry
            .lookup("http://w3id.org/odrl/spatial-axis#absoluteSizeWidth")
            .unwrap();
        assert_eq!(w.domain.density(), Density::IntegerDiscrete);
    }

    #[test]
    fn defaults_apply_when_sections_missing() {
        let cfg: Config = toml::from_str("").unwrap();
        assert_eq!(cfg.run.timeout_secs, 10);
        assert_eq!(cfg.run.jobs, 4);
        assert!(cfg.provers.vampire.is_none());
    }

    #[test]
    fn bad_density_value_is_rejected() {
        let cfg: Config = toml::from_str("[density]\n\"oax:absoluteSizeWidth\" = \"dense\"\n").unwrap();
        let mut registry = AxisRegistry::standard();
        assert!(matches!(
            cfg.apply_densities(&mut registry),
            Err(ConfigError::BadDensity(_))
        ));
    }

    #[test]
    fn flag_takes_precedence_over_config_and_env() {
        let flag = Path::new("/flag/vampire");
        let cfg = Path::new("/cfg/vampire");
        assert_eq!(
            resolve_prover(Some(flag), Some(cfg), "OAX_TEST_NO_SUCH_VAR", "vampire-nonexistent"),
            Some(flag.to_path_buf())
        );
        assert_eq!(
            resolve_prover(None, Some(cfg), "OAX_TEST_NO_SUCH_VAR", "vampire-nonexistent"),
            Some(cfg.to_path_buf())
        );
        assert_eq!(
            resolve_prover(None, None, "OAX_TEST_NO_SUCH_VAR", "vampire-nonexistent"),
            None
        );
    }

    #[test]
    fn load_reports_parse_errors_with_path() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(b"not [valid").unwrap();
        let err = Config::load(f.path()).unwrap_err();
        assert!(matches!(err, ConfigError::Parse { .. }));
    }
}
