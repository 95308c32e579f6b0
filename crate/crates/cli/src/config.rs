//! Key-value configuration: interval-refinement precision, sample grid
//! sizes, and an optional report output directory. Loaded from `--config`
//! or the `TUBECHECK_CONFIG` environment variable.

use std::path::{Path, PathBuf};

#[derive(Debug, Clone)]
pub struct Config {
    /// Bits of interval refinement for real sign decisions.
    pub precision: u32,
    /// Default sample count for scan subcommands.
    pub samples: usize,
    /// Directory to mirror JSON reports into, one file per subcommand.
    pub output_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config { precision: 1 << 12, samples: 1000, output_dir: None }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text =
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
        let mut config = Config::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!("{}:{}: expected key=value", path.display(), lineno + 1));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "precision" => {
                    config.precision =
                        value.parse().map_err(|_| format!("bad precision `{}`", value))?
                }
                "samples" => {
                    config.samples = value.parse().map_err(|_| format!("bad samples `{}`", value))?
                }
                "output_dir" => config.output_dir = Some(PathBuf::from(value)),
                other => return Err(format!("unknown configuration key `{}`", other)),
            }
        }
        Ok(config)
    }

    pub fn resolve(explicit: Option<&Path>) -> Result<Self, String> {
        if let Some(path) = explicit {
            return Self::load(path);
        }
        if let Ok(env_path) = std::env::var("TUBECHECK_CONFIG") {
            return Self::load(Path::new(&env_path));
        }
        Ok(Config::default())
    }
}
