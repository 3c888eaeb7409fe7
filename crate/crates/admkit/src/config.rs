use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use admkit_core::Error;

/// Environment variable naming a JSON config file.
pub const CONFIG_ENV: &str = "ADMKIT_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "camelCase")]
pub struct Config {
    /// Root height cutoff for integral subsystems.
    pub height: i64,
    /// Shapovalov depth for Virasoro.
    pub vir_depth: i64,
    /// Shapovalov depth for Neveu–Schwarz, doubled.
    pub ns_depth_x2: i64,
    /// Bound on `a + b` for affine sl2 depths `aα + bδ`.
    pub aff_depth: i64,
    pub partition_cutoff: u32,
    /// Bound on `|m| + |n|` when listing Kac lattice points.
    pub lattice_bound: i64,
    pub format: Option<Format>,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            height: 20,
            vir_depth: 6,
            ns_depth_x2: 9,
            aff_depth: 4,
            partition_cutoff: 12,
            lattice_bound: 50,
            format: None,
            seed: 20240501,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), Error> {
        let cutoffs = [
            ("height", self.height),
            ("virDepth", self.vir_depth),
            ("nsDepthX2", self.ns_depth_x2),
            ("affDepth", self.aff_depth),
            ("partitionCutoff", self.partition_cutoff as i64),
            ("latticeBound", self.lattice_bound),
        ];
        match cutoffs.iter().find(|(_, v)| *v <= 0) {
            Some((name, v)) => Err(Error::Input(format!("config: {name} must be positive, got {v}"))),
            None => Ok(()),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read config {}: {e}", path.display())))?;
        let cfg: Config =
            serde_json::from_str(&text).map_err(|e| Error::Input(format!("config {}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Defaults, overridden by the file named in `ADMKIT_CONFIG` if set.
    pub fn load() -> Result<Self, Error> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::from_file(Path::new(&p)),
            _ => Ok(Config::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_files_keep_defaults() {
        let c: Config = serde_json::from_str(r#"{"height": 30, "format": "csv"}"#).unwrap();
        assert_eq!(c.height, 30);
        assert_eq!(c.format, Some(Format::Csv));
        assert_eq!(c.vir_depth, 6);
        assert!(serde_json::from_str::<Config>(r#"{"hieght": 3}"#).is_err());
        let bad = Config { aff_depth: 0, ..Config::default() };
        assert!(bad.validate().is_err());
    }
}
