//! Job configuration: grid, output, suites, tolerance overrides. Usable from
//! flags or a JSON config file.

use anyhow::{bail, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Rectangular sampling grid.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct GridSpec {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub nu: usize,
    pub nv: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        // default window: u in [-1.5, 1.5] minus exclusion margins,
        // v in [-pi, pi], 101 x 101
        GridSpec {
            u_min: -1.5,
            u_max: 1.5,
            v_min: -std::f64::consts::PI,
            v_max: std::f64::consts::PI,
            nu: 101,
            nv: 101,
        }
    }
}

impl GridSpec {
    pub fn parse(s: &str) -> Result<GridSpec> {
        let vals: Vec<&str> = s.split(',').map(str::trim).collect();
        if vals.len() != 6 {
            bail!("grid must be `u_min,u_max,v_min,v_max,nu,nv`");
        }
        let g = GridSpec {
            u_min: vals[0].parse()?,
            u_max: vals[1].parse()?,
            v_min: vals[2].parse()?,
            v_max: vals[3].parse()?,
            nu: vals[4].parse()?,
            nv: vals[5].parse()?,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nu < 2 || self.nv < 2 {
            bail!("grid needs nu, nv >= 2");
        }
        if !(self.u_max > self.u_min) || !(self.v_max > self.v_min) {
            bail!("grid bounds must be increasing");
        }
        Ok(())
    }
}

/// Output format for sampled surfaces.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Obj,
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format> {
        Ok(match s {
            "obj" => Format::Obj,
            "csv" => Format::Csv,
            "json" => Format::Json,
            other => bail!("unknown format `{other}` (expected obj|csv|json)"),
        })
    }
}

/// A full job: target, grid, optional output, suites, tolerance overrides.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct JobConfig {
    pub target: Option<String>,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub output: Option<OutputSpec>,
    #[serde(default)]
    pub suite: Vec<String>,
    /// Per-check tolerance overrides.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OutputSpec {
    pub path: String,
    pub format: Format,
}

impl JobConfig {
    pub fn load(path: &str) -> Result<JobConfig> {
        let text = std::fs::read_to_string(path)?;
        let cfg: JobConfig = serde_json::from_str(&text)?;
        if let Some(g) = &cfg.grid {
            g.validate()?;
        }
        Ok(cfg)
    }
}
