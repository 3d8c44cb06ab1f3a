//! Scenario configuration: JSON file values overlaid by command-line flags,
//! then filled from the figure defaults and validated.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use qtspin::{
    AuditTolerances, CouplingKind, ModelParams, Propagation, Temperature, TimeGrid,
    DEFAULT_RK4_SUBSTEPS,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const DEFAULT_T_MAX: f64 = 400.0;
pub const DEFAULT_STEPS: usize = 4000;
pub const DEFAULT_CSV: &str = "series.csv";
pub const DEFAULT_REPORT: &str = "audit.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Eigendecomposition propagator.
    #[default]
    Exact,
    /// Fourth-order Runge-Kutta on the von Neumann equation.
    Rk4,
    /// Exact propagator plus closed-form `_cf` columns.
    Both,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
}

/// Every key optional; used for both the file and the flag layer.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub interaction: Option<CouplingKind>,
    pub e1: Option<f64>,
    pub e2: Option<f64>,
    pub j: Option<f64>,
    pub temperature: Option<Temperature>,
    pub t_max: Option<f64>,
    pub steps: Option<usize>,
    pub method: Option<Method>,
    pub rk4_substeps: Option<usize>,
    pub tolerances: Option<AuditTolerances>,
    pub outputs: Option<Outputs>,
}

impl PartialConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let key = if path == "." {
                "config".to_string()
            } else {
                path
            };
            CliError::config(key, e.into_inner().to_string())
        })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    /// Values in `top` win; `outputs` merges per field.
    pub fn overlay(self, top: PartialConfig) -> PartialConfig {
        let outputs = match (self.outputs, top.outputs) {
            (Some(a), Some(b)) => Some(Outputs {
                csv: b.csv.or(a.csv),
                report: b.report.or(a.report),
            }),
            (a, b) => b.or(a),
        };
        PartialConfig {
            interaction: top.interaction.or(self.interaction),
            e1: top.e1.or(self.e1),
            e2: top.e2.or(self.e2),
            j: top.j.or(self.j),
            temperature: top.temperature.or(self.temperature),
            t_max: top.t_max.or(self.t_max),
            steps: top.steps.or(self.steps),
            method: top.method.or(self.method),
            rk4_substeps: top.rk4_substeps.or(self.rk4_substeps),
            tolerances: top.tolerances.or(self.tolerances),
            outputs,
        }
    }

    pub fn resolve(self) -> CliResult<ScenarioConfig> {
        let fig = ModelParams::figure_params(CouplingKind::Ising);
        let cfg = ScenarioConfig {
            interaction: self.interaction.unwrap_or(CouplingKind::Ising),
            e1: self.e1.unwrap_or(fig.e1),
            e2: self.e2.unwrap_or(fig.e2),
            j: self.j.unwrap_or(fig.j),
            temperature: self.temperature.unwrap_or(Temperature::Finite(1.0)),
            t_max: self.t_max.unwrap_or(DEFAULT_T_MAX),
            steps: self.steps.unwrap_or(DEFAULT_STEPS),
            method: self.method.unwrap_or_default(),
            rk4_substeps: self.rk4_substeps.unwrap_or(DEFAULT_RK4_SUBSTEPS),
            tolerances: self.tolerances.unwrap_or_default(),
            outputs: self.outputs.unwrap_or_default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// A fully specified, validated scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub interaction: CouplingKind,
    pub e1: f64,
    pub e2: f64,
    pub j: f64,
    pub temperature: Temperature,
    pub t_max: f64,
    /// Number of intervals; the grid has `steps + 1` points.
    pub steps: usize,
    pub method: Method,
    pub rk4_substeps: usize,
    pub tolerances: AuditTolerances,
    pub outputs: Outputs,
}

impl ScenarioConfig {
    /// The figure parameters at temperature `temp` on the default grid.
    pub fn preset(temp: Temperature) -> Self {
        PartialConfig {
            temperature: Some(temp),
            ..Default::default()
        }
        .resolve()
        .expect("preset parameters are valid")
    }

    pub fn validate(&self) -> CliResult<()> {
        ModelParams::new(self.e1, self.e2, self.j, self.interaction).map_err(|e| match e {
            qtspin::Error::InvalidParameter { name, reason } => CliError::config(name, reason),
            other => CliError::config("config", other.to_string()),
        })?;
        if self.e2 <= 0.0 {
            return Err(CliError::config(
                "e2",
                format!("thermal spin splitting must be > 0, got {}", self.e2),
            ));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(CliError::config(
                "t_max",
                format!("must be finite and > 0, got {}", self.t_max),
            ));
        }
        if self.steps < 2 {
            return Err(CliError::config(
                "steps",
                format!("grid too coarse: need at least 2 steps, got {}", self.steps),
            ));
        }
        if self.rk4_substeps == 0 {
            return Err(CliError::config("rk4_substeps", "must be at least 1"));
        }
        for (key, v) in [
            ("tolerances.exact", self.tolerances.exact),
            ("tolerances.regime", self.tolerances.regime),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::config(
                    key,
                    format!("must be finite and > 0, got {v}"),
                ));
            }
        }
        Ok(())
    }

    pub fn params(&self) -> ModelParams {
        ModelParams {
            e1: self.e1,
            e2: self.e2,
            j: self.j,
            coupling: self.interaction,
        }
    }

    pub fn grid(&self) -> CliResult<TimeGrid> {
        Ok(TimeGrid::new(0.0, self.t_max, self.steps + 1)?)
    }

    pub fn propagation(&self) -> Propagation {
        match self.method {
            Method::Rk4 => Propagation::Rk4 {
                substeps: self.rk4_substeps,
            },
            Method::Exact | Method::Both => Propagation::Exact,
        }
    }

    pub fn csv_path(&self) -> PathBuf {
        self.outputs
            .csv
            .clone()
            .unwrap_or_else(|| DEFAULT_CSV.into())
    }

    pub fn report_path(&self) -> PathBuf {
        self.outputs
            .report
            .clone()
            .unwrap_or_else(|| DEFAULT_REPORT.into())
    }
}

fn parse_temperature(s: &str) -> Result<Temperature, String> {
    s.parse().map_err(|e: qtspin::Error| e.to_string())
}

/// Scenario flags shared by `simulate` and `audit`.
#[derive(Debug, Clone, Default, Args)]
pub struct ScenarioArgs {
    /// JSON file with scenario keys; flags override its values.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// `ising` or `heisenberg`.
    #[arg(long)]
    pub interaction: Option<CouplingKind>,
    #[arg(long, allow_negative_numbers = true)]
    pub e1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub e2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub j: Option<f64>,
    /// Positive number, `0` or `inf`.
    #[arg(long, value_parser = parse_temperature, allow_negative_numbers = true)]
    pub temperature: Option<Temperature>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_max: Option<f64>,
    /// Number of time intervals on `[0, t_max]`.
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[arg(long)]
    pub rk4_substeps: Option<usize>,
}

impl ScenarioArgs {
    /// Loads the config file (if any), overlays the flags and validates.
    pub fn resolve(&self, outputs: Outputs) -> CliResult<ScenarioConfig> {
        let file = match &self.config {
            Some(path) => PartialConfig::load(path)?,
            None => PartialConfig::default(),
        };
        let flags = PartialConfig {
            interaction: self.interaction,
            e1: self.e1,
            e2: self.e2,
            j: self.j,
            temperature: self.temperature,
            t_max: self.t_max,
            steps: self.steps,
            method: self.method,
            rk4_substeps: self.rk4_substeps,
            tolerances: None,
            outputs: Some(outputs),
        };
        file.overlay(flags).resolve()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_gives_figure_defaults() {
        let cfg = PartialConfig::from_json("{}").unwrap().resolve().unwrap();
        assert_eq!(
            cfg.params(),
            ModelParams::figure_params(CouplingKind::Ising)
        );
        assert_eq!(cfg.grid().unwrap().len(), 4001);
        assert_eq!(cfg.csv_path(), PathBuf::from(DEFAULT_CSV));
    }

    #[test]
    fn full_config_parses() {
        let text = r#"{
            "interaction": "heisenberg", "e1": 0.0, "e2": 2.0, "j": 0.05,
            "temperature": "inf", "t_max": 10, "steps": 100, "method": "both",
            "rk4_substeps": 4, "tolerances": {"exact": 1e-8, "regime": 1e-2},
            "outputs": {"csv": "a.csv", "report": "b.json"}
        }"#;
        let cfg = PartialConfig::from_json(text).unwrap().resolve().unwrap();
        assert_eq!(cfg.interaction, CouplingKind::Heisenberg);
        assert_eq!(cfg.temperature, Temperature::Infinite);
        assert_eq!(cfg.method, Method::Both);
        assert_eq!(cfg.tolerances.regime, 1e-2);
        assert_eq!(cfg.report_path(), PathBuf::from("b.json"));
    }

    fn config_key(text: &str) -> String {
        match PartialConfig::from_json(text).and_then(PartialConfig::resolve) {
            Err(CliError::Config { key, .. }) => key,
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn errors_name_the_key() {
        assert_eq!(config_key(r#"{"bogus": 1}"#), "bogus");
        assert_eq!(config_key("not json"), "config");
        assert_eq!(config_key(r#"{"e1": "x"}"#), "e1");
        assert_eq!(config_key(r#"{"temperature": -1}"#), "temperature");
        assert_eq!(config_key(r#"{"steps": 1}"#), "steps");
        assert_eq!(config_key(r#"{"steps": -5}"#), "steps");
        assert_eq!(config_key(r#"{"e2": 0}"#), "e2");
        assert_eq!(config_key(r#"{"t_max": 0}"#), "t_max");
        assert_eq!(config_key(r#"{"outputs": {"svg": "x"}}"#), "outputs.svg");
        assert_eq!(
            config_key(r#"{"tolerances": {"exact": 0, "regime": 1}}"#),
            "tolerances.exact"
        );
    }

    #[test]
    fn unknown_key_message_names_it() {
        let err = PartialConfig::from_json(r#"{"bogus": 1}"#).unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");
    }

    #[test]
    fn overlay_prefers_top_and_merges_outputs() {
        let file = PartialConfig::from_json(
            r#"{"e1": 0.5, "j": 0.1, "outputs": {"csv": "f.csv", "report": "f.json"}}"#,
        )
        .unwrap();
        let flags = PartialConfig {
            e1: Some(0.25),
            outputs: Some(Outputs {
                csv: Some("g.csv".into()),
                report: None,
            }),
            ..Default::default()
        };
        let merged = file.overlay(flags);
        assert_eq!(merged.e1, Some(0.25));
        assert_eq!(merged.j, Some(0.1));
        let out = merged.outputs.unwrap();
        assert_eq!(out.csv, Some("g.csv".into()));
        assert_eq!(out.report, Some("f.json".into()));
    }
}
