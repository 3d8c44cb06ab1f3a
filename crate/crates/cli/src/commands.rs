use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use qtspin::{
    extrema_locator, observable_series, oracle_series, run_audit, thermal_populations, AuditReport,
    ExtremumKind, Provenance, Quantity, Temperature,
};

use crate::config::{Method, ScenarioConfig};
use crate::error::{CliError, CliResult};
use crate::svg::{Chart, Trace};
use crate::table::{write_series, Table};

#[derive(Debug, Clone, PartialEq)]
pub struct SimulateSummary {
    pub path: PathBuf,
    pub rows: usize,
}

/// Writes the oracle series for `cfg` as CSV; `method = both` appends the
/// closed-form columns.
pub fn simulate(cfg: &ScenarioConfig) -> CliResult<SimulateSummary> {
    let p = cfg.params();
    let grid = cfg.grid()?;
    let oracle = oracle_series(&p, cfg.temperature, &grid, cfg.propagation())?;
    let closed_form = match cfg.method {
        Method::Both => Some(observable_series(
            &p,
            cfg.temperature,
            &grid,
            Provenance::ClosedFormRepaired,
        )?),
        Method::Exact | Method::Rk4 => None,
    };
    let path = cfg.csv_path();
    let rows = write_series(&path, &oracle, closed_form.as_ref(), p.e2)?;
    Ok(SimulateSummary { path, rows })
}

/// Runs the formula audit and writes the JSON report.
pub fn audit(cfg: &ScenarioConfig) -> CliResult<(PathBuf, AuditReport)> {
    let report = run_audit(&cfg.params(), cfg.temperature, &cfg.grid()?, cfg.tolerances)?;
    let path = cfg.report_path();
    let mut json = report.to_json();
    json.push('\n');
    fs::write(&path, json).map_err(|e| CliError::io(&path, e))?;
    Ok((path, report))
}

#[derive(Debug, Clone, Default)]
pub struct PlotRequest {
    pub inputs: Vec<PathBuf>,
    pub x: String,
    pub y: Vec<String>,
    /// One per (input, y column) pair, inputs outermost; empty for defaults.
    pub labels: Vec<String>,
    pub hlines: Vec<f64>,
    pub vlines: Vec<f64>,
    pub title: Option<String>,
    pub x_label: Option<String>,
    pub y_label: Option<String>,
    pub output: PathBuf,
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Reads every input CSV and draws each requested y column against `x`.
pub fn plot(req: &PlotRequest) -> CliResult<()> {
    if req.inputs.is_empty() {
        return Err(CliError::Usage("no input CSV given".into()));
    }
    if req.y.is_empty() {
        return Err(CliError::Usage("no y columns given".into()));
    }
    let n_traces = req.inputs.len() * req.y.len();
    if !req.labels.is_empty() && req.labels.len() != n_traces {
        return Err(CliError::Usage(format!(
            "got {} labels for {n_traces} traces",
            req.labels.len()
        )));
    }

    let mut traces = Vec::with_capacity(n_traces);
    for input in &req.inputs {
        let table = Table::read(input)?;
        let missing =
            |col: &str| CliError::Usage(format!("column `{col}` not found in {}", input.display()));
        let xs = table.column(&req.x).ok_or_else(|| missing(&req.x))?;
        for col in &req.y {
            let ys = table.column(col).ok_or_else(|| missing(col))?;
            let label = match (req.inputs.len(), req.y.len()) {
                (1, _) => col.clone(),
                (_, 1) => stem(input),
                _ => format!("{}: {col}", stem(input)),
            };
            traces.push(Trace {
                label,
                points: xs.iter().copied().zip(ys).collect(),
            });
        }
    }
    for (trace, label) in traces.iter_mut().zip(&req.labels) {
        trace.label = label.clone();
    }

    let chart = Chart {
        title: req.title.clone(),
        x_label: req.x_label.clone().unwrap_or_else(|| req.x.clone()),
        y_label: req.y_label.clone().unwrap_or_else(|| req.y.join(", ")),
        traces,
        hlines: req.hlines.clone(),
        vlines: req.vlines.clone(),
    };
    fs::write(&req.output, chart.render()).map_err(|e| CliError::io(&req.output, e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Qubit entropy at T = 0.5, 1, inf with the thermal entropies marked.
    Fig1,
    /// Precession amplitude with the entropy maxima marked.
    Fig2,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
        }
    }
}

pub const PRESET_TEMPERATURES: [Temperature; 3] = [
    Temperature::Finite(0.5),
    Temperature::Finite(1.0),
    Temperature::Infinite,
];

/// Writes one CSV per temperature and an SVG into `out_dir`. Returns the
/// paths written, CSVs first.
pub fn preset(which: Preset, out_dir: &Path) -> CliResult<Vec<PathBuf>> {
    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let mut written = Vec::new();
    let mut labels = Vec::new();
    let mut thermal_entropies = Vec::new();
    let mut maxima_times: Vec<f64> = Vec::new();
    let mut e2 = 1.0;
    let mut dt = 0.0;

    for temp in PRESET_TEMPERATURES {
        let mut cfg = ScenarioConfig::preset(temp);
        let path = out_dir.join(format!("{}_T{}.csv", which.name(), temp.label()));
        cfg.outputs.csv = Some(path.clone());
        simulate(&cfg)?;

        let p = cfg.params();
        e2 = p.e2;
        thermal_entropies.push(thermal_populations(p.e2, temp)?.entropy());
        if which == Preset::Fig2 {
            let grid = cfg.grid()?;
            dt = grid.spacing();
            let series = oracle_series(&p, temp, &grid, cfg.propagation())?;
            maxima_times.extend(
                extrema_locator(&series, Quantity::S1)?
                    .into_iter()
                    .filter(|e| e.kind == ExtremumKind::Max)
                    .map(|e| e.t),
            );
        }
        labels.push(format!("T = {}", temp.label()));
        written.push(path);
    }

    // The maxima sit at the same instants for every temperature; keep one
    // line per instant.
    maxima_times.sort_by(f64::total_cmp);
    maxima_times.dedup_by(|b, a| (*b - *a).abs() <= 1.5 * dt);

    let svg = out_dir.join(format!("{}.svg", which.name()));
    let req = match which {
        Preset::Fig1 => PlotRequest {
            y: vec!["s1".into()],
            hlines: thermal_entropies,
            title: Some("Qubit entropy".into()),
            y_label: Some("S1".into()),
            ..Default::default()
        },
        Preset::Fig2 => PlotRequest {
            y: vec!["abs_sigma_plus".into()],
            vlines: maxima_times.iter().map(|t| e2 * t).collect(),
            title: Some("Precession amplitude".into()),
            y_label: Some("|<sigma+>|".into()),
            ..Default::default()
        },
    };
    plot(&PlotRequest {
        inputs: written.clone(),
        x: "e2_t".into(),
        labels,
        x_label: Some("E2 t".into()),
        output: svg.clone(),
        ..req
    })?;
    written.push(svg);
    Ok(written)
}
