//! Command-line front end for `qtspin`: scenario files, CSV series, audit
//! reports, SVG charts and the two figure presets.

pub mod commands;
pub mod config;
pub mod error;
pub mod svg;
pub mod table;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::{PlotRequest, Preset};
use crate::config::{Outputs, ScenarioArgs};
pub use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "qtspin",
    version,
    about = "Qubit coupled to a thermal spin: series, audits and plots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Propagate the initial state and write observables as CSV.
    Simulate {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Output CSV (default `series.csv`).
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Compare the closed-form expressions against the exact propagator.
    Audit {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Output JSON report (default `audit.json`).
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
    },
    /// Draw CSV columns as an SVG line chart.
    Plot(PlotArgs),
    /// Reproduce a figure: CSVs for T = 0.5, 1, inf and an SVG.
    Preset {
        #[arg(value_enum)]
        name: Preset,
        #[arg(long, value_name = "DIR", default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Input CSV; repeat for several files.
    #[arg(long = "input", short, value_name = "CSV", required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, default_value = "e2_t")]
    pub x: String,
    /// Column(s) to draw, repeated or comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub y: Vec<String>,
    /// Legend entry per (input, y) pair.
    #[arg(long = "label")]
    pub labels: Vec<String>,
    /// Horizontal reference line at this y value.
    #[arg(long = "hline", allow_negative_numbers = true)]
    pub hlines: Vec<f64>,
    /// Vertical reference line at this x value.
    #[arg(long = "vline", allow_negative_numbers = true)]
    pub vlines: Vec<f64>,
    #[arg(long)]
    pub title: Option<String>,
    #[arg(long)]
    pub x_label: Option<String>,
    #[arg(long)]
    pub y_label: Option<String>,
    #[arg(long, short, value_name = "SVG", default_value = "plot.svg")]
    pub output: PathBuf,
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Simulate { scenario, csv } => {
            let cfg = scenario.resolve(Outputs { csv, report: None })?;
            let s = commands::simulate(&cfg)?;
            println!("wrote {} rows to {}", s.rows, s.path.display());
        }
        Command::Audit { scenario, report } => {
            let cfg = scenario.resolve(Outputs { csv: None, report })?;
            let (path, report) = commands::audit(&cfg)?;
            print!("{report}");
            println!("wrote {}", path.display());
        }
        Command::Plot(a) => {
            commands::plot(&PlotRequest {
                inputs: a.inputs,
                x: a.x,
                y: a.y.into_iter().filter(|c| !c.is_empty()).collect(),
                labels: a.labels,
                hlines: a.hlines,
                vlines: a.vlines,
                title: a.title,
                x_label: a.x_label,
                y_label: a.y_label,
                output: a.output.clone(),
            })?;
            println!("wrote {}", a.output.display());
        }
        Command::Preset { name, out_dir } => {
            for path in commands::preset(name, &out_dir)? {
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}
