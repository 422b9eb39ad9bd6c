//! Command-line front end: scenario files, reports, sweeps and figure presets.

// `!(x > 0.0)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod figures;
pub mod report;
pub mod svg;
pub mod sweep;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use config::{ConfigFile, Scenario};
use error::{CliError, Result};
use figures::FigureId;
use report::AnalyzeMethod;
use sweep::{Output, RunOptions, Series, SweepSpec, SweepTable, Variable};

#[derive(Debug, Parser)]
#[command(
    name = "peerdisc",
    version,
    about = "Peer discovery performance: analysis, design and Monte Carlo"
)]
pub struct Cli {
    /// Scenario file (TOML). Defaults apply to anything it leaves out.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Monte Carlo trials per point.
    #[arg(long, global = true, value_name = "N")]
    pub trials: Option<u64>,
    #[arg(long, global = true, value_name = "U64")]
    pub seed: Option<u64>,
    /// Output directory for reports, CSV and SVG files.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Also write an SVG chart (sweep).
    #[arg(long, global = true)]
    pub svg: bool,
    /// Simulation window radius, overriding the automatic choice.
    #[arg(long, global = true, value_name = "R")]
    pub radius: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate E{S} with every applicable analytical expression.
    Analyze {
        #[arg(long, value_enum, default_value_t = AnalyzeMethod::Auto)]
        method: AnalyzeMethod,
    },
    /// Threshold, transmission probability and transmit power design.
    Design,
    /// Monte Carlo estimate of E{S}.
    Simulate,
    /// Sweep one parameter; the [sweep] section supplies defaults.
    Sweep {
        #[arg(long, value_enum)]
        variable: Option<Variable>,
        /// Comma-separated, strictly increasing grid.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        grid: Option<Vec<f64>>,
        #[arg(long, value_enum, value_delimiter = ',')]
        outputs: Option<Vec<Output>>,
    },
    /// Regenerate a result figure (CSV and SVG).
    Figure {
        #[arg(value_enum)]
        id: FigureId,
    },
}

impl Cli {
    fn scenario(&self) -> Result<Scenario> {
        let file = match &self.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let mut s = file.resolve()?;
        if let Some(t) = self.trials {
            if t == 0 {
                return Err(CliError::config("--trials", "must be at least 1"));
            }
            s.sim.trials = t;
        }
        if let Some(seed) = self.seed {
            s.sim.seed = seed;
        }
        if let Some(r) = self.radius {
            if !(r > 0.0) || !r.is_finite() {
                return Err(CliError::config("--radius", format!("must be finite and > 0, got {r}")));
            }
            s.sim.radius = Some(r);
        }
        Ok(s)
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

fn table_files(dir: &Path, stem: &str, table: &SweepTable, title: &str, svg: bool) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let mut buf = Vec::new();
    sweep::write_csv(table, &mut buf)?;
    let csv_path = dir.join(format!("{stem}.csv"));
    write_file(&csv_path, &buf)?;
    written.push(csv_path);
    if !table.markers.is_empty() {
        let mut buf = Vec::new();
        sweep::write_markers_csv(table, &mut buf)?;
        let p = dir.join(format!("{stem}_markers.csv"));
        write_file(&p, &buf)?;
        written.push(p);
    }
    if svg {
        let p = dir.join(format!("{stem}.svg"));
        write_file(&p, svg::render(table, title).as_bytes())?;
        written.push(p);
    }
    Ok(written)
}

/// Runs one command, writing human-readable output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let s = cli.scenario()?;
    let opts = RunOptions::from_scenario(&s);
    let save_report = |name: &str, text: &str| -> Result<()> {
        match &cli.out {
            Some(dir) => write_file(&dir.join(format!("{name}.txt")), text.as_bytes()),
            None => Ok(()),
        }
    };
    match &cli.command {
        Command::Analyze { method } => {
            let text = report::analyze(&s, *method)?.to_string();
            emit(out, &text)?;
            save_report("analyze", &text)
        }
        Command::Design => {
            let text = report::design(&s)?.to_string();
            emit(out, &text)?;
            save_report("design", &text)
        }
        Command::Simulate => {
            let text = report::simulate(&s, opts)?.to_string();
            emit(out, &text)?;
            save_report("simulate", &text)
        }
        Command::Sweep {
            variable,
            grid,
            outputs,
        } => {
            let spec = sweep_spec(&s, *variable, grid.clone(), outputs.clone())?;
            let table = sweep::run_sweep(&s, &spec, &[Series::base()], opts)?;
            match &cli.out {
                Some(dir) => {
                    let title = format!("E{{S}} vs {}", spec.variable.name());
                    for p in table_files(dir, "sweep", &table, &title, cli.svg)? {
                        emit(out, &format!("wrote {}\n", p.display()))?;
                    }
                    Ok(())
                }
                None => {
                    if cli.svg {
                        return Err(CliError::Usage("--svg needs --out DIR".into()));
                    }
                    sweep::write_csv(&table, &mut *out)?;
                    if !table.markers.is_empty() {
                        emit(out, "\n")?;
                        sweep::write_markers_csv(&table, &mut *out)?;
                    }
                    Ok(())
                }
            }
        }
        Command::Figure { id } => {
            let preset = figures::preset(*id)?;
            let mut base = preset.base.clone();
            base.sim = s.sim;
            let table = sweep::run_sweep(&base, &preset.sweep, &preset.series, opts)?;
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("figures"));
            for p in table_files(&dir, id.name(), &table, preset.title, true)? {
                emit(out, &format!("wrote {}\n", p.display()))?;
            }
            Ok(())
        }
    }
}

fn sweep_spec(
    s: &Scenario,
    variable: Option<Variable>,
    grid: Option<Vec<f64>>,
    outputs: Option<Vec<Output>>,
) -> Result<SweepSpec> {
    let from_file = s.sweep.clone();
    let variable = variable
        .or(from_file.as_ref().map(|f| f.variable))
        .ok_or_else(|| CliError::config("sweep.variable", "missing; give --variable or a [sweep] section"))?;
    let grid = grid
        .or_else(|| {
            from_file
                .as_ref()
                .filter(|f| f.variable == variable)
                .map(|f| f.grid.clone())
        })
        .ok_or_else(|| CliError::config("sweep.grid", "missing; give --grid or a [sweep] section"))?;
    let outputs = outputs
        .or_else(|| from_file.as_ref().map(|f| f.outputs.clone()))
        .unwrap_or_else(|| vec![Output::Analysis, Output::Simulation]);
    let coupled = from_file.map(|f| f.rate_coupled).unwrap_or(false);
    let spec = SweepSpec::new(variable, grid, outputs)?.rate_coupled(coupled && variable == Variable::XiDb);
    spec.validate_against(s)?;
    Ok(spec)
}
