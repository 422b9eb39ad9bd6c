//! Parameter sweeps: one row per (series, grid point).

use std::io::Write;

use peerdisc::analysis::{es_bounds, es_general, es_rayleigh_noise, es_zero_noise, shadowed_network, ChannelModel};
use peerdisc::design::{design_power, kappa, m_from_xi, optimal_xi, suboptimal_rho, RateModel};
use peerdisc::simulator::{estimate_es, Estimate, SimConfig};
use peerdisc::{db_to_linear, linear_to_db};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{sigma2_to_snr, Scenario};
use crate::error::{CliError, Result};

/// Quantity varied along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
pub enum Variable {
    #[serde(rename = "M")]
    #[value(name = "M")]
    M,
    #[serde(rename = "xi_db")]
    #[value(name = "xi_db")]
    XiDb,
    #[serde(rename = "rho")]
    #[value(name = "rho")]
    Rho,
    #[serde(rename = "snr_db")]
    #[value(name = "snr_db")]
    SnrDb,
    #[serde(rename = "chi_db")]
    #[value(name = "chi_db")]
    ChiDb,
    #[serde(rename = "alpha")]
    #[value(name = "alpha")]
    Alpha,
    /// Nakagami parameter, applied to both desired and interfering links.
    #[serde(rename = "m")]
    #[value(name = "m")]
    Fading,
    #[serde(rename = "lambda")]
    #[value(name = "lambda")]
    Lambda,
}

impl Variable {
    pub fn name(self) -> &'static str {
        match self {
            Self::M => "M",
            Self::XiDb => "xi_db",
            Self::Rho => "rho",
            Self::SnrDb => "snr_db",
            Self::ChiDb => "chi_db",
            Self::Alpha => "alpha",
            Self::Fading => "m",
            Self::Lambda => "lambda",
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            Self::M => "resource blocks per slot",
            Self::XiDb => "dB, SINR threshold",
            Self::Rho => "transmission probability",
            Self::SnrDb => "dB, mean SNR at unit distance",
            Self::ChiDb => "dB, lognormal shadowing standard deviation",
            Self::Alpha => "path loss exponent",
            Self::Fading => "Nakagami parameter",
            Self::Lambda => "nodes per unit area",
        }
    }

    /// Current value of this variable in `s`, in sweep units.
    pub fn read(self, s: &Scenario) -> Option<f64> {
        Some(match self {
            Self::M => s.dp.resource_blocks,
            Self::XiDb => linear_to_db(s.dp.xi),
            Self::Rho => s.dp.rho,
            Self::SnrDb => return sigma2_to_snr(s.ch.sigma2),
            Self::ChiDb => s.ch.shadow_chi_db,
            Self::Alpha => s.ch.alpha,
            Self::Fading => s.ch.m_s,
            Self::Lambda => s.net.lambda,
        })
    }

    /// Sets this variable to `v` without validation.
    pub fn set(self, s: &Scenario, v: f64) -> Scenario {
        let mut s = s.clone();
        match self {
            Self::M => s.dp.resource_blocks = v,
            Self::XiDb => s.dp.xi = db_to_linear(v),
            Self::Rho => s.dp.rho = v,
            Self::SnrDb => s.ch.sigma2 = db_to_linear(-v),
            Self::ChiDb => s.ch.shadow_chi_db = v,
            Self::Alpha => s.ch.alpha = v,
            Self::Fading => {
                s.ch.m_s = v;
                s.ch.m_i = v;
            }
            Self::Lambda => s.net.lambda = v,
        }
        s
    }
}

/// What a sweep computes at each point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    Analysis,
    Simulation,
    Bounds,
    #[value(name = "design_markers")]
    DesignMarkers,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeScale {
    #[default]
    Linear,
    Log,
}

impl RangeScale {
    pub fn points(self, start: f64, stop: f64, n: usize) -> std::result::Result<Vec<f64>, String> {
        if n < 2 {
            return Err(format!("need at least 2 points, got {n}"));
        }
        if !(start < stop) || !start.is_finite() || !stop.is_finite() {
            return Err(format!("need finite start < stop, got {start} and {stop}"));
        }
        let t = |i: usize| i as f64 / (n - 1) as f64;
        match self {
            Self::Linear => Ok((0..n).map(|i| start + (stop - start) * t(i)).collect()),
            Self::Log => {
                if !(start > 0.0) {
                    return Err(format!("log range needs start > 0, got {start}"));
                }
                let (a, b) = (start.ln(), stop.ln());
                Ok((0..n).map(|i| (a + (b - a) * t(i)).exp()).collect())
            }
        }
    }
}

/// A declarative sweep over one variable.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: Variable,
    /// Strictly increasing, at least two points.
    pub grid: Vec<f64>,
    pub outputs: Vec<Output>,
    /// With `xi_db`, set `M` from the rate model at every point.
    pub rate_coupled: bool,
}

impl SweepSpec {
    pub fn new(variable: Variable, grid: Vec<f64>, outputs: Vec<Output>) -> Result<Self> {
        if grid.len() < 2 {
            return Err(CliError::config(
                "sweep.grid",
                format!("need at least 2 points, got {}", grid.len()),
            ));
        }
        if grid.iter().any(|v| !v.is_finite()) {
            return Err(CliError::config("sweep.grid", "grid values must be finite"));
        }
        if grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(CliError::config("sweep.grid", "grid must be strictly increasing"));
        }
        let mut outs = outputs;
        outs.dedup();
        Ok(Self {
            variable,
            grid,
            outputs: outs,
            rate_coupled: false,
        })
    }

    pub fn rate_coupled(self, rate_coupled: bool) -> Self {
        Self { rate_coupled, ..self }
    }

    pub fn wants(&self, o: Output) -> bool {
        self.outputs.contains(&o)
    }

    /// Scenario at grid value `v`, validated.
    pub fn apply(&self, base: &Scenario, v: f64) -> Result<Scenario> {
        let mut s = self.variable.set(base, v);
        if self.rate_coupled {
            if self.variable != Variable::XiDb {
                return Err(CliError::config(
                    "sweep.rate_coupled",
                    "only meaningful when sweeping xi_db",
                ));
            }
            let rate = base
                .rate
                .ok_or_else(|| CliError::config("sweep.rate_coupled", "needs a [rate] section"))?;
            s.dp.resource_blocks = m_from_xi(&rate, s.dp.xi);
        }
        let check = |r: peerdisc::Result<()>| {
            r.map_err(|e| CliError::config("sweep.grid", format!("{} = {v}: {e}", self.variable.name())))
        };
        check(s.net.validate())?;
        check(s.ch.validate())?;
        check(s.dp.validate())?;
        Ok(s)
    }

    /// Checks that every grid point gives a valid scenario.
    pub fn validate_against(&self, base: &Scenario) -> Result<()> {
        self.grid.iter().try_for_each(|&v| self.apply(base, v).map(|_| ()))
    }
}

/// One curve of a sweep: the base scenario with some parameters replaced.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub overrides: Vec<(Variable, f64)>,
    pub rate: Option<RateModel<f64>>,
}

impl Series {
    pub fn base() -> Self {
        Self::new("base", Vec::new())
    }

    pub fn new(label: impl Into<String>, overrides: Vec<(Variable, f64)>) -> Self {
        Self {
            label: label.into(),
            overrides,
            rate: None,
        }
    }

    pub fn with_rate(self, rate: RateModel<f64>) -> Self {
        Self {
            rate: Some(rate),
            ..self
        }
    }

    pub fn scenario(&self, base: &Scenario) -> Scenario {
        let mut s = self.overrides.iter().fold(base.clone(), |s, &(var, v)| var.set(&s, v));
        if self.rate.is_some() {
            s.rate = self.rate;
        }
        s
    }
}

/// Which analytical expression produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ZeroNoise,
    RayleighNoise,
    General,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Self::ZeroNoise => "zero_noise",
            Self::RayleighNoise => "rayleigh_noise",
            Self::General => "general",
        }
    }
}

fn is_rayleigh_alpha4(ch: &ChannelModel<f64>) -> bool {
    ch.alpha == 4.0 && ch.m_s == 1.0 && ch.m_i == 1.0 && ch.sigma2 > 0.0
}

/// Most specific analytical E{S} available for `s`.
pub fn best_analysis(s: &Scenario) -> peerdisc::Result<(f64, Method)> {
    if s.ch.is_interference_limited() {
        return es_zero_noise(&s.ch, &s.dp).map(|v| (v, Method::ZeroNoise));
    }
    if is_rayleigh_alpha4(&s.ch) {
        return es_rayleigh_noise(&s.net, &s.ch, &s.dp).map(|v| (v, Method::RayleighNoise));
    }
    es_general(&s.net, &s.ch, &s.dp).map(|v| (v, Method::General))
}

/// Bounds on E{S}, when the Rayleigh, `alpha = 4`, noisy regime applies.
pub fn bounds(s: &Scenario) -> Option<(f64, f64)> {
    is_rayleigh_alpha4(&s.ch)
        .then(|| es_bounds(&s.net, &s.ch, &s.dp).ok())
        .flatten()
        .map(|b| (b.lower, b.upper))
}

/// Builds the Monte Carlo configuration for a scenario.
pub fn sim_config(s: &Scenario, trials: u64, seed: u64, radius: Option<f64>) -> peerdisc::Result<SimConfig> {
    let cfg = SimConfig::new(s.net, s.ch, s.dp, trials, seed)?.with_tail_correction(s.sim.tail_correction);
    match radius.or(s.sim.radius) {
        Some(r) => cfg.with_radius(r),
        None => Ok(cfg),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub series: String,
    pub x: f64,
    pub analysis: Option<f64>,
    pub method: Option<Method>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub mc: Option<Estimate>,
    /// Why a requested value is missing.
    pub note: String,
}

/// A design point drawn on top of a series.
#[derive(Debug, Clone, PartialEq)]
pub struct Marker {
    pub series: String,
    pub name: &'static str,
    pub x: f64,
    pub es: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub variable: Variable,
    pub rows: Vec<SweepRow>,
    pub markers: Vec<Marker>,
}

impl SweepTable {
    pub fn series(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.series.as_str()) {
                out.push(&r.series);
            }
        }
        out
    }

    pub fn rows_of<'a>(&'a self, series: &'a str) -> impl Iterator<Item = &'a SweepRow> + 'a {
        self.rows.iter().filter(move |r| r.series == series)
    }
}

/// Run-time knobs that do not belong to the scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub trials: u64,
    pub seed: u64,
    pub radius: Option<f64>,
}

impl RunOptions {
    pub fn from_scenario(s: &Scenario) -> Self {
        Self {
            trials: s.sim.trials,
            seed: s.sim.seed,
            radius: s.sim.radius,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the simulation at (`series`, `point`).
pub fn derived_seed(seed: u64, series: usize, point: usize) -> u64 {
    splitmix64(seed ^ splitmix64(((series as u64) << 32) | point as u64))
}

fn compute_row(spec: &SweepSpec, s: &Scenario, label: &str, x: f64, opts: RunOptions, seed: u64) -> SweepRow {
    let mut row = SweepRow {
        series: label.to_string(),
        x,
        analysis: None,
        method: None,
        lower: None,
        upper: None,
        mc: None,
        note: String::new(),
    };
    let mut notes: Vec<String> = Vec::new();
    if spec.wants(Output::Analysis) {
        match best_analysis(s) {
            Ok((v, m)) => {
                row.analysis = Some(v);
                row.method = Some(m);
            }
            Err(e) => notes.push(format!("analysis: {e}")),
        }
    }
    if spec.wants(Output::Bounds) {
        if let Some((lo, hi)) = bounds(s) {
            row.lower = Some(lo);
            row.upper = Some(hi);
        }
    }
    if spec.wants(Output::Simulation) {
        match sim_config(s, opts.trials, seed, opts.radius).and_then(|c| estimate_es(&c)) {
            Ok(est) => {
                if est.truncation_flag {
                    notes.push("simulation: window truncation flagged".into());
                }
                row.mc = Some(est);
            }
            Err(e) => notes.push(format!("simulation: {e}")),
        }
    }
    row.note = notes.join("; ");
    row
}

fn analysis_at(spec: &SweepSpec, s: &Scenario, x: f64) -> Option<f64> {
    spec.apply(s, x)
        .ok()
        .and_then(|p| best_analysis(&p).ok())
        .map(|(v, _)| v)
}

/// Design points for one series.
pub fn markers_for(spec: &SweepSpec, s: &Scenario, label: &str) -> Vec<Marker> {
    let mut out = Vec::new();
    let mut push = |name: &'static str, x: f64| {
        out.push(Marker {
            series: label.to_string(),
            name,
            x,
            es: analysis_at(spec, s, x),
        });
    };
    match spec.variable {
        Variable::XiDb => {
            let delta = s.rate.map(|r| r.delta).unwrap_or(1.0);
            if let Ok(root) = optimal_xi(s.ch.alpha, delta) {
                push("xi_star", linear_to_db(root.x));
            }
            if s.ch.sigma2 > 0.0 {
                let (lo, hi) = (spec.grid[0], spec.grid[spec.grid.len() - 1]);
                let n = 400;
                let best = (0..n)
                    .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                    .filter_map(|x| analysis_at(spec, s, x).map(|v| (x, v)))
                    .fold(None, |acc: Option<(f64, f64)>, (x, v)| match acc {
                        Some((_, bv)) if bv >= v => acc,
                        _ => Some((x, v)),
                    });
                if let Some((x, _)) = best {
                    push("xi_grid_best", x);
                }
            }
        }
        Variable::Rho if s.ch.sigma2 > 0.0 => {
            let rho_hat = shadowed_network(&s.net, &s.ch)
                .and_then(|net| kappa(&net, s.dp.resource_blocks, s.ch.sigma2))
                .and_then(suboptimal_rho);
            if let Ok(r) = rho_hat {
                push("rho_hat", r.x);
            }
        }
        Variable::SnrDb => {
            let design = shadowed_network(&s.net, &s.ch)
                .and_then(|net| design_power(s.design.c, &net, s.dp.rho, s.dp.resource_blocks, s.design.noise_power));
            if let Ok(p) = design {
                push("snr_design", linear_to_db(p.p_hat / s.design.noise_power));
            }
        }
        _ => {}
    }
    out
}

/// Runs every series over the grid. Points run concurrently; rows come
/// back in (series, grid) order.
pub fn run_sweep(base: &Scenario, spec: &SweepSpec, series: &[Series], opts: RunOptions) -> Result<SweepTable> {
    let scenarios: Vec<Scenario> = series.iter().map(|se| se.scenario(base)).collect();
    let mut jobs = Vec::new();
    for (si, s) in scenarios.iter().enumerate() {
        for (pi, &x) in spec.grid.iter().enumerate() {
            let point = spec.apply(s, x).map_err(|e| match e {
                CliError::Config { field, message } => {
                    CliError::config(field, format!("series `{}`: {message}", series[si].label))
                }
                other => other,
            })?;
            jobs.push((si, pi, x, point));
        }
    }
    let rows: Vec<SweepRow> = jobs
        .par_iter()
        .map(|(si, pi, x, point)| {
            compute_row(
                spec,
                point,
                &series[*si].label,
                *x,
                opts,
                derived_seed(opts.seed, *si, *pi),
            )
        })
        .collect();
    let markers = if spec.wants(Output::DesignMarkers) {
        series
            .iter()
            .zip(&scenarios)
            .flat_map(|(se, s)| markers_for(spec, s, &se.label))
            .collect()
    } else {
        Vec::new()
    };
    Ok(SweepTable {
        variable: spec.variable,
        rows,
        markers,
    })
}

pub const CSV_COLUMNS_AFTER_VARIABLE: [&str; 11] = [
    "es_analysis",
    "analysis_method",
    "bound_lower",
    "bound_upper",
    "mc_mean",
    "mc_stderr",
    "mc_trials",
    "mc_radius",
    "mc_truncation_flag",
    "mc_truncation_shift",
    "note",
];

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_error(e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io("<csv>", io),
        other => CliError::Usage(format!("CSV encoding failed: {other:?}")),
    }
}

/// Writes the main table. Column order is fixed: `series`, the swept
/// variable, then [`CSV_COLUMNS_AFTER_VARIABLE`].
pub fn write_csv<W: Write>(table: &SweepTable, mut w: W) -> Result<()> {
    let var = table.variable;
    let head = format!(
        "# sweep over {name} ({unit})\n\
         # es_analysis, bound_*, mc_mean, mc_stderr: mean number of discovered peers per slot\n\
         # analysis_method: zero_noise | rayleigh_noise | general\n\
         # mc_radius: simulation window radius, same length unit as lambda^(-1/2)\n",
        name = var.name(),
        unit = var.unit()
    );
    w.write_all(head.as_bytes()).map_err(|e| CliError::io("<csv>", e))?;
    let mut cw = csv::Writer::from_writer(w);
    let mut header = vec!["series", var.name()];
    header.extend(CSV_COLUMNS_AFTER_VARIABLE);
    cw.write_record(&header).map_err(csv_error)?;
    for r in &table.rows {
        let mc = r.mc.as_ref();
        cw.write_record([
            r.series.clone(),
            r.x.to_string(),
            opt(r.analysis),
            r.method.map(|m| m.name().to_string()).unwrap_or_default(),
            opt(r.lower),
            opt(r.upper),
            opt(mc.map(|e| e.mean)),
            opt(mc.map(|e| e.stderr)),
            mc.map(|e| e.trials.to_string()).unwrap_or_default(),
            opt(mc.map(|e| e.window_radius)),
            mc.map(|e| e.truncation_flag.to_string()).unwrap_or_default(),
            opt(mc.map(|e| e.truncation_shift)),
            r.note.clone(),
        ])
        .map_err(csv_error)?;
    }
    cw.flush().map_err(|e| CliError::io("<csv>", e))
}

pub fn write_markers_csv<W: Write>(table: &SweepTable, mut w: W) -> Result<()> {
    let var = table.variable;
    let head = format!(
        "# design markers; {name} in {unit}; es_analysis in mean discovered peers per slot\n",
        name = var.name(),
        unit = var.unit()
    );
    w.write_all(head.as_bytes()).map_err(|e| CliError::io("<csv>", e))?;
    let mut cw = csv::Writer::from_writer(w);
    cw.write_record(["series", "marker", var.name(), "es_analysis"])
        .map_err(csv_error)?;
    for m in &table.markers {
        cw.write_record([m.series.clone(), m.name.to_string(), m.x.to_string(), opt(m.es)])
            .map_err(csv_error)?;
    }
    cw.flush().map_err(|e| CliError::io("<csv>", e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn noisy() -> Scenario {
        let mut s = Scenario::default();
        s.ch.sigma2 = 0.1;
        s
    }

    #[test]
    fn grid_must_increase() {
        assert!(SweepSpec::new(Variable::Rho, vec![0.2], vec![]).is_err());
        assert!(SweepSpec::new(Variable::Rho, vec![0.2, 0.2], vec![]).is_err());
        assert!(SweepSpec::new(Variable::Rho, vec![0.1, f64::NAN], vec![]).is_err());
        let spec = SweepSpec::new(Variable::Rho, vec![0.1, 1.0], vec![]).unwrap();
        assert!(spec.validate_against(&Scenario::default()).is_err());
    }

    #[test]
    fn ranges() {
        let lin = RangeScale::Linear.points(0.0, 1.0, 5).unwrap();
        assert_eq!(lin, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let log = RangeScale::Log.points(1.0, 100.0, 3).unwrap();
        assert!((log[1] - 10.0).abs() < 1e-12);
        assert!(RangeScale::Log.points(0.0, 1.0, 3).is_err());
    }

    #[test]
    fn variables_round_trip() {
        let s = noisy();
        for v in [
            Variable::M,
            Variable::XiDb,
            Variable::Rho,
            Variable::SnrDb,
            Variable::ChiDb,
            Variable::Alpha,
            Variable::Fading,
            Variable::Lambda,
        ] {
            let x = v.read(&s).unwrap() + 0.5;
            let back = v.read(&v.set(&s, x)).unwrap();
            assert!((back - x).abs() < 1e-12, "{}", v.name());
        }
    }

    #[test]
    fn analysis_routing() {
        let (_, m) = best_analysis(&Scenario::default()).unwrap();
        assert_eq!(m, Method::ZeroNoise);
        let (_, m) = best_analysis(&noisy()).unwrap();
        assert_eq!(m, Method::RayleighNoise);
        let mut s = noisy();
        s.ch.alpha = 3.0;
        let (_, m) = best_analysis(&s).unwrap();
        assert_eq!(m, Method::General);
        assert!(bounds(&s).is_none());
        s.ch.m_s = 2.5;
        s.ch.m_i = 2.5;
        assert!(best_analysis(&s).is_err());
    }

    #[test]
    fn rho_sweep_rows_in_order_with_marker() {
        let spec = SweepSpec::new(
            Variable::Rho,
            vec![0.1, 0.2, 0.3, 0.4],
            vec![Output::Analysis, Output::Bounds, Output::DesignMarkers],
        )
        .unwrap();
        let series = vec![
            Series::new("snr 10", vec![(Variable::SnrDb, 10.0)]),
            Series::new("snr 20", vec![(Variable::SnrDb, 20.0)]),
        ];
        let opts = RunOptions {
            trials: 10,
            seed: 1,
            radius: None,
        };
        let t = run_sweep(&noisy(), &spec, &series, opts).unwrap();
        assert_eq!(t.rows.len(), 8);
        assert_eq!(t.rows[0].series, "snr 10");
        assert_eq!(t.rows[4].series, "snr 20");
        assert!(t.rows.iter().all(|r| r.lower.unwrap() < r.analysis.unwrap()));
        assert_eq!(t.markers.len(), 2);
        assert!((t.markers[0].x - 0.22208582135544).abs() < 1e-9);
        let mut buf = Vec::new();
        write_csv(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
        assert_eq!(
            header,
            "series,rho,es_analysis,analysis_method,bound_lower,bound_upper,mc_mean,mc_stderr,mc_trials,\
             mc_radius,mc_truncation_flag,mc_truncation_shift,note"
        );
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 9);
    }

    #[test]
    fn simulation_errors_stay_in_the_row() {
        let spec = SweepSpec::new(Variable::M, vec![2.0, 2.5], vec![Output::Simulation]).unwrap();
        let opts = RunOptions {
            trials: 50,
            seed: 1,
            radius: None,
        };
        let t = run_sweep(&Scenario::default(), &spec, &[Series::base()], opts).unwrap();
        assert!(t.rows[0].mc.is_some());
        assert!(t.rows[1].mc.is_none());
        assert!(t.rows[1].note.contains("integer"), "{}", t.rows[1].note);
    }

    #[test]
    fn seeds_differ_per_point() {
        assert_ne!(derived_seed(1, 0, 0), derived_seed(1, 0, 1));
        assert_ne!(derived_seed(1, 0, 1), derived_seed(1, 1, 0));
    }
}
