//! Scenario files.
//!
//! A scenario is a TOML document with the sections `network`, `channel`,
//! `discovery`, `rate`, `design`, `simulation` and `sweep`. Every key is
//! optional; missing values fall back to the defaults listed on
//! [`Scenario::default`]. Thresholds, SNR, shadowing spread and SNR gap may
//! be given in dB (`xi_db`, `snr_db`, `chi_db`, `delta_db`) or, except for
//! shadowing, linearly (`xi`, `sigma2`, `delta`). Omitting both `snr_db` and
//! `sigma2` means no noise.

use std::path::Path;

use peerdisc::analysis::{ChannelModel, DiscoveryParams, NetworkModel};
use peerdisc::design::RateModel;
use peerdisc::{db_to_linear, linear_to_db};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::sweep::{Output, RangeScale, SweepSpec, Variable};

/// Seed used when neither the file nor the command line sets one.
pub const DEFAULT_SEED: u64 = 0x5EED_2016;
/// Trials per simulated point unless overridden.
pub const DEFAULT_TRIALS: u64 = 20_000;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub network: Option<NetworkSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub channel: Option<ChannelSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discovery: Option<DiscoverySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate: Option<RateSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub design: Option<DesignSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimulationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Sets both `m_s` and `m_i`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_i: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snr_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_db: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscoverySection {
    #[serde(
        rename = "M",
        alias = "resource_blocks",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub resource_blocks: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RateSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignSection {
    /// Dominance factor of interference over noise for the power rule.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    /// Receiver noise power, in the unit of the designed transmit power.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise_power: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_correction: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variable: Option<Variable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<RangeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<Output>>,
    /// When sweeping `xi_db`, derive `M` from the rate model at every point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate_coupled: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeSection {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub scale: RangeScale,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let de = toml::Deserializer::parse(text).map_err(|e| CliError::config("<document>", e.to_string()))?;
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let field = if path.is_empty() || path == "." {
                "<document>".to_string()
            } else {
                path
            };
            CliError::config(field, e.into_inner().to_string())
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario sections serialize to TOML")
    }

    /// Validates the file and fills in defaults.
    pub fn resolve(&self) -> Result<Scenario> {
        let d = Scenario::default();
        let net_s = self.network.clone().unwrap_or_default();
        let ch_s = self.channel.clone().unwrap_or_default();
        let dp_s = self.discovery.clone().unwrap_or_default();

        let lambda = net_s.lambda.unwrap_or(d.net.lambda);
        let net = NetworkModel::new(lambda).map_err(|e| field_error("network", e))?;

        let alpha = ch_s.alpha.unwrap_or(d.ch.alpha);
        let m_s = ch_s.m_s.or(ch_s.m).unwrap_or(d.ch.m_s);
        let m_i = ch_s.m_i.or(ch_s.m).unwrap_or(d.ch.m_i);
        if ch_s.m.is_some() && (ch_s.m_s.is_some() || ch_s.m_i.is_some()) {
            return Err(CliError::config(
                "channel.m",
                "give either `m` or `m_s`/`m_i`, not both",
            ));
        }
        let sigma2 = match (ch_s.snr_db, ch_s.sigma2) {
            (Some(_), Some(_)) => {
                return Err(CliError::config(
                    "channel.snr_db",
                    "give either `snr_db` or `sigma2`, not both",
                ))
            }
            (Some(snr), None) => {
                snr_to_sigma2(snr).ok_or_else(|| CliError::config("channel.snr_db", "must be finite"))?
            }
            (None, Some(s)) => s,
            (None, None) => 0.0,
        };
        let chi = ch_s.chi_db.unwrap_or(0.0);
        let ch = ChannelModel::new(alpha, m_s, m_i, sigma2, chi).map_err(|e| field_error("channel", e))?;

        let xi = match (dp_s.xi_db, dp_s.xi) {
            (Some(_), Some(_)) => {
                return Err(CliError::config(
                    "discovery.xi_db",
                    "give either `xi_db` or `xi`, not both",
                ))
            }
            (Some(db), None) => db_to_linear(db),
            (None, Some(x)) => x,
            (None, None) => d.dp.xi,
        };
        let blocks = dp_s.resource_blocks.unwrap_or(d.dp.resource_blocks);
        let rho = dp_s.rho.unwrap_or(d.dp.rho);
        let dp = DiscoveryParams::new(blocks, xi, rho).map_err(|e| field_error("discovery", e))?;

        let rate = match &self.rate {
            None => None,
            Some(r) => {
                let delta = match (r.delta_db, r.delta) {
                    (Some(_), Some(_)) => {
                        return Err(CliError::config(
                            "rate.delta_db",
                            "give either `delta_db` or `delta`, not both",
                        ))
                    }
                    (Some(db), None) => db_to_linear(db),
                    (None, Some(x)) => x,
                    (None, None) => 1.0,
                };
                let beta = r.beta.unwrap_or(DEFAULT_BETA);
                Some(RateModel::new(beta, delta).map_err(|e| field_error("rate", e))?)
            }
        };

        let design_s = self.design.clone().unwrap_or_default();
        let c = design_s.c.unwrap_or(d.design.c);
        if !(c > 1.0) || !c.is_finite() {
            return Err(CliError::config(
                "design.c",
                format!("dominance factor must be finite and > 1, got {c}"),
            ));
        }
        let noise_power = design_s.noise_power.unwrap_or(d.design.noise_power);
        if !(noise_power > 0.0) || !noise_power.is_finite() {
            return Err(CliError::config(
                "design.noise_power",
                format!("must be finite and > 0, got {noise_power}"),
            ));
        }

        let sim_s = self.simulation.clone().unwrap_or_default();
        let trials = sim_s.trials.unwrap_or(DEFAULT_TRIALS);
        if trials == 0 {
            return Err(CliError::config("simulation.trials", "must be at least 1"));
        }
        if let Some(r) = sim_s.radius {
            if !(r > 0.0) || !r.is_finite() {
                return Err(CliError::config(
                    "simulation.radius",
                    format!("must be finite and > 0, got {r}"),
                ));
            }
        }
        let sim = SimSettings {
            trials,
            seed: sim_s.seed.unwrap_or(DEFAULT_SEED),
            radius: sim_s.radius,
            tail_correction: sim_s.tail_correction.unwrap_or(true),
        };

        let scenario = Scenario {
            net,
            ch,
            dp,
            rate,
            design: DesignSettings { c, noise_power },
            sim,
            sweep: None,
        };
        let sweep = match &self.sweep {
            None => None,
            Some(s) => Some(resolve_sweep(s, &scenario)?),
        };
        Ok(scenario.with_sweep(sweep))
    }
}

/// `beta` used when a `[rate]` section omits it.
pub const DEFAULT_BETA: f64 = 10.0;

fn resolve_sweep(s: &SweepSection, scenario: &Scenario) -> Result<SweepSpec> {
    let variable = s
        .variable
        .ok_or_else(|| CliError::config("sweep.variable", "missing"))?;
    let grid = match (&s.grid, &s.range) {
        (Some(_), Some(_)) => {
            return Err(CliError::config(
                "sweep.grid",
                "give either `grid` or `range`, not both",
            ))
        }
        (Some(g), None) => g.clone(),
        (None, Some(r)) => r
            .scale
            .points(r.start, r.stop, r.points)
            .map_err(|m| CliError::config("sweep.range", m))?,
        (None, None) => return Err(CliError::config("sweep.grid", "missing (or give `range`)")),
    };
    let outputs = s
        .outputs
        .clone()
        .unwrap_or_else(|| vec![Output::Analysis, Output::Simulation]);
    let spec = SweepSpec::new(variable, grid, outputs)?.rate_coupled(s.rate_coupled.unwrap_or(false));
    spec.validate_against(scenario)?;
    Ok(spec)
}

/// Linear noise power for a unit-distance SNR in dB.
pub fn snr_to_sigma2(snr_db: f64) -> Option<f64> {
    snr_db.is_finite().then(|| db_to_linear(-snr_db))
}

/// Unit-distance SNR in dB for a linear noise power; `None` without noise.
pub fn sigma2_to_snr(sigma2: f64) -> Option<f64> {
    (sigma2 > 0.0).then(|| -linear_to_db(sigma2))
}

fn field_error(section: &str, e: peerdisc::Error) -> CliError {
    match e {
        peerdisc::Error::Domain { name, value, reason } => {
            let key = match name {
                "M" => "M",
                "shadow_chi_db" => "chi_db",
                "delta" => "delta",
                other => other,
            };
            CliError::config(format!("{section}.{key}"), format!("{reason} (got {value})"))
        }
        other => CliError::core(section.to_string(), other),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignSettings {
    pub c: f64,
    pub noise_power: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimSettings {
    pub trials: u64,
    pub seed: u64,
    pub radius: Option<f64>,
    pub tail_correction: bool,
}

/// A fully resolved scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub net: NetworkModel<f64>,
    pub ch: ChannelModel<f64>,
    pub dp: DiscoveryParams<f64>,
    pub rate: Option<RateModel<f64>>,
    pub design: DesignSettings,
    pub sim: SimSettings,
    pub sweep: Option<SweepSpec>,
}

impl Default for Scenario {
    /// `lambda = 4`, `alpha = 4`, Rayleigh fading, no noise, no shadowing,
    /// `M = 4`, `xi = 0 dB`, `rho = 0.2`, no rate model, `c = 100`, unit
    /// noise power, 20000 trials.
    fn default() -> Self {
        Self {
            net: NetworkModel { lambda: 4.0 },
            ch: ChannelModel {
                alpha: 4.0,
                m_s: 1.0,
                m_i: 1.0,
                sigma2: 0.0,
                shadow_chi_db: 0.0,
            },
            dp: DiscoveryParams {
                resource_blocks: 4.0,
                xi: 1.0,
                rho: 0.2,
            },
            rate: None,
            design: DesignSettings {
                c: 100.0,
                noise_power: 1.0,
            },
            sim: SimSettings {
                trials: DEFAULT_TRIALS,
                seed: DEFAULT_SEED,
                radius: None,
                tail_correction: true,
            },
            sweep: None,
        }
    }
}

impl Scenario {
    pub fn with_sweep(self, sweep: Option<SweepSpec>) -> Self {
        Self { sweep, ..self }
    }

    /// Writes the scenario back as a config file (dB where the file format uses dB).
    pub fn to_config(&self) -> ConfigFile {
        let ch = &self.ch;
        let (m, m_s, m_i) = if ch.m_s == ch.m_i {
            (Some(ch.m_s), None, None)
        } else {
            (None, Some(ch.m_s), Some(ch.m_i))
        };
        ConfigFile {
            network: Some(NetworkSection {
                lambda: Some(self.net.lambda),
            }),
            channel: Some(ChannelSection {
                alpha: Some(ch.alpha),
                m,
                m_s,
                m_i,
                snr_db: None,
                sigma2: Some(ch.sigma2),
                chi_db: Some(ch.shadow_chi_db),
            }),
            discovery: Some(DiscoverySection {
                resource_blocks: Some(self.dp.resource_blocks),
                xi_db: None,
                xi: Some(self.dp.xi),
                rho: Some(self.dp.rho),
            }),
            rate: self.rate.map(|r| RateSection {
                beta: Some(r.beta),
                delta_db: None,
                delta: Some(r.delta),
            }),
            design: Some(DesignSection {
                c: Some(self.design.c),
                noise_power: Some(self.design.noise_power),
            }),
            simulation: Some(SimulationSection {
                trials: Some(self.sim.trials),
                seed: Some(self.sim.seed),
                radius: self.sim.radius,
                tail_correction: Some(self.sim.tail_correction),
            }),
            sweep: self.sweep.as_ref().map(|s| SweepSection {
                variable: Some(s.variable),
                grid: Some(s.grid.clone()),
                range: None,
                outputs: Some(s.outputs.clone()),
                rate_coupled: Some(s.rate_coupled),
            }),
        }
    }
}
