//! Presets that regenerate the standard result figures at desk scale.

use peerdisc::db_to_linear;
use peerdisc::design::RateModel;

use crate::config::Scenario;
use crate::error::Result;
use crate::sweep::{Output, RangeScale, Series, SweepSpec, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum FigureId {
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9a,
    Fig9b,
}

impl FigureId {
    pub const ALL: [FigureId; 8] = [
        Self::Fig3,
        Self::Fig4,
        Self::Fig5,
        Self::Fig6,
        Self::Fig7,
        Self::Fig8,
        Self::Fig9a,
        Self::Fig9b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Fig3 => "fig3",
            Self::Fig4 => "fig4",
            Self::Fig5 => "fig5",
            Self::Fig6 => "fig6",
            Self::Fig7 => "fig7",
            Self::Fig8 => "fig8",
            Self::Fig9a => "fig9a",
            Self::Fig9b => "fig9b",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub id: FigureId,
    pub title: &'static str,
    pub base: Scenario,
    pub sweep: SweepSpec,
    pub series: Vec<Series>,
}

fn base(lambda: f64, alpha: f64, xi_db: f64, rho: f64, blocks: f64) -> Scenario {
    let mut s = Scenario::default();
    s.net.lambda = lambda;
    s.ch.alpha = alpha;
    s.dp.xi = db_to_linear(xi_db);
    s.dp.rho = rho;
    s.dp.resource_blocks = blocks;
    s
}

fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    RangeScale::Linear.points(start, stop, n).expect("valid preset range")
}

fn channel(alpha: f64, m: f64) -> Vec<(Variable, f64)> {
    vec![(Variable::Alpha, alpha), (Variable::Fading, m)]
}

const M_GRID: [f64; 6] = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0];

pub fn preset(id: FigureId) -> Result<FigurePreset> {
    use Output::*;
    let p = match id {
        FigureId::Fig3 => FigurePreset {
            id,
            title: "E{S} vs M, no noise (xi = 0 dB, rho = 0.5)",
            base: base(4.0, 4.0, 0.0, 0.5, 4.0),
            sweep: SweepSpec::new(Variable::M, M_GRID.to_vec(), vec![Analysis, Simulation])?,
            series: vec![
                Series::new("alpha=4 m=1", channel(4.0, 1.0)),
                Series::new("alpha=4 m=2.7", channel(4.0, 2.7)),
                Series::new("alpha=4 m=4", channel(4.0, 4.0)),
                Series::new("alpha=3 m=1", channel(3.0, 1.0)),
                Series::new("alpha=3 m=2.7", channel(3.0, 2.7)),
            ],
        },
        FigureId::Fig4 => {
            let mut b = base(4.0, 4.0, 0.0, 0.5, 4.0);
            b.ch.sigma2 = db_to_linear(-5.0);
            FigurePreset {
                id,
                title: "E{S} vs M, snr = 5 dB (xi = 0 dB, rho = 0.5)",
                base: b,
                sweep: SweepSpec::new(Variable::M, M_GRID.to_vec(), vec![Analysis, Simulation])?,
                series: vec![
                    Series::new("alpha=4 m=1", channel(4.0, 1.0)),
                    Series::new("alpha=4 m=2", channel(4.0, 2.0)),
                    Series::new("alpha=4 m=2.7", channel(4.0, 2.7)),
                    Series::new("alpha=3 m=1", channel(3.0, 1.0)),
                ],
            }
        }
        FigureId::Fig5 => {
            let mut series = Vec::new();
            for delta_db in [3.0, 6.0] {
                let rate = RateModel {
                    beta: 10.0,
                    delta: db_to_linear(delta_db),
                };
                series.push(Series::new(format!("delta={delta_db}dB no noise"), vec![]).with_rate(rate));
                series.push(
                    Series::new(format!("delta={delta_db}dB snr=10dB"), vec![(Variable::SnrDb, 10.0)]).with_rate(rate),
                );
            }
            let mut b = base(4.0, 4.0, 0.0, 0.5, 4.0);
            b.rate = Some(RateModel { beta: 10.0, delta: 1.0 });
            FigurePreset {
                id,
                title: "E{S} vs xi, Rayleigh fading (rho = 0.5, beta = 10)",
                base: b,
                sweep: SweepSpec::new(Variable::XiDb, linspace(-10.0, 20.0, 31), vec![Analysis, DesignMarkers])?
                    .rate_coupled(true),
                series,
            }
        }
        FigureId::Fig6 => FigurePreset {
            id,
            title: "E{S} vs rho, Rayleigh fading (alpha = 4, xi = 0 dB)",
            base: base(4.0, 4.0, 0.0, 0.5, 4.0),
            sweep: SweepSpec::new(
                Variable::Rho,
                linspace(0.05, 0.95, 19),
                vec![Analysis, Bounds, Simulation, DesignMarkers],
            )?,
            series: vec![
                Series::new("M=4 snr=10dB", vec![(Variable::M, 4.0), (Variable::SnrDb, 10.0)]),
                Series::new("M=4 snr=20dB", vec![(Variable::M, 4.0), (Variable::SnrDb, 20.0)]),
                Series::new("M=16 snr=10dB", vec![(Variable::M, 16.0), (Variable::SnrDb, 10.0)]),
                Series::new("M=16 snr=20dB", vec![(Variable::M, 16.0), (Variable::SnrDb, 20.0)]),
            ],
        },
        FigureId::Fig7 => FigurePreset {
            id,
            title: "E{S} vs snr, Rayleigh fading (alpha = 4, xi = 0 dB, rho = 0.2)",
            base: base(4.0, 4.0, 0.0, 0.2, 4.0),
            sweep: SweepSpec::new(
                Variable::SnrDb,
                linspace(-10.0, 40.0, 21),
                vec![Analysis, Bounds, Simulation, DesignMarkers],
            )?,
            series: vec![
                Series::new("M=4", vec![(Variable::M, 4.0)]),
                Series::new("M=16", vec![(Variable::M, 16.0)]),
                Series::new("M=64", vec![(Variable::M, 64.0)]),
            ],
        },
        FigureId::Fig8 => FigurePreset {
            id,
            title: "E{S} vs shadowing spread (M = 4, xi = 0 dB, rho = 0.2)",
            base: base(4.0, 4.0, 0.0, 0.2, 4.0),
            sweep: SweepSpec::new(Variable::ChiDb, linspace(0.0, 12.0, 7), vec![Analysis, Simulation])?,
            series: vec![
                Series::new("no noise alpha=4", channel(4.0, 1.0)),
                Series::new("no noise alpha=3", channel(3.0, 1.0)),
                Series::new(
                    "alpha=4 snr=5dB m=1",
                    [channel(4.0, 1.0), vec![(Variable::SnrDb, 5.0)]].concat(),
                ),
                Series::new(
                    "alpha=3 snr=5dB m=1",
                    [channel(3.0, 1.0), vec![(Variable::SnrDb, 5.0)]].concat(),
                ),
                Series::new(
                    "alpha=4 snr=5dB m=2",
                    [channel(4.0, 2.0), vec![(Variable::SnrDb, 5.0)]].concat(),
                ),
            ],
        },
        FigureId::Fig9a => {
            let mut b = base(4.0, 4.0, 0.0, 0.5, 4.0);
            b.rate = Some(RateModel { beta: 10.0, delta: 1.0 });
            let mut series = Vec::new();
            for chi in [0.0, 6.0, 12.0] {
                series.push(Series::new(
                    format!("chi={chi}dB no noise"),
                    vec![(Variable::ChiDb, chi)],
                ));
                series.push(Series::new(
                    format!("chi={chi}dB snr=10dB"),
                    vec![(Variable::ChiDb, chi), (Variable::SnrDb, 10.0)],
                ));
            }
            FigurePreset {
                id,
                title: "Shadowing and the design of xi (M from rate model, m = 1, rho = 0.5)",
                base: b,
                sweep: SweepSpec::new(Variable::XiDb, linspace(-10.0, 20.0, 31), vec![Analysis, DesignMarkers])?
                    .rate_coupled(true),
                series,
            }
        }
        FigureId::Fig9b => {
            let mut series = Vec::new();
            for chi in [0.0, 12.0] {
                for snr in [10.0, 20.0] {
                    series.push(Series::new(
                        format!("chi={chi}dB snr={snr}dB"),
                        vec![(Variable::ChiDb, chi), (Variable::SnrDb, snr)],
                    ));
                }
            }
            FigurePreset {
                id,
                title: "Shadowing and the design of rho (M = 4, m = 1, xi = 0 dB)",
                base: base(4.0, 4.0, 0.0, 0.5, 4.0),
                // Coarser than fig6: the 12 dB series need the widest window.
                sweep: SweepSpec::new(
                    Variable::Rho,
                    linspace(0.05, 0.95, 10),
                    vec![Analysis, Bounds, Simulation, DesignMarkers],
                )?,
                series,
            }
        }
    };
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_valid() {
        for id in FigureId::ALL {
            let p = preset(id).unwrap();
            assert_eq!(p.id, id);
            assert!(!p.series.is_empty());
            for s in &p.series {
                p.sweep.validate_against(&s.scenario(&p.base)).unwrap();
            }
        }
    }

    #[test]
    fn markers_where_expected() {
        for id in [FigureId::Fig5, FigureId::Fig6, FigureId::Fig9a, FigureId::Fig9b] {
            assert!(preset(id).unwrap().sweep.wants(Output::DesignMarkers), "{}", id.name());
        }
    }
}
