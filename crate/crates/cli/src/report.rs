//! Text reports for `analyze`, `design` and `simulate`.

use std::fmt;

use peerdisc::analysis::{
    es_bounds, es_general, es_rayleigh_noise, es_rayleigh_noise_limit, es_zero_noise, lognormal_moment,
    shadowed_network, ES_GENERAL_MAX_M,
};
use peerdisc::design::{design_power, es_vs_xi, kappa, m_from_xi, optimal_xi, rho_policy, suboptimal_rho, u_xi};
use peerdisc::linear_to_db;
use peerdisc::simulator::estimate_es;

use crate::config::Scenario;
use crate::error::{CliError, Result};
use crate::sweep::{best_analysis, sim_config, RunOptions};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u64),
    Flag(bool),
    Text(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Num(v) if *v != 0.0 && v.abs() < 1e-4 => write!(f, "{v:e}"),
            Self::Num(v) => write!(f, "{v}"),
            Self::Int(v) => write!(f, "{v}"),
            Self::Flag(v) => write!(f, "{v}"),
            Self::Text(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: Value,
    /// Validity regime or provenance of the value.
    pub note: String,
}

/// Ordered `key = value` lines.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub entries: Vec<Entry>,
}

impl Report {
    fn push(&mut self, key: &str, value: Value, note: &str) {
        self.entries.push(Entry {
            key: key.to_string(),
            value,
            note: note.to_string(),
        });
    }

    fn num(&mut self, key: &str, v: f64, note: &str) {
        self.push(key, Value::Num(v), note);
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|e| e.key == key).map(|e| &e.value)
    }

    pub fn number(&self, key: &str) -> Option<f64> {
        match self.get(key)? {
            Value::Num(v) => Some(*v),
            Value::Int(v) => Some(*v as f64),
            _ => None,
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.iter().map(|e| e.key.len()).max().unwrap_or(0);
        for e in &self.entries {
            let line = format!("{:width$} = {}", e.key, e.value);
            if e.note.is_empty() {
                writeln!(f, "{line}")?;
            } else {
                writeln!(f, "{line:<40}  # {}", e.note)?;
            }
        }
        Ok(())
    }
}

/// Which analytical expression `analyze` should evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum AnalyzeMethod {
    /// Every expression whose regime matches the scenario.
    #[default]
    Auto,
    ZeroNoise,
    Rayleigh,
    General,
    Bounds,
}

fn integer_m(s: &Scenario) -> Option<u32> {
    let (a, b) = (s.ch.m_s, s.ch.m_i);
    (a.fract() == 0.0 && b.fract() == 0.0).then(|| a.max(b) as u32)
}

fn is_rayleigh_alpha4(s: &Scenario) -> bool {
    s.ch.alpha == 4.0 && s.ch.m_s == 1.0 && s.ch.m_i == 1.0
}

fn core(ctx: &str) -> impl Fn(peerdisc::Error) -> CliError + '_ {
    move |e| CliError::core(ctx, e)
}

pub fn analyze(s: &Scenario, method: AnalyzeMethod) -> Result<Report> {
    let mut r = Report::default();
    let noisy = s.ch.sigma2 > 0.0;
    let regime = match (noisy, is_rayleigh_alpha4(s)) {
        (false, _) => "interference_limited",
        (true, true) => "noisy_rayleigh_alpha4",
        (true, false) => "noisy_general",
    };
    r.push("regime", Value::Text(regime.into()), "");
    if s.ch.shadow_chi_db > 0.0 {
        let moment = lognormal_moment(s.ch.shadow_chi_db, s.ch.alpha).map_err(core("shadowing"))?;
        r.num("shadow_moment", moment, "E{theta^(2/alpha)}, lognormal");
        r.num(
            "lambda_effective",
            s.net.lambda * moment,
            "density seen through shadowing",
        );
    }
    match method {
        AnalyzeMethod::Auto => {
            if !noisy && (s.ch.m_s == s.ch.m_i || integer_m(s).is_some()) {
                let v = es_zero_noise(&s.ch, &s.dp).map_err(core("es_zero_noise"))?;
                r.num("es_zero_noise", v, "closed form, sigma2 = 0");
            }
            if noisy && is_rayleigh_alpha4(s) {
                let v = es_rayleigh_noise(&s.net, &s.ch, &s.dp).map_err(core("es_rayleigh_noise"))?;
                r.num("es_rayleigh_noise", v, "closed form, Rayleigh, alpha = 4");
                let lim = es_rayleigh_noise_limit(&s.net, &s.ch, &s.dp).map_err(core("es_rayleigh_noise_limit"))?;
                r.num("es_limit_large_M", lim, "M -> infinity");
                push_bounds(&mut r, s)?;
            }
            match integer_m(s) {
                Some(m) if m <= ES_GENERAL_MAX_M => {
                    let v = es_general(&s.net, &s.ch, &s.dp).map_err(core("es_general"))?;
                    r.num("es_general", v, "numerical integral, integer m");
                }
                Some(_) => r.push("es_general", Value::Text("n/a".into()), "m above the supported maximum"),
                None => r.push(
                    "es_general",
                    Value::Text("n/a".into()),
                    "non-integer m has no analytical expression; use simulate",
                ),
            }
        }
        AnalyzeMethod::ZeroNoise => {
            let v = es_zero_noise(&s.ch, &s.dp).map_err(core("es_zero_noise"))?;
            r.num("es_zero_noise", v, "closed form, sigma2 = 0");
        }
        AnalyzeMethod::Rayleigh => {
            let v = es_rayleigh_noise(&s.net, &s.ch, &s.dp).map_err(core("es_rayleigh_noise"))?;
            r.num("es_rayleigh_noise", v, "closed form, Rayleigh, alpha = 4");
        }
        AnalyzeMethod::General => {
            let v = es_general(&s.net, &s.ch, &s.dp).map_err(core("es_general"))?;
            r.num("es_general", v, "numerical integral, integer m");
        }
        AnalyzeMethod::Bounds => push_bounds(&mut r, s)?,
    }
    Ok(r)
}

fn push_bounds(r: &mut Report, s: &Scenario) -> Result<()> {
    let b = es_bounds(&s.net, &s.ch, &s.dp).map_err(core("es_bounds"))?;
    r.num("bound_lower", b.lower, "Rayleigh, alpha = 4");
    r.num("bound_upper", b.upper, "interference-limited value");
    r.num("kappa", b.kappa, "lambda^2 pi^4 / (8 M^2 sigma2), effective density");
    r.num("kappa_rho2", b.kappa * s.dp.rho * s.dp.rho, "");
    Ok(())
}

pub fn design(s: &Scenario) -> Result<Report> {
    let mut r = Report::default();
    let delta = s.rate.map(|rm| rm.delta).unwrap_or(1.0);
    let root = optimal_xi(s.ch.alpha, delta).map_err(core("optimal_xi"))?;
    let gap_note = if s.rate.is_some() {
        "sigma2 = 0"
    } else {
        "sigma2 = 0, SNR gap 0 dB (no [rate] section)"
    };
    r.num("xi_star", root.x, gap_note);
    r.num("xi_star_db", linear_to_db(root.x), gap_note);
    r.num("u_xi_residual", u_xi(s.ch.alpha, delta, root.x).abs(), "");
    if let Some(rate) = s.rate {
        r.num(
            "M_at_xi_star",
            m_from_xi(&rate, root.x),
            "rate model M = beta ln(1 + xi/delta)",
        );
        let zero_noise = s.ch.with_sigma2(0.0);
        if integer_m(s).is_some() {
            let v = es_vs_xi(&zero_noise, &rate, s.dp.rho, root.x).map_err(core("es_vs_xi"))?;
            r.num("es_at_xi_star", v, "sigma2 = 0");
        }
        if s.ch.sigma2 > 0.0 {
            if let Some((xi_db, es)) = grid_best_xi(s, &rate) {
                r.num(
                    "xi_grid_best_db",
                    xi_db,
                    "grid search with noise, 401 points over [-10, 30] dB",
                );
                r.num("es_at_xi_grid_best", es, "");
            }
        }
    }
    if s.ch.sigma2 > 0.0 {
        let net = shadowed_network(&s.net, &s.ch).map_err(core("shadowing"))?;
        let k = kappa(&net, s.dp.resource_blocks, s.ch.sigma2).map_err(core("kappa"))?;
        r.num("kappa", k, "lambda^2 pi^4 / (8 M^2 sigma2)");
        let rho_hat = suboptimal_rho(k).map_err(core("suboptimal_rho"))?;
        r.num("rho_hat", rho_hat.x, "Rayleigh, alpha = 4, from the lower bound");
        r.num(
            "rho_policy",
            rho_policy(k).map_err(core("rho_policy"))?,
            "min(rho_hat, 0.5)",
        );
    } else {
        r.push(
            "rho_hat",
            Value::Text("n/a".into()),
            "needs sigma2 > 0; with no noise E{S} grows as rho falls",
        );
    }
    let net = shadowed_network(&s.net, &s.ch).map_err(core("shadowing"))?;
    let p = design_power(s.design.c, &net, s.dp.rho, s.dp.resource_blocks, s.design.noise_power)
        .map_err(core("design_power"))?;
    r.num("c", p.c, "target kappa rho^2");
    r.num("p_hat", p.p_hat, "transmit power, unit of noise_power");
    r.num("p_hat_snr_db", p.snr_db, "mean SNR at unit distance");
    Ok(r)
}

fn grid_best_xi(s: &Scenario, rate: &peerdisc::design::RateModel<f64>) -> Option<(f64, f64)> {
    (0..=400)
        .map(|i| -10.0 + 40.0 * i as f64 / 400.0)
        .filter_map(|xi_db| {
            let mut p = s.clone();
            p.dp.xi = peerdisc::db_to_linear(xi_db);
            p.dp.resource_blocks = m_from_xi(rate, p.dp.xi);
            best_analysis(&p).ok().map(|(v, _)| (xi_db, v))
        })
        .fold(None, |acc, (x, v)| match acc {
            Some((_, bv)) if bv >= v => acc,
            _ => Some((x, v)),
        })
}

pub fn simulate(s: &Scenario, opts: RunOptions) -> Result<Report> {
    let cfg = sim_config(s, opts.trials, opts.seed, opts.radius).map_err(core("simulation"))?;
    let est = estimate_es(&cfg).map_err(core("simulation"))?;
    let mut r = Report::default();
    r.num("mc_mean", est.mean, "mean discovered peers per slot");
    r.num("mc_stderr", est.stderr, "");
    r.push("mc_trials", Value::Int(est.trials), "");
    r.push("seed", Value::Int(cfg.seed), "");
    r.num("window_radius", est.window_radius, "");
    r.push(
        "tail_correction",
        Value::Flag(cfg.tail_correction),
        "mean interference beyond the window added",
    );
    r.push(
        "truncation_flag",
        Value::Flag(est.truncation_flag),
        "doubling the window moved the mean by > 1 stderr",
    );
    r.num("truncation_shift", est.truncation_shift, "");
    if let Ok((v, m)) = best_analysis(s) {
        r.num("analysis", v, m.name());
        if est.stderr > 0.0 {
            r.num("z_score", (est.mean - v) / est.stderr, "");
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ConfigFile;

    fn scenario(text: &str) -> Scenario {
        ConfigFile::parse(text).unwrap().resolve().unwrap()
    }

    #[test]
    fn zero_noise_paths_agree() {
        let s = scenario("[discovery]\nM = 4\nrho = 0.5\n");
        let r = analyze(&s, AnalyzeMethod::Auto).unwrap();
        let a = r.number("es_zero_noise").unwrap();
        let b = r.number("es_general").unwrap();
        assert!((a - 4.0 / std::f64::consts::PI).abs() < 1e-12);
        assert!(((a - b) / a).abs() < 1e-6);
    }

    #[test]
    fn noisy_alpha3_has_only_the_integral() {
        let s = scenario("[channel]\nalpha = 3.0\nsnr_db = 10\n");
        let r = analyze(&s, AnalyzeMethod::Auto).unwrap();
        assert!(r.get("es_zero_noise").is_none());
        assert!(r.get("es_rayleigh_noise").is_none());
        assert!(r.get("bound_lower").is_none());
        assert!(r.number("es_general").unwrap() > 0.0);
        let err = analyze(&s, AnalyzeMethod::Rayleigh).unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn design_examples() {
        let s = scenario("[rate]\nbeta = 10\ndelta = 1\n");
        let r = design(&s).unwrap();
        assert!((r.number("xi_star_db").unwrap() - 5.934581591745977).abs() < 1e-9);
        assert!((r.number("M_at_xi_star").unwrap() - 15.936242600400401).abs() < 1e-9);
        assert!(r.number("u_xi_residual").unwrap() <= 1e-12);
        assert!((r.number("p_hat_snr_db").unwrap() - 23.124305048874458).abs() < 1e-9);

        let noisy = scenario("[channel]\nsnr_db = 10\n[discovery]\nM = 4\n");
        let r = design(&noisy).unwrap();
        assert!((r.number("kappa").unwrap() - 121.76136379250305).abs() < 1e-9);
        assert!((r.number("rho_hat").unwrap() - 0.2220858213554429).abs() < 1e-9);
        assert!((r.number("rho_policy").unwrap() - 0.2220858213554429).abs() < 1e-9);
    }

    #[test]
    fn report_formatting() {
        let s = scenario("");
        let text = analyze(&s, AnalyzeMethod::Auto).unwrap().to_string();
        assert!(text
            .lines()
            .any(|l| l.starts_with("regime") && l.contains("interference_limited")));
    }
}
