//! Monte Carlo estimation of E{S}.
//!
//! Each trial drops a Poisson field on a disk of radius `R` around the
//! typical receiver, lets every node transmit with probability `rho` on a
//! uniformly chosen resource block, and counts the transmitters inside
//! radius `R/2` whose SINR at the origin exceeds the threshold. Interferers
//! come from the whole disk. The probability that the typical node listens,
//! `1 - rho`, multiplies the average count instead of being sampled.
//!
//! Interferers beyond `R` are not dropped; by default their mean
//! interference is added to every block instead (see
//! [`mean_tail_interference`]), which removes the first-order truncation
//! bias. The residual is measured by re-running a tenth of the trials with
//! the window doubled.
//!
//! Trial `t` draws from ChaCha8 stream `2t` keyed by the seed, so results do
//! not depend on how trials are scheduled across threads.

mod sampling;
mod trial;

pub use sampling::{
    sample_lognormal_shadow, sample_nakagami_power, sample_poisson, sample_ppp, LognormalShadow, NakagamiPower, Point,
};
pub use trial::{mean_tail_interference, run_trial, TrialOutcome};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{ChannelModel, DiscoveryParams, NetworkModel};
use crate::error::{Error, Result};
use trial::{Kernel, Scratch};

/// Smallest admissible expected node count in the window.
pub const MIN_EXPECTED_NODES: f64 = 10.0;
/// Largest admissible expected node count in the window.
pub const MAX_EXPECTED_NODES: f64 = 5e6;
/// Largest number of resource blocks the simulator accepts.
pub const MAX_RESOURCE_BLOCKS: f64 = 1e8;
/// Upper limit of the automatic window radius.
pub const DEFAULT_RADIUS_CAP: f64 = 50.0;

/// A Monte Carlo experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub net: NetworkModel<f64>,
    pub ch: ChannelModel<f64>,
    pub dp: DiscoveryParams<f64>,
    /// Radius of the simulation disk.
    pub window_radius: f64,
    pub trials: u64,
    pub seed: u64,
    /// Add the mean interference from beyond the window to every block.
    pub tail_correction: bool,
}

impl SimConfig {
    /// Builds a validated configuration with the automatic window radius.
    pub fn new(
        net: NetworkModel<f64>,
        ch: ChannelModel<f64>,
        dp: DiscoveryParams<f64>,
        trials: u64,
        seed: u64,
    ) -> Result<Self> {
        let window_radius = default_window_radius(&net, &ch, &dp);
        let cfg = Self {
            net,
            ch,
            dp,
            window_radius,
            trials,
            seed,
            tail_correction: true,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_radius(self, window_radius: f64) -> Result<Self> {
        let cfg = Self { window_radius, ..self };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_trials(self, trials: u64) -> Result<Self> {
        let cfg = Self { trials, ..self };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn with_tail_correction(self, tail_correction: bool) -> Self {
        Self {
            tail_correction,
            ..self
        }
    }

    pub fn expected_nodes(&self) -> f64 {
        self.net.lambda * std::f64::consts::PI * self.window_radius * self.window_radius
    }

    pub fn validate(&self) -> Result<()> {
        let cfg_err = |msg: String| Err(Error::Config(msg));
        self.net.validate()?;
        self.ch.validate()?;
        self.dp.validate()?;
        if !(self.window_radius > 0.0) || !self.window_radius.is_finite() {
            return cfg_err(format!(
                "window radius must be finite and > 0, got {}",
                self.window_radius
            ));
        }
        if self.trials < 1 {
            return cfg_err("at least one trial is required".into());
        }
        let m = self.dp.resource_blocks;
        if m.fract() != 0.0 {
            return cfg_err(format!(
                "the simulator needs an integer number of resource blocks, got M = {m}"
            ));
        }
        if m > MAX_RESOURCE_BLOCKS {
            return cfg_err(format!("M = {m} exceeds the simulator limit of {MAX_RESOURCE_BLOCKS}"));
        }
        let n = self.expected_nodes();
        if n < MIN_EXPECTED_NODES {
            return cfg_err(format!(
                "expected node count lambda*pi*R^2 = {n:.3} is below {MIN_EXPECTED_NODES}; enlarge the window"
            ));
        }
        if n > MAX_EXPECTED_NODES {
            return cfg_err(format!(
                "expected node count lambda*pi*R^2 = {n:.3e} exceeds {MAX_EXPECTED_NODES:e}; shrink the window"
            ));
        }
        Ok(())
    }
}

/// Automatic window radius.
///
/// Takes the largest of `15/sqrt(lambda)`, the mean-SNR link range
/// `(1/(sigma2*xi))^(1/alpha)` plus `5/sqrt(lambda)`, and twice the
/// interference-limited discovery range (Rayleigh success probability at the
/// target-disk edge below `1e-4`). The result is stretched by the 3-sigma
/// shadowing gain `10^(3*chi/(10*alpha))`, capped at [`DEFAULT_RADIUS_CAP`],
/// and finally raised if needed so the window holds at least
/// [`MIN_EXPECTED_NODES`] nodes on average.
pub fn default_window_radius(net: &NetworkModel<f64>, ch: &ChannelModel<f64>, dp: &DiscoveryParams<f64>) -> f64 {
    let spacing = net.lambda.sqrt().recip();
    let mut r = 15.0 * spacing;
    if ch.sigma2 > 0.0 {
        let link = (ch.sigma2 * dp.xi).recip().powf(ch.alpha.recip());
        r = r.max(link + 5.0 * spacing);
    }
    if dp.rho > 0.0 {
        // Zero-noise Rayleigh success at distance d is exp(-a d^2).
        let x = std::f64::consts::TAU / ch.alpha;
        let a = net.lambda * dp.rho / dp.resource_blocks * std::f64::consts::PI * dp.xi.powf(2.0 / ch.alpha)
            / (x.sin() / x);
        r = r.max(2.0 * (1e4f64.ln() / a).sqrt());
    }
    r *= 10f64.powf(3.0 * ch.shadow_chi_db / (10.0 * ch.alpha));
    let floor = (MIN_EXPECTED_NODES / (net.lambda * std::f64::consts::PI)).sqrt();
    r.min(DEFAULT_RADIUS_CAP).max(floor)
}

/// Random stream for trial stream index `stream` under `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Monte Carlo estimate of E{S}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(trials)`, scaled by `1 - rho`.
    pub stderr: f64,
    pub trials: u64,
    /// Set when doubling the radius on a tenth of the trials moves the
    /// mean by more than one standard error.
    pub truncation_flag: bool,
    /// Mean change caused by doubling the radius, on the paired subsample.
    pub truncation_shift: f64,
    pub window_radius: f64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Stats {
    n: u64,
    sum: u128,
    sum_sq: u128,
    diff_n: u64,
    diff_sum: i128,
}

impl Stats {
    fn merge(self, o: Self) -> Self {
        Self {
            n: self.n + o.n,
            sum: self.sum + o.sum,
            sum_sq: self.sum_sq + o.sum_sq,
            diff_n: self.diff_n + o.diff_n,
            diff_sum: self.diff_sum + o.diff_sum,
        }
    }
}

/// Number of trials that are paired with a doubled-radius twin.
pub fn truncation_subsample(trials: u64) -> u64 {
    trials.div_ceil(10)
}

/// Runs `cfg.trials` trials in parallel and reduces them exactly, so the
/// result is bit-identical for any thread count.
pub fn estimate_es(cfg: &SimConfig) -> Result<Estimate> {
    cfg.validate()?;
    let kernel = Kernel::new(cfg);
    let paired = truncation_subsample(cfg.trials);
    let seed = cfg.seed;
    let stats = (0..cfg.trials)
        .into_par_iter()
        .map_init(Scratch::default, |scratch, t| {
            let mut rng = trial_rng(seed, 2 * t);
            let mut s = Stats {
                n: 1,
                ..Stats::default()
            };
            let base = if t < paired {
                let (base, ext) = kernel.run_paired(&mut rng, &mut trial_rng(seed, 2 * t + 1), scratch);
                s.diff_n = 1;
                s.diff_sum = ext.discovered_count as i128 - base.discovered_count as i128;
                base
            } else {
                kernel.run(&mut rng, scratch)
            };
            let c = base.discovered_count as u128;
            s.sum = c;
            s.sum_sq = c * c;
            s
        })
        .reduce(Stats::default, Stats::merge);

    let listen = 1.0 - cfg.dp.rho;
    let n = stats.n as f64;
    let mean = listen * stats.sum as f64 / n;
    let stderr = if stats.n > 1 {
        // n * sum_sq - sum^2 is exact and non-negative in integers.
        let centered = (stats.n as u128 * stats.sum_sq - stats.sum * stats.sum) as f64;
        listen * (centered / (n * (n - 1.0))).sqrt() / n.sqrt()
    } else {
        0.0
    };
    let truncation_shift = listen * stats.diff_sum as f64 / stats.diff_n as f64;
    Ok(Estimate {
        mean,
        stderr,
        trials: stats.n,
        truncation_flag: truncation_shift.abs() > stderr,
        truncation_shift,
        window_radius: cfg.window_radius,
    })
}
