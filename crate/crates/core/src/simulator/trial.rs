//! One realization of the network seen from the typical receiver.

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use super::sampling::{sample_annulus_radius, sample_poisson, LognormalShadow, NakagamiPower};
use super::SimConfig;

/// Result of a single trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TrialOutcome {
    /// Transmitters inside the target sub-disk whose SINR exceeds the threshold.
    pub discovered_count: u64,
    /// Nodes dropped in the simulation window.
    pub node_count: u64,
}

/// A transmitting node as seen from the origin.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Transmitter {
    pub radius: f64,
    pub rb: u32,
    /// Received power when this node is the target.
    pub signal: f64,
    /// Received power when this node interferes.
    pub interference: f64,
}

/// Everything a trial needs that does not change between trials.
#[derive(Debug, Clone)]
pub(crate) struct Kernel {
    lambda: f64,
    alpha: f64,
    rho: f64,
    xi: f64,
    sigma2: f64,
    rbs: u32,
    radius: f64,
    desired: NakagamiPower,
    interfering: Option<NakagamiPower>,
    shadow: LognormalShadow,
    /// Mean interference per block from outside radius `R` and `2R`.
    tail: f64,
    tail_doubled: f64,
}

/// Reusable per-worker storage.
#[derive(Debug, Default)]
pub(crate) struct Scratch {
    inner: Vec<Transmitter>,
    outer: Vec<Transmitter>,
    totals: Vec<f64>,
    totals_ext: Vec<f64>,
}

impl Kernel {
    /// Builds the kernel without checking the configuration; `rbs` must be at least 1.
    pub fn new(cfg: &SimConfig) -> Self {
        let ch = &cfg.ch;
        let tail = |r: f64| {
            if cfg.tail_correction {
                mean_tail_interference(cfg, r)
            } else {
                0.0
            }
        };
        Self {
            tail: tail(cfg.window_radius),
            tail_doubled: tail(2.0 * cfg.window_radius),
            lambda: cfg.net.lambda,
            alpha: ch.alpha,
            rho: cfg.dp.rho,
            xi: cfg.dp.xi,
            sigma2: ch.sigma2,
            rbs: cfg.dp.resource_blocks.round().max(1.0) as u32,
            radius: cfg.window_radius,
            desired: NakagamiPower::new(ch.m_s),
            interfering: (ch.m_i != ch.m_s).then(|| NakagamiPower::new(ch.m_i)),
            shadow: LognormalShadow::new(ch.shadow_chi_db),
        }
    }

    fn path_gain(&self, r: f64) -> f64 {
        if self.alpha == 4.0 {
            let r2 = r * r;
            1.0 / (r2 * r2)
        } else {
            r.powf(-self.alpha)
        }
    }

    /// Drops the PPP on the annulus `[inner, outer)` and keeps the
    /// transmitters. Returns the number of nodes dropped.
    fn drop_nodes<R: Rng + ?Sized>(&self, inner: f64, outer: f64, rng: &mut R, out: &mut Vec<Transmitter>) -> u64 {
        out.clear();
        let area = std::f64::consts::PI * (outer * outer - inner * inner);
        let nodes = sample_poisson(self.lambda * area, rng);
        let active = if nodes == 0 || self.rho <= 0.0 {
            0
        } else if self.rho >= 1.0 {
            nodes
        } else {
            Binomial::new(nodes, self.rho).expect("valid Binomial").sample(rng)
        };
        for _ in 0..active {
            let radius = sample_annulus_radius(inner, outer, rng);
            let rb = rng.random_range(0..self.rbs);
            let h = self.desired.sample(rng);
            let g = match &self.interfering {
                Some(d) => d.sample(rng),
                None => h,
            };
            let loss = self.shadow.sample(rng) * self.path_gain(radius);
            out.push(Transmitter {
                radius,
                rb,
                signal: h * loss,
                interference: g * loss,
            });
        }
        nodes
    }

    fn count(&self, targets: &[Transmitter], limit: f64, totals: &[f64]) -> u64 {
        targets
            .iter()
            .filter(|t| t.radius < limit)
            .filter(|t| {
                let others = (totals[t.rb as usize] - t.interference).max(0.0);
                t.signal / (others + self.sigma2) > self.xi
            })
            .count() as u64
    }

    fn accumulate(totals: &mut Vec<f64>, rbs: u32, floor: f64, nodes: &[Transmitter]) {
        totals.clear();
        totals.resize(rbs as usize, floor);
        for t in nodes {
            totals[t.rb as usize] += t.interference;
        }
    }

    pub fn run<R: Rng + ?Sized>(&self, rng: &mut R, scratch: &mut Scratch) -> TrialOutcome {
        let node_count = self.drop_nodes(0.0, self.radius, rng, &mut scratch.inner);
        Self::accumulate(&mut scratch.totals, self.rbs, self.tail, &scratch.inner);
        let discovered_count = self.count(&scratch.inner, 0.5 * self.radius, &scratch.totals);
        TrialOutcome {
            discovered_count,
            node_count,
        }
    }

    /// Runs a trial at the configured radius and, from the same draws plus
    /// an independent annulus, the same trial with the radius doubled.
    pub fn run_paired<R: Rng + ?Sized, S: Rng + ?Sized>(
        &self,
        rng: &mut R,
        annulus_rng: &mut S,
        scratch: &mut Scratch,
    ) -> (TrialOutcome, TrialOutcome) {
        let base = self.run(rng, scratch);
        let extra = self.drop_nodes(self.radius, 2.0 * self.radius, annulus_rng, &mut scratch.outer);
        let shift = self.tail_doubled - self.tail;
        scratch.totals_ext.clear();
        scratch.totals_ext.extend(scratch.totals.iter().map(|v| v + shift));
        for t in &scratch.outer {
            scratch.totals_ext[t.rb as usize] += t.interference;
        }
        // Annulus nodes lie outside the doubled target disk of radius R.
        let discovered_count = self.count(&scratch.inner, self.radius, &scratch.totals_ext);
        let extended = TrialOutcome {
            discovered_count,
            node_count: base.node_count + extra,
        };
        (base, extended)
    }
}

/// Mean interference on one block at the origin from transmitters beyond
/// `radius`: `(lambda*rho/M) * E{g} * E{theta} * 2*pi * radius^(2-alpha) / (alpha-2)`.
pub fn mean_tail_interference(cfg: &SimConfig, radius: f64) -> f64 {
    let ch = &cfg.ch;
    let per_block = cfg.net.lambda * cfg.dp.rho / cfg.dp.resource_blocks.round().max(1.0);
    let s = ch.shadow_chi_db * std::f64::consts::LN_10 / 10.0;
    let shadow_mean = (0.5 * s * s).exp();
    per_block * shadow_mean * std::f64::consts::TAU * radius.powf(2.0 - ch.alpha) / (ch.alpha - 2.0)
}

/// Runs one trial of `cfg` with the given random stream.
///
/// The configuration is used as is; `resource_blocks` is rounded to the
/// nearest integer (at least 1).
pub fn run_trial<R: Rng + ?Sized>(cfg: &SimConfig, rng: &mut R) -> TrialOutcome {
    Kernel::new(cfg).run(rng, &mut Scratch::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{ChannelModel, DiscoveryParams, NetworkModel};
    use crate::simulator::trial_rng;

    fn cfg(lambda: f64, m: f64, rho: f64, rbs: f64, radius: f64) -> SimConfig {
        SimConfig {
            net: NetworkModel { lambda },
            ch: ChannelModel::interference_limited(4.0, m).unwrap(),
            dp: DiscoveryParams {
                resource_blocks: rbs,
                xi: 1.0,
                rho,
            },
            window_radius: radius,
            trials: 1,
            seed: 0,
            tail_correction: false,
        }
    }

    #[test]
    fn silent_network_discovers_nothing() {
        let c = cfg(4.0, 1.0, 0.0, 4.0, 10.0);
        for t in 0..50 {
            let out = run_trial(&c, &mut trial_rng(9, t));
            assert_eq!(out.discovered_count, 0);
            assert!(out.node_count > 0);
        }
    }

    #[test]
    fn lone_transmitters_always_discovered() {
        // Very many blocks: every transmitter sits alone on its block and
        // sees zero interference and zero noise.
        let c = cfg(0.05, 1.0, 1.0, 1e7, 20.0);
        for t in 0..200 {
            let mut rng = trial_rng(3, t);
            let kernel = Kernel::new(&c);
            let mut scratch = Scratch::default();
            let out = kernel.run(&mut rng, &mut scratch);
            let mut blocks: Vec<u32> = scratch.inner.iter().map(|x| x.rb).collect();
            blocks.sort_unstable();
            blocks.dedup();
            if blocks.len() == scratch.inner.len() {
                let in_target = scratch.inner.iter().filter(|x| x.radius < 10.0).count() as u64;
                assert_eq!(out.discovered_count, in_target);
            }
        }
    }

    #[test]
    fn discovered_never_exceeds_nodes() {
        let c = cfg(2.0, 2.7, 0.6, 3.0, 6.0);
        for t in 0..200 {
            let out = run_trial(&c, &mut trial_rng(1, t));
            assert!(out.discovered_count <= out.node_count);
        }
    }

    #[test]
    fn paired_trial_shares_the_inner_disk() {
        let c = cfg(4.0, 1.0, 0.5, 4.0, 5.0);
        let kernel = Kernel::new(&c);
        let mut scratch = Scratch::default();
        for t in 0..50 {
            let plain = kernel.run(&mut trial_rng(5, 2 * t), &mut scratch);
            let (base, ext) = kernel.run_paired(&mut trial_rng(5, 2 * t), &mut trial_rng(5, 2 * t + 1), &mut scratch);
            assert_eq!(plain, base);
            assert!(ext.node_count >= base.node_count);
        }
    }

    #[test]
    fn tail_matches_explicit_annulus() {
        // Mean interference between R and 2R equals the difference of the tails.
        let mut c = cfg(4.0, 1.0, 0.5, 4.0, 3.0);
        c.ch = c.ch.with_shadowing(4.0);
        let kernel = Kernel::new(&c);
        let mut scratch = Scratch::default();
        let n = 20_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for t in 0..n {
            kernel.drop_nodes(3.0, 6.0, &mut trial_rng(21, t), &mut scratch.inner);
            let x: f64 = scratch.inner.iter().filter(|x| x.rb == 0).map(|x| x.interference).sum();
            sum += x;
            sum_sq += x * x;
        }
        let mean = sum / n as f64;
        let se = ((sum_sq / n as f64 - mean * mean) / n as f64).sqrt();
        let want = mean_tail_interference(&c, 3.0) - mean_tail_interference(&c, 6.0);
        assert!((mean - want).abs() < 3.0 * se, "{mean} vs {want} (se {se})");
    }

    #[test]
    fn self_interference_excluded() {
        // One transmitter only: with zero noise it must be discovered.
        let c = cfg(0.2, 1.0, 1.0, 1.0, 2.0);
        let kernel = Kernel::new(&c);
        let mut scratch = Scratch::default();
        let mut seen = 0;
        for t in 0..2000 {
            let out = kernel.run(&mut trial_rng(11, t), &mut scratch);
            if scratch.inner.len() == 1 {
                seen += 1;
                let inside = (scratch.inner[0].radius < 1.0) as u64;
                assert_eq!(out.discovered_count, inside);
            }
        }
        assert!(seen > 10);
    }
}
