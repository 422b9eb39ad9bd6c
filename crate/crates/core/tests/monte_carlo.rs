use peerdisc::analysis::{es_general, es_rayleigh_noise, es_zero_noise, ChannelModel, DiscoveryParams, NetworkModel};
use peerdisc::simulator::{estimate_es, sample_ppp, trial_rng, SimConfig};

const TRIALS: u64 = 20_000;

fn agree(est: &peerdisc::simulator::Estimate, want: f64) {
    assert!(
        (est.mean - want).abs() <= 3.0 * est.stderr,
        "MC {} +- {} vs analysis {want}",
        est.mean,
        est.stderr
    );
}

#[test]
fn ppp_mean_count() {
    let n = 10_000;
    let total: usize = (0..n).map(|t| sample_ppp(4.0, 10.0, &mut trial_rng(17, t)).len()).sum();
    let mean = total as f64 / n as f64;
    let want = 400.0 * std::f64::consts::PI;
    assert!((mean - want).abs() < 3.0 * (want / n as f64).sqrt(), "{mean}");
}

#[test]
fn rayleigh_with_noise() {
    let net = NetworkModel::new(4.0).unwrap();
    let ch = ChannelModel::rayleigh_alpha4(10f64.powf(-0.5)).unwrap();
    let dp = DiscoveryParams::new(4.0, 1.0, 0.5).unwrap();
    let cfg = SimConfig::new(net, ch, dp, TRIALS, 2).unwrap();
    agree(&estimate_es(&cfg).unwrap(), es_rayleigh_noise(&net, &ch, &dp).unwrap());
}

#[test]
fn nakagami_two_with_noise() {
    let net = NetworkModel::new(4.0).unwrap();
    let ch = ChannelModel::new(4.0, 2.0, 2.0, 0.1, 0.0).unwrap();
    let dp = DiscoveryParams::new(4.0, 1.0, 0.2).unwrap();
    let cfg = SimConfig::new(net, ch, dp, TRIALS, 3).unwrap();
    agree(&estimate_es(&cfg).unwrap(), es_general(&net, &ch, &dp).unwrap());
}

#[test]
fn zero_noise_other_path_loss() {
    let net = NetworkModel::new(4.0).unwrap();
    let ch = ChannelModel::interference_limited(3.0, 2.0).unwrap();
    let dp = DiscoveryParams::new(8.0, 2.0, 0.3).unwrap();
    let cfg = SimConfig::new(net, ch, dp, TRIALS, 4).unwrap();
    agree(&estimate_es(&cfg).unwrap(), es_zero_noise(&ch, &dp).unwrap());
}

#[test]
fn unequal_fading_with_noise() {
    let net = NetworkModel::new(2.0).unwrap();
    let ch = ChannelModel::new(3.5, 1.0, 3.0, 0.05, 0.0).unwrap();
    let dp = DiscoveryParams::new(4.0, 1.0, 0.4).unwrap();
    let cfg = SimConfig::new(net, ch, dp, TRIALS, 5).unwrap();
    agree(&estimate_es(&cfg).unwrap(), es_general(&net, &ch, &dp).unwrap());
}
