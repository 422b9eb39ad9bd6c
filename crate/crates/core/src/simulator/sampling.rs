//! Random draws for the spatial model.

use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma, Poisson, StandardNormal};

/// Point of the plane, origin at the typical receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Draws a Poisson count with the given mean; zero mean gives zero.
pub fn sample_poisson<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> u64 {
    if !(mean > 0.0) {
        return 0;
    }
    let d = Poisson::new(mean).expect("positive finite Poisson mean");
    d.sample(rng) as u64
}

/// Homogeneous Poisson point process of density `lambda` on the disk of
/// radius `radius` centred at the origin.
pub fn sample_ppp<R: Rng + ?Sized>(lambda: f64, radius: f64, rng: &mut R) -> Vec<Point> {
    let n = sample_poisson(lambda * std::f64::consts::PI * radius * radius, rng);
    (0..n)
        .map(|_| {
            let r = radius * rng.random::<f64>().sqrt();
            let theta = std::f64::consts::TAU * rng.random::<f64>();
            Point {
                x: r * theta.cos(),
                y: r * theta.sin(),
            }
        })
        .collect()
}

/// Distance from the origin of a point uniform on the annulus `[inner, outer)`.
pub(crate) fn sample_annulus_radius<R: Rng + ?Sized>(inner: f64, outer: f64, rng: &mut R) -> f64 {
    let (a, b) = (inner * inner, outer * outer);
    (a + (b - a) * rng.random::<f64>()).sqrt()
}

/// Nakagami-m power gain: Gamma with shape `m` and unit mean. Any `m >= 0.5`.
#[derive(Debug, Clone, Copy)]
pub struct NakagamiPower {
    inner: NakagamiKind,
}

#[derive(Debug, Clone, Copy)]
enum NakagamiKind {
    Rayleigh,
    Gamma(Gamma<f64>),
}

impl NakagamiPower {
    pub fn new(m: f64) -> Self {
        assert!(m >= 0.5 && m.is_finite(), "Nakagami parameter must be >= 0.5, got {m}");
        let inner = if m == 1.0 {
            NakagamiKind::Rayleigh
        } else {
            NakagamiKind::Gamma(Gamma::new(m, 1.0 / m).expect("valid Gamma parameters"))
        };
        Self { inner }
    }
}

impl Distribution<f64> for NakagamiPower {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.inner {
            NakagamiKind::Rayleigh => Exp1.sample(rng),
            NakagamiKind::Gamma(g) => g.sample(rng),
        }
    }
}

pub fn sample_nakagami_power<R: Rng + ?Sized>(m: f64, rng: &mut R) -> f64 {
    NakagamiPower::new(m).sample(rng)
}

/// Linear lognormal shadowing gain `10^(θ/10)`, `θ ~ N(0, χ²)` in dB.
#[derive(Debug, Clone, Copy)]
pub struct LognormalShadow {
    chi_db: f64,
}

impl LognormalShadow {
    pub fn new(chi_db: f64) -> Self {
        assert!(
            chi_db >= 0.0 && chi_db.is_finite(),
            "shadowing spread must be >= 0, got {chi_db}"
        );
        Self { chi_db }
    }

    pub fn is_trivial(&self) -> bool {
        self.chi_db == 0.0
    }
}

impl Distribution<f64> for LognormalShadow {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if self.chi_db == 0.0 {
            return 1.0;
        }
        let z: f64 = StandardNormal.sample(rng);
        10f64.powf(self.chi_db * z / 10.0)
    }
}

pub fn sample_lognormal_shadow<R: Rng + ?Sized>(chi_db: f64, rng: &mut R) -> f64 {
    LognormalShadow::new(chi_db).sample(rng)
}
