//! Parameter design: SINR threshold, resource blocks, transmission
//! probability and transmit power.

use crate::analysis::{es_zero_noise, ChannelModel, DiscoveryParams, NetworkModel};
use crate::error::{domain, Result};
use crate::numerics::{find_root, Interval, RootResult};
use crate::scalar::{linear_to_db, Real};

/// Rate model `M = β ln(1 + ξ/δ)` relating SINR threshold to resource blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateModel<T> {
    /// Slot size in resource elements over packet length and `ln 2`.
    pub beta: T,
    /// SNR gap to capacity, linear.
    pub delta: T,
}

impl<T: Real> RateModel<T> {
    pub fn new(beta: T, delta: T) -> Result<Self> {
        if !(beta > T::zero()) || !beta.is_finite() {
            return Err(domain("beta", beta.as_f64(), "must be finite and > 0"));
        }
        if !(delta > T::zero()) || !delta.is_finite() {
            return Err(domain("delta", delta.as_f64(), "SNR gap must be finite and > 0"));
        }
        Ok(Self { beta, delta })
    }
}

/// Transmit power chosen so that `κρ² = c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerDesign<T> {
    pub c: T,
    /// Transmit power in the units of the noise power.
    pub p_hat: T,
    /// `p_hat / noise_power` in dB: the average SNR at unit distance.
    pub snr_db: T,
}

pub const DEFAULT_DOMINANCE: f64 = 100.0;

/// `u_ξ(x) = (α/2)(x/δ) - (1 + x/δ) ln(1 + x/δ)`; positive below the
/// optimal threshold and negative above it.
pub fn u_xi<T: Real>(alpha: T, delta: T, x: T) -> T {
    let y = x / delta;
    alpha / T::lit(2.0) * y - (T::one() + y) * y.ln_1p()
}

/// Threshold maximizing `ξ^(-2/α) ln(1 + ξ/δ)`, the interference-limited E{S}
/// under the rate model.
///
/// Solved for `ξ/δ`, which depends on `α` only, then scaled by `δ`.
pub fn optimal_xi<T: Real>(alpha: T, delta: T) -> Result<RootResult<T>> {
    if !(alpha > T::lit(2.0)) || !alpha.is_finite() {
        return Err(domain("alpha", alpha.as_f64(), "path loss exponent must exceed 2"));
    }
    if !(delta > T::zero()) || !delta.is_finite() {
        return Err(domain("delta", delta.as_f64(), "SNR gap must be finite and > 0"));
    }
    let bracket = Interval::new(T::lit(1e-6), alpha.exp())?;
    let tol = T::lit(1e-14).max(T::tol_floor());
    let root = find_root(|y| u_xi(alpha, T::one(), y), bracket, tol)?;
    let x = root.x * delta;
    Ok(RootResult {
        x,
        residual: u_xi(alpha, delta, x),
        iterations: root.iterations,
    })
}

/// Resource blocks per slot at threshold `xi`: `β ln(1 + ξ/δ)`.
pub fn m_from_xi<T: Real>(rm: &RateModel<T>, xi: T) -> T {
    rm.beta * (xi / rm.delta).ln_1p()
}

/// Interference-limited E{S} with `M` tied to `xi` by the rate model.
pub fn es_vs_xi<T: Real>(ch: &ChannelModel<T>, rm: &RateModel<T>, rho: T, xi: T) -> Result<T> {
    let dp = DiscoveryParams::new(m_from_xi(rm, xi), xi, rho)?;
    es_zero_noise(ch, &dp)
}

/// `κ = λ²π⁴ / (8 M² σ²)`.
pub fn kappa<T: Real>(net: &NetworkModel<T>, resource_blocks: T, sigma2: T) -> Result<T> {
    net.validate()?;
    if !(resource_blocks > T::zero()) {
        return Err(domain("M", resource_blocks.as_f64(), "must be > 0"));
    }
    if !(sigma2 > T::zero()) {
        return Err(domain("sigma2", sigma2.as_f64(), "kappa needs a positive noise power"));
    }
    let pi2 = T::PI() * T::PI();
    Ok(net.lambda * net.lambda * pi2 * pi2 / (T::lit(8.0) * resource_blocks * resource_blocks * sigma2))
}

/// `u_ρ(x) = -κx³ - 3x + 2`, strictly decreasing on (0, 1).
pub fn u_rho<T: Real>(kappa: T, x: T) -> T {
    -kappa * x * x * x - T::lit(3.0) * x + T::lit(2.0)
}

/// `f_ρ(x) = x²(1 - x)/(1 + κx²)`, the ρ-dependence of the lower bound.
pub fn f_rho<T: Real>(kappa: T, x: T) -> T {
    x * x * (T::one() - x) / (T::one() + kappa * x * x)
}

/// Transmission probability maximizing the noise lower bound: the root of
/// [`u_rho`] in (0, 1).
pub fn suboptimal_rho<T: Real>(kappa: T) -> Result<RootResult<T>> {
    if !(kappa > T::zero()) || !kappa.is_finite() {
        return Err(domain("kappa", kappa.as_f64(), "must be finite and > 0"));
    }
    let eps = T::lit(1e-12).max(T::epsilon());
    let bracket = Interval::new(eps, T::one() - eps)?;
    find_root(|x| u_rho(kappa, x), bracket, T::lit(1e-14).max(T::tol_floor()))
}

/// `min(ρ̂, 1/2)`: above one half extra transmissions only cost energy.
pub fn rho_policy<T: Real>(kappa: T) -> Result<T> {
    Ok(suboptimal_rho(kappa)?.x.min(T::lit(0.5)))
}

/// `p̂ = (8c/π⁴)(λρ/M)^(-2) σ̃²`, the smallest power for which the noise
/// lower bound sits at `c/(1+c)` of the interference-limited value.
pub fn design_power<T: Real>(
    c: T,
    net: &NetworkModel<T>,
    rho: T,
    resource_blocks: T,
    noise_power: T,
) -> Result<PowerDesign<T>> {
    net.validate()?;
    if !(c > T::one()) || !c.is_finite() {
        return Err(domain("c", c.as_f64(), "dominance factor must exceed 1"));
    }
    if !(rho > T::zero() && rho < T::one()) {
        return Err(domain("rho", rho.as_f64(), "must lie in (0, 1)"));
    }
    if !(resource_blocks > T::zero()) {
        return Err(domain("M", resource_blocks.as_f64(), "must be > 0"));
    }
    if !(noise_power > T::zero()) || !noise_power.is_finite() {
        return Err(domain("noise_power", noise_power.as_f64(), "must be finite and > 0"));
    }
    let density = net.lambda * rho / resource_blocks;
    let pi2 = T::PI() * T::PI();
    let p_hat = T::lit(8.0) * c / (pi2 * pi2) / (density * density) * noise_power;
    Ok(PowerDesign {
        c,
        p_hat,
        snr_db: linear_to_db(p_hat / noise_power),
    })
}
