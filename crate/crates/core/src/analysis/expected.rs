//! Closed forms for the two tractable channel regimes and the noise bounds.

use super::{delta_i, delta_s, integer_m, shadowed_network, ChannelModel, DiscoveryParams, EsBounds, NetworkModel};
use crate::design::kappa;
use crate::error::{Error, Result};
use crate::numerics::erfcx_nonneg;
use crate::scalar::Real;

/// Interference-limited E{S} (`sigma2 = 0`, any `α > 2`).
///
/// Independent of the node density and, for `m_s = m_i`, of the fading
/// parameter; shadowing therefore has no effect either. With `m_s = m_i`
/// the fading moments cancel, so any real `m` is accepted; unequal
/// parameters must both be integers.
pub fn es_zero_noise<T: Real>(ch: &ChannelModel<T>, dp: &DiscoveryParams<T>) -> Result<T> {
    ch.validate()?;
    dp.validate()?;
    if !ch.is_interference_limited() {
        return Err(Error::Regime(format!(
            "es_zero_noise requires sigma2 = 0, got {}",
            ch.sigma2
        )));
    }
    let ratio = if ch.m_s == ch.m_i {
        let x = T::TAU() / ch.alpha;
        x.sin() / x
    } else {
        delta_s(integer_m("m_s", ch.m_s)?, ch.alpha)? / delta_i(integer_m("m_i", ch.m_i)?, ch.alpha)?
    };
    Ok(ratio * dp.resource_blocks * (T::one() - dp.rho) / dp.xi.powf(T::lit(2.0) / ch.alpha))
}

fn require_rayleigh_alpha4<T: Real>(what: &str, ch: &ChannelModel<T>) -> Result<()> {
    ch.validate()?;
    if ch.alpha != T::lit(4.0) || ch.m_s != T::one() || ch.m_i != T::one() {
        return Err(Error::Regime(format!(
            "{what} requires Rayleigh fading (m_s = m_i = 1) and alpha = 4, got m_s = {}, m_i = {}, alpha = {}",
            ch.m_s, ch.m_i, ch.alpha
        )));
    }
    if !(ch.sigma2 > T::zero()) {
        return Err(Error::Regime(format!("{what} requires sigma2 > 0")));
    }
    Ok(())
}

/// E{S} for Rayleigh fading, `α = 4` and `sigma2 > 0`.
///
/// The `exp(t²)·erfc(t)` factor is evaluated as `erfcx(t)`, so small `M` or
/// small noise cannot overflow. Lognormal shadowing in `ch` enters through
/// the effective density.
pub fn es_rayleigh_noise<T: Real>(net: &NetworkModel<T>, ch: &ChannelModel<T>, dp: &DiscoveryParams<T>) -> Result<T> {
    require_rayleigh_alpha4("es_rayleigh_noise", ch)?;
    dp.validate()?;
    let net = shadowed_network(net, ch)?;
    let sigma = ch.sigma2.sqrt();
    let arg = net.lambda * T::PI() * T::PI() * dp.rho / (T::lit(4.0) * dp.resource_blocks * sigma);
    Ok(saturation_level(&net, ch, dp) * erfcx_nonneg(arg))
}

fn saturation_level<T: Real>(net: &NetworkModel<T>, ch: &ChannelModel<T>, dp: &DiscoveryParams<T>) -> T {
    net.lambda * T::PI().powf(T::lit(1.5)) * dp.rho * (T::one() - dp.rho) / (T::lit(2.0) * (dp.xi * ch.sigma2).sqrt())
}

/// `lim_{M→∞}` of [`es_rayleigh_noise`]: `λ π^(3/2) ρ(1-ρ) / (2 √(ξ σ²))`.
pub fn es_rayleigh_noise_limit<T: Real>(
    net: &NetworkModel<T>,
    ch: &ChannelModel<T>,
    dp: &DiscoveryParams<T>,
) -> Result<T> {
    require_rayleigh_alpha4("es_rayleigh_noise_limit", ch)?;
    dp.validate()?;
    let net = shadowed_network(net, ch)?;
    Ok(saturation_level(&net, ch, dp))
}

/// `(2/π)(M(1-ρ)/√ξ)·κρ²/(1+κρ²) < E{S} < (2/π) M(1-ρ)/√ξ`, same regime as
/// [`es_rayleigh_noise`].
pub fn es_bounds<T: Real>(net: &NetworkModel<T>, ch: &ChannelModel<T>, dp: &DiscoveryParams<T>) -> Result<EsBounds<T>> {
    require_rayleigh_alpha4("es_bounds", ch)?;
    dp.validate()?;
    let net = shadowed_network(net, ch)?;
    let k = kappa(&net, dp.resource_blocks, ch.sigma2)?;
    let upper = T::lit(2.0) / T::PI() * dp.resource_blocks * (T::one() - dp.rho) / dp.xi.sqrt();
    let kr2 = k * dp.rho * dp.rho;
    Ok(EsBounds {
        lower: upper * kr2 / (T::one() + kr2),
        upper,
        kappa: k,
    })
}
