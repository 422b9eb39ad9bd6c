//! Mean number of successfully discovered peers, E{S}.
//!
//! Every expression here is for a typical receiver at the origin of a
//! homogeneous Poisson field of peers running the multichannel random hello
//! protocol: each peer transmits with probability `rho` on one of `M`
//! resource blocks chosen uniformly, and a hello packet is decoded when its
//! SINR exceeds `xi`.

mod deltas;
mod expected;
mod general;
mod shadowing;

pub use deltas::{delta_i, delta_s, delta_s_tilde, DELTA_S_TILDE_MAX_M};
pub use expected::{es_bounds, es_rayleigh_noise, es_rayleigh_noise_limit, es_zero_noise};
pub use general::{derivative_expansion, es_general, ES_GENERAL_MAX_M};
pub use shadowing::{effective_density, lognormal_moment, shadowed_network};

use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// Propagation and fading environment.
///
/// Fading parameters are stored as reals so the simulator can use
/// non-integer Nakagami shapes; analytical expressions that need integer `m`
/// check for it and return a regime error otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelModel<T> {
    /// Path loss exponent, `> 2`.
    pub alpha: T,
    /// Nakagami parameter of the desired link.
    pub m_s: T,
    /// Nakagami parameter of the interfering links.
    pub m_i: T,
    /// Noise power normalized by transmit power (linear); 0 means interference limited.
    pub sigma2: T,
    /// Lognormal shadowing standard deviation in dB; 0 disables shadowing.
    pub shadow_chi_db: T,
}

impl<T: Real> ChannelModel<T> {
    pub fn new(alpha: T, m_s: T, m_i: T, sigma2: T, shadow_chi_db: T) -> Result<Self> {
        let ch = Self {
            alpha,
            m_s,
            m_i,
            sigma2,
            shadow_chi_db,
        };
        ch.validate()?;
        Ok(ch)
    }

    /// Equal fading on all links, no noise, no shadowing.
    pub fn interference_limited(alpha: T, m: T) -> Result<Self> {
        Self::new(alpha, m, m, T::zero(), T::zero())
    }

    /// Rayleigh fading, `alpha = 4`, with the given normalized noise power.
    pub fn rayleigh_alpha4(sigma2: T) -> Result<Self> {
        Self::new(T::lit(4.0), T::one(), T::one(), sigma2, T::zero())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > T::lit(2.0)) || !self.alpha.is_finite() {
            return Err(domain("alpha", self.alpha.as_f64(), "path loss exponent must exceed 2"));
        }
        for (name, m) in [("m_s", self.m_s), ("m_i", self.m_i)] {
            if !(m >= T::lit(0.5)) || !m.is_finite() {
                return Err(domain(name, m.as_f64(), "Nakagami parameter must be >= 0.5"));
            }
        }
        if !(self.sigma2 >= T::zero()) || !self.sigma2.is_finite() {
            return Err(domain(
                "sigma2",
                self.sigma2.as_f64(),
                "noise power must be finite and >= 0",
            ));
        }
        if !(self.shadow_chi_db >= T::zero()) || !self.shadow_chi_db.is_finite() {
            return Err(domain(
                "shadow_chi_db",
                self.shadow_chi_db.as_f64(),
                "shadowing spread must be finite and >= 0",
            ));
        }
        Ok(())
    }

    pub fn is_interference_limited(&self) -> bool {
        self.sigma2 == T::zero()
    }

    pub fn with_sigma2(self, sigma2: T) -> Self {
        Self { sigma2, ..self }
    }

    pub fn with_shadowing(self, shadow_chi_db: T) -> Self {
        Self { shadow_chi_db, ..self }
    }

    /// Same channel without shadowing.
    pub fn unshadowed(self) -> Self {
        self.with_shadowing(T::zero())
    }
}

/// Protocol knobs of the random hello protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscoveryParams<T> {
    /// Resource blocks per slot, `M`. Relaxed to a positive real.
    pub resource_blocks: T,
    /// SINR threshold, linear.
    pub xi: T,
    /// Transmission probability.
    pub rho: T,
}

impl<T: Real> DiscoveryParams<T> {
    pub fn new(resource_blocks: T, xi: T, rho: T) -> Result<Self> {
        let dp = Self {
            resource_blocks,
            xi,
            rho,
        };
        dp.validate()?;
        Ok(dp)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.resource_blocks > T::zero()) || !self.resource_blocks.is_finite() {
            return Err(domain("M", self.resource_blocks.as_f64(), "must be finite and > 0"));
        }
        if !(self.xi > T::zero()) || !self.xi.is_finite() {
            return Err(domain("xi", self.xi.as_f64(), "SINR threshold must be finite and > 0"));
        }
        if !(self.rho > T::zero() && self.rho < T::one()) {
            return Err(domain(
                "rho",
                self.rho.as_f64(),
                "transmission probability must lie in (0, 1)",
            ));
        }
        Ok(())
    }

    /// Density of co-channel interferers per unit node density, `rho / M`.
    pub fn interferer_fraction(&self) -> T {
        self.rho / self.resource_blocks
    }
}

/// Poisson field of peers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkModel<T> {
    /// Nodes per unit area.
    pub lambda: T,
}

impl<T: Real> NetworkModel<T> {
    pub fn new(lambda: T) -> Result<Self> {
        let net = Self { lambda };
        net.validate()?;
        Ok(net)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > T::zero()) || !self.lambda.is_finite() {
            return Err(domain("lambda", self.lambda.as_f64(), "density must be finite and > 0"));
        }
        Ok(())
    }
}

/// Fractional lower bound and interference-limited upper bound on E{S} for
/// Rayleigh fading with noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EsBounds<T> {
    pub lower: T,
    pub upper: T,
    pub kappa: T,
}

/// Returns `m` as an integer when it is one, else a regime error.
pub(crate) fn integer_m<T: Real>(name: &str, m: T) -> Result<u32> {
    let r = m.round();
    if m == r && r >= T::one() {
        r.to_u32()
            .ok_or_else(|| Error::Capability(format!("{name} = {m} is too large")))
    } else {
        Err(Error::Regime(format!(
            "{name} = {m}: analytical expressions require an integer Nakagami parameter"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn channel_invariants() {
        assert!(ChannelModel::new(2.0, 1.0, 1.0, 0.0, 0.0).is_err());
        assert!(ChannelModel::new(4.0, 0.4, 1.0, 0.0, 0.0).is_err());
        assert!(ChannelModel::new(4.0, 1.0, 1.0, -0.1, 0.0).is_err());
        assert!(ChannelModel::new(4.0, 1.0, 1.0, 0.1, -1.0).is_err());
        assert!(ChannelModel::new(4.0, 2.7, 2.7, 0.1, 12.0).is_ok());
    }

    #[test]
    fn discovery_invariants() {
        assert!(DiscoveryParams::new(0.0, 1.0, 0.5).is_err());
        assert!(DiscoveryParams::new(4.0, 0.0, 0.5).is_err());
        assert!(DiscoveryParams::new(4.0, 1.0, 0.0).is_err());
        assert!(DiscoveryParams::new(4.0, 1.0, 1.0).is_err());
        assert!(DiscoveryParams::new(2.5, 1.0, 0.5).is_ok());
        assert!(NetworkModel::new(0.0).is_err());
    }

    #[test]
    fn integer_m_detection() {
        assert_eq!(integer_m("m", 3.0_f64).unwrap(), 3);
        assert!(matches!(integer_m("m", 2.7_f64), Err(Error::Regime(_))));
        assert!(integer_m("m", 0.5_f64).is_err());
    }
}
