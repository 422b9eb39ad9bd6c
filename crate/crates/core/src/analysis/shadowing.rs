//! Shadowing folded into the node density by the displacement theorem.

use super::{ChannelModel, NetworkModel};
use crate::error::{domain, Result};
use crate::scalar::Real;

/// `E{ϑ^(2/α)}` for lognormal shadowing with dB standard deviation `chi_db`:
/// `exp(½ ((ln 10 / 5)(χ/α))²)`.
pub fn lognormal_moment<T: Real>(chi_db: T, alpha: T) -> Result<T> {
    if !(chi_db >= T::zero()) || !chi_db.is_finite() {
        return Err(domain("chi_db", chi_db.as_f64(), "must be finite and >= 0"));
    }
    if !(alpha > T::lit(2.0)) {
        return Err(domain("alpha", alpha.as_f64(), "path loss exponent must exceed 2"));
    }
    let s = T::LN_10() / T::lit(5.0) * chi_db / alpha;
    Ok((T::lit(0.5) * s * s).exp())
}

/// Density `λ·E{ϑ^(2/α)}` of the equivalent unshadowed Poisson field.
pub fn effective_density<T: Real>(net: &NetworkModel<T>, moment: T) -> Result<NetworkModel<T>> {
    if !moment.is_finite() || !(moment > T::zero()) {
        return Err(domain(
            "moment",
            moment.as_f64(),
            "shadowing moment must be finite and > 0",
        ));
    }
    NetworkModel::new(net.lambda * moment)
}

/// The network as seen through the lognormal shadowing of `ch`.
pub fn shadowed_network<T: Real>(net: &NetworkModel<T>, ch: &ChannelModel<T>) -> Result<NetworkModel<T>> {
    net.validate()?;
    if ch.shadow_chi_db == T::zero() {
        return Ok(*net);
    }
    effective_density(net, lognormal_moment(ch.shadow_chi_db, ch.alpha)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moment_examples() {
        assert_eq!(lognormal_moment(0.0_f64, 3.0).unwrap(), 1.0);
        let m = lognormal_moment(12.0_f64, 4.0).unwrap();
        assert!((m - 2.596_960_336_855_568_4).abs() < 1e-12);
        for chi in [0.5, 3.0, 8.0] {
            assert!(lognormal_moment(chi, 3.5_f64).unwrap() > 1.0);
        }
        assert!(lognormal_moment(-1.0_f64, 4.0).is_err());
    }

    #[test]
    fn density_examples() {
        let net = NetworkModel::new(4.0_f64).unwrap();
        assert_eq!(effective_density(&net, 1.0).unwrap(), net);
        let d = effective_density(&net, lognormal_moment(12.0, 4.0).unwrap()).unwrap();
        assert!((d.lambda - 10.387_841_347_422_27).abs() < 1e-9);
        assert!(effective_density(&net, f64::INFINITY).is_err());
    }
}
