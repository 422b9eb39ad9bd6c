//! Fading-dependent constants of the desired and interfering links.

use crate::error::{domain, Error, Result};
use crate::numerics::{ln_gamma_positive, pochhammer_falling};
use crate::scalar::Real;

/// Largest `m` accepted by [`delta_s_tilde`].
pub const DELTA_S_TILDE_MAX_M: u32 = 12;

fn check(m: u32, alpha: f64) -> Result<()> {
    if m == 0 {
        return Err(domain("m", 0.0, "Nakagami parameter must be >= 1"));
    }
    if !(alpha > 2.0) || !alpha.is_finite() {
        return Err(domain("alpha", alpha, "path loss exponent must exceed 2"));
    }
    Ok(())
}

/// `m^(-2/α) Γ(m + 2/α) / (Γ(1 + 2/α) Γ(m))`.
pub fn delta_s<T: Real>(m: u32, alpha: T) -> Result<T> {
    check(m, alpha.as_f64())?;
    let mm = T::from_u32(m).unwrap();
    let b = T::lit(2.0) / alpha;
    let ln = -b * mm.ln() + ln_gamma_positive(mm + b) - ln_gamma_positive(T::one() + b) - ln_gamma_positive(mm);
    Ok(ln.exp())
}

/// `m^(-2/α) Γ(1 - 2/α) Γ(m + 2/α) / Γ(m)`. Grows without bound as `α → 2⁺`.
pub fn delta_i<T: Real>(m: u32, alpha: T) -> Result<T> {
    check(m, alpha.as_f64())?;
    let mm = T::from_u32(m).unwrap();
    let b = T::lit(2.0) / alpha;
    let ln = -b * mm.ln() + ln_gamma_positive(T::one() - b) + ln_gamma_positive(mm + b) - ln_gamma_positive(mm);
    Ok(ln.exp())
}

pub(crate) fn binomial<T: Real>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(T::one(), |acc, i| {
        acc * T::from_usize_exact(n - i) / T::from_usize_exact(i + 1)
    })
}

pub(crate) fn factorial<T: Real>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, i| acc * T::from_usize_exact(i))
}

/// The triple sum
/// `m^(-2/α) Σ_{k<m} (1/k!) Σ_{l≤k} Σ_{j≤l} (-1)^(k+l+j) C(l,j) ((2/α)(l-j))_(k)`
/// evaluated term by term. Equals [`delta_s`]; kept as an independent route.
pub fn delta_s_tilde<T: Real>(m: u32, alpha: T) -> Result<T> {
    check(m, alpha.as_f64())?;
    if m > DELTA_S_TILDE_MAX_M {
        return Err(Error::Capability(format!(
            "delta_s_tilde supports m <= {DELTA_S_TILDE_MAX_M}, got {m}"
        )));
    }
    let b = T::lit(2.0) / alpha;
    let mut total = T::zero();
    for k in 0..m as usize {
        let mut inner = T::zero();
        for l in 0..=k {
            for j in 0..=l {
                let sign = if (k + l + j) % 2 == 0 { T::one() } else { -T::one() };
                let n = T::from_usize_exact(l - j);
                inner = inner + sign * binomial::<T>(l, j) * pochhammer_falling(b * n, k);
            }
        }
        total = total + inner / factorial::<T>(k);
    }
    Ok(T::from_u32(m).unwrap().powf(-b) * total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gamma;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    // Direct Gamma-function evaluation, independent of the log-space path.
    fn delta_s_direct(m: u32, alpha: f64) -> f64 {
        let mm = m as f64;
        let b = 2.0 / alpha;
        mm.powf(-b) * gamma(mm + b).unwrap() / (gamma(1.0 + b).unwrap() * gamma(mm).unwrap())
    }

    #[test]
    fn delta_s_examples() {
        assert!((delta_s(1, 4.0_f64).unwrap() - 1.0).abs() < 1e-14);
        // Γ(4.5) = 105√π/16, Γ(1.5) = √π/2, Γ(4) = 6: (1/2)(105/8)/6 = 1.09375.
        assert!(rel(delta_s(4, 4.0_f64).unwrap(), 1.093_75) < 1e-13);
        assert!(rel(delta_s(2, 3.0_f64).unwrap(), 1.049_934_208_245_727_6) < 1e-12);
        assert!(rel(delta_s(2, 3.0_f64).unwrap(), delta_s_direct(2, 3.0)) < 1e-12);
    }

    #[test]
    fn delta_i_examples() {
        assert!(rel(delta_i(1, 4.0_f64).unwrap(), PI / 2.0) < 1e-13);
        assert!(rel(delta_i(3, 4.0_f64).unwrap(), 1.700_436_903_969_579_2) < 1e-12);
        let near = delta_i(1, 2.0001_f64).unwrap();
        let nearer = delta_i(1, 2.000_000_1_f64).unwrap();
        assert!(near.is_finite() && nearer.is_finite() && nearer > near && near > 1e3);
    }

    #[test]
    fn equal_fading_ratio_is_sinc() {
        for &alpha in &[2.5_f64, 3.0, 4.0, 6.0] {
            let x = 2.0 * PI / alpha;
            for m in 1..=6 {
                let ratio = delta_s(m, alpha).unwrap() / delta_i(m, alpha).unwrap();
                assert!(rel(ratio, x.sin() / x) < 1e-12, "m = {m}, alpha = {alpha}");
            }
        }
    }

    #[test]
    fn triple_sum_examples() {
        assert!((delta_s_tilde(1, 4.0_f64).unwrap() - 1.0).abs() < 1e-15);
        assert!(rel(delta_s_tilde(4, 4.0_f64).unwrap(), 1.093_75) < 1e-12);
        assert!(rel(delta_s_tilde(6, 3.3_f64).unwrap(), 1.096_424_760_769_384_3) < 1e-9);
    }

    #[test]
    fn triple_sum_identity() {
        for m in 1..=8 {
            for &alpha in &[2.5_f64, 3.0, 4.0, 6.0] {
                let t = delta_s_tilde(m, alpha).unwrap();
                assert!(rel(t, delta_s_direct(m, alpha)) < 1e-9, "m = {m}, alpha = {alpha}");
            }
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(delta_s_tilde(13, 4.0_f64), Err(Error::Capability(_))));
        assert!(delta_s(0, 4.0_f64).is_err());
        assert!(delta_i(1, 2.0_f64).is_err());
    }

    #[test]
    fn small_helpers() {
        assert_eq!(binomial::<f64>(5, 2), 10.0);
        assert_eq!(binomial::<f64>(5, 6), 0.0);
        assert_eq!(factorial::<f64>(0), 1.0);
        assert_eq!(factorial::<f64>(5), 120.0);
    }
}
