//! E{S} for integer Nakagami fading with noise, by quadrature.
//!
//! The k-th derivative of `exp(f(ζ))`, `f(ζ) = -aζ^β - sζ` with `β = 2/α`, is
//! expanded exactly with
//! `∂^k e^f = e^f Σ_{l≤k} (1/l!) Σ_{j≤l} (-1)^j C(l,j) f^j ∂^k f^(l-j)`
//! after binomially expanding the powers of `f` into monomials
//! `a^p s^q ζ^(βp+q)`, whose derivatives are falling factorials. Substituting
//! `ζ = m_s ξ r^α` turns every term of the radial integral into
//! `∫ r (A r²)^p (S r^α)^q exp(-A r² - S r^α) dr`, which is smooth and
//! positive, so each is integrated separately and combined at the end.

use std::collections::BTreeMap;

use super::deltas::{binomial, factorial};
use super::{delta_i, integer_m, shadowed_network, ChannelModel, DiscoveryParams, NetworkModel};
use crate::error::{Error, Result};
use crate::numerics::{integrate_semiinf_with, pochhammer_falling, QuadOptions};
use crate::scalar::Real;

/// Largest Nakagami parameter accepted by [`es_general`].
pub const ES_GENERAL_MAX_M: u32 = 6;

/// One term `coef · a^p s^q ζ^(βp + q - k)` of a derivative expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial<T> {
    pub p: usize,
    pub q: usize,
    pub coef: T,
}

/// Coefficients of `d^k/dζ^k exp(-aζ^β - sζ) / exp(-aζ^β - sζ)` as monomials
/// in `a`, `s` and `ζ`, in `(p, q)` order.
pub fn derivative_expansion<T: Real>(k: usize, beta: T) -> Vec<Monomial<T>> {
    let mut acc: BTreeMap<(usize, usize), T> = BTreeMap::new();
    for l in 0..=k {
        let inv_lfact = factorial::<T>(l).recip();
        for j in 0..=l {
            let n = l - j;
            // f^j ∂^k f^n = (-1)^l g^j ∂^k g^n with g = aζ^β + sζ.
            let sign = if (j + l) % 2 == 0 { T::one() } else { -T::one() };
            let outer = sign * inv_lfact * binomial::<T>(l, j);
            for p1 in 0..=j {
                let c1 = binomial::<T>(j, p1);
                for p2 in 0..=n {
                    let exponent = beta * T::from_usize_exact(p2) + T::from_usize_exact(n - p2);
                    let falling = pochhammer_falling(exponent, k);
                    if falling == T::zero() {
                        continue;
                    }
                    let p = p1 + p2;
                    let term = outer * c1 * binomial::<T>(n, p2) * falling;
                    let slot = acc.entry((p, l - p)).or_insert_with(T::zero);
                    *slot = *slot + term;
                }
            }
        }
    }
    acc.into_iter().map(|((p, q), coef)| Monomial { p, q, coef }).collect()
}

/// Numerical E{S} for integer `m_s, m_i ≤ 6`, any `α > 2`, any `sigma2 ≥ 0`.
///
/// Reduces to [`super::es_zero_noise`] at `sigma2 = 0` and to
/// [`super::es_rayleigh_noise`] for Rayleigh fading at `α = 4`. Shadowing in
/// `ch` is applied through the effective density.
pub fn es_general<T: Real>(net: &NetworkModel<T>, ch: &ChannelModel<T>, dp: &DiscoveryParams<T>) -> Result<T> {
    ch.validate()?;
    dp.validate()?;
    let net = shadowed_network(net, ch)?;
    let m_s = integer_m("m_s", ch.m_s)?;
    let m_i = integer_m("m_i", ch.m_i)?;
    if m_s > ES_GENERAL_MAX_M || m_i > ES_GENERAL_MAX_M {
        return Err(Error::Capability(format!(
            "es_general supports m_s, m_i <= {ES_GENERAL_MAX_M}, got m_s = {m_s}, m_i = {m_i}"
        )));
    }

    let alpha = ch.alpha;
    let beta = T::lit(2.0) / alpha;
    let zeta_per_r_alpha = T::from_u32(m_s).unwrap() * dp.xi;
    let a = net.lambda * dp.interferer_fraction() * T::PI() * delta_i(m_i, alpha)?;
    let big_a = a * zeta_per_r_alpha.powf(beta);
    let big_s = ch.sigma2 * zeta_per_r_alpha;

    // Σ_k ((-m_s ξ)^k / k!) r^(kα) ζ^(-k) collapses to Σ_k (-1)^k / k!.
    let mut combined: BTreeMap<(usize, usize), T> = BTreeMap::new();
    for k in 0..m_s as usize {
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        let w = sign / factorial::<T>(k);
        for mono in derivative_expansion(k, beta) {
            let slot = combined.entry((mono.p, mono.q)).or_insert_with(T::zero);
            *slot = *slot + w * mono.coef;
        }
    }

    let opts = QuadOptions {
        rel_tol: T::lit(1e-10).max(T::tol_floor()),
        ..QuadOptions::default()
    };
    let mut total = T::zero();
    for ((p, q), coef) in combined {
        if coef == T::zero() || (q > 0 && big_s == T::zero()) {
            continue;
        }
        let integral = radial_term(p, q, alpha, big_a, big_s, opts)?;
        total = total + coef * integral;
    }
    Ok(T::TAU() * net.lambda * dp.rho * (T::one() - dp.rho) * total)
}

/// `∫₀^∞ r (A r²)^p (S r^α)^q exp(-A r² - S r^α) dr`.
fn radial_term<T: Real>(p: usize, q: usize, alpha: T, big_a: T, big_s: T, opts: QuadOptions<T>) -> Result<T> {
    let half = T::lit(0.5);
    let pf = T::from_usize_exact(p);
    let qf = T::from_usize_exact(q);
    // Peak of each factor on its own; the smaller one dominates the decay.
    let mut scale = ((pf + half) / big_a).sqrt();
    if big_s > T::zero() {
        let noise_scale = ((qf + T::lit(2.0) / alpha) / big_s).powf(alpha.recip());
        scale = scale.min(noise_scale);
    }
    let integrand = |r: T| {
        if r <= T::zero() {
            return T::zero();
        }
        let r2 = big_a * r * r;
        let ra = if big_s > T::zero() {
            big_s * r.powf(alpha)
        } else {
            T::zero()
        };
        let mut ln = r.ln() - r2 - ra;
        if p > 0 {
            ln = ln + pf * r2.ln();
        }
        if q > 0 {
            ln = ln + qf * ra.ln();
        }
        ln.exp()
    };
    Ok(integrate_semiinf_with(integrand, scale, opts)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{es_rayleigh_noise, es_zero_noise};

    /// `d^k e^f = e^f P_k` with `P_{k+1} = P_k' + f' P_k`; terms are
    /// `(coef, a-power, s-power, ζ-exponent)`.
    fn recursive_derivative(k: usize, beta: f64, a: f64, s: f64, zeta: f64) -> f64 {
        let mut poly: Vec<(f64, f64)> = vec![(1.0, 0.0)];
        for _ in 0..k {
            let mut next = Vec::new();
            for &(c, e) in &poly {
                if e != 0.0 {
                    next.push((c * e, e - 1.0));
                }
                next.push((-c * a * beta, e + beta - 1.0));
                next.push((-c * s, e));
            }
            poly = next;
        }
        poly.iter().map(|&(c, e)| c * zeta.powf(e)).sum()
    }

    #[test]
    fn expansion_matches_recursion() {
        for k in 0..=5 {
            for &alpha in &[2.5, 3.0, 4.0, 6.0] {
                let beta = 2.0 / alpha;
                for &(a, s, zeta) in &[(0.7, 0.0, 1.3), (0.7, 0.4, 0.6), (2.0, 1.5, 2.2)] {
                    let want = recursive_derivative(k, beta, a, s, zeta);
                    let got: f64 = derivative_expansion(k, beta)
                        .iter()
                        .map(|m| {
                            m.coef
                                * a.powi(m.p as i32)
                                * s.powi(m.q as i32)
                                * zeta.powf(beta * m.p as f64 + m.q as f64 - k as f64)
                        })
                        .sum();
                    let tol = 1e-11 * want.abs().max(1.0);
                    assert!((got - want).abs() < tol, "k={k} alpha={alpha}: {got} vs {want}");
                }
            }
        }
    }

    #[test]
    fn expansion_finite_difference_spot_check() {
        let (a, s, beta) = (0.8_f64, 0.3, 0.5);
        let f = |z: f64| (-a * z.powf(beta) - s * z).exp();
        let z = 1.7;
        let h = 1e-4;
        let fd2 = (f(z + h) - 2.0 * f(z) + f(z - h)) / (h * h);
        let exp2: f64 = derivative_expansion(2, beta)
            .iter()
            .map(|m| m.coef * a.powi(m.p as i32) * s.powi(m.q as i32) * z.powf(beta * m.p as f64 + m.q as f64 - 2.0))
            .sum::<f64>()
            * f(z);
        assert!((fd2 - exp2).abs() < 1e-6);
    }

    #[test]
    fn matches_zero_noise_closed_form() {
        let net = NetworkModel::new(4.0).unwrap();
        let dp = DiscoveryParams::new(4.0, 1.0, 0.5).unwrap();
        for m in 1..=4 {
            for &alpha in &[2.5, 3.0, 4.0, 6.0] {
                let ch = ChannelModel::interference_limited(alpha, m as f64).unwrap();
                let g = es_general(&net, &ch, &dp).unwrap();
                let c = es_zero_noise(&ch, &dp).unwrap();
                assert!(((g - c) / c).abs() < 1e-6, "m={m} alpha={alpha}: {g} vs {c}");
            }
        }
    }

    #[test]
    fn matches_rayleigh_closed_form() {
        let dp = DiscoveryParams::<f64>::new(8.0, 2.0, 0.3).unwrap();
        for &lambda in &[0.5, 4.0, 20.0] {
            for &s2 in &[1e-3, 0.1, 1.0, 10.0] {
                let net = NetworkModel::new(lambda).unwrap();
                let ch = ChannelModel::rayleigh_alpha4(s2).unwrap();
                let g = es_general(&net, &ch, &dp).unwrap();
                let c = es_rayleigh_noise(&net, &ch, &dp).unwrap();
                assert!(((g - c) / c).abs() < 1e-6, "lambda={lambda} s2={s2}: {g} vs {c}");
            }
        }
    }

    #[test]
    fn noise_lowers_performance_for_all_m() {
        let net = NetworkModel::new(4.0).unwrap();
        let dp = DiscoveryParams::new(4.0, 1.0, 0.2).unwrap();
        for m in 1..=6 {
            let quiet = ChannelModel::interference_limited(3.0, m as f64).unwrap();
            let noisy = quiet.with_sigma2(0.3);
            let q = es_general(&net, &quiet, &dp).unwrap();
            let n = es_general(&net, &noisy, &dp).unwrap();
            assert!(n > 0.0 && n < q, "m = {m}: {n} vs {q}");
        }
    }

    #[test]
    fn capability_and_regime_errors() {
        let net = NetworkModel::new(4.0).unwrap();
        let dp = DiscoveryParams::new(4.0, 1.0, 0.5).unwrap();
        let big = ChannelModel::interference_limited(4.0, 7.0).unwrap();
        assert!(matches!(es_general(&net, &big, &dp), Err(Error::Capability(_))));
        let frac = ChannelModel::interference_limited(4.0, 2.7).unwrap();
        assert!(matches!(es_general(&net, &frac, &dp), Err(Error::Regime(_))));
    }
}
