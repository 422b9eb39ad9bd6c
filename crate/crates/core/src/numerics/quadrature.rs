//! Globally adaptive Gauss–Kronrod quadrature on finite and half-infinite ranges.

use crate::error::{domain, Error, Result};
use crate::scalar::Real;

// 15-point Kronrod abscissae (non-negative half) and weights, with the
// embedded 7-point Gauss weights at the odd-indexed nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_subdivisions: usize,
}

impl<T: Real> Default for QuadOptions<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-9).max(T::tol_floor()),
            abs_tol: T::zero(),
            max_subdivisions: 1000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    pub error_estimate: T,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

fn kronrod15<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> Segment<T> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let f_center = f(center);
    let mut res_k = f_center * T::lit(WGK[7]);
    let mut res_g = f_center * T::lit(WG[3]);
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];
    for j in 0..7 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        let w = T::lit(WGK[j]);
        res_k = res_k + w * (f1 + f2);
        res_abs = res_abs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = res_k * half;
    let mut res_asc = T::lit(WGK[7]) * (f_center - mean).abs();
    for j in 0..7 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half_len.abs();
    let value = res_k * half_len;
    res_abs = res_abs * scale;
    res_asc = res_asc * scale;
    let mut error = ((res_k - res_g) * half_len).abs();
    if res_asc != T::zero() && error != T::zero() {
        error = res_asc * T::one().min((T::lit(200.0) * error / res_asc).powf(T::lit(1.5)));
    }
    let roundoff = T::lit(50.0) * T::epsilon() * res_abs;
    if res_abs > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) {
        error = error.max(roundoff);
    }
    Segment { a, b, value, error }
}

/// Adaptive integration of `f` over the finite interval `[a, b]`.
pub fn integrate<T, F>(mut f: F, a: T, b: T, opts: QuadOptions<T>) -> Result<Integral<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    if !a.is_finite() || !b.is_finite() {
        return Err(domain("bounds", (b - a).as_f64(), "finite bounds required"));
    }
    let mut segments = vec![kronrod15(&mut f, a, b)];
    loop {
        let (value, error) = segments
            .iter()
            .fold((T::zero(), T::zero()), |(v, e), s| (v + s.value, e + s.error));
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::Integration {
                subdivisions: segments.len(),
                estimate: value.as_f64(),
                error_estimate: error.as_f64(),
            });
        }
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= target {
            return Ok(Integral {
                value,
                error_estimate: error,
                subdivisions: segments.len(),
            });
        }
        if segments.len() >= opts.max_subdivisions {
            return Err(Error::Integration {
                subdivisions: segments.len(),
                estimate: value.as_f64(),
                error_estimate: error.as_f64(),
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |(wi, we), (i, s)| {
                if s.error > we {
                    (i, s.error)
                } else {
                    (wi, we)
                }
            });
        let seg = segments.swap_remove(worst);
        let mid = T::lit(0.5) * (seg.a + seg.b);
        if !(seg.a < mid && mid < seg.b) {
            // Interval can no longer be split at this precision.
            return Err(Error::Integration {
                subdivisions: segments.len() + 1,
                estimate: value.as_f64(),
                error_estimate: error.as_f64(),
            });
        }
        segments.push(kronrod15(&mut f, seg.a, mid));
        segments.push(kronrod15(&mut f, mid, seg.b));
    }
}

/// Integrates `f` over `(0, ∞)` using `r = scale·s/(1-s)`, `s ∈ (0, 1)`.
///
/// `transform_scale` maps to `s = 1/2`; placing it near the bulk of the
/// integrand keeps the transformed integrand smooth.
pub fn integrate_semiinf<T, F>(f: F, transform_scale: T) -> Result<Integral<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    integrate_semiinf_with(f, transform_scale, QuadOptions::default())
}

pub fn integrate_semiinf_with<T, F>(mut f: F, transform_scale: T, opts: QuadOptions<T>) -> Result<Integral<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    if !(transform_scale > T::zero()) || !transform_scale.is_finite() {
        return Err(domain(
            "transform_scale",
            transform_scale.as_f64(),
            "must be finite and > 0",
        ));
    }
    let mapped = move |s: T| {
        let gap = T::one() - s;
        if gap <= T::zero() {
            return T::zero();
        }
        let r = transform_scale * s / gap;
        let v = f(r);
        if v == T::zero() {
            return v;
        }
        v * transform_scale / (gap * gap)
    };
    integrate(mapped, T::zero(), T::one(), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn exponential() {
        let r = integrate_semiinf(|r: f64| (-r).exp(), 1.0).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
        assert!(r.error_estimate < 1e-8);
    }

    #[test]
    fn gaussian_moments() {
        let r = integrate_semiinf(|r: f64| r * (-r * r).exp(), 1.0).unwrap();
        assert!((r.value - 0.5).abs() < 1e-10);
        let r = integrate_semiinf(|r: f64| r * (-PI * r * r).exp(), 0.5).unwrap();
        assert!((r.value - 1.0 / (2.0 * PI)).abs() < 1e-11);
    }

    #[test]
    fn monomial_exponential_family() {
        // ∫ r^n e^{-b r} dr = n! / b^{n+1}
        for n in 0..8 {
            for &b in &[0.1, 1.0, 7.5] {
                let f = |r: f64| r.powi(n) * (-b * r).exp();
                let scale = (n as f64 + 1.0) / b;
                let got = integrate_semiinf(f, scale).unwrap().value;
                let fact: f64 = (1..=n).map(f64::from).product();
                let want = fact / b.powi(n + 1);
                assert!(((got - want) / want).abs() < 1e-8, "n = {n}, b = {b}");
            }
        }
    }

    #[test]
    fn poor_scale_still_converges() {
        let r = integrate_semiinf(|r: f64| (-r).exp(), 1e3).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
        let r = integrate_semiinf(|r: f64| (-r).exp(), 1e-3).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn finite_interval() {
        let r = integrate(|x: f64| x.sin(), 0.0, PI, QuadOptions::default()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn non_convergence_carries_estimate() {
        let opts = QuadOptions {
            rel_tol: 1e-14,
            abs_tol: 0.0,
            max_subdivisions: 4,
        };
        let err = integrate(|x: f64| x.sqrt().recip(), 0.0, 1.0, opts).unwrap_err();
        match err {
            Error::Integration {
                subdivisions, estimate, ..
            } => {
                assert_eq!(subdivisions, 4);
                assert!(estimate > 1.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_scale() {
        assert!(integrate_semiinf(|r: f64| (-r).exp(), 0.0).is_err());
        assert!(integrate_semiinf(|r: f64| (-r).exp(), f64::NAN).is_err());
    }

    #[test]
    fn single_precision() {
        let r = integrate_semiinf(|r: f32| (-r).exp(), 1.0).unwrap();
        assert!((r.value - 1.0).abs() < 1e-5);
    }
}
