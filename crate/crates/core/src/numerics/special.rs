//! Gamma, scaled complementary error function and falling factorials.

use crate::error::{domain, Result};
use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural logarithm of the Gamma function for `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(domain("x", x.as_f64(), "ln_gamma requires a finite x > 0"));
    }
    Ok(ln_gamma_positive(x))
}

pub(crate) fn ln_gamma_positive<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        // Reflection: Γ(x)Γ(1-x) = π / sin(πx), with sin(πx) > 0 on (0, 1/2).
        let pi = T::PI();
        return (pi / (pi * x).sin()).ln() - ln_gamma_positive(T::one() - x);
    }
    let z = x - T::one();
    let mut acc = T::lit(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (z + T::from_usize_exact(i));
    }
    let t = z + T::lit(LANCZOS_G) + half;
    half * (T::TAU()).ln() + (z + half) * t.ln() - t + acc.ln()
}

/// Gamma function for `x > 0`.
pub fn gamma<T: Real>(x: T) -> Result<T> {
    ln_gamma(x).map(T::exp)
}

// W. J. Cody's rational Chebyshev approximations for erf/erfc (1969).
const ERF_A: [f64; 5] = [
    3.161_123_743_870_565_6,
    113.864_154_151_050_16,
    377.485_237_685_302_02,
    3_209.377_589_138_469_5,
    0.185_777_706_184_603_15,
];
const ERF_B: [f64; 4] = [
    23.601_290_952_344_12,
    244.024_637_934_444_17,
    1_282.616_526_077_372_3,
    2_844.236_833_439_170_6,
];
const ERFC_C: [f64; 9] = [
    0.564_188_496_988_670_09,
    8.883_149_794_388_376,
    66.119_190_637_141_63,
    298.635_138_197_400_13,
    881.952_221_241_769_1,
    1_712.047_612_634_070_6,
    2_051.078_377_826_071_5,
    1_230.339_354_797_997_2,
    2.153_115_354_744_038_5e-8,
];
const ERFC_D: [f64; 8] = [
    15.744_926_110_709_835,
    117.693_950_891_312_5,
    537.181_101_862_009_9,
    1_621.389_574_566_690_2,
    3_290.799_235_733_459_6,
    4_362.619_090_143_247,
    3_439.367_674_143_721_6,
    1_230.339_354_803_749_4,
];
const ERFC_P: [f64; 6] = [
    0.305_326_634_961_232_34,
    0.360_344_899_949_804_44,
    0.125_781_726_111_229_25,
    0.016_083_785_148_742_277,
    6.587_491_615_298_378e-4,
    0.016_315_387_137_302_098,
];
const ERFC_Q: [f64; 5] = [
    2.568_520_192_289_822_4,
    1.872_952_849_923_460_5,
    0.527_905_102_951_428_4,
    0.060_518_341_312_441_32,
    0.002_335_204_976_268_691_8,
];
const ERF_SMALL: f64 = 0.468_75;
const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_286_95;

fn erf_small<T: Real>(z: T) -> T {
    let a = |i: usize| T::lit(ERF_A[i]);
    let b = |i: usize| T::lit(ERF_B[i]);
    ((((a(4) * z + a(0)) * z + a(1)) * z + a(2)) * z + a(3)) / ((((z + b(0)) * z + b(1)) * z + b(2)) * z + b(3))
}

fn erfcx_mid<T: Real>(y: T) -> T {
    let mut num = T::lit(ERFC_C[8]) * y;
    let mut den = y;
    for i in 0..7 {
        num = (num + T::lit(ERFC_C[i])) * y;
        den = (den + T::lit(ERFC_D[i])) * y;
    }
    (num + T::lit(ERFC_C[7])) / (den + T::lit(ERFC_D[7]))
}

fn erfcx_tail<T: Real>(y: T) -> T {
    let z = (y * y).recip();
    let mut num = T::lit(ERFC_P[5]) * z;
    let mut den = z;
    for i in 0..4 {
        num = (num + T::lit(ERFC_P[i])) * z;
        den = (den + T::lit(ERFC_Q[i])) * z;
    }
    let pq = z * (num + T::lit(ERFC_P[4])) / (den + T::lit(ERFC_Q[4]));
    (T::lit(FRAC_1_SQRT_PI) - pq) / y
}

/// Scaled complementary error function `exp(t²)·erfc(t)` for `t ≥ 0`.
///
/// Never forms `exp(t²)` explicitly outside `t ≤ 0.46875`, so it stays finite
/// (and tends to `1/(t√π)`) for every representable `t`.
pub fn erfcx<T: Real>(t: T) -> Result<T> {
    if !(t >= T::zero()) {
        return Err(domain("t", t.as_f64(), "erfcx is only defined here for t >= 0"));
    }
    Ok(erfcx_nonneg(t))
}

pub(crate) fn erfcx_nonneg<T: Real>(t: T) -> T {
    if t.is_infinite() {
        return T::zero();
    }
    if t <= T::lit(ERF_SMALL) {
        let z = t * t;
        z.exp() * (T::one() - t * erf_small(z))
    } else if t <= T::lit(4.0) {
        erfcx_mid(t)
    } else {
        erfcx_tail(t)
    }
}

/// `exp(-y²)` computed as a product of two exponentials so the rounding
/// error of `y²` is not amplified for large `y`.
fn exp_neg_square<T: Real>(y: T) -> T {
    let sixteen = T::lit(16.0);
    let yt = (y * sixteen).trunc() / sixteen;
    (-yt * yt).exp() * (-(y - yt) * (y + yt)).exp()
}

/// Complementary error function for any real `t`.
pub fn erfc<T: Real>(t: T) -> T {
    if t.is_nan() {
        return t;
    }
    let y = t.abs();
    let upper = if y <= T::lit(ERF_SMALL) {
        T::one() - y * erf_small(y * y)
    } else {
        erfcx_nonneg(y) * exp_neg_square(y)
    };
    if t < T::zero() {
        T::lit(2.0) - upper
    } else {
        upper
    }
}

/// Falling factorial `x (x-1) ··· (x-k+1)`; the empty product for `k = 0` is 1.
pub fn pochhammer_falling<T: Real>(x: T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, i| acc * (x - T::from_usize_exact(i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    // 40-digit mpmath references.
    const LN_GAMMA_REF: [(f64, f64); 5] = [
        (0.1, 2.252_712_651_734_206),
        (0.5, 0.572_364_942_924_700_1),
        (5.0, 3.178_053_830_347_945_6),
        (7.3, 7.147_892_523_022_249),
        (50.0, 144.565_743_946_344_89),
    ];

    const ERFCX_REF: [(f64, f64); 14] = [
        (1e-3, 0.998_872_620_081_151_4),
        (0.3, 0.734_599_334_567_655_1),
        (0.468_75, 0.632_069_689_249_556_1),
        (0.5, 0.615_690_344_192_925_9),
        (1.0, 0.427_583_576_155_807),
        (2.0, 0.255_395_676_310_505_74),
        (3.9, 0.140_314_181_600_689_73),
        (4.1, 0.133_834_116_418_651_98),
        (10.0, 0.056_140_992_743_822_586),
        (26.0, 0.021_683_584_850_562_907),
        (30.0, 0.018_795_888_861_416_751),
        (100.0, 0.005_641_613_782_989_433),
        (1e3, 5.641_893_014_533_877e-4),
        (1e6, 5.641_895_835_474_742e-7),
    ];

    #[test]
    fn ln_gamma_reference_points() {
        assert!(ln_gamma(1.0_f64).unwrap().abs() < 1e-15);
        for (x, want) in LN_GAMMA_REF {
            let got = ln_gamma(x).unwrap();
            assert!((got - want).abs() <= 1e-12, "ln_gamma({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn ln_gamma_rejects_nonpositive() {
        assert!(ln_gamma(0.0_f64).is_err());
        assert!(ln_gamma(-1.5_f64).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
    }

    #[test]
    fn ln_gamma_recurrence() {
        let mut x = 0.5_f64;
        while x <= 20.0 {
            let d = ln_gamma(x + 1.0).unwrap() - ln_gamma(x).unwrap();
            assert!((d - x.ln()).abs() < 1e-12, "x = {x}");
            x += 0.125;
        }
    }

    #[test]
    fn erfcx_reference_points() {
        assert_eq!(erfcx(0.0_f64).unwrap(), 1.0);
        for (t, want) in ERFCX_REF {
            let got = erfcx(t).unwrap();
            assert!(((got - want) / want).abs() <= 1e-10, "erfcx({t}) = {got}, want {want}");
        }
    }

    #[test]
    fn erfcx_extremes() {
        assert!(erfcx(-1e-9_f64).is_err());
        let big = erfcx(1e300_f64).unwrap();
        assert!(big > 0.0 && big.is_finite());
        assert_eq!(erfcx(f64::INFINITY).unwrap(), 0.0);
    }

    #[test]
    fn erfcx_sandwich_on_log_grid() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        for i in 0..=600 {
            let t = 10f64.powf(-3.0 + 6.0 * i as f64 / 600.0);
            let v = erfcx(t).unwrap();
            let lower = 2.0 * t / (1.0 + 2.0 * t * t) / sqrt_pi;
            let upper = 1.0 / (t * sqrt_pi);
            assert!(lower < v && v < upper, "t = {t}: {lower} < {v} < {upper}");
        }
    }

    #[test]
    fn erfc_matches_scaled_form() {
        assert_eq!(erfc(0.0_f64), 1.0);
        for (t, want) in ERFCX_REF.iter().take(9) {
            let got = erfc(*t);
            let expect = want * (-t * t).exp();
            assert!(((got - expect) / expect).abs() < 1e-12, "t = {t}");
        }
        assert!((erfc(-1.0_f64) - (2.0 - erfc(1.0_f64))).abs() < 1e-15);
        assert_eq!(erfc(40.0_f64), 0.0);
    }

    #[test]
    fn single_precision() {
        assert!((erfcx(1.0_f32).unwrap() - 0.427_583_58).abs() < 1e-6);
        assert!((ln_gamma(0.5_f32).unwrap() - 0.572_364_9).abs() < 1e-6);
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer_falling(0.5_f64, 0), 1.0);
        assert_eq!(pochhammer_falling(0.5_f64, 2), -0.25);
        assert_eq!(pochhammer_falling(3.0_f64, 4), 0.0);
        assert_eq!(pochhammer_falling(5.0_f64, 3), 60.0);
    }
}
