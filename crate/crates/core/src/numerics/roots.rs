//! Bracketed scalar root finding.

use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// Closed search interval with `lo < hi`, both finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(domain("interval", (hi - lo).as_f64(), "bounds must be finite"));
        }
        if !(lo < hi) {
            return Err(domain("interval", (hi - lo).as_f64(), "requires lo < hi"));
        }
        Ok(Self { lo, hi })
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult<T> {
    pub x: T,
    /// `f(x)` at the returned point.
    pub residual: T,
    pub iterations: usize,
}

pub const DEFAULT_MAX_ITER: usize = 200;

/// Brent's method: inverse quadratic / secant steps guarded by bisection.
///
/// Stops once `|f(x)| <= tol` or the bracket has shrunk to `tol` (or to a
/// few ulps of `x`, whichever is larger). `f(lo)` and `f(hi)` must differ in
/// sign; an exact zero at either end is returned immediately.
pub fn find_root<T, F>(f: F, bracket: Interval<T>, tol: T) -> Result<RootResult<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    find_root_capped(f, bracket, tol, DEFAULT_MAX_ITER)
}

pub fn find_root_capped<T, F>(mut f: F, bracket: Interval<T>, tol: T, max_iter: usize) -> Result<RootResult<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == T::zero() {
        return Ok(RootResult {
            x: a,
            residual: fa,
            iterations: 0,
        });
    }
    if fb == T::zero() {
        return Ok(RootResult {
            x: b,
            residual: fb,
            iterations: 0,
        });
    }
    if !(fa.signum() * fb.signum() < T::zero()) {
        return Err(Error::Bracket {
            lo: a.as_f64(),
            hi: b.as_f64(),
            f_lo: fa.as_f64(),
            f_hi: fb.as_f64(),
        });
    }

    // b is the best estimate, a the previous one, c the contrapoint.
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for iter in 1..=max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let xtol = (two * T::epsilon() * b.abs()).max(half * tol);
        let m = half * (c - b);
        if fb.abs() <= tol || m.abs() <= xtol || fb == T::zero() {
            return Ok(RootResult {
                x: b,
                residual: fb,
                iterations: iter,
            });
        }

        if e.abs() >= xtol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * m * s;
                q = T::one() - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (two * m * qa * (qa - r) - (b - a) * (r - T::one()));
                q = (qa - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            } else {
                p = -p;
            }
            let min1 = T::lit(3.0) * m * q - (xtol * q).abs();
            let min2 = (e * q).abs();
            if two * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }

        a = b;
        fa = fb;
        b = if d.abs() > xtol { b + d } else { b + xtol * m.signum() };
        fb = f(b);
    }
    Err(Error::Convergence {
        iterations: max_iter,
        best: b.as_f64(),
        residual: fb.as_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        let flo = f(lo);
        while hi - lo > 1e-14 {
            let mid = 0.5 * (lo + hi);
            if (f(mid) > 0.0) == (flo > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn linear() {
        let r = find_root(|x: f64| x - 1.0, Interval::new(0.0, 2.0).unwrap(), 1e-14).unwrap();
        assert!((r.x - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cubic_matches_bisection() {
        let f = |x: f64| -x * x * x - 3.0 * x + 2.0;
        let want = bisect(f, 0.0, 1.0);
        assert!((want - 0.596_071_637_983_321_5).abs() < 1e-12);
        let r = find_root(f, Interval::new(0.0, 1.0).unwrap(), 1e-13).unwrap();
        assert!((r.x - want).abs() < 1e-12);
        assert!(r.residual.abs() <= 1e-13);
    }

    #[test]
    fn transcendental_matches_bisection() {
        let f = |x: f64| 2.0 * x - (1.0 + x) * (1.0 + x).ln();
        let want = bisect(f, 1.0, 10.0);
        assert!((want - 3.921_553_634_567_505).abs() < 1e-11);
        let r = find_root(f, Interval::new(1.0, 10.0).unwrap(), 1e-13).unwrap();
        assert!((r.x - want).abs() < 1e-11);
    }

    #[test]
    fn rejects_bracket_without_sign_change() {
        let err = find_root(|x: f64| x * x + 1.0, Interval::new(-1.0, 1.0).unwrap(), 1e-12);
        assert!(matches!(err, Err(Error::Bracket { .. })));
    }

    #[test]
    fn iteration_cap_reports_convergence_error() {
        let err = find_root_capped(|x: f64| x.powi(3) - 1e-3, Interval::new(-10.0, 10.0).unwrap(), 0.0, 3);
        assert!(matches!(err, Err(Error::Convergence { iterations: 3, .. })));
    }

    #[test]
    fn interval_invariants() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn endpoint_root() {
        let r = find_root(|x: f64| x, Interval::new(0.0, 1.0).unwrap(), 1e-12).unwrap();
        assert_eq!(r.x, 0.0);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn step_function_converges_to_jump() {
        let f = |x: f64| if x < 0.3 { -1.0 } else { 1.0 };
        let r = find_root(f, Interval::new(0.0, 1.0).unwrap(), 1e-10).unwrap();
        assert!((r.x - 0.3).abs() < 1e-9);
    }
}
