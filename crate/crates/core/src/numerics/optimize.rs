//! Finite differences and bracketed 1-D stationary points.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeOrder {
    First,
    Second,
}

/// Central finite-difference derivative.
///
/// The step is `max(|x|, 1) * eps^(1/3)` for the first derivative and
/// `max(|x|, 1) * eps^(1/4)` for the second.
pub fn fd_derivative<F: Fn(f64) -> f64>(f: F, x: f64, order: DerivativeOrder) -> f64 {
    let scale = x.abs().max(1.0);
    match order {
        DerivativeOrder::First => {
            let h = representable_step(x, scale * f64::EPSILON.cbrt());
            (f(x + h) - f(x - h)) / (2.0 * h)
        }
        DerivativeOrder::Second => {
            let h = representable_step(x, scale * f64::EPSILON.powf(0.25));
            (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
        }
    }
}

// Round the step so that x + h and x - h are exact.
fn representable_step(x: f64, h: f64) -> f64 {
    let up = (x + h) - x;
    let down = x - (x - h);
    up.min(down)
}

/// Nature of a stationary point as read from the curvature sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremum {
    Maximum,
    Minimum,
    Saddle,
}

impl Extremum {
    pub fn as_str(self) -> &'static str {
        match self {
            Extremum::Maximum => "max",
            Extremum::Minimum => "min",
            Extremum::Saddle => "saddle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryPoint {
    pub x: f64,
    pub kind: Extremum,
    /// Finite-difference `f'(x)` at the returned point.
    pub slope: f64,
    /// Finite-difference `f''(x)` at the returned point.
    pub curvature: f64,
}

const SCAN_POINTS: usize = 256;
const MAX_ITER: usize = 200;

/// Finds `x` in `[lo, hi]` with `f'(x) = 0`.
///
/// `f'` is sampled (finite differences) on a grid, logarithmic when `lo > 0` and
/// the interval spans more than two decades, linear otherwise. The first sign
/// change is then refined with Brent's root finder until the bracket is narrower
/// than `tol * max(|x|, 1)`. The kind comes from the sign of `f''` at the root;
/// a curvature below the rounding noise of the second difference is a saddle.
pub fn stationary_point<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<StationaryPoint> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain("stationary point search needs finite lo < hi"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("stationary point tolerance must be positive"));
    }
    let slope = |x: f64| fd_derivative(&f, x, DerivativeOrder::First);

    let logarithmic = lo > 0.0 && hi / lo > 100.0;
    let grid: Vec<f64> = (0..SCAN_POINTS)
        .map(|i| {
            let s = i as f64 / (SCAN_POINTS - 1) as f64;
            if i == SCAN_POINTS - 1 {
                hi
            } else if logarithmic {
                lo * (hi / lo).powf(s)
            } else {
                lo + (hi - lo) * s
            }
        })
        .collect();
    let slopes: Vec<f64> = grid.iter().map(|&x| slope(x)).collect();

    let bracket = slopes.windows(2).position(|w| {
        w[0].is_finite() && w[1].is_finite() && (w[0] == 0.0 || w[0].signum() != w[1].signum())
    });
    let Some(i) = bracket else {
        return Err(Error::NoBracket {
            lo,
            hi,
            pattern: sign_pattern(&slopes),
        });
    };

    let x = if slopes[i] == 0.0 {
        grid[i]
    } else {
        brent_root(&slope, grid[i], grid[i + 1], slopes[i], slopes[i + 1], tol)
    };

    let curvature = fd_derivative(&f, x, DerivativeOrder::Second);
    let h = x.abs().max(1.0) * f64::EPSILON.powf(0.25);
    let noise = 64.0 * f64::EPSILON * (f(x - h).abs() + 2.0 * f(x).abs() + f(x + h).abs())
        / (h * h);
    let kind = if curvature.abs() <= noise || curvature == 0.0 {
        Extremum::Saddle
    } else if curvature > 0.0 {
        Extremum::Minimum
    } else {
        Extremum::Maximum
    };
    Ok(StationaryPoint {
        x,
        kind,
        slope: slope(x),
        curvature,
    })
}

/// Run-length summary such as `+x120 -x136`, with `?` for non-finite samples.
fn sign_pattern(values: &[f64]) -> String {
    let mut runs: Vec<(char, usize)> = Vec::new();
    for v in values {
        let c = if !v.is_finite() {
            '?'
        } else if *v > 0.0 {
            '+'
        } else if *v < 0.0 {
            '-'
        } else {
            '0'
        };
        match runs.last_mut() {
            Some((last, n)) if *last == c => *n += 1,
            _ => runs.push((c, 1)),
        }
    }
    let parts: Vec<String> = runs
        .iter()
        .map(|(c, n)| alloc::format!("{c}x{n}"))
        .collect();
    parts.join(" ")
}

/// Brent's method on a bracket with `fa` and `fb` of opposite sign.
fn brent_root<G: Fn(f64) -> f64>(g: &G, a: f64, b: f64, fa: f64, fb: f64, tol: f64) -> f64 {
    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
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
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol * b.abs().max(1.0);
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return b;
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = g(b);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fd_examples() {
        let d = fd_derivative(|x| x * x, 3.0, DerivativeOrder::First);
        assert!((d - 6.0).abs() / 6.0 < 1e-6);
        let d2 = fd_derivative(f64::sin, 0.0, DerivativeOrder::Second);
        assert!(d2.abs() < 1e-5);
        let d2 = fd_derivative(|x| x.powi(3), 2.0, DerivativeOrder::Second);
        assert!((d2 - 12.0).abs() < 1e-5);
    }

    #[test]
    fn quadratic_vertex() {
        let p = stationary_point(|x| (x - 2.0) * (x - 2.0), 0.0, 5.0, 1e-10).unwrap();
        assert!((p.x - 2.0).abs() < 1e-9, "{p:?}");
        assert_eq!(p.kind, Extremum::Minimum);
    }

    #[test]
    fn power_law_maximum() {
        // (8/3) x^(5/3) = (11/3) x^(8/3)  =>  x = 8/11
        let f = |x: f64| x.powf(8.0 / 3.0) - x.powf(11.0 / 3.0);
        let p = stationary_point(f, 0.1, 1.5, 1e-12).unwrap();
        assert!((p.x - 8.0 / 11.0).abs() / (8.0 / 11.0) < 1e-9, "{p:?}");
        assert_eq!(p.kind, Extremum::Maximum);
    }

    #[test]
    fn log_scan_over_many_decades() {
        let x0 = 3.7e9;
        let f = |x: f64| -(x / x0 - 1.0).powi(2);
        let p = stationary_point(f, 2.0, 1e14, 1e-12).unwrap();
        assert!((p.x - x0).abs() / x0 < 1e-8, "{p:?}");
        assert_eq!(p.kind, Extremum::Maximum);
    }

    #[test]
    fn flat_function_is_saddle() {
        let p = stationary_point(|_| 4.0, -1.0, 1.0, 1e-12).unwrap();
        assert_eq!(p.kind, Extremum::Saddle);
        // x^3 has f' >= 0 everywhere, so nothing is bracketed.
        assert!(matches!(
            stationary_point(|x| x.powi(3) + x, -1.0, 1.0, 1e-12),
            Err(Error::NoBracket { .. })
        ));
    }

    #[test]
    fn no_bracket_lists_pattern() {
        match stationary_point(|x| x, 0.0, 1.0, 1e-8) {
            Err(Error::NoBracket { pattern, .. }) => assert_eq!(pattern, "+x256"),
            other => panic!("{other:?}"),
        }
        assert!(stationary_point(|x| x, 1.0, 0.0, 1e-8).is_err());
    }

    proptest::proptest! {
        #[test]
        fn quadratic_vertex_any_bracket(
            vertex in -50.0f64..50.0,
            left in 0.1f64..1e3,
            right in 0.1f64..1e3,
            curv in 0.01f64..100.0,
        ) {
            let f = |x: f64| curv * (x - vertex) * (x - vertex);
            let p = stationary_point(f, vertex - left, vertex + right, 1e-10).unwrap();
            proptest::prop_assert!((p.x - vertex).abs() <= 1e-8 * vertex.abs().max(1.0), "{:?}", p);
            proptest::prop_assert_eq!(p.kind, Extremum::Minimum);
        }
    }
}
