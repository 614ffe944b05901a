//! Adaptive Gauss-Kronrod (7, 15) quadrature.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;

use crate::error::{Error, Result};

// Nodes and weights as tabulated (QUADPACK), not rounded to f64 by hand.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
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

// Gauss weights for the odd-indexed Kronrod nodes plus the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const DEFAULT_LIMIT: usize = 1000;

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<Segment> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = f(center);
    let mut res_k = f_center * WGK[7];
    let mut res_g = f_center * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    if !res_k.is_finite() {
        return Err(Error::NonFinite("quadrature integrand"));
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    Ok(Segment {
        lo,
        hi,
        value: res_k * half,
        error: rescale_error((res_k - res_g) * half, res_abs * scale, res_asc * scale),
    })
}

/// `∫_lo^hi f(x) dx` with estimated error at most `rel_tol * |result| + 1e-300`.
pub fn quad<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, rel_tol: f64) -> Result<f64> {
    quad_with_limit(f, lo, hi, rel_tol, DEFAULT_LIMIT)
}

/// As [`quad`] with an explicit bound on the number of subintervals.
pub fn quad_with_limit<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Result<f64> {
    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain("quadrature bounds must be finite with lo <= hi"));
    }
    if !(rel_tol > 0.0) {
        return Err(Error::domain("quadrature tolerance must be positive"));
    }
    if lo == hi {
        return Ok(0.0);
    }

    let first = gk15(&f, lo, hi)?;
    let mut total = first.value;
    let mut total_err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    while total_err > rel_tol * total.abs() + 1e-300 {
        if heap.len() >= max_segments {
            return Err(Error::QuadratureNotConverged {
                estimate: total,
                error: total_err,
                subdivisions: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            return Err(Error::QuadratureNotConverged {
                estimate: total,
                error: total_err,
                subdivisions: heap.len() + 1,
            });
        }
        let left = gk15(&f, worst.lo, mid)?;
        let right = gk15(&f, mid, worst.hi)?;
        heap.push(left);
        heap.push(right);
        total = heap.iter().map(|s| s.value).sum();
        total_err = heap.iter().map(|s| s.error).sum();
    }
    Ok(super::kahan_sum(heap.iter().map(|s| s.value)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials() {
        for n in 0..=6 {
            let got = quad(|x| x.powi(n), 0.0, 1.0, 1e-12).unwrap();
            let exact = 1.0 / (n as f64 + 1.0);
            assert!((got - exact).abs() / exact < 1e-10, "n={n}: {got}");
        }
    }

    #[test]
    fn reference_examples() {
        assert!((quad(|x| x * x, 0.0, 1.0, 1e-12).unwrap() - 1.0 / 3.0).abs() < 1e-10);
        assert_eq!(quad(|x| x.exp(), 1.0, 1.0, 1e-12).unwrap(), 0.0);
        let upper = 8.0f64.cbrt();
        assert!((quad(|x| x, 1.0, upper, 1e-12).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn peaked_integrand_needs_subdivision() {
        // ∫_0^1 1/(1e-4 + (x-0.3)^2) dx
        let w = 1e-2f64;
        let f = |x: f64| 1.0 / (w * w + (x - 0.3) * (x - 0.3));
        let exact = ((0.7 / w).atan() + (0.3 / w).atan()) / w;
        let got = quad(f, 0.0, 1.0, 1e-12).unwrap();
        assert!((got - exact).abs() / exact < 1e-11);
    }

    #[test]
    fn reports_non_convergence_with_estimate() {
        let f = |x: f64| (1.0 / x).sin() / x;
        match quad_with_limit(f, 1e-6, 1.0, 1e-14, 8) {
            Err(Error::QuadratureNotConverged { estimate, .. }) => assert!(estimate.is_finite()),
            other => panic!("unexpected {other:?}"),
        }
        assert!(quad(|x| x, 2.0, 1.0, 1e-8).is_err());
        assert!(quad(|_| f64::NAN, 0.0, 1.0, 1e-8).is_err());
    }
}
