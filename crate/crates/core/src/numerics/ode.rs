//! Dormand-Prince 5(4) integrator with adaptive step size and dense output.

use alloc::vec;
use alloc::vec::Vec;


use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// Difference between the 5th and embedded 4th order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

// Continuous extension (Hairer, Norsett & Wanner, DOPRI5 `contd5`).
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 10.0;
const DEFAULT_MAX_STEPS: usize = 1_000_000;

/// An initial value problem `y' = rhs(t, y)`, `y(t0) = initial_state`, solved on `[t0, t1]`.
///
/// `rhs(t, y, dydt)` writes the derivative into `dydt`, which always has length `dimension`.
pub struct OdeProblem<F> {
    pub dimension: usize,
    pub rhs: F,
    pub initial_state: Vec<f64>,
    pub t0: f64,
    pub t1: f64,
    pub max_steps: usize,
}

impl<F> OdeProblem<F>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    pub fn new(rhs: F, initial_state: Vec<f64>, t0: f64, t1: f64) -> Self {
        OdeProblem {
            dimension: initial_state.len(),
            rhs,
            initial_state,
            t0,
            t1,
            max_steps: DEFAULT_MAX_STEPS,
        }
    }
}

/// States sampled at the requested times, plus step statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub evaluations: usize,
}

impl Trajectory {
    pub fn last(&self) -> Option<(f64, &[f64])> {
        self.times
            .last()
            .copied()
            .zip(self.states.last().map(Vec::as_slice))
    }
}

struct Stages {
    k: [Vec<f64>; 7],
    tmp: Vec<f64>,
}

/// Integrates `problem` with local error control `|err_i| <= abs_tol + rel_tol * |y_i|`
/// (RMS norm over components).
///
/// With an empty `sample_times` every accepted step is recorded. Otherwise the
/// states are interpolated (4th order) at each requested time, which must be
/// non-decreasing and inside `[t0, t1]`.
pub fn integrate<F>(
    problem: &OdeProblem<F>,
    rel_tol: f64,
    abs_tol: f64,
    sample_times: &[f64],
) -> Result<Trajectory>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let n = problem.dimension;
    let (t0, t1) = (problem.t0, problem.t1);
    if !(rel_tol > 0.0 && abs_tol > 0.0) {
        return Err(Error::domain("tolerances must be positive"));
    }
    if !(t1 > t0) || !t0.is_finite() || !t1.is_finite() {
        return Err(Error::domain("integration interval must satisfy t1 > t0"));
    }
    if problem.initial_state.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: problem.initial_state.len(),
        });
    }
    if n == 0 {
        return Err(Error::domain("problem dimension must be positive"));
    }
    if sample_times.windows(2).any(|w| w[1] < w[0])
        || sample_times.iter().any(|&t| !(t >= t0 && t <= t1))
    {
        return Err(Error::domain(
            "sample times must be sorted and lie inside [t0, t1]",
        ));
    }

    let rhs = |t: f64, y: &[f64], out: &mut [f64]| (problem.rhs)(t, y, out);
    let norm = |err: &[f64], y0: &[f64], y1: &[f64]| -> f64 {
        let sum: f64 = (0..n)
            .map(|i| {
                let scale = abs_tol + rel_tol * y0[i].abs().max(y1[i].abs());
                let r = err[i] / scale;
                r * r
            })
            .sum();
        (sum / n as f64).sqrt()
    };

    let mut out = Trajectory {
        times: Vec::new(),
        states: Vec::new(),
        accepted_steps: 0,
        rejected_steps: 0,
        evaluations: 0,
    };

    let mut t = t0;
    let mut y = problem.initial_state.clone();
    let mut st = Stages {
        k: core::array::from_fn(|_| vec![0.0; n]),
        tmp: vec![0.0; n],
    };
    rhs(t, &y, &mut st.k[0]);
    out.evaluations += 1;
    check_finite(&st.k[0])?;

    let mut next_sample = 0;
    if sample_times.is_empty() {
        out.times.push(t);
        out.states.push(y.clone());
    } else {
        while next_sample < sample_times.len() && sample_times[next_sample] == t0 {
            out.times.push(t0);
            out.states.push(y.clone());
            next_sample += 1;
        }
    }

    let mut h = initial_step(&rhs, t, &y, &st.k[0], t1 - t0, rel_tol, abs_tol, &mut st.tmp);
    out.evaluations += 1;

    let mut y_new = vec![0.0; n];
    let mut err = vec![0.0; n];
    let mut dense: [Vec<f64>; 5] = core::array::from_fn(|_| vec![0.0; n]);
    let mut last_rejected = false;

    while t < t1 {
        if out.accepted_steps + out.rejected_steps >= problem.max_steps {
            return Err(Error::TooManySteps {
                max_steps: problem.max_steps,
                t_end: t1,
            });
        }
        if h <= 1e3 * f64::EPSILON * t.abs().max(f64::MIN_POSITIVE) {
            return Err(Error::StepUnderflow { t, h });
        }
        let last = t + h >= t1;
        if last {
            h = t1 - t;
        }

        dp_step(&rhs, t, h, &y, &mut st, &mut y_new);
        out.evaluations += 6;
        for i in 0..n {
            let k = &st.k;
            err[i] = h
                * (E1 * k[0][i]
                    + E3 * k[2][i]
                    + E4 * k[3][i]
                    + E5 * k[4][i]
                    + E6 * k[5][i]
                    + E7 * k[6][i]);
        }
        let e = norm(&err, &y, &y_new);
        if !e.is_finite() {
            // Treat overflow inside a trial step as a rejection and shrink hard.
            out.rejected_steps += 1;
            h *= MIN_FACTOR;
            last_rejected = true;
            continue;
        }

        if e <= 1.0 {
            let t_new = if last { t1 } else { t + h };
            if !sample_times.is_empty() {
                build_dense(h, &y, &y_new, &st.k, &mut dense);
                while next_sample < sample_times.len() && sample_times[next_sample] <= t_new {
                    let ts = sample_times[next_sample];
                    let theta = (ts - t) / h;
                    out.times.push(ts);
                    out.states.push(interpolate(&dense, theta));
                    next_sample += 1;
                }
            }
            t = t_new;
            core::mem::swap(&mut y, &mut y_new);
            check_finite(&y)?;
            // FSAL: the last stage is the derivative at the new point.
            st.k.swap(0, 6);
            out.accepted_steps += 1;
            if sample_times.is_empty() {
                out.times.push(t);
                out.states.push(y.clone());
            }

            let mut factor = SAFETY * e.max(1e-10).powf(-0.2);
            factor = factor.clamp(MIN_FACTOR, MAX_FACTOR);
            if last_rejected {
                factor = factor.min(1.0);
            }
            h *= factor;
            last_rejected = false;
        } else {
            out.rejected_steps += 1;
            let factor = (SAFETY * e.powf(-0.2)).max(MIN_FACTOR);
            h *= factor;
            last_rejected = true;
        }
    }

    Ok(out)
}

fn check_finite(v: &[f64]) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite("ODE right-hand side"))
    }
}

fn dp_step<R>(rhs: &R, t: f64, h: f64, y: &[f64], st: &mut Stages, y_new: &mut [f64])
where
    R: Fn(f64, &[f64], &mut [f64]),
{
    let n = y.len();
    let [k1, k2, k3, k4, k5, k6, k7] = &mut st.k;
    let tmp = &mut st.tmp;

    for i in 0..n {
        tmp[i] = y[i] + h * A21 * k1[i];
    }
    rhs(t + C2 * h, tmp, k2);
    for i in 0..n {
        tmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
    }
    rhs(t + C3 * h, tmp, k3);
    for i in 0..n {
        tmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
    }
    rhs(t + C4 * h, tmp, k4);
    for i in 0..n {
        tmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
    }
    rhs(t + C5 * h, tmp, k5);
    for i in 0..n {
        tmp[i] = y[i]
            + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
    }
    rhs(t + h, tmp, k6);
    for i in 0..n {
        y_new[i] = y[i]
            + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
    }
    rhs(t + h, y_new, k7);
}

fn build_dense(h: f64, y0: &[f64], y1: &[f64], k: &[Vec<f64>; 7], dense: &mut [Vec<f64>; 5]) {
    for i in 0..y0.len() {
        let ydiff = y1[i] - y0[i];
        let bspl = h * k[0][i] - ydiff;
        dense[0][i] = y0[i];
        dense[1][i] = ydiff;
        dense[2][i] = bspl;
        dense[3][i] = ydiff - h * k[6][i] - bspl;
        dense[4][i] = h
            * (D1 * k[0][i]
                + D3 * k[2][i]
                + D4 * k[3][i]
                + D5 * k[4][i]
                + D6 * k[5][i]
                + D7 * k[6][i]);
    }
}

fn interpolate(dense: &[Vec<f64>; 5], theta: f64) -> Vec<f64> {
    let theta1 = 1.0 - theta;
    (0..dense[0].len())
        .map(|i| {
            dense[0][i]
                + theta
                    * (dense[1][i]
                        + theta1 * (dense[2][i] + theta * (dense[3][i] + theta1 * dense[4][i])))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn initial_step<R>(
    rhs: &R,
    t: f64,
    y: &[f64],
    f0: &[f64],
    span: f64,
    rel_tol: f64,
    abs_tol: f64,
    tmp: &mut [f64],
) -> f64
where
    R: Fn(f64, &[f64], &mut [f64]),
{
    let n = y.len();
    let scale = |i: usize| abs_tol + rel_tol * y[i].abs();
    let rms = |v: &dyn Fn(usize) -> f64| -> f64 {
        ((0..n).map(|i| v(i) * v(i)).sum::<f64>() / n as f64).sqrt()
    };
    let d0 = rms(&|i| y[i] / scale(i));
    let d1 = rms(&|i| f0[i] / scale(i));
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6 * span
    } else {
        0.01 * d0 / d1
    };
    let h0 = h0.min(span);

    let y1: Vec<f64> = (0..n).map(|i| y[i] + h0 * f0[i]).collect();
    rhs(t + h0, &y1, tmp);
    let d2 = rms(&|i| (tmp[i] - f0[i]) / scale(i)) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6 * span)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1).min(span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn exponential_decay() {
        let problem = OdeProblem::new(|_, y: &[f64], dy: &mut [f64]| dy[0] = -y[0], vec![1.0], 0.0, 1.0);
        let traj = integrate(&problem, 1e-12, 1e-14, &[]).unwrap();
        let (t, y) = traj.last().unwrap();
        assert_eq!(t, 1.0);
        let exact = (-1.0f64).exp();
        assert!((y[0] - exact).abs() / exact < 1e-8);
    }

    #[test]
    fn harmonic_oscillator_energy() {
        let problem = OdeProblem::new(
            |_, y: &[f64], dy: &mut [f64]| {
                dy[0] = y[1];
                dy[1] = -y[0];
            },
            vec![1.0, 0.0],
            0.0,
            20.0 * PI,
        );
        let samples: Vec<f64> = (0..=200).map(|i| i as f64 * 0.1 * PI).collect();
        let traj = integrate(&problem, 1e-12, 1e-14, &samples).unwrap();
        assert_eq!(traj.times.len(), samples.len());
        for (t, y) in traj.times.iter().zip(&traj.states) {
            let energy = y[0] * y[0] + y[1] * y[1];
            assert!((energy - 1.0).abs() < 1e-7, "energy drift at t={t}: {energy}");
            assert!((y[0] - t.cos()).abs() < 1e-8);
        }
    }

    #[test]
    fn dense_output_matches_step_grid() {
        let rhs = |t: f64, _: &[f64], dy: &mut [f64]| dy[0] = t.cos();
        let problem = OdeProblem::new(rhs, vec![0.0], 0.0, 3.0);
        let samples = [0.0, 0.3, 1.7, 2.9999, 3.0];
        let traj = integrate(&problem, 1e-10, 1e-12, &samples).unwrap();
        for (t, y) in traj.times.iter().zip(&traj.states) {
            assert!((y[0] - t.sin()).abs() < 1e-9, "t={t}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        let rhs = |_: f64, y: &[f64], dy: &mut [f64]| dy[0] = y[0];
        let p = OdeProblem::new(rhs, vec![1.0], 0.0, 1.0);
        assert!(integrate(&p, 0.0, 1e-9, &[]).is_err());
        assert!(integrate(&p, 1e-9, 1e-9, &[0.5, 0.2]).is_err());
        assert!(integrate(&p, 1e-9, 1e-9, &[2.0]).is_err());
        let backwards = OdeProblem::new(rhs, vec![1.0], 1.0, 0.0);
        assert!(integrate(&backwards, 1e-9, 1e-9, &[]).is_err());
        let mut mismatched = OdeProblem::new(rhs, vec![1.0], 0.0, 1.0);
        mismatched.dimension = 2;
        assert!(matches!(
            integrate(&mismatched, 1e-9, 1e-9, &[]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn singular_rhs_underflows() {
        // y' = 1 / (1 - t)^2 blows up at t = 1.
        let rhs = |t: f64, _: &[f64], dy: &mut [f64]| dy[0] = 1.0 / ((1.0 - t) * (1.0 - t));
        let p = OdeProblem::new(rhs, vec![0.0], 0.0, 2.0);
        let err = integrate(&p, 1e-10, 1e-10, &[]).unwrap_err();
        assert!(
            matches!(err, Error::StepUnderflow { .. } | Error::NonFinite(_)),
            "{err:?}"
        );
    }

    #[test]
    fn empirical_order_at_least_four() {
        let run = |tol: f64| {
            let p = OdeProblem::new(
                |_, y: &[f64], dy: &mut [f64]| {
                    dy[0] = y[1];
                    dy[1] = -y[0];
                },
                vec![1.0, 0.0],
                0.0,
                10.0 * PI,
            );
            let traj = integrate(&p, tol, tol, &[]).unwrap();
            let (_, y) = traj.last().unwrap();
            let err = ((y[0] - 1.0).powi(2) + y[1].powi(2)).sqrt();
            (err, traj.accepted_steps as f64)
        };
        let (e1, n1) = run(1e-6);
        let (e2, n2) = run(1e-11);
        assert!(e2 < e1 / 100.0, "e1={e1} e2={e2}");
        let order = (e1 / e2).ln() / (n2 / n1).ln();
        assert!(order >= 4.0, "empirical order {order} (n1={n1}, n2={n2})");
    }
}
