//! Particle and inerton-cloud kinematics.
//!
//! A particle of mass `m` moving with speed `v` carries a cloud of mass
//! `mu = m (v/c)^2`. The particle couples to its own cloud (`y`) with frequency
//! `omega` and to the neighbouring cloud (`y_next`) with `omega_tilde`. The
//! resulting linear system is solved in closed form ([`smooth_trajectory`]).
//! [`rectified_trajectory`] is the published form of the solution, which flips
//! the sign every half period and takes `|cos|` for the particle speed, so the
//! particle velocity cycles `v -> 0 -> v` instead of `v -> 0 -> -v`.

use core::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantities::constants;

fn check_speed(v: f64) -> Result<()> {
    let c = constants().c;
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::domain(alloc::format!("speed must be positive, got {v:e}")));
    }
    if v > c {
        return Err(Error::domain(alloc::format!(
            "speed {v:e} m/s exceeds the speed of light"
        )));
    }
    Ok(())
}

/// de Broglie wavelength `λ = h / (m v)`.
pub fn de_broglie(m: f64, v: f64) -> Result<f64> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::domain(alloc::format!("mass must be positive, got {m:e}")));
    }
    check_speed(v)?;
    Ok(constants().h / (m * v))
}

/// Inerton-cloud amplitude `Λ = λ c / v`.
pub fn inerton_amplitude(lambda: f64, v: f64) -> Result<f64> {
    check_speed(v)?;
    if !(lambda > 0.0) {
        return Err(Error::domain("wavelength must be positive"));
    }
    Ok(lambda * constants().c / v)
}

/// A free particle and the quantities derived from its mass and speed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeParticle {
    m: f64,
    v: f64,
    lambda: f64,
    cloud_amplitude: f64,
    period: f64,
    nu: f64,
    energy: f64,
}

impl FreeParticle {
    pub fn new(m: f64, v: f64) -> Result<Self> {
        let lambda = de_broglie(m, v)?;
        let cloud_amplitude = inerton_amplitude(lambda, v)?;
        let period = lambda / v;
        let nu = 1.0 / (2.0 * period);
        Ok(FreeParticle {
            m,
            v,
            lambda,
            cloud_amplitude,
            period,
            nu,
            energy: constants().h * nu,
        })
    }

    pub fn mass(&self) -> f64 {
        self.m
    }
    pub fn speed(&self) -> f64 {
        self.v
    }
    /// de Broglie wavelength λ (m).
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
    /// Cloud amplitude Λ (m).
    pub fn cloud_amplitude(&self) -> f64 {
        self.cloud_amplitude
    }
    /// Collision period T (s).
    pub fn period(&self) -> f64 {
        self.period
    }
    /// ν = 1 / (2T).
    pub fn frequency(&self) -> f64 {
        self.nu
    }
    /// E = h ν.
    pub fn energy(&self) -> f64 {
        self.energy
    }
}

/// `T = λ / v`, which for a free particle also equals `Λ / c`.
pub fn free_periods(p: &FreeParticle) -> f64 {
    let t = p.lambda / p.v;
    debug_assert!((t - p.cloud_amplitude / constants().c).abs() <= 1e-12 * t);
    t
}

/// Amplitudes of a particle coupled to two inerton clouds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoupledAmplitudes {
    /// λ_l = v π / Ω
    pub lambda: f64,
    /// Λ_l = c π / Ω
    pub cloud_amplitude: f64,
    /// Ω = sqrt(ω² + ω̃²)
    pub big_omega: f64,
}

pub fn coupled_amplitudes(v: f64, omega: f64, omega_tilde: f64) -> Result<CoupledAmplitudes> {
    check_speed(v)?;
    check_frequencies(omega, omega_tilde)?;
    let big_omega = omega.hypot(omega_tilde);
    Ok(CoupledAmplitudes {
        lambda: v * PI / big_omega,
        cloud_amplitude: constants().c * PI / big_omega,
        big_omega,
    })
}

fn check_frequencies(omega: f64, omega_tilde: f64) -> Result<()> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::domain(alloc::format!("omega must be positive, got {omega:e}")));
    }
    if !(omega_tilde >= 0.0) || !omega_tilde.is_finite() {
        return Err(Error::domain(alloc::format!(
            "omega_tilde must be non-negative, got {omega_tilde:e}"
        )));
    }
    Ok(())
}

/// Parameters of one particle/cloud cell. The cloud mass is always derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainParams {
    m: f64,
    v: f64,
    omega: f64,
    omega_tilde: f64,
    mu: f64,
}

impl ChainParams {
    pub fn new(m: f64, v: f64, omega: f64, omega_tilde: f64) -> Result<Self> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::domain(alloc::format!("mass must be positive, got {m:e}")));
        }
        check_speed(v)?;
        check_frequencies(omega, omega_tilde)?;
        let beta = v / constants().c;
        Ok(ChainParams {
            m,
            v,
            omega,
            omega_tilde,
            mu: m * beta * beta,
        })
    }

    pub fn mass(&self) -> f64 {
        self.m
    }
    pub fn speed(&self) -> f64 {
        self.v
    }
    pub fn omega(&self) -> f64 {
        self.omega
    }
    pub fn omega_tilde(&self) -> f64 {
        self.omega_tilde
    }
    /// Cloud mass μ = m (v/c)².
    pub fn cloud_mass(&self) -> f64 {
        self.mu
    }
    /// Ω = sqrt(ω² + ω̃²).
    pub fn big_omega(&self) -> f64 {
        self.omega.hypot(self.omega_tilde)
    }
    /// T_l = π / Ω, so that λ_l = v T_l.
    pub fn half_period(&self) -> f64 {
        PI / self.big_omega()
    }
    /// Full period 2π/Ω of the smooth solution.
    pub fn period(&self) -> f64 {
        2.0 * PI / self.big_omega()
    }
    pub fn amplitudes(&self) -> CoupledAmplitudes {
        let big_omega = self.big_omega();
        CoupledAmplitudes {
            lambda: self.v * PI / big_omega,
            cloud_amplitude: constants().c * PI / big_omega,
            big_omega,
        }
    }

    /// `m ẋ² + μ (ẏ² + ẏ_next²)`, conserved along the smooth solution and equal to `m v²`.
    pub fn quadratic_form(&self, s: &ChainState) -> f64 {
        self.m * s.x_dot * s.x_dot + self.mu * (s.y_dot * s.y_dot + s.y_next_dot * s.y_next_dot)
    }

    /// Right-hand side in the layout of [`ChainState::to_array`], for use with
    /// [`crate::numerics::integrate`].
    pub fn rhs(&self) -> impl Fn(f64, &[f64], &mut [f64]) + '_ {
        move |t, y, dy| {
            let s = ChainState::from_array(t, y);
            dy.copy_from_slice(&chain_rhs(self, &s));
        }
    }
}

/// Phase-space state of a cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainState {
    pub t: f64,
    pub x: f64,
    pub x_dot: f64,
    pub y: f64,
    pub y_dot: f64,
    pub y_next: f64,
    pub y_next_dot: f64,
}

impl ChainState {
    /// Everything at rest except `ẋ = v`.
    pub fn initial(p: &ChainParams) -> Self {
        ChainState {
            t: 0.0,
            x: 0.0,
            x_dot: p.v,
            y: 0.0,
            y_dot: 0.0,
            y_next: 0.0,
            y_next_dot: 0.0,
        }
    }

    /// `[x, ẋ, y, ẏ, y_next, ẏ_next]`
    pub fn to_array(&self) -> [f64; 6] {
        [self.x, self.x_dot, self.y, self.y_dot, self.y_next, self.y_next_dot]
    }

    pub fn from_array(t: f64, a: &[f64]) -> Self {
        ChainState {
            t,
            x: a[0],
            x_dot: a[1],
            y: a[2],
            y_dot: a[3],
            y_next: a[4],
            y_next_dot: a[5],
        }
    }
}

/// Time derivatives of `[x, ẋ, y, ẏ, y_next, ẏ_next]` from the Euler-Lagrange equations:
///
/// ```text
/// ẍ      = sqrt(μ/m) (ω ẏ - ω̃ ẏ_next)
/// ÿ      = -sqrt(m/μ) ω ẋ
/// ÿ_next = +sqrt(m/μ) ω̃ ẋ
/// ```
pub fn chain_rhs(p: &ChainParams, s: &ChainState) -> [f64; 6] {
    let cloud_to_particle = (p.mu / p.m).sqrt();
    let particle_to_cloud = (p.m / p.mu).sqrt();
    [
        s.x_dot,
        cloud_to_particle * (p.omega * s.y_dot - p.omega_tilde * s.y_next_dot),
        s.y_dot,
        -particle_to_cloud * p.omega * s.x_dot,
        s.y_next_dot,
        particle_to_cloud * p.omega_tilde * s.x_dot,
    ]
}

/// Closed-form solution of [`chain_rhs`] from [`ChainState::initial`].
pub fn smooth_trajectory(p: &ChainParams, t: f64) -> Result<ChainState> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain("time must be non-negative"));
    }
    let c = constants().c;
    let big_omega = p.big_omega();
    let (sin, cos) = (big_omega * t).sin_cos();
    let cloud = c / big_omega;
    let own = p.omega / big_omega;
    let next = p.omega_tilde / big_omega;
    // 1 - cos(θ) = 2 sin²(θ/2) avoids cancellation near θ = 0.
    let half = (0.5 * big_omega * t).sin();
    let one_minus_cos = 2.0 * half * half;
    Ok(ChainState {
        t,
        x: p.v / big_omega * sin,
        x_dot: p.v * cos,
        y: -cloud * own * one_minus_cos,
        y_dot: -c * own * sin,
        y_next: cloud * next * one_minus_cos,
        y_next_dot: c * next * sin,
    })
}

/// Rectified trajectory. Only the difference of the cloud coordinates is defined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectifiedState {
    pub t: f64,
    pub x: f64,
    pub x_dot: f64,
    /// y_l - y_{l+1}
    pub y_diff: f64,
}

/// `(-1)^⌊t/T_l⌋` with `T_l = π/Ω`.
fn flip_sign(p: &ChainParams, t: f64) -> f64 {
    let n = (t / p.half_period()).floor();
    if n % 2.0 == 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// ```text
/// x       = (λ_l/π) (-1)^⌊t/T_l⌋ sin(Ωt)
/// ẋ       = v |cos(Ωt)|
/// y - y'  = (ω/Ω) (Λ_l/π) [(-1)^⌊t/T_l⌋ cos(Ωt) - 1]
/// ```
pub fn rectified_trajectory(p: &ChainParams, t: f64) -> Result<RectifiedState> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain("time must be non-negative"));
    }
    let amp = p.amplitudes();
    let sign = flip_sign(p, t);
    let (sin, cos) = (amp.big_omega * t).sin_cos();
    Ok(RectifiedState {
        t,
        x: amp.lambda / PI * sign * sin,
        x_dot: p.v * cos.abs(),
        y_diff: p.omega / amp.big_omega * amp.cloud_amplitude / PI * (sign * cos - 1.0),
    })
}

/// Rectified `y_l - y_{l+1}` minus the smooth-solution difference at `t`.
///
/// Zero on the first half period when `ω̃ = 0`; otherwise the rectified
/// coefficient `ω/Ω` and the smooth `(ω + ω̃)/Ω` disagree and this is the gap,
/// which equals `y_next` on the first half period.
pub fn y_difference_residual(p: &ChainParams, t: f64) -> Result<f64> {
    let rectified = rectified_trajectory(p, t)?;
    let smooth = smooth_trajectory(p, t)?;
    Ok(rectified.y_diff - (smooth.y - smooth.y_next))
}
