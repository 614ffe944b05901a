//! Droplet statistics: the lattice gas, the reduced action in the combined
//! cluster variable `aleph`, the resulting cluster size, the heavy-electron
//! mass and the bond energy.
//!
//! Two leading-order actions are kept side by side. [`LeadingVariant::FromAb`]
//! is `½K(a - b)aleph²` with the exact `a`, `b` integrals; its stationary point
//! tends to `(20/11) C_U / C_V`. [`LeadingVariant::AsPrinted`] uses the
//! published coefficients `3C_U/(2k_BT)` and `6C_V/k_BT`, whose attraction term
//! is ten times larger, so its stationary point is `(2/11) C_U / C_V`.

mod lattice_gas;
pub mod published;
mod report;

pub use lattice_gas::{
    hamiltonian, partition_function, partition_function_gray, LatticeGas, MAX_ENUMERATED_SITES,
};
pub use report::{reconcile, ClusterReport, Provenance, ReportEntry};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{quad, stationary_point, Extremum};
use crate::quantities::constants;

/// Default search interval for the cluster size.
pub const DEFAULT_BRACKET: (f64, f64) = (2.0, 1e14);

/// Relative tolerance handed to the stationary-point search.
const SIZE_TOL: f64 = 1e-12;

/// Inputs of the droplet model, SI units throughout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusterParams {
    /// Temperature (K).
    pub temperature: f64,
    /// Mean electron spacing (m).
    pub r_bar: f64,
    /// Oscillation amplitude of an electron about its site (m).
    pub delta_r: f64,
    /// Vibration frequency (rad/s).
    pub omega: f64,
    /// Electron mass inside the droplet (kg).
    pub m_eff: f64,
    /// Total number of emitted electrons, when known.
    pub n_total: Option<f64>,
    /// Number of clusters `K`.
    pub clusters: f64,
    /// Mean filling `<n>` in `(0, 1]`.
    pub mean_fill: f64,
    /// Fugacity `exp(-mu / k_BT)`.
    pub fugacity: f64,
}

impl ClusterParams {
    pub fn new(temperature: f64, r_bar: f64, delta_r: f64, omega: f64, m_eff: f64) -> Result<Self> {
        let p = ClusterParams {
            temperature,
            r_bar,
            delta_r,
            omega,
            m_eff,
            n_total: None,
            clusters: 1.0,
            mean_fill: 0.5,
            fugacity: 1.0,
        };
        p.validate()?;
        Ok(p)
    }

    /// Uses the heavy mass `m* = 2ħ / (omega delta_r²)` for `m_eff`, so that
    /// `C_V = ħ omega`.
    pub fn heavy(temperature: f64, r_bar: f64, delta_r: f64, omega: f64) -> Result<Self> {
        positive("omega", omega)?;
        positive("delta_r", delta_r)?;
        Self::new(temperature, r_bar, delta_r, omega, heavy_mass(omega, delta_r)?.m_star)
    }

    pub fn with_n_total(mut self, n: f64) -> Result<Self> {
        self.n_total = Some(n);
        self.validate()?;
        Ok(self)
    }

    pub fn with_clusters(mut self, k: f64) -> Result<Self> {
        self.clusters = k;
        self.validate()?;
        Ok(self)
    }

    pub fn with_mean_fill(mut self, fill: f64) -> Result<Self> {
        self.mean_fill = fill;
        self.validate()?;
        Ok(self)
    }

    pub fn with_fugacity(mut self, xi: f64) -> Result<Self> {
        self.fugacity = xi;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        positive("T", self.temperature)?;
        positive("r_bar", self.r_bar)?;
        positive("delta_r", self.delta_r)?;
        positive("omega", self.omega)?;
        positive("m_eff", self.m_eff)?;
        positive("K_clusters", self.clusters)?;
        positive("fugacity", self.fugacity)?;
        if let Some(n) = self.n_total {
            positive("N_total", n)?;
        }
        if !(self.mean_fill > 0.0 && self.mean_fill <= 1.0) {
            return Err(Error::domain("mean_fill must lie in (0, 1]"));
        }
        Ok(())
    }

    /// `C_U = e² / (4π ε₀ r̄)`, the Coulomb energy at the mean spacing (J).
    pub fn coulomb_scale(&self) -> f64 {
        let k = constants();
        k.e * k.e / (4.0 * core::f64::consts::PI * k.eps0 * self.r_bar)
    }

    /// `C_V = ½ m ω² δr̄²`, the harmonic energy at the oscillation amplitude (J).
    pub fn harmonic_scale(&self) -> f64 {
        0.5 * self.m_eff * self.omega * self.omega * self.delta_r * self.delta_r
    }

    pub fn thermal_energy(&self) -> f64 {
        constants().k_b * self.temperature
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(alloc::format!("{name} must be positive and finite, got {v:e}")))
    }
}

/// Repulsive `U = C_U / x` and attractive `V = C_V x²` at distance `x r̄`.
pub fn pair_potentials(p: &ClusterParams, x: f64) -> Result<(f64, f64)> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::domain(alloc::format!(
            "pair distance x = {x:e} is below the normalisation distance 1"
        )));
    }
    Ok((p.coulomb_scale() / x, p.harmonic_scale() * x * x))
}

fn check_aleph(aleph: f64) -> Result<()> {
    if !(aleph >= 1.0) || !aleph.is_finite() {
        return Err(Error::domain(alloc::format!("aleph must be finite and >= 1, got {aleph:e}")));
    }
    Ok(())
}

/// Closed forms `a = (3C_U/2k_BT)(aleph^(2/3) - 1)` and
/// `b = (3C_V/5k_BT)(aleph^(5/3) - 1)`.
pub fn ab_integrals(p: &ClusterParams, aleph: f64) -> Result<(f64, f64)> {
    p.validate()?;
    check_aleph(aleph)?;
    let kt = p.thermal_energy();
    let a = 1.5 * p.coulomb_scale() / kt * (aleph.powf(2.0 / 3.0) - 1.0);
    let b = 0.6 * p.harmonic_scale() / kt * (aleph.powf(5.0 / 3.0) - 1.0);
    Ok((a, b))
}

/// The same integrals, `(3/k_BT) ∫ U(x) x² dx` and `(3/k_BT) ∫ V(x) x² dx`
/// over `[1, aleph^(1/3)]`, evaluated by adaptive quadrature.
pub fn ab_integrals_quadrature(p: &ClusterParams, aleph: f64, rel_tol: f64) -> Result<(f64, f64)> {
    p.validate()?;
    check_aleph(aleph)?;
    let kt = p.thermal_energy();
    let top = aleph.cbrt();
    let a = quad(|x| 3.0 * (p.coulomb_scale() / x) * x * x / kt, 1.0, top, rel_tol)?;
    let b = quad(|x| 3.0 * (p.harmonic_scale() * x * x) * x * x / kt, 1.0, top, rel_tol)?;
    Ok((a, b))
}

/// Reduced action
/// `S = ½K{(a - b)aleph² - (1/<n> - 1)(1/aleph + 1)² exp(2b aleph) - ln(aleph + 1)} + (aleph - 1) ln ξ`.
pub fn action_full(p: &ClusterParams, aleph: f64) -> Result<f64> {
    let (a, b) = ab_integrals(p, aleph)?;
    let coefficient = 1.0 / p.mean_fill - 1.0;
    let occupancy = if coefficient == 0.0 {
        0.0
    } else {
        let prefactor = coefficient * (1.0 / aleph + 1.0).powi(2);
        let exponent = 2.0 * b * aleph;
        let value = prefactor * exponent.exp();
        if !value.is_finite() {
            return Err(Error::ActionOverflow {
                log_magnitude: prefactor.ln() + exponent,
            });
        }
        value
    };
    let bracket = (a - b) * aleph * aleph - occupancy - (aleph + 1.0).ln();
    Ok(0.5 * p.clusters * bracket + (aleph - 1.0) * p.fugacity.ln())
}

/// Which leading-order action to use for the cluster size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeadingVariant {
    /// Published coefficients `3C_U/(2k_BT)` and `6C_V/k_BT`, powers only.
    AsPrinted,
    /// `½K(a - b)aleph²` with the exact integrals.
    FromAb,
}

impl LeadingVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            LeadingVariant::AsPrinted => "printed",
            LeadingVariant::FromAb => "from_ab",
        }
    }
}

/// `S(aleph) = ½K (R f(aleph) aleph² - A g(aleph) aleph²)` with
/// `f = aleph^(2/3)`, `g = aleph^(5/3)` for the printed variant and
/// `f = aleph^(2/3) - 1`, `g = aleph^(5/3) - 1` for the a/b variant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeadingAction {
    pub variant: LeadingVariant,
    pub clusters: f64,
    /// Coefficient `R` of the repulsive term (dimensionless).
    pub repulsion: f64,
    /// Coefficient `A` of the attractive term (dimensionless).
    pub attraction: f64,
}

impl LeadingAction {
    pub fn new(p: &ClusterParams, variant: LeadingVariant) -> Result<Self> {
        p.validate()?;
        let kt = p.thermal_energy();
        let (repulsion, attraction) = match variant {
            LeadingVariant::AsPrinted => {
                let k = constants();
                let r = 3.0 * k.e * k.e
                    / (8.0 * core::f64::consts::PI * k.eps0 * p.r_bar * kt);
                let a = 3.0 * p.m_eff * p.omega * p.omega * p.delta_r * p.delta_r / kt;
                (r, a)
            }
            LeadingVariant::FromAb => (1.5 * p.coulomb_scale() / kt, 0.6 * p.harmonic_scale() / kt),
        };
        Ok(LeadingAction {
            variant,
            clusters: p.clusters,
            repulsion,
            attraction,
        })
    }

    pub fn value(&self, aleph: f64) -> f64 {
        let shift = match self.variant {
            LeadingVariant::AsPrinted => 0.0,
            LeadingVariant::FromAb => 1.0,
        };
        let rep = self.repulsion * (aleph.powf(2.0 / 3.0) - shift);
        let att = self.attraction * (aleph.powf(5.0 / 3.0) - shift);
        0.5 * self.clusters * (rep - att) * aleph * aleph
    }

    /// Stationary point of `R aleph^(8/3) - A aleph^(11/3)`, i.e. `(8/11) R/A`.
    /// Exact for the printed variant, the large-aleph limit for the a/b one.
    pub fn closed_form_stationary(&self) -> f64 {
        8.0 / 11.0 * self.repulsion / self.attraction
    }
}

pub fn action_leading(p: &ClusterParams, aleph: f64, variant: LeadingVariant) -> Result<f64> {
    check_aleph(aleph)?;
    Ok(LeadingAction::new(p, variant)?.value(aleph))
}

/// Outcome of the cluster-size search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusterSize {
    pub variant: LeadingVariant,
    /// Numerical stationary point of the selected action.
    pub aleph_numeric: f64,
    pub kind: Extremum,
    /// `(20/11) C_U / C_V`.
    pub aleph_closed: f64,
    /// `(8/11) R/A` for the selected variant's own coefficients.
    pub own_closed: f64,
}

/// Locates `dS/d aleph = 0` inside `[lo, hi]` and classifies it.
pub fn cluster_size(p: &ClusterParams, variant: LeadingVariant, lo: f64, hi: f64) -> Result<ClusterSize> {
    if !(lo >= 1.0) {
        return Err(Error::domain("cluster size bracket must start at aleph >= 1"));
    }
    let action = LeadingAction::new(p, variant)?;
    let point = stationary_point(|x| action.value(x), lo, hi, SIZE_TOL).map_err(|e| match e {
        Error::NoBracket { lo, hi, pattern } => {
            let mid = (lo * hi).sqrt();
            Error::NoBracket {
                lo,
                hi,
                pattern: alloc::format!(
                    "{pattern}; S({lo:e}) = {:e}, S({mid:e}) = {:e}, S({hi:e}) = {:e}",
                    action.value(lo),
                    action.value(mid),
                    action.value(hi)
                ),
            }
        }
        other => other,
    })?;
    Ok(ClusterSize {
        variant,
        aleph_numeric: point.x,
        kind: point.kind,
        aleph_closed: 20.0 / 11.0 * p.coulomb_scale() / p.harmonic_scale(),
        own_closed: action.closed_form_stationary(),
    })
}

/// `(20/11) C_U / (ħ omega)`, the closed form with `C_V` replaced by `ħ omega`.
pub fn cluster_size_hbar(p: &ClusterParams) -> Result<f64> {
    p.validate()?;
    Ok(20.0 / 11.0 * p.coulomb_scale() / (constants().hbar * p.omega))
}

/// The published estimate `aleph ≈ 4e16 / omega`.
pub fn quoted_size_estimate(omega: f64) -> Result<f64> {
    positive("omega", omega)?;
    Ok(published::SIZE_COEFFICIENT / omega)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeavyMass {
    /// `m* = 2ħ / (omega delta_r²)` (kg).
    pub m_star: f64,
    /// `m* - m0` (kg).
    pub delta_m: f64,
    /// `m* / m0`.
    pub ratio: f64,
}

/// Mass for which one vibration quantum fills the harmonic well: `ħω = ½ m* ω² δr̄²`.
pub fn heavy_mass(omega: f64, delta_r: f64) -> Result<HeavyMass> {
    positive("omega", omega)?;
    positive("delta_r", delta_r)?;
    let k = constants();
    let m_star = 2.0 * k.hbar / (omega * delta_r * delta_r);
    Ok(HeavyMass {
        m_star,
        delta_m: m_star - k.m0,
        ratio: m_star / k.m0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BondEnergy {
    pub aleph: f64,
    /// `aleph ħ omega` (J).
    pub e_bond: f64,
    /// Frequency of a photon carrying `e_bond` (Hz).
    pub nu_ph: f64,
    /// Its vacuum wavelength (m).
    pub lambda_ph: f64,
}

pub fn bond_energy(aleph: f64, omega: f64) -> Result<BondEnergy> {
    check_aleph(aleph)?;
    positive("omega", omega)?;
    let k = constants();
    let e_bond = aleph * k.hbar * omega;
    let nu_ph = e_bond / k.h;
    Ok(BondEnergy {
        aleph,
        e_bond,
        nu_ph,
        lambda_ph: k.c / nu_ph,
    })
}

#[cfg(test)]
mod tests;
