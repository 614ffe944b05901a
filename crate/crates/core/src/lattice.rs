//! Monatomic Bravais lattices with an inerton correction to the force matrix.
//!
//! The elastic interaction is a finite stencil of `dim x dim` blocks `V(offset)`.
//! Its Fourier transform `Ṽ(k) = Σ V(offset) (1 - cos(k·offset a))` vanishes at
//! `k = 0`. The full force matrix is `W(k) = Ṽ(k) + corr(k)` and the phonon
//! branches solve `det(Ω² - W(k)/M) = 0`.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{eig_sym, SymmetricMatrix};

/// Integer site offset `l - n`, padded with zeros beyond `dim`.
pub type Offset = [i32; 3];

/// One stencil entry: the elasticity block (N/m) coupling a site to the site at `offset`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StencilEntry {
    pub offset: Offset,
    /// Row-major `dim x dim` block.
    pub block: Vec<f64>,
}

type CorrectionFn = dyn Fn(&[f64], &[f64]) -> Vec<f64> + Send + Sync;

/// Additive inerton term of the force matrix, in N/m.
#[derive(Clone, Default)]
pub enum InertonCorrection {
    #[default]
    Zero,
    /// `ε I` for every k.
    Isotropic(f64),
    /// `g Σ_α (1 - cos(k_α a)) I`, a scalar nearest-neighbour form.
    NearestNeighbor { strength: f64 },
    /// User function of `(k, charges)` returning a row-major `dim x dim` matrix,
    /// which must be symmetric.
    Custom {
        uses_charges: bool,
        f: Arc<CorrectionFn>,
    },
}

impl InertonCorrection {
    pub fn custom(
        uses_charges: bool,
        f: impl Fn(&[f64], &[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        InertonCorrection::Custom {
            uses_charges,
            f: Arc::new(f),
        }
    }
}

impl fmt::Debug for InertonCorrection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InertonCorrection::Zero => f.write_str("Zero"),
            InertonCorrection::Isotropic(eps) => f.debug_tuple("Isotropic").field(eps).finish(),
            InertonCorrection::NearestNeighbor { strength } => f
                .debug_struct("NearestNeighbor")
                .field("strength", strength)
                .finish(),
            InertonCorrection::Custom { uses_charges, .. } => f
                .debug_struct("Custom")
                .field("uses_charges", uses_charges)
                .finish_non_exhaustive(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LatticeSpec {
    dim: usize,
    mass: f64,
    lattice_constant: f64,
    stencil: Vec<StencilEntry>,
    charges: Vec<f64>,
    correction: InertonCorrection,
}

impl LatticeSpec {
    pub fn new(
        dim: usize,
        mass: f64,
        lattice_constant: f64,
        stencil: Vec<StencilEntry>,
        charges: Vec<f64>,
        correction: InertonCorrection,
    ) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::domain(alloc::format!("lattice dimension must be 1, 2 or 3, got {dim}")));
        }
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::domain("atom mass must be positive"));
        }
        if !(lattice_constant > 0.0) || !lattice_constant.is_finite() {
            return Err(Error::domain("lattice constant must be positive"));
        }
        for entry in &stencil {
            if entry.block.len() != dim * dim {
                return Err(Error::DimensionMismatch {
                    expected: dim * dim,
                    actual: entry.block.len(),
                });
            }
            if entry.offset[dim..].iter().any(|&o| o != 0) {
                return Err(Error::domain("stencil offset has components beyond the lattice dimension"));
            }
            if entry.offset == [0, 0, 0] {
                return Err(Error::domain("stencil must not contain the zero offset"));
            }
            let negated = [-entry.offset[0], -entry.offset[1], -entry.offset[2]];
            let partner = stencil
                .iter()
                .find(|e| e.offset == negated)
                .ok_or_else(|| Error::domain(alloc::format!("stencil offset {:?} has no reciprocal entry", entry.offset)))?;
            for a in 0..dim {
                for b in 0..dim {
                    if entry.block[a * dim + b] != partner.block[b * dim + a] {
                        return Err(Error::domain(alloc::format!(
                            "stencil block at {:?} is not the transpose of its reciprocal",
                            entry.offset
                        )));
                    }
                }
            }
        }
        if !charges.is_empty() && charges.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: charges.len(),
            });
        }
        if let InertonCorrection::Custom { uses_charges: true, .. } = correction {
            if charges.len() != dim || charges.iter().any(|&q| q == 0.0 || !q.is_finite()) {
                return Err(Error::domain(
                    "a charge-ratio correction needs one nonzero charge per component",
                ));
            }
        }
        match correction {
            InertonCorrection::Isotropic(v) | InertonCorrection::NearestNeighbor { strength: v }
                if !v.is_finite() =>
            {
                return Err(Error::domain("inerton correction strength must be finite"));
            }
            _ => {}
        }
        Ok(LatticeSpec {
            dim,
            mass,
            lattice_constant,
            stencil,
            charges,
            correction,
        })
    }

    /// Hypercubic lattice with nearest-neighbour springs: longitudinal stiffness
    /// along the bond and transverse stiffness across it.
    pub fn nearest_neighbor(
        dim: usize,
        mass: f64,
        lattice_constant: f64,
        longitudinal: f64,
        transverse: f64,
        correction: InertonCorrection,
    ) -> Result<Self> {
        let mut stencil = Vec::new();
        for axis in 0..dim.min(3) {
            let mut block = vec![0.0; dim * dim];
            for a in 0..dim {
                block[a * dim + a] = if a == axis { longitudinal } else { transverse };
            }
            for sign in [1, -1] {
                let mut offset = [0; 3];
                offset[axis] = sign;
                stencil.push(StencilEntry {
                    offset,
                    block: block.clone(),
                });
            }
        }
        LatticeSpec::new(dim, mass, lattice_constant, stencil, Vec::new(), correction)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn mass(&self) -> f64 {
        self.mass
    }
    pub fn lattice_constant(&self) -> f64 {
        self.lattice_constant
    }
    pub fn stencil(&self) -> &[StencilEntry] {
        &self.stencil
    }
    pub fn charges(&self) -> &[f64] {
        &self.charges
    }
    pub fn correction(&self) -> &InertonCorrection {
        &self.correction
    }

    fn block_at(&self, offset: Offset) -> Option<&[f64]> {
        self.stencil
            .iter()
            .find(|e| e.offset == offset)
            .map(|e| e.block.as_slice())
    }

    fn check_k(&self, k: &[f64]) -> Result<()> {
        if k.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: k.len(),
            });
        }
        let edge = PI / self.lattice_constant * (1.0 + 1e-12);
        if k.iter().any(|&ki| !ki.is_finite() || ki.abs() > edge) {
            return Err(Error::domain(alloc::format!(
                "wave vector {k:?} is outside the first Brillouin zone [-π/a, π/a]"
            )));
        }
        Ok(())
    }
}

/// Lattice Lagrangian `½ Σ M ξ̇² - ½ Σ'_{l≠n} V_αβ(l-n) ξ_lα ξ_nβ` over a finite set of sites.
///
/// `xi` and `xi_dot` hold `dim` components per site, in site order.
pub fn lattice_energy(spec: &LatticeSpec, sites: &[Offset], xi: &[f64], xi_dot: &[f64]) -> Result<f64> {
    let d = spec.dim;
    let expected = sites.len() * d;
    for len in [xi.len(), xi_dot.len()] {
        if len != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: len,
            });
        }
    }
    let kinetic = 0.5 * spec.mass * xi_dot.iter().map(|v| v * v).sum::<f64>();
    let mut potential = 0.0;
    for (l, site_l) in sites.iter().enumerate() {
        for (n, site_n) in sites.iter().enumerate() {
            if l == n {
                continue;
            }
            let offset = [site_l[0] - site_n[0], site_l[1] - site_n[1], site_l[2] - site_n[2]];
            let Some(block) = spec.block_at(offset) else {
                continue;
            };
            for a in 0..d {
                for b in 0..d {
                    potential += block[a * d + b] * xi[l * d + a] * xi[n * d + b];
                }
            }
        }
    }
    Ok(kinetic - 0.5 * potential)
}

/// `Ṽ(k) = Σ_offsets V(offset) (1 - cos(k·offset a))`.
pub fn fourier_force_matrix(spec: &LatticeSpec, k: &[f64]) -> Result<SymmetricMatrix> {
    spec.check_k(k)?;
    let d = spec.dim;
    let mut sum = vec![0.0; d * d];
    for entry in &spec.stencil {
        let phase: f64 = (0..d)
            .map(|i| k[i] * entry.offset[i] as f64 * spec.lattice_constant)
            .sum();
        // 1 - cos φ = 2 sin²(φ/2)
        let half = (0.5 * phase).sin();
        let weight = 2.0 * half * half;
        for (s, v) in sum.iter_mut().zip(&entry.block) {
            *s += v * weight;
        }
    }
    // Reciprocal pairs make the sum symmetric; average to make it exact.
    Ok(SymmetricMatrix::from_fn(d, |i, j| 0.5 * (sum[i * d + j] + sum[j * d + i])))
}

fn correction_matrix(spec: &LatticeSpec, k: &[f64]) -> Result<SymmetricMatrix> {
    let d = spec.dim;
    Ok(match &spec.correction {
        InertonCorrection::Zero => SymmetricMatrix::zeros(d),
        InertonCorrection::Isotropic(eps) => SymmetricMatrix::identity(d).scaled(*eps),
        InertonCorrection::NearestNeighbor { strength } => {
            let shape: f64 = k
                .iter()
                .map(|&ki| {
                    let half = (0.5 * ki * spec.lattice_constant).sin();
                    2.0 * half * half
                })
                .sum();
            SymmetricMatrix::identity(d).scaled(strength * shape)
        }
        InertonCorrection::Custom { f, .. } => {
            let raw = f(k, &spec.charges);
            if raw.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite("inerton correction"));
            }
            SymmetricMatrix::from_row_major(d, raw)?
        }
    })
}

/// `W(k) = Ṽ(k) + corr(k)`.
pub fn force_matrix(spec: &LatticeSpec, k: &[f64]) -> Result<SymmetricMatrix> {
    let elastic = fourier_force_matrix(spec, k)?;
    elastic.add(&correction_matrix(spec, k)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispersionResult {
    pub k: Vec<f64>,
    /// Ω_s(k) in rad/s, ascending.
    pub branches: Vec<f64>,
}

/// Branch frequencies from the eigenvalues of `W(k)/M`.
///
/// Eigenvalues that are negative only by rounding (below `1e-12 ‖W/M‖`) are
/// clamped to zero; anything more negative is an unstable lattice.
pub fn dispersion(spec: &LatticeSpec, k: &[f64]) -> Result<DispersionResult> {
    let dynamical = force_matrix(spec, k)?.scaled(1.0 / spec.mass);
    let eig = eig_sym(&dynamical);
    let floor = 1e-12 * dynamical.frobenius_norm();
    let mut branches = Vec::with_capacity(eig.values.len());
    for &value in &eig.values {
        if value < -floor {
            return Err(Error::UnstableLattice {
                k: format_k(k),
                eigenvalue: value,
            });
        }
        branches.push(value.max(0.0).sqrt());
    }
    Ok(DispersionResult {
        k: k.to_vec(),
        branches,
    })
}

fn format_k(k: &[f64]) -> String {
    let parts: Vec<String> = k.iter().map(|v| alloc::format!("{v:e}")).collect();
    alloc::format!("({})", parts.join(", "))
}

/// `n` evenly spaced wave vectors from `start` to `end` inclusive.
pub fn k_path(start: &[f64], end: &[f64], n: usize) -> Result<Vec<Vec<f64>>> {
    if start.len() != end.len() {
        return Err(Error::DimensionMismatch {
            expected: start.len(),
            actual: end.len(),
        });
    }
    if n < 2 {
        return Err(Error::domain("a k-path needs at least two points"));
    }
    Ok((0..n)
        .map(|i| {
            let s = i as f64 / (n - 1) as f64;
            start
                .iter()
                .zip(end)
                .map(|(a, b)| if i == n - 1 { *b } else { a + (b - a) * s })
                .collect()
        })
        .collect())
}
