//! Finite lattice gas with attractive and repulsive pair energies.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::kahan_sum;
use crate::quantities::constants;

/// Largest site count accepted by the exhaustive partition sums.
pub const MAX_ENUMERATED_SITES: usize = 20;

/// Sites with energies `E_s`, symmetric pair matrices `V` (attraction) and `U`
/// (repulsion) with zero diagonals, and binary filling numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeGas {
    energies: Vec<f64>,
    attraction: Vec<f64>,
    repulsion: Vec<f64>,
    filling: Vec<bool>,
}

impl LatticeGas {
    /// `attraction` and `repulsion` are row-major `S x S`.
    pub fn new(
        energies: Vec<f64>,
        attraction: Vec<f64>,
        repulsion: Vec<f64>,
        filling: Vec<bool>,
    ) -> Result<Self> {
        let s = energies.len();
        for len in [attraction.len(), repulsion.len()] {
            if len != s * s {
                return Err(Error::DimensionMismatch {
                    expected: s * s,
                    actual: len,
                });
            }
        }
        if filling.len() != s {
            return Err(Error::DimensionMismatch {
                expected: s,
                actual: filling.len(),
            });
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::domain("site energies must be finite"));
        }
        for (name, m) in [("attraction", &attraction), ("repulsion", &repulsion)] {
            for i in 0..s {
                if m[i * s + i] != 0.0 {
                    return Err(Error::domain(alloc::format!("{name} matrix has a nonzero diagonal at site {i}")));
                }
                for j in 0..s {
                    let v = m[i * s + j];
                    if !(v >= 0.0) || !v.is_finite() {
                        return Err(Error::domain(alloc::format!("{name} pair energy ({i}, {j}) must be finite and >= 0")));
                    }
                    if v != m[j * s + i] {
                        return Err(Error::domain(alloc::format!("{name} matrix is not symmetric at ({i}, {j})")));
                    }
                }
            }
        }
        Ok(LatticeGas {
            energies,
            attraction,
            repulsion,
            filling,
        })
    }

    /// All sites empty.
    pub fn empty(energies: Vec<f64>, attraction: Vec<f64>, repulsion: Vec<f64>) -> Result<Self> {
        let s = energies.len();
        Self::new(energies, attraction, repulsion, vec![false; s])
    }

    pub fn sites(&self) -> usize {
        self.energies.len()
    }
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }
    pub fn attraction(&self) -> &[f64] {
        &self.attraction
    }
    pub fn repulsion(&self) -> &[f64] {
        &self.repulsion
    }
    pub fn filling(&self) -> &[bool] {
        &self.filling
    }

    pub fn with_filling(&self, filling: Vec<bool>) -> Result<Self> {
        Self::new(
            self.energies.clone(),
            self.attraction.clone(),
            self.repulsion.clone(),
            filling,
        )
    }

    /// `Σ E_s n_s - ½ Σ V n n' + ½ Σ U n n'` for an arbitrary filling.
    pub fn energy(&self, filling: &[bool]) -> f64 {
        let s = self.sites();
        let mut onsite = 0.0;
        let mut pairs = 0.0;
        for i in (0..s).filter(|&i| filling[i]) {
            onsite += self.energies[i];
            for j in (0..s).filter(|&j| filling[j]) {
                pairs += self.repulsion[i * s + j] - self.attraction[i * s + j];
            }
        }
        onsite + 0.5 * pairs
    }
}

/// Energy of the stored filling.
pub fn hamiltonian(g: &LatticeGas) -> f64 {
    g.energy(&g.filling)
}

fn check_enumerable(g: &LatticeGas, temperature: f64) -> Result<f64> {
    if g.sites() > MAX_ENUMERATED_SITES {
        return Err(Error::Capacity {
            sites: g.sites(),
            limit: MAX_ENUMERATED_SITES,
        });
    }
    if !(temperature > 0.0) || !temperature.is_finite() {
        return Err(Error::domain("temperature must be positive"));
    }
    Ok(constants().k_b * temperature)
}

/// Sorts Boltzmann weights by decreasing magnitude and adds them with compensation.
fn sum_weights(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    kahan_sum(terms)
}

/// `Z = Σ_{n} exp(-H(n) / k_B T)` by direct evaluation of every filling, in
/// lexicographic (binary counting) order.
pub fn partition_function(g: &LatticeGas, temperature: f64) -> Result<f64> {
    let kt = check_enumerable(g, temperature)?;
    let s = g.sites();
    let mut filling = vec![false; s];
    let terms: Vec<f64> = (0u32..1 << s)
        .map(|mask| {
            for (i, n) in filling.iter_mut().enumerate() {
                *n = mask >> i & 1 == 1;
            }
            (-g.energy(&filling) / kt).exp()
        })
        .collect();
    Ok(sum_weights(terms))
}

/// Same sum visited in Gray-code order, updating `H` incrementally by the
/// single-site flip energy instead of re-evaluating it.
pub fn partition_function_gray(g: &LatticeGas, temperature: f64) -> Result<f64> {
    let kt = check_enumerable(g, temperature)?;
    let s = g.sites();
    let mut filling = vec![false; s];
    let mut energy = 0.0;
    let mut terms = Vec::with_capacity(1 << s);
    terms.push(1.0);
    for step in 1u32..1 << s {
        let site = step.trailing_zeros() as usize;
        // Energy of adding site `site` given the others.
        let field: f64 = (0..s)
            .filter(|&j| filling[j])
            .map(|j| g.repulsion[site * s + j] - g.attraction[site * s + j])
            .sum();
        let delta = g.energies[site] + field;
        if filling[site] {
            energy -= delta;
        } else {
            energy += delta;
        }
        filling[site] = !filling[site];
        terms.push((-energy / kt).exp());
    }
    Ok(sum_weights(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn free(s: usize, energies: Vec<f64>) -> LatticeGas {
        LatticeGas::empty(energies, vec![0.0; s * s], vec![0.0; s * s]).unwrap()
    }

    #[test]
    fn hamiltonian_examples() {
        let energies = vec![1.0, 2.0, 4.0];
        let mut v = vec![0.0; 9];
        let mut u = vec![0.0; 9];
        v[1] = 0.5;
        v[3] = 0.5;
        u[1] = 0.25;
        u[3] = 0.25;
        u[2] = 8.0;
        u[6] = 8.0;
        let g = LatticeGas::empty(energies, v, u).unwrap();
        assert_eq!(hamiltonian(&g), 0.0);
        assert_eq!(hamiltonian(&g.with_filling(vec![false, true, false]).unwrap()), 2.0);
        // E_0 + E_1 - V_01 + U_01
        let two = g.with_filling(vec![true, true, false]).unwrap();
        assert_eq!(hamiltonian(&two), 1.0 + 2.0 - 0.5 + 0.25);
    }

    #[test]
    fn rejects_invalid_gases() {
        assert!(LatticeGas::empty(vec![0.0; 2], vec![1.0, 0.0, 0.0, 0.0], vec![0.0; 4]).is_err());
        assert!(LatticeGas::empty(vec![0.0; 2], vec![0.0, 1.0, 2.0, 0.0], vec![0.0; 4]).is_err());
        assert!(LatticeGas::empty(vec![0.0; 2], vec![0.0; 4], vec![0.0, -1.0, -1.0, 0.0]).is_err());
        assert!(LatticeGas::empty(vec![0.0; 2], vec![0.0; 3], vec![0.0; 4]).is_err());
        assert!(LatticeGas::new(vec![0.0; 2], vec![0.0; 4], vec![0.0; 4], vec![true]).is_err());
    }

    #[test]
    fn small_sums() {
        assert_eq!(partition_function(&free(1, vec![0.0]), 300.0).unwrap(), 2.0);
        assert_eq!(partition_function(&free(2, vec![0.0, 0.0]), 300.0).unwrap(), 4.0);
        assert_eq!(partition_function_gray(&free(2, vec![0.0, 0.0]), 300.0).unwrap(), 4.0);
        // Independent sites factorise: Z = Π (1 + exp(-E/kT)).
        let kt = constants().k_b * 300.0;
        let energies = vec![kt, -0.5 * kt, 2.0 * kt];
        let exact: f64 = energies.iter().map(|e| 1.0 + (-e / kt).exp()).product();
        let z = partition_function(&free(3, energies), 300.0).unwrap();
        assert!((z - exact).abs() / exact < 1e-15);
    }

    #[test]
    fn capacity_and_temperature_errors() {
        let g = free(21, vec![0.0; 21]);
        assert!(matches!(partition_function(&g, 1.0), Err(Error::Capacity { sites: 21, limit: 20 })));
        assert!(matches!(partition_function_gray(&g, 1.0), Err(Error::Capacity { .. })));
        assert!(partition_function(&free(1, vec![0.0]), 0.0).is_err());
    }

    fn gas(max_sites: usize) -> impl Strategy<Value = LatticeGas> {
        (1..=max_sites).prop_flat_map(|s| {
            (
                proptest::collection::vec(-3e-21f64..3e-21, s),
                proptest::collection::vec(0.0f64..2e-21, s * s),
                proptest::collection::vec(0.0f64..2e-21, s * s),
                proptest::collection::vec(any::<bool>(), s),
            )
                .prop_map(move |(e, v, u, n)| {
                    let sym = |m: &[f64]| -> Vec<f64> {
                        (0..s * s)
                            .map(|k| {
                                let (i, j) = (k / s, k % s);
                                if i == j { 0.0 } else { m[i.min(j) * s + i.max(j)] }
                            })
                            .collect()
                    };
                    LatticeGas::new(e, sym(&v), sym(&u), n).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn permutation_invariance(g in gas(8), seed in any::<u64>()) {
            let s = g.sites();
            // Fisher-Yates driven by a small LCG.
            let mut perm: Vec<usize> = (0..s).collect();
            let mut state = seed;
            for i in (1..s).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (state >> 33) as usize % (i + 1));
            }
            let pick = |m: &[f64]| -> Vec<f64> {
                (0..s * s).map(|k| m[perm[k / s] * s + perm[k % s]]).collect()
            };
            let permuted = LatticeGas::new(
                perm.iter().map(|&i| g.energies()[i]).collect(),
                pick(g.attraction()),
                pick(g.repulsion()),
                perm.iter().map(|&i| g.filling()[i]).collect(),
            ).unwrap();
            let (a, b) = (hamiltonian(&g), hamiltonian(&permuted));
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-21));
        }

        #[test]
        fn enumeration_orders_agree(g in gas(10), t in 50.0f64..2000.0) {
            let z1 = partition_function(&g, t).unwrap();
            let z2 = partition_function_gray(&g, t).unwrap();
            prop_assert!((z1 - z2).abs() <= 1e-12 * z1);
        }
    }
}
