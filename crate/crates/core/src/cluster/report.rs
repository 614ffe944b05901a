//! Side-by-side report of quoted and recomputed droplet numbers.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{
    bond_energy, cluster_size, cluster_size_hbar, heavy_mass, published, quoted_size_estimate,
    BondEnergy, ClusterParams, ClusterSize, HeavyMass, LeadingAction, LeadingVariant,
};
use crate::error::{Error, Result};
use crate::numerics::Extremum;

/// Where a reported number comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Printed in the source literature.
    Paper,
    /// Computed here from CODATA constants.
    Recomputed,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Paper => "paper",
            Provenance::Recomputed => "recomputed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub quantity: String,
    pub unit: String,
    pub provenance: Provenance,
    pub value: f64,
    /// Quoted value this entry is compared with, if any.
    pub reference: Option<f64>,
    /// `(value - reference) / reference`.
    pub rel_discrepancy: Option<f64>,
}

impl ReportEntry {
    fn new(quantity: &str, unit: &str, provenance: Provenance, value: f64, reference: Option<f64>) -> Self {
        ReportEntry {
            quantity: quantity.into(),
            unit: unit.into(),
            provenance,
            value,
            reference,
            rel_discrepancy: reference.map(|r| (value - r) / r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterReport {
    pub params: ClusterParams,
    pub bracket: (f64, f64),
    /// `C_U` (J).
    pub coulomb_scale: f64,
    /// `C_V` (J).
    pub harmonic_scale: f64,
    /// `(20/11) C_U / C_V`.
    pub aleph_closed: f64,
    /// `(20/11) C_U / (ħ omega)`.
    pub aleph_hbar: f64,
    /// Quoted estimate `4e16 / omega`.
    pub aleph_quoted: f64,
    /// Stationary point of the a/b leading action.
    pub aleph_numeric: f64,
    pub extremum_kind: Extremum,
    /// Stationary point of the printed leading action.
    pub printed: ClusterSize,
    /// Cluster size fed into the bond energy (equal to `aleph_numeric`).
    pub aleph_used: f64,
    pub heavy: HeavyMass,
    /// Bond chain at `aleph_used`.
    pub bond: BondEnergy,
    /// Bond chain at the quoted estimate `aleph_quoted`.
    pub bond_quoted: BondEnergy,
    /// `N / aleph_used` when the total electron count is given.
    pub clusters_from_total: Option<f64>,
    /// Ratio of the printed attraction coefficient to the a/b-derived one.
    pub attraction_coefficient_ratio: f64,
    pub entries: Vec<ReportEntry>,
}

fn context(what: &str, err: Error) -> Error {
    match err {
        Error::Domain(msg) => Error::Domain(alloc::format!("{what}: {msg}")),
        other => other,
    }
}

/// Runs every droplet estimate for `p` with the cluster size searched in `[lo, hi]`.
pub fn reconcile(p: &ClusterParams, lo: f64, hi: f64) -> Result<ClusterReport> {
    use Provenance::{Paper, Recomputed};

    p.validate()?;
    let from_ab = cluster_size(p, LeadingVariant::FromAb, lo, hi).map_err(|e| context("a/b cluster size", e))?;
    let printed =
        cluster_size(p, LeadingVariant::AsPrinted, lo, hi).map_err(|e| context("printed cluster size", e))?;
    let aleph_hbar = cluster_size_hbar(p)?;
    let aleph_quoted = quoted_size_estimate(p.omega)?;
    let heavy = heavy_mass(p.omega, p.delta_r).map_err(|e| context("heavy mass", e))?;
    let aleph_used = from_ab.aleph_numeric;
    let bond = bond_energy(aleph_used, p.omega).map_err(|e| context("bond energy", e))?;
    let bond_quoted = bond_energy(aleph_quoted, p.omega).map_err(|e| context("quoted bond energy", e))?;
    let ratio = LeadingAction::new(p, LeadingVariant::AsPrinted)?.attraction
        / LeadingAction::new(p, LeadingVariant::FromAb)?.attraction;

    let reference = published::is_reference(p.omega, p.r_bar);
    let at_reference = |v: f64| if reference { Some(v) } else { None };

    let mut entries = Vec::new();
    let mut push = |q: &str, unit: &str, prov, value, reference| {
        entries.push(ReportEntry::new(q, unit, prov, value, reference));
    };

    push("aleph_quoted", "1", Paper, aleph_quoted, None);
    if reference {
        push("aleph_quoted_reference", "1", Paper, published::CLUSTER_SIZE, None);
    }
    push("aleph_closed", "1", Recomputed, from_ab.aleph_closed, Some(aleph_quoted));
    push("aleph_hbar", "1", Recomputed, aleph_hbar, Some(aleph_quoted));
    push("aleph_numeric", "1", Recomputed, from_ab.aleph_numeric, Some(aleph_quoted));
    push("aleph_printed", "1", Recomputed, printed.aleph_numeric, Some(aleph_quoted));
    push("aleph_printed_closed", "1", Recomputed, printed.own_closed, None);
    push("attraction_coefficient_ratio", "1", Recomputed, ratio, None);

    let (m_low, m_high) = published::HEAVY_MASS_RANGE;
    if reference {
        push("m_star_paper_low", "kg", Paper, m_low, None);
        push("m_star_paper_high", "kg", Paper, m_high, None);
    }
    let nearest = if heavy.m_star < m_low {
        m_low
    } else if heavy.m_star > m_high {
        m_high
    } else {
        heavy.m_star
    };
    push("m_star", "kg", Recomputed, heavy.m_star, at_reference(nearest));
    push("delta_m", "kg", Recomputed, heavy.delta_m, None);
    push("mass_ratio", "1", Recomputed, heavy.ratio, None);

    if reference {
        push("e_bond_paper", "J", Paper, published::BOND_ENERGY, None);
        push("nu_ph_paper", "Hz", Paper, published::PHOTON_FREQUENCY, None);
        push("lambda_ph_paper", "m", Paper, published::PHOTON_WAVELENGTH, None);
    }
    push("e_bond", "J", Recomputed, bond.e_bond, at_reference(published::BOND_ENERGY));
    push("nu_ph", "Hz", Recomputed, bond.nu_ph, at_reference(published::PHOTON_FREQUENCY));
    push("lambda_ph", "m", Recomputed, bond.lambda_ph, at_reference(published::PHOTON_WAVELENGTH));
    push("e_bond_at_quoted_aleph", "J", Recomputed, bond_quoted.e_bond, at_reference(published::BOND_ENERGY));
    push("nu_ph_at_quoted_aleph", "Hz", Recomputed, bond_quoted.nu_ph, at_reference(published::PHOTON_FREQUENCY));
    push(
        "lambda_ph_at_quoted_aleph",
        "m",
        Recomputed,
        bond_quoted.lambda_ph,
        at_reference(published::PHOTON_WAVELENGTH),
    );

    let clusters_from_total = p.n_total.map(|n| n / aleph_used);
    if let Some(k) = clusters_from_total {
        push("clusters_from_total", "1", Recomputed, k, None);
    }

    if entries.iter().any(|e| !e.value.is_finite()) {
        return Err(Error::NonFinite("reconcile"));
    }

    Ok(ClusterReport {
        params: *p,
        bracket: (lo, hi),
        coulomb_scale: p.coulomb_scale(),
        harmonic_scale: p.harmonic_scale(),
        aleph_closed: from_ab.aleph_closed,
        aleph_hbar,
        aleph_quoted,
        aleph_numeric: from_ab.aleph_numeric,
        extremum_kind: from_ab.kind,
        printed,
        aleph_used,
        heavy,
        bond,
        bond_quoted,
        clusters_from_total,
        attraction_coefficient_ratio: ratio,
        entries,
    })
}

impl ClusterReport {
    pub fn entry(&self, quantity: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.quantity == quantity)
    }

    /// Largest absolute relative discrepancy among the recomputed entries.
    pub fn worst_discrepancy(&self) -> Option<f64> {
        self.entries
            .iter()
            .filter_map(|e| e.rel_discrepancy)
            .map(|d| d.abs())
            .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |a| a.max(d))))
    }
}
