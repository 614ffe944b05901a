//! Turns a validated config into model inputs and result tables.

use droplet_core::cluster::{
    heavy_mass, reconcile, ClusterParams, ClusterReport, Provenance,
};
use droplet_core::kinematics::{rectified_trajectory, smooth_trajectory, ChainParams};
use droplet_core::lattice::{dispersion, k_path, InertonCorrection, LatticeSpec};
use rayon::prelude::*;

use crate::config::{cluster_unit, Mode, ScenarioConfig, SweepAxis, Value};
use crate::error::{LabError, Result};
use crate::table::{Cell, Column, Metadata, ResultTable};

/// Model inputs built from a config.
#[derive(Debug, Clone)]
pub enum Scenario {
    Kinematics {
        params: ChainParams,
        periods: f64,
        samples: usize,
    },
    Dispersion {
        spec: LatticeSpec,
        k_start: Vec<f64>,
        k_end: Vec<f64>,
        n_k: usize,
    },
    Cluster {
        params: ClusterParams,
        bracket: (f64, f64),
    },
    Sweep {
        base: ScenarioConfig,
        axis: SweepAxis,
        bracket: (f64, f64),
    },
}

fn get(c: &ScenarioConfig, name: &str) -> f64 {
    c.real(name).unwrap_or(f64::NAN)
}

fn cluster_params(c: &ScenarioConfig) -> Result<ClusterParams> {
    let omega = get(c, "omega");
    let delta_r = get(c, "delta_r");
    let m_eff = match c.values.get("m_eff") {
        Some(Value::Real(m)) => *m,
        _ => heavy_mass(omega, delta_r).map_err(LabError::model("heavy mass"))?.m_star,
    };
    let mut p = ClusterParams::new(get(c, "T"), get(c, "r_bar"), delta_r, omega, m_eff)
        .map_err(LabError::model("cluster parameters"))?;
    p.clusters = get(c, "K_clusters");
    p.mean_fill = get(c, "mean_fill");
    p.fugacity = get(c, "fugacity");
    p.n_total = c.real("N_total");
    p.validate().map_err(LabError::model("cluster parameters"))?;
    Ok(p)
}

fn bracket(c: &ScenarioConfig) -> Result<(f64, f64)> {
    let (lo, hi) = (get(c, "aleph_lo"), get(c, "aleph_hi"));
    if !(lo >= 1.0 && lo < hi) {
        return Err(LabError::config(format!(
            "aleph_lo must be >= 1 and below aleph_hi, got [{lo:e}, {hi:e}]"
        )));
    }
    Ok((lo, hi))
}

impl Scenario {
    pub fn build(c: &ScenarioConfig) -> Result<Scenario> {
        match c.mode {
            Mode::Kinematics => Ok(Scenario::Kinematics {
                params: ChainParams::new(get(c, "mass"), get(c, "v"), get(c, "omega"), get(c, "omega_tilde"))
                    .map_err(LabError::model("chain parameters"))?,
                periods: get(c, "periods"),
                samples: c.count("samples").unwrap_or(101),
            }),
            Mode::Dispersion => {
                let dim = c.count("dim").unwrap_or(1);
                let strength = get(c, "inerton_strength");
                let correction = match c.text("inerton") {
                    Some("isotropic") => InertonCorrection::Isotropic(strength),
                    Some("nearest_neighbor") => InertonCorrection::NearestNeighbor { strength },
                    _ => InertonCorrection::Zero,
                };
                let spec = LatticeSpec::nearest_neighbor(
                    dim,
                    get(c, "mass"),
                    get(c, "a"),
                    get(c, "coupling"),
                    get(c, "transverse_coupling"),
                    correction,
                )
                .map_err(LabError::model("lattice"))?;
                Ok(Scenario::Dispersion {
                    spec,
                    k_start: c.vector("k_start").unwrap_or_default().to_vec(),
                    k_end: c.vector("k_end").unwrap_or_default().to_vec(),
                    n_k: c.count("n_k").unwrap_or(101),
                })
            }
            Mode::Cluster => Ok(Scenario::Cluster {
                params: cluster_params(c)?,
                bracket: bracket(c)?,
            }),
            Mode::Sweep => {
                let axis = c
                    .sweep
                    .clone()
                    .ok_or_else(|| LabError::config("missing required key: sweep_key"))?;
                // Check every point up front so errors name the offending value.
                for x in axis.points() {
                    cluster_params(&with_point(c, &axis.key, x))
                        .map_err(|e| LabError::config(format!("{} = {x:e}: {e}", axis.key)))?;
                }
                Ok(Scenario::Sweep {
                    base: c.clone(),
                    axis,
                    bracket: bracket(c)?,
                })
            }
        }
    }
}

fn with_point(c: &ScenarioConfig, key: &str, x: f64) -> ScenarioConfig {
    let mut point = c.clone();
    point.values.insert(key.to_string(), Value::Real(x));
    point
}

/// Parses nothing; builds and runs the scenario described by `config`.
pub fn run(config: &ScenarioConfig) -> Result<ResultTable> {
    let metadata = Metadata::from_config(config);
    match Scenario::build(config)? {
        Scenario::Kinematics {
            params,
            periods,
            samples,
        } => run_kinematics(metadata, &params, periods, samples),
        Scenario::Dispersion {
            spec,
            k_start,
            k_end,
            n_k,
        } => run_dispersion(metadata, &spec, &k_start, &k_end, n_k),
        Scenario::Cluster { params, bracket } => {
            let report = reconcile(&params, bracket.0, bracket.1).map_err(LabError::model("cluster report"))?;
            cluster_table(metadata, &report)
        }
        Scenario::Sweep { base, axis, bracket } => run_sweep(metadata, &base, &axis, bracket),
    }
}

fn run_kinematics(metadata: Metadata, p: &ChainParams, periods: f64, samples: usize) -> Result<ResultTable> {
    let columns = [
        ("t", "s"),
        ("x", "m"),
        ("x_dot", "m/s"),
        ("y", "m"),
        ("y_dot", "m/s"),
        ("y_next", "m"),
        ("y_next_dot", "m/s"),
        ("x_rectified", "m"),
        ("x_dot_rectified", "m/s"),
        ("y_diff_rectified", "m"),
        ("y_diff_smooth", "m"),
    ];
    let mut table = ResultTable::new(
        metadata,
        columns.iter().map(|(n, u)| Column::new(*n, *u)).collect(),
    );
    let t_end = periods * p.period();
    for i in 0..samples {
        let t = if i == samples - 1 {
            t_end
        } else {
            t_end * i as f64 / (samples - 1) as f64
        };
        let s = smooth_trajectory(p, t).map_err(LabError::model("smooth trajectory"))?;
        let r = rectified_trajectory(p, t).map_err(LabError::model("rectified trajectory"))?;
        table.push(vec![
            t.into(),
            s.x.into(),
            s.x_dot.into(),
            s.y.into(),
            s.y_dot.into(),
            s.y_next.into(),
            s.y_next_dot.into(),
            r.x.into(),
            r.x_dot.into(),
            r.y_diff.into(),
            (s.y - s.y_next).into(),
        ])?;
    }
    Ok(table)
}

fn run_dispersion(
    metadata: Metadata,
    spec: &LatticeSpec,
    start: &[f64],
    end: &[f64],
    n: usize,
) -> Result<ResultTable> {
    let dim = spec.dim();
    let mut columns: Vec<Column> = (1..=dim).map(|i| Column::new(format!("k_{i}"), "1/m")).collect();
    columns.extend((1..=dim).map(|i| Column::new(format!("omega_{i}"), "rad/s")));
    let mut table = ResultTable::new(metadata, columns);
    let path = k_path(start, end, n).map_err(LabError::model("k path"))?;
    for k in path {
        let d = dispersion(spec, &k).map_err(LabError::model("dispersion"))?;
        let row = k.iter().chain(&d.branches).map(|v| Cell::Real(*v)).collect();
        table.push(row)?;
    }
    Ok(table)
}

/// One row per report entry, plus the two extremum classifications.
pub fn cluster_table(metadata: Metadata, report: &ClusterReport) -> Result<ResultTable> {
    let columns = vec![
        Column::new("quantity", ""),
        Column::new("unit", ""),
        Column::new("provenance", ""),
        Column::new("value", "SI"),
        Column::new("reference", "SI"),
        Column::new("rel_discrepancy", "1"),
    ];
    let mut table = ResultTable::new(metadata, columns);
    for e in &report.entries {
        table.push(vec![
            e.quantity.as_str().into(),
            e.unit.as_str().into(),
            e.provenance.as_str().into(),
            e.value.into(),
            e.reference.into(),
            e.rel_discrepancy.into(),
        ])?;
    }
    for (name, kind) in [
        ("extremum_kind", report.extremum_kind),
        ("extremum_kind_printed", report.printed.kind),
    ] {
        table.push(vec![
            name.into(),
            "".into(),
            Provenance::Recomputed.as_str().into(),
            kind.as_str().into(),
            Cell::Empty,
            Cell::Empty,
        ])?;
    }
    Ok(table)
}

const SWEEP_OUTPUTS: &[(&str, &str)] = &[
    ("aleph_closed", "1"),
    ("aleph_hbar", "1"),
    ("aleph_quoted", "1"),
    ("aleph_numeric", "1"),
    ("extremum_kind", ""),
    ("aleph_printed", "1"),
    ("m_star", "kg"),
    ("mass_ratio", "1"),
    ("e_bond", "J"),
    ("nu_ph", "Hz"),
    ("lambda_ph", "m"),
];

fn sweep_row(x: f64, r: &ClusterReport) -> Vec<Cell> {
    vec![
        x.into(),
        r.aleph_closed.into(),
        r.aleph_hbar.into(),
        r.aleph_quoted.into(),
        r.aleph_numeric.into(),
        r.extremum_kind.as_str().into(),
        r.printed.aleph_numeric.into(),
        r.heavy.m_star.into(),
        r.heavy.ratio.into(),
        r.bond.e_bond.into(),
        r.bond.nu_ph.into(),
        r.bond.lambda_ph.into(),
    ]
}

fn run_sweep(metadata: Metadata, base: &ScenarioConfig, axis: &SweepAxis, bracket: (f64, f64)) -> Result<ResultTable> {
    let mut columns = vec![Column::new(axis.key.clone(), cluster_unit(&axis.key))];
    columns.extend(SWEEP_OUTPUTS.iter().map(|(n, u)| Column::new(*n, *u)));
    let mut table = ResultTable::new(metadata, columns);

    // Points are independent; collect keeps input order.
    let rows: Vec<Vec<Cell>> = axis
        .points()
        .into_par_iter()
        .map(|x| {
            let params = cluster_params(&with_point(base, &axis.key, x))?;
            let report = reconcile(&params, bracket.0, bracket.1)
                .map_err(LabError::model(format!("sweep point {} = {x:e}", axis.key)))?;
            Ok(sweep_row(x, &report))
        })
        .collect::<Result<_>>()?;
    for row in rows {
        table.push(row)?;
    }
    Ok(table)
}
