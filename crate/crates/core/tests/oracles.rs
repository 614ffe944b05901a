//! Cross-module checks: closed forms against the generic numerical kernels.

use droplet_core::cluster::{ClusterParams, LeadingAction, LeadingVariant};
use droplet_core::constants;
use droplet_core::kinematics::{smooth_trajectory, ChainParams, ChainState};
use droplet_core::lattice::{dispersion, force_matrix, InertonCorrection, LatticeSpec};
use droplet_core::numerics::{
    eig_sym, fd_derivative, integrate, quad, stationary_point, DerivativeOrder, Extremum, OdeProblem,
};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn reduced_planck_constant() {
    let k = constants();
    assert!(rel(k.hbar, 1.054_571_817e-34) < 1e-9);
    assert!(rel(k.hbar * 2.0 * std::f64::consts::PI, k.h) < 1e-15);
    assert_eq!(k.c, 2.997_924_58e8);
    assert_eq!(constants(), constants());
}

#[test]
fn uncoupled_chain_matches_free_motion() {
    let m = constants().m0;
    let p = ChainParams::new(m, 1.5e6, 4e13, 0.0).unwrap();
    let times: Vec<f64> = (0..=40).map(|i| i as f64 * p.period() / 8.0).collect();
    let problem = OdeProblem::new(p.rhs(), ChainState::initial(&p).to_array().to_vec(), 0.0, *times.last().unwrap());
    let traj = integrate(&problem, 1e-11, 1e-30, &times).unwrap();
    let amp = p.amplitudes();
    for (t, s) in traj.times.iter().zip(&traj.states) {
        let exact = smooth_trajectory(&p, *t).unwrap();
        // x = (v/Ω) sin Ωt and ẋ = v cos Ωt with Ω = ω when ω̃ = 0.
        let w = p.omega() * t;
        assert!((exact.x - p.speed() / p.omega() * w.sin()).abs() <= 1e-12 * amp.lambda);
        assert!((exact.x_dot - p.speed() * w.cos()).abs() <= 1e-12 * p.speed());
        assert!((s[0] - exact.x).abs() <= 1e-8 * amp.lambda / std::f64::consts::PI);
        assert!((s[1] - exact.x_dot).abs() <= 1e-8 * p.speed());
        assert!(s[4].abs() <= 1e-300 && s[5] == 0.0);
    }
}

#[test]
fn quadrature_antiderivative() {
    let top = 8f64.cbrt();
    assert!(rel(quad(|x| x, 1.0, top, 1e-12).unwrap(), 1.5) < 1e-12);
    assert_eq!(quad(|x| x, 1.0, 1.0, 1e-12).unwrap(), 0.0);
}

#[test]
fn printed_action_stationary_point_and_curvature() {
    let p = ClusterParams::heavy(300.0, 1e-8, 1e-9, 1e6).unwrap();
    let action = LeadingAction::new(&p, LeadingVariant::AsPrinted).unwrap();
    let f = |x: f64| action.value(x);
    let point = stationary_point(f, 2.0, 1e14, 1e-12).unwrap();
    assert!(rel(point.x, action.closed_form_stationary()) <= 1e-6);
    let curvature = fd_derivative(f, point.x, DerivativeOrder::Second);
    assert!(curvature < 0.0);
    assert_eq!(point.kind, Extremum::Maximum);
}

#[test]
fn dispersion_is_eigenvalues_of_force_matrix() {
    let spec = LatticeSpec::nearest_neighbor(3, 6e-26, 3e-10, 9.0, 2.5, InertonCorrection::NearestNeighbor { strength: 0.7 })
        .unwrap();
    let k = [3e9, -1.2e9, 5e8];
    let e = eig_sym(&force_matrix(&spec, &k).unwrap());
    let d = dispersion(&spec, &k).unwrap();
    for (w, lam) in d.branches.iter().zip(&e.values) {
        assert!(rel(w * w, lam / spec.mass()) < 1e-12);
    }
}
