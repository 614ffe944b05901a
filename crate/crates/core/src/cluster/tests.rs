use super::*;
use crate::numerics::Extremum;
use proptest::prelude::*;

fn reference_params(delta_r: f64) -> ClusterParams {
    ClusterParams::heavy(300.0, 1e-8, delta_r, 1e6).unwrap()
}

/// Parameters whose `(20/11) C_U / C_V` equals `target`.
fn params_with_closed(target: f64) -> ClusterParams {
    let base = reference_params(1e-9);
    let c_v = 20.0 / 11.0 * base.coulomb_scale() / target;
    let m = 2.0 * c_v / (base.omega * base.omega * base.delta_r * base.delta_r);
    ClusterParams::new(300.0, 1e-8, 1e-9, 1e6, m).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn params_validation() {
    assert!(ClusterParams::new(0.0, 1e-8, 1e-9, 1e6, 1e-30).is_err());
    assert!(ClusterParams::new(300.0, -1e-8, 1e-9, 1e6, 1e-30).is_err());
    let p = ClusterParams::new(300.0, 1e-8, 1e-9, 1e6, 1e-30).unwrap();
    assert!(p.with_mean_fill(1.5).is_err());
    assert!(p.with_mean_fill(0.0).is_err());
    assert!(p.with_fugacity(0.0).is_err());
    assert!(p.with_n_total(-1.0).is_err());
    assert_eq!(p.mean_fill, 0.5);
    assert_eq!(p.fugacity, 1.0);
    assert_eq!(p.clusters, 1.0);
}

#[test]
fn heavy_params_make_harmonic_scale_one_quantum() {
    let p = reference_params(1e-10);
    assert!(rel(p.harmonic_scale(), constants().hbar * p.omega) < 1e-14);
}

#[test]
fn pair_potential_examples() {
    let p = reference_params(1e-9);
    assert_eq!(pair_potentials(&p, 1.0).unwrap(), (p.coulomb_scale(), p.harmonic_scale()));
    let (u1, v1) = pair_potentials(&p, 1.0).unwrap();
    let (u2, _) = pair_potentials(&p, 2.0).unwrap();
    let (_, v3) = pair_potentials(&p, 3.0).unwrap();
    assert_eq!(u2 / u1, 0.5);
    assert!(rel(v3 / v1, 9.0) < 1e-15);
    assert!(pair_potentials(&p, 0.5).is_err());
}

#[test]
fn ab_examples() {
    let p = reference_params(1e-9);
    assert_eq!(ab_integrals(&p, 1.0).unwrap(), (0.0, 0.0));
    assert!(ab_integrals(&p, 0.5).is_err());
    // Choose r_bar so that C_U = k_B T.
    let k = constants();
    let t = 300.0;
    let r_bar = k.e * k.e / (4.0 * core::f64::consts::PI * k.eps0 * k.k_b * t);
    let q = ClusterParams::new(t, r_bar, 1e-9, 1e6, 1e-30).unwrap();
    let (a, _) = ab_integrals(&q, 8.0).unwrap();
    assert!(rel(a, 4.5) < 1e-13, "{a}");
}

#[test]
fn ab_match_quadrature() {
    let p = reference_params(1e-9);
    for aleph in [2.0, 10.0, 1e3, 1e9] {
        let (a, b) = ab_integrals(&p, aleph).unwrap();
        let (qa, qb) = ab_integrals_quadrature(&p, aleph, 1e-13).unwrap();
        assert!(rel(qa, a) <= 1e-10, "a at {aleph}: {qa} vs {a}");
        assert!(rel(qb, b) <= 1e-10, "b at {aleph}: {qb} vs {b}");
    }
}

#[test]
fn action_full_examples() {
    // Balanced potentials: equal prefactors and aleph where the brackets match are
    // rare, so check the a = b case at aleph = 1 and the reduction for <n> = 1.
    let p = reference_params(1e-9).with_mean_fill(1.0).unwrap();
    let s = action_full(&p, 1.0).unwrap();
    assert!(rel(s, -0.5 * 2f64.ln()) < 1e-15);

    let q = reference_params(1e-9).with_mean_fill(0.25).unwrap().with_clusters(3.0).unwrap();
    let s = action_full(&q, 1.0).unwrap();
    let expected = 0.5 * 3.0 * (-(4.0 - 1.0) * 4.0 - 2f64.ln());
    assert!(rel(s, expected) < 1e-15);

    // With <n> = 1 and xi = 1 only the (a - b) and log terms survive.
    let aleph = 50.0;
    let (a, b) = ab_integrals(&p, aleph).unwrap();
    let s = action_full(&p, aleph).unwrap();
    let expected = 0.5 * ((a - b) * aleph * aleph - (aleph + 1.0).ln());
    assert!(rel(s, expected) < 1e-14);
}

#[test]
fn fugacity_below_one_lowers_action() {
    let p = reference_params(1e-9).with_mean_fill(1.0).unwrap();
    let q = p.with_fugacity(0.5).unwrap();
    for aleph in [2.0, 10.0, 1e4] {
        assert!(action_full(&q, aleph).unwrap() < action_full(&p, aleph).unwrap());
    }
}

#[test]
fn action_full_overflow_reports_log_scale() {
    let p = reference_params(1e-9);
    match action_full(&p, 1e9) {
        Err(Error::ActionOverflow { log_magnitude }) => assert!(log_magnitude > 709.0),
        other => panic!("{other:?}"),
    }
}

#[test]
fn leading_action_single_terms() {
    let repulsive = LeadingAction {
        variant: LeadingVariant::AsPrinted,
        clusters: 1.0,
        repulsion: 2.0,
        attraction: 0.0,
    };
    let mut last = 0.0;
    for aleph in [1.0, 2.0, 10.0, 1e3] {
        let s = repulsive.value(aleph);
        assert!(s > last);
        last = s;
    }
    let attractive = LeadingAction {
        repulsion: 0.0,
        attraction: 2.0,
        ..repulsive
    };
    for variant in [LeadingVariant::AsPrinted, LeadingVariant::FromAb] {
        let a = LeadingAction { variant, ..attractive };
        for aleph in [1.5, 10.0, 1e5] {
            assert!(a.value(aleph) < 0.0);
        }
    }
}

#[test]
fn from_ab_is_half_k_a_minus_b_aleph_squared() {
    let p = reference_params(1e-9).with_clusters(7.0).unwrap();
    for aleph in [1.0, 3.0, 1e4, 1e8] {
        let (a, b) = ab_integrals(&p, aleph).unwrap();
        let direct = 0.5 * 7.0 * (a - b) * aleph * aleph;
        let s = action_leading(&p, aleph, LeadingVariant::FromAb).unwrap();
        assert!((s - direct).abs() <= 1e-13 * direct.abs().max(1e-300));
    }
}

#[test]
fn printed_coefficients_are_ten_times_a_over_b() {
    let p = reference_params(1e-9);
    let printed = LeadingAction::new(&p, LeadingVariant::AsPrinted).unwrap();
    let from_ab = LeadingAction::new(&p, LeadingVariant::FromAb).unwrap();
    assert!(rel(printed.repulsion, from_ab.repulsion) < 1e-14);
    assert!(rel(printed.attraction / from_ab.attraction, 10.0) < 1e-14);
}

#[test]
fn cluster_size_from_ab_matches_closed_form() {
    for target in [1e6, 1e8, 1e10, 1e12] {
        let p = params_with_closed(target);
        let size = cluster_size(&p, LeadingVariant::FromAb, 2.0, 1e14).unwrap();
        assert!(rel(size.aleph_closed, target) < 1e-12);
        assert!(rel(size.aleph_numeric, target) <= 1e-3, "{size:?}");
        assert_eq!(size.kind, Extremum::Maximum);
    }
}

#[test]
fn cluster_size_converges_monotonically() {
    let errors: alloc::vec::Vec<f64> = [1e3, 1e6, 1e9]
        .iter()
        .map(|&t| {
            let s = cluster_size(&params_with_closed(t), LeadingVariant::FromAb, 2.0, 1e14).unwrap();
            rel(s.aleph_numeric, s.aleph_closed)
        })
        .collect();
    assert!(errors[0] > errors[1] && errors[1] > errors[2], "{errors:?}");
}

#[test]
fn printed_variant_matches_own_closed_form() {
    for delta_r in [1e-10, 1e-9] {
        let p = reference_params(delta_r);
        let size = cluster_size(&p, LeadingVariant::AsPrinted, 2.0, 1e14).unwrap();
        assert!(rel(size.aleph_numeric, size.own_closed) <= 1e-6, "{size:?}");
        assert!(rel(size.own_closed, size.aleph_closed / 10.0) < 1e-12);
        assert_eq!(size.kind, Extremum::Maximum);
    }
}

#[test]
fn cluster_size_scales_with_ratio() {
    let p = params_with_closed(1e8);
    let q = ClusterParams { r_bar: p.r_bar / 10.0, ..p };
    let a = cluster_size(&p, LeadingVariant::FromAb, 2.0, 1e14).unwrap();
    let b = cluster_size(&q, LeadingVariant::FromAb, 2.0, 1e14).unwrap();
    assert!(rel(b.aleph_closed / a.aleph_closed, 10.0) < 1e-14);
    // The finite-aleph correction (about 0.75 aleph^(-2/3)) differs between the two.
    assert!(rel(b.aleph_numeric / a.aleph_numeric, 10.0) < 1e-5);
}

#[test]
fn cluster_size_without_bracket_lists_samples() {
    let p = params_with_closed(1e8);
    match cluster_size(&p, LeadingVariant::FromAb, 2.0, 1e3) {
        Err(Error::NoBracket { pattern, .. }) => assert!(pattern.contains("S(")),
        other => panic!("{other:?}"),
    }
    assert!(cluster_size(&p, LeadingVariant::FromAb, 0.5, 1e3).is_err());
}

#[test]
fn hbar_size_examples() {
    let p = reference_params(1e-9);
    // Independent evaluation of (20/11) e² / (4π ε₀ r̄ ħ ω) at r̄ = 1e-8, ω = 1e6.
    assert!(rel(cluster_size_hbar(&p).unwrap(), 397_762_047.933_904_7) < 1e-12);
    let faster = ClusterParams { omega: 2e6, ..p };
    let closer = ClusterParams { r_bar: 5e-9, ..p };
    let base = cluster_size_hbar(&p).unwrap();
    assert!(rel(cluster_size_hbar(&faster).unwrap(), base / 2.0) < 1e-14);
    assert!(rel(cluster_size_hbar(&closer).unwrap(), base * 2.0) < 1e-14);
}

#[test]
fn quoted_estimate_examples() {
    assert_eq!(quoted_size_estimate(1e6).unwrap(), 4e10);
    assert_eq!(quoted_size_estimate(4e16).unwrap(), 1.0);
    assert_eq!(quoted_size_estimate(1e10).unwrap(), 4e6);
    assert!(quoted_size_estimate(0.0).is_err());
}

#[test]
fn heavy_mass_examples() {
    let m = heavy_mass(1e6, 1e-9).unwrap();
    assert!(rel(m.m_star, 2.109_143_635_292_313e-22) < 1e-12);
    let doubled = heavy_mass(1e6, 2e-9).unwrap();
    assert!(rel(doubled.m_star, m.m_star / 4.0) < 1e-14);
    let k = constants();
    assert!(rel(m.m_star * 0.5 * 1e12 * 1e-18, k.hbar * 1e6) < 1e-14);
    assert!(rel(m.ratio, m.m_star / k.m0) < 1e-15);
    assert!(heavy_mass(1e6, 0.0).is_err());
}

#[test]
fn bond_energy_examples() {
    let b = bond_energy(4e10, 1e6).unwrap();
    assert!(rel(b.e_bond, published::BOND_ENERGY) <= 0.1, "{b:?}");
    assert!(rel(b.nu_ph, published::PHOTON_FREQUENCY) <= 0.1, "{b:?}");
    assert!(rel(b.lambda_ph, published::PHOTON_WAVELENGTH) <= 0.1, "{b:?}");
    let one = bond_energy(1.0, 1e6).unwrap();
    assert_eq!(one.e_bond, constants().hbar * 1e6);
    assert!(bond_energy(0.5, 1e6).is_err());
}

#[test]
fn reconcile_reference_inputs() {
    for delta_r in [1e-10, 1e-9] {
        let p = reference_params(delta_r);
        let r = reconcile(&p, 2.0, 1e14).unwrap();
        for q in ["aleph_quoted", "aleph_quoted_reference", "m_star_paper_low", "m_star_paper_high", "e_bond_paper"] {
            assert_eq!(r.entry(q).unwrap().provenance, Provenance::Paper, "{q}");
        }
        for q in ["aleph_closed", "aleph_hbar", "aleph_numeric", "m_star", "e_bond"] {
            let e = r.entry(q).unwrap();
            assert_eq!(e.provenance, Provenance::Recomputed, "{q}");
            assert!(e.rel_discrepancy.is_some(), "{q}");
        }
        assert_eq!(r.bond.e_bond, r.aleph_used * constants().hbar * p.omega);
        assert!(r.entries.iter().filter(|e| e.quantity != "delta_m").all(|e| e.value > 0.0));
        assert!(r.heavy.ratio > 1.0);
        assert_eq!(r.extremum_kind, Extremum::Maximum);
    }
}

#[test]
fn reconcile_omits_fixed_quotes_elsewhere() {
    let p = ClusterParams::heavy(300.0, 2e-8, 1e-9, 1e7).unwrap().with_n_total(1e12).unwrap();
    let r = reconcile(&p, 2.0, 1e14).unwrap();
    assert!(r.entry("aleph_quoted_reference").is_none());
    assert!(r.entry("aleph_quoted").is_some());
    assert!(rel(r.clusters_from_total.unwrap(), 1e12 / r.aleph_used) < 1e-15);
}

#[test]
fn report_json_round_trip() {
    let r = reconcile(&reference_params(1e-9), 2.0, 1e14).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: ClusterReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    assert!(text.contains("\"recomputed\""));
    assert!(text.contains("\"paper\""));
}

#[test]
fn high_temperature_limit() {
    let s = 6;
    let mut v = alloc::vec![0.0; s * s];
    let mut u = alloc::vec![0.0; s * s];
    for i in 0..s {
        for j in 0..s {
            if i != j {
                v[i * s + j] = 1e-21;
                u[i * s + j] = 3e-21;
            }
        }
    }
    let g = LatticeGas::empty(alloc::vec![2e-21; s], v, u).unwrap();
    let z = partition_function(&g, 1e12).unwrap();
    assert!(rel(z, 64.0) <= 1e-6, "{z}");
}

proptest! {
    #[test]
    fn argmax_invariant_under_common_scaling(target in 1e5f64..1e11, factor in 0.01f64..100.0) {
        let p = params_with_closed(target);
        // Scale C_U by shrinking r_bar and C_V by growing m_eff.
        let q = ClusterParams { r_bar: p.r_bar / factor, m_eff: p.m_eff * factor, ..p };
        let a = cluster_size(&p, LeadingVariant::FromAb, 2.0, 1e14).unwrap();
        let b = cluster_size(&q, LeadingVariant::FromAb, 2.0, 1e14).unwrap();
        prop_assert!(rel(b.aleph_numeric, a.aleph_numeric) < 1e-8);
        let s = action_leading(&p, a.aleph_numeric, LeadingVariant::FromAb).unwrap();
        let t = action_leading(&q, a.aleph_numeric, LeadingVariant::FromAb).unwrap();
        prop_assert!(rel(t, s * factor) < 1e-10);
    }

    #[test]
    fn quadrature_oracle_any_aleph(log_aleph in 0.1f64..9.0) {
        let p = reference_params(1e-9);
        let aleph = 10f64.powf(log_aleph);
        let (a, b) = ab_integrals(&p, aleph).unwrap();
        let (qa, qb) = ab_integrals_quadrature(&p, aleph, 1e-13).unwrap();
        prop_assert!(rel(qa, a) <= 1e-10);
        prop_assert!(rel(qb, b) <= 1e-10);
    }

    #[test]
    fn report_quantities_positive(delta_r in 1e-10f64..1e-9) {
        let r = reconcile(&reference_params(delta_r), 2.0, 1e14).unwrap();
        prop_assert!(r.heavy.ratio > 1.0);
        for e in r.entries.iter().filter(|e| e.quantity != "delta_m") {
            prop_assert!(e.value > 0.0, "{}", e.quantity);
        }
        prop_assert!(r.heavy.delta_m > 0.0);
    }
}
