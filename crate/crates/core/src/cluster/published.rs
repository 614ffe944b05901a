//! Values quoted in the source literature for the droplet model, kept verbatim so
//! reports can show them next to recomputed numbers.

/// Numerator of `aleph ≈ 4e16 / omega` (rad/s).
pub const SIZE_COEFFICIENT: f64 = 4e16;
/// Quoted cluster size at the reference inputs.
pub const CLUSTER_SIZE: f64 = 4e10;
/// Reference vibration frequency (rad/s).
pub const REFERENCE_OMEGA: f64 = 1e6;
/// Reference mean electron spacing (m).
pub const REFERENCE_SPACING: f64 = 1e-8;
/// Quoted bond energy (J).
pub const BOND_ENERGY: f64 = 4e-18;
/// Quoted knock-out photon frequency (Hz).
pub const PHOTON_FREQUENCY: f64 = 6e15;
/// Quoted knock-out photon wavelength (m).
pub const PHOTON_WAVELENGTH: f64 = 50e-9;
/// Quoted heavy-mass range (kg), low and high end.
pub const HEAVY_MASS_RANGE: (f64, f64) = (2e-24, 2e-22);
/// Oscillation amplitudes the mass range refers to (m).
pub const AMPLITUDE_RANGE: (f64, f64) = (1e-10, 1e-9);

/// True when `omega` and `r_bar` equal the reference inputs to 1e-9.
pub fn is_reference(omega: f64, r_bar: f64) -> bool {
    let close = |a: f64, b: f64| (a / b - 1.0).abs() <= 1e-9;
    close(omega, REFERENCE_OMEGA) && close(r_bar, REFERENCE_SPACING)
}
