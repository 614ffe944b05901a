//! Generic numerical kernels.
//!
//! Every closed form in the physics modules is checked against one of these
//! routines, so they are written without knowledge of the formulas they verify.
//! All routines are deterministic.

mod eigen;
mod ode;
mod optimize;
mod quad;

pub use eigen::{eig_sym, EigenDecomposition, SymmetricMatrix};
pub use ode::{integrate, OdeProblem, Trajectory};
pub use optimize::{
    fd_derivative, stationary_point, DerivativeOrder, Extremum, StationaryPoint,
};
pub use quad::{quad, quad_with_limit};

/// Compensated (Kahan-Babuska) summation.
pub fn kahan_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
