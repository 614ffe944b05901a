//! SI constants and dimension bookkeeping.
//!
//! Numeric kernels work on raw `f64` values. [`Quantity`] is used at module
//! boundaries and in tests to make sure formulas combine the right units.

use core::f64::consts::PI;
use core::fmt;
use core::ops::{Div, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Label written into reports so readers know which constant set produced them.
pub const CONSTANTS_VERSION: &str = "CODATA 2018";

/// Exact and recommended CODATA 2018 values in SI units.
///
/// | symbol | value              | unit   | status      |
/// |--------|--------------------|--------|-------------|
/// | c      | 299 792 458        | m/s    | exact       |
/// | h      | 6.626 070 15e-34   | J s    | exact       |
/// | ħ      | h / 2π             | J s    | exact       |
/// | e      | 1.602 176 634e-19  | C      | exact       |
/// | ε₀     | 8.854 187 8128e-12 | F/m    | measured    |
/// | k_B    | 1.380 649e-23      | J/K    | exact       |
/// | m₀     | 9.109 383 7015e-31 | kg     | measured    |
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub c: f64,
    pub h: f64,
    pub hbar: f64,
    pub e: f64,
    pub eps0: f64,
    pub k_b: f64,
    pub m0: f64,
}

const SPEED_OF_LIGHT: f64 = 299_792_458.0;
const PLANCK: f64 = 6.626_070_15e-34;
const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
const BOLTZMANN: f64 = 1.380_649e-23;
const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

static CONSTANTS: PhysicalConstants = PhysicalConstants {
    c: SPEED_OF_LIGHT,
    h: PLANCK,
    // ħ is defined from h; the rounded CODATA figure 1.054571817e-34 differs at 1e-10.
    hbar: PLANCK / (2.0 * PI),
    e: ELEMENTARY_CHARGE,
    eps0: VACUUM_PERMITTIVITY,
    k_b: BOLTZMANN,
    m0: ELECTRON_MASS,
};

/// The constant set used everywhere in the crate.
pub fn constants() -> &'static PhysicalConstants {
    &CONSTANTS
}

/// One row of the constants table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantEntry {
    pub name: &'static str,
    pub symbol: &'static str,
    pub value: f64,
    pub unit: &'static str,
    pub dimension: Dimension,
}

impl PhysicalConstants {
    pub fn table(&self) -> [ConstantEntry; 7] {
        [
            ConstantEntry {
                name: "speed of light",
                symbol: "c",
                value: self.c,
                unit: "m/s",
                dimension: Dimension::VELOCITY,
            },
            ConstantEntry {
                name: "Planck constant",
                symbol: "h",
                value: self.h,
                unit: "J s",
                dimension: Dimension::ACTION,
            },
            ConstantEntry {
                name: "reduced Planck constant",
                symbol: "hbar",
                value: self.hbar,
                unit: "J s",
                dimension: Dimension::ACTION,
            },
            ConstantEntry {
                name: "elementary charge",
                symbol: "e",
                value: self.e,
                unit: "C",
                dimension: Dimension::CHARGE,
            },
            ConstantEntry {
                name: "vacuum permittivity",
                symbol: "eps0",
                value: self.eps0,
                unit: "F/m",
                dimension: Dimension::PERMITTIVITY,
            },
            ConstantEntry {
                name: "Boltzmann constant",
                symbol: "k_B",
                value: self.k_b,
                unit: "J/K",
                dimension: Dimension::ENERGY.per(Dimension::TEMPERATURE),
            },
            ConstantEntry {
                name: "electron rest mass",
                symbol: "m0",
                value: self.m0,
                unit: "kg",
                dimension: Dimension::MASS,
            },
        ]
    }

    pub fn quantity(&self, symbol: &str) -> Option<Quantity> {
        self.table()
            .iter()
            .find(|entry| entry.symbol == symbol)
            .map(|entry| Quantity::new(entry.value, entry.dimension))
    }
}

/// Exponents over (length, mass, time, current, temperature).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Dimension(pub [i8; 5]);

impl Dimension {
    pub const DIMENSIONLESS: Dimension = Dimension([0, 0, 0, 0, 0]);
    pub const LENGTH: Dimension = Dimension([1, 0, 0, 0, 0]);
    pub const MASS: Dimension = Dimension([0, 1, 0, 0, 0]);
    pub const TIME: Dimension = Dimension([0, 0, 1, 0, 0]);
    pub const CURRENT: Dimension = Dimension([0, 0, 0, 1, 0]);
    pub const TEMPERATURE: Dimension = Dimension([0, 0, 0, 0, 1]);

    pub const VELOCITY: Dimension = Dimension([1, 0, -1, 0, 0]);
    pub const FREQUENCY: Dimension = Dimension([0, 0, -1, 0, 0]);
    pub const ENERGY: Dimension = Dimension([2, 1, -2, 0, 0]);
    pub const ACTION: Dimension = Dimension([2, 1, -1, 0, 0]);
    pub const CHARGE: Dimension = Dimension([0, 0, 1, 1, 0]);
    /// F/m = A² s⁴ kg⁻¹ m⁻³
    pub const PERMITTIVITY: Dimension = Dimension([-3, -1, 4, 2, 0]);
    /// N/m = kg s⁻²
    pub const STIFFNESS: Dimension = Dimension([0, 1, -2, 0, 0]);

    pub const fn times(self, other: Dimension) -> Dimension {
        let (a, b) = (self.0, other.0);
        Dimension([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], a[4] + b[4]])
    }

    pub const fn per(self, other: Dimension) -> Dimension {
        let (a, b) = (self.0, other.0);
        Dimension([a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3], a[4] - b[4]])
    }

    pub const fn powi(self, n: i8) -> Dimension {
        let a = self.0;
        Dimension([a[0] * n, a[1] * n, a[2] * n, a[3] * n, a[4] * n])
    }

    pub fn is_dimensionless(self) -> bool {
        self == Dimension::DIMENSIONLESS
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_dimensionless() {
            return f.write_str("1");
        }
        let symbols = ["m", "kg", "s", "A", "K"];
        let mut first = true;
        for (symbol, &exp) in symbols.iter().zip(self.0.iter()) {
            if exp == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "{symbol}")?;
            } else {
                write!(f, "{symbol}^{exp}")?;
            }
        }
        Ok(())
    }
}

/// A real value tagged with its SI dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: f64,
    pub dimension: Dimension,
}

impl Quantity {
    pub const fn new(value: f64, dimension: Dimension) -> Self {
        Quantity { value, dimension }
    }

    pub const fn dimensionless(value: f64) -> Self {
        Quantity::new(value, Dimension::DIMENSIONLESS)
    }

    /// Sum of two quantities; fails unless the dimensions agree exactly.
    pub fn try_add(self, other: Quantity) -> Result<Quantity> {
        if self.dimension != other.dimension {
            return Err(Error::domain(alloc::format!(
                "cannot add [{}] to [{}]",
                other.dimension,
                self.dimension
            )));
        }
        Ok(Quantity::new(self.value + other.value, self.dimension))
    }

    pub fn try_sub(self, other: Quantity) -> Result<Quantity> {
        self.try_add(Quantity::new(-other.value, other.dimension))
    }

    pub fn powi(self, n: i8) -> Quantity {
        Quantity::new(self.value.powi(n as i32), self.dimension.powi(n))
    }

    /// Raw value after checking the dimension.
    pub fn value_in(self, expected: Dimension) -> Result<f64> {
        if check_dim(&self, expected) {
            Ok(self.value)
        } else {
            Err(Error::domain(alloc::format!(
                "expected [{}], got [{}]",
                expected,
                self.dimension
            )))
        }
    }
}

impl Mul for Quantity {
    type Output = Quantity;
    fn mul(self, rhs: Quantity) -> Quantity {
        Quantity::new(self.value * rhs.value, self.dimension.times(rhs.dimension))
    }
}

impl Div for Quantity {
    type Output = Quantity;
    fn div(self, rhs: Quantity) -> Quantity {
        Quantity::new(self.value / rhs.value, self.dimension.per(rhs.dimension))
    }
}

impl Mul<f64> for Quantity {
    type Output = Quantity;
    fn mul(self, rhs: f64) -> Quantity {
        Quantity::new(self.value * rhs, self.dimension)
    }
}

pub fn check_dim(q: &Quantity, expected: Dimension) -> bool {
    q.dimension == expected
}
