//! Natural-unit system (ħ = c = ε₀ = μ₀ = 1) and lab-unit conversions.
//!
//! All internal quantities are powers of energy, measured in eV: times and
//! lengths are eV⁻¹, field strengths are eV². Lab units exist only at the
//! configuration boundary. Reference constants are CODATA 2018.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

/// Fine-structure constant (CODATA 2018).
pub const ALPHA_QED: f64 = 7.297_352_569_3e-3;

/// Electron rest energy m_e c² in eV (CODATA 2018).
pub const ELECTRON_MASS_EV: f64 = 510_998.950_00;

/// ħ in eV·s (CODATA 2018, exact).
pub const HBAR_EV_S: f64 = 6.582_119_569e-16;

/// ħc in eV·m (CODATA 2018).
pub const HBARC_EV_M: f64 = 1.973_269_804_59e-7;

/// Vacuum permittivity in F/m, used only for intensity conversions.
pub const EPSILON0_SI: f64 = 8.854_187_812_8e-12;

/// Speed of light in m/s (exact).
pub const C_SI: f64 = 299_792_458.0;

/// Kelvin per eV: e/k_B.
pub const KELVIN_PER_EV: f64 = 1.602_176_634e-19 / 1.380_649e-23;

#[derive(Debug, Error, PartialEq)]
pub enum UnitError {
    #[error("unknown unit tag `{0}`")]
    UnknownUnit(String),
    #[error("negative intensity {0} W/cm^2 cannot be converted to a field")]
    NegativeIntensity(f64),
}

/// Lab units accepted at the configuration boundary.
///
/// Each maps to a definite power of energy in natural units: times and
/// lengths to eV⁻¹, fields (and intensities, through E = √(2I/ε₀c)) to eV²,
/// energies to eV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Unit {
    Second,
    Attosecond,
    Femtosecond,
    Meter,
    Nanometer,
    ElectronVolt,
    KiloElectronVolt,
    MegaElectronVolt,
    VoltsPerMeter,
    /// Laser intensity I = ½ ε₀ c E²; converts to the field in natural units.
    WattsPerCm2,
    /// Field as a fraction of the Schwinger field m²/q.
    SchwingerFraction,
    /// Already in natural units (identity).
    Natural,
}

impl Unit {
    pub fn parse(tag: &str) -> Result<Self, UnitError> {
        match tag {
            "s" | "second" | "seconds" => Ok(Unit::Second),
            "as" | "attosecond" | "attoseconds" => Ok(Unit::Attosecond),
            "fs" | "femtosecond" | "femtoseconds" => Ok(Unit::Femtosecond),
            "m" | "meter" | "meters" => Ok(Unit::Meter),
            "nm" | "nanometer" | "nanometers" => Ok(Unit::Nanometer),
            "eV" | "ev" => Ok(Unit::ElectronVolt),
            "keV" | "kev" => Ok(Unit::KiloElectronVolt),
            "MeV" | "mev" => Ok(Unit::MegaElectronVolt),
            "V/m" | "v/m" => Ok(Unit::VoltsPerMeter),
            "W/cm2" | "w/cm2" | "W/cm^2" => Ok(Unit::WattsPerCm2),
            "E_S" | "e_s" | "schwinger" => Ok(Unit::SchwingerFraction),
            "natural" | "nat" => Ok(Unit::Natural),
            other => Err(UnitError::UnknownUnit(other.to_string())),
        }
    }
}

/// Physical constants of the model in natural units.
///
/// The coupling `g = q²/m` is the s-wave scattering length of the electron
/// seen as a point scatterer; the Schwinger field `E_S = m²/q` sets the
/// scale at which vacuum nonlinearity matters.
#[derive(Debug, Clone, Copy)]
pub struct Constants {
    /// Fine-structure constant.
    pub alpha_qed: f64,
    /// Electron charge q = √(4π α), dimensionless.
    pub q: f64,
    /// Electron mass in eV.
    pub m: f64,
    /// Coupling length g = q²/m in eV⁻¹.
    pub g: f64,
    /// Schwinger field m²/q in eV².
    pub schwinger_field: f64,
}

impl Constants {
    /// CODATA 2018 reference values.
    pub fn codata() -> Self {
        let alpha_qed = ALPHA_QED;
        let q = (4.0 * PI * alpha_qed).sqrt();
        let m = ELECTRON_MASS_EV;
        Constants {
            alpha_qed,
            q,
            m,
            g: q * q / m,
            schwinger_field: m * m / q,
        }
    }

    /// Converts a lab-unit value to natural units (powers of eV).
    pub fn to_natural(&self, value: f64, unit: Unit) -> Result<f64, UnitError> {
        match unit {
            Unit::Second => Ok(value / HBAR_EV_S),
            Unit::Attosecond => Ok(value * 1e-18 / HBAR_EV_S),
            Unit::Femtosecond => Ok(value * 1e-15 / HBAR_EV_S),
            Unit::Meter => Ok(value / HBARC_EV_M),
            Unit::Nanometer => Ok(value * 1e-9 / HBARC_EV_M),
            Unit::ElectronVolt => Ok(value),
            Unit::KiloElectronVolt => Ok(value * 1e3),
            Unit::MegaElectronVolt => Ok(value * 1e6),
            // Matching work done on the electron: q E_nat L_nat [eV] must
            // equal e E_SI L_SI, and e·(V/m)·m is one eV per volt.
            Unit::VoltsPerMeter => Ok(value * HBARC_EV_M / self.q),
            Unit::WattsPerCm2 => {
                if value < 0.0 {
                    return Err(UnitError::NegativeIntensity(value));
                }
                let e_si = (2.0 * value * 1e4 / (EPSILON0_SI * C_SI)).sqrt();
                self.to_natural(e_si, Unit::VoltsPerMeter)
            }
            Unit::SchwingerFraction => Ok(value * self.schwinger_field),
            Unit::Natural => Ok(value),
        }
    }

    /// Inverse of [`Constants::to_natural`].
    pub fn from_natural(&self, value: f64, unit: Unit) -> Result<f64, UnitError> {
        match unit {
            Unit::Second => Ok(value * HBAR_EV_S),
            Unit::Attosecond => Ok(value * HBAR_EV_S / 1e-18),
            Unit::Femtosecond => Ok(value * HBAR_EV_S / 1e-15),
            Unit::Meter => Ok(value * HBARC_EV_M),
            Unit::Nanometer => Ok(value * HBARC_EV_M / 1e-9),
            Unit::ElectronVolt => Ok(value),
            Unit::KiloElectronVolt => Ok(value / 1e3),
            Unit::MegaElectronVolt => Ok(value / 1e6),
            Unit::VoltsPerMeter => Ok(value * self.q / HBARC_EV_M),
            Unit::WattsPerCm2 => {
                let e_si = self.from_natural(value, Unit::VoltsPerMeter)?;
                Ok(0.5 * EPSILON0_SI * C_SI * e_si * e_si / 1e4)
            }
            Unit::SchwingerFraction => Ok(value / self.schwinger_field),
            Unit::Natural => Ok(value),
        }
    }

    /// Coupling length g expressed in meters.
    pub fn coupling_length_m(&self) -> f64 {
        self.g * HBARC_EV_M
    }

    /// Schwinger field expressed in V/m.
    pub fn schwinger_field_v_per_m(&self) -> f64 {
        self.schwinger_field * self.q / HBARC_EV_M
    }
}

impl Default for Constants {
    fn default() -> Self {
        Constants::codata()
    }
}
