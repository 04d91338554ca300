//! Run configuration schema: a strict TOML subset with unit-tagged scalars.
//!
//! Unknown keys are rejected everywhere so a config reproduces exactly one
//! computation. All unit-tagged values are converted to natural units when
//! the config is resolved.

use crate::analysis::{ConeDirection, PairingRule, PolarizationRule};
use crate::pulse::{PulseProfile, PulseShape};
use crate::quadrature::Tolerances;
use crate::units::{Constants, Unit};
use serde::Deserialize;

use super::CliError;

fn default_unit() -> String {
    "natural".to_string()
}

fn parse_unit(tag: &str) -> Result<Unit, CliError> {
    Unit::parse(tag).map_err(|e| CliError::Config(e.to_string()))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseSection {
    pub shape: PulseShape,
    /// Peak field with `e0_unit`; mutually exclusive with `gamma_max`.
    pub e0: Option<f64>,
    #[serde(default = "default_unit")]
    pub e0_unit: String,
    /// Tune the peak field so the exact momentum integral reaches this
    /// Lorentz factor from rest (Gaussian shape only).
    pub gamma_max: Option<f64>,
    pub width: f64,
    #[serde(default = "default_unit")]
    pub width_unit: String,
    #[serde(default)]
    pub rise: f64,
    #[serde(default = "default_unit")]
    pub rise_unit: String,
    #[serde(default)]
    pub center: f64,
    #[serde(default = "default_unit")]
    pub center_unit: String,
}

impl PulseSection {
    pub fn resolve(&self, constants: &Constants) -> Result<PulseProfile, CliError> {
        let width = constants
            .to_natural(self.width, parse_unit(&self.width_unit)?)
            .map_err(|e| CliError::Config(e.to_string()))?;
        let rise = constants
            .to_natural(self.rise, parse_unit(&self.rise_unit)?)
            .map_err(|e| CliError::Config(e.to_string()))?;
        let center = constants
            .to_natural(self.center, parse_unit(&self.center_unit)?)
            .map_err(|e| CliError::Config(e.to_string()))?;
        let profile = match (self.e0, self.gamma_max) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "pulse: e0 and gamma_max are mutually exclusive".to_string(),
                ))
            }
            (None, None) => {
                return Err(CliError::Config(
                    "pulse: one of e0 or gamma_max is required".to_string(),
                ))
            }
            (Some(e0), None) => {
                let e0 = constants
                    .to_natural(e0, parse_unit(&self.e0_unit)?)
                    .map_err(|e| CliError::Config(e.to_string()))?;
                PulseProfile::new(self.shape, e0, width, rise, center)
            }
            (None, Some(gamma)) => {
                if self.shape != PulseShape::Gaussian {
                    return Err(CliError::Config(
                        "pulse: gamma_max tuning is defined for the gaussian shape".to_string(),
                    ));
                }
                PulseProfile::gaussian_for_gamma(gamma, width, constants).and_then(|p| {
                    PulseProfile::new(self.shape, p.peak_field(), width, rise, center)
                })
            }
        };
        profile.map_err(|e| CliError::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ElectronSection {
    /// Initial proper velocity γβ at the window start.
    pub u0: f64,
}

impl Default for ElectronSection {
    fn default() -> Self {
        ElectronSection { u0: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapMode {
    /// Quantum vs classical magnitudes over (k, θ).
    Spectral,
    /// Analytic-vs-numeric table for the static Gaussian-window scatterer
    /// over a (k, k′) grid.
    StaticFixture,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSection {
    pub k_min: f64,
    pub k_max: f64,
    #[serde(default = "default_unit")]
    pub k_unit: String,
    pub k_points: usize,
    #[serde(default = "default_theta_points")]
    pub theta_points: usize,
    #[serde(default)]
    pub phi: f64,
    #[serde(default = "default_pairing")]
    pub pairing: PairingRule,
    #[serde(default = "default_polarization")]
    pub polarization: PolarizationRule,
    #[serde(default = "default_map_mode")]
    pub mode: MapMode,
    /// Gaussian coupling-window width for the static fixture (natural units).
    #[serde(default = "default_window_sigma")]
    pub window_sigma: f64,
}

fn default_theta_points() -> usize {
    100
}

fn default_pairing() -> PairingRule {
    PairingRule::Parallel
}

fn default_polarization() -> PolarizationRule {
    PolarizationRule::LinearSame
}

fn default_map_mode() -> MapMode {
    MapMode::Spectral
}

fn default_window_sigma() -> f64 {
    1.0
}

impl MapSection {
    pub fn k_grid(&self, constants: &Constants) -> Result<Vec<f64>, CliError> {
        let unit = parse_unit(&self.k_unit)?;
        let lo = constants
            .to_natural(self.k_min, unit)
            .map_err(|e| CliError::Config(e.to_string()))?;
        let hi = constants
            .to_natural(self.k_max, unit)
            .map_err(|e| CliError::Config(e.to_string()))?;
        if !(hi > lo && lo > 0.0) || self.k_points < 2 {
            return Err(CliError::Config(format!(
                "map: need 0 < k_min < k_max and k_points >= 2, got [{lo}, {hi}] x {}",
                self.k_points
            )));
        }
        Ok(linspace(lo, hi, self.k_points))
    }

    pub fn theta_grid(&self) -> Result<Vec<f64>, CliError> {
        if self.theta_points < 2 {
            return Err(CliError::Config(
                "map: theta_points must be >= 2".to_string(),
            ));
        }
        Ok(linspace(0.0, std::f64::consts::PI, self.theta_points))
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSection {
    pub k_refs: Vec<f64>,
    #[serde(default = "default_unit")]
    pub k_unit: String,
    #[serde(default = "default_direction")]
    pub direction: ConeDirection,
}

fn default_direction() -> ConeDirection {
    ConeDirection::Forward
}

impl ConeSection {
    pub fn resolved_k_refs(&self, constants: &Constants) -> Result<Vec<f64>, CliError> {
        if self.k_refs.is_empty() {
            return Err(CliError::Config("cone: k_refs must be non-empty".to_string()));
        }
        let unit = parse_unit(&self.k_unit)?;
        self.k_refs
            .iter()
            .map(|&k| {
                constants
                    .to_natural(k, unit)
                    .map_err(|e| CliError::Config(e.to_string()))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbabilitySection {
    /// Cone half-angle in radians.
    pub theta_max: f64,
    pub k_max: f64,
    #[serde(default = "default_unit")]
    pub k_unit: String,
    #[serde(default = "default_k_order")]
    pub k_order: usize,
    #[serde(default = "default_theta_order")]
    pub theta_order: usize,
    #[serde(default = "default_true")]
    pub include_backward: bool,
}

fn default_k_order() -> usize {
    20
}

fn default_theta_order() -> usize {
    5
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlopesSection {
    /// Ray angle from the forward axis, radians.
    pub theta: f64,
    pub k_min: f64,
    pub k_max: f64,
    #[serde(default = "default_unit")]
    pub k_unit: String,
    #[serde(default = "default_slope_points")]
    pub points: usize,
    /// Probe multiples of the fit-window top for the super-polynomial check.
    #[serde(default)]
    pub probe_factors: Vec<f64>,
}

fn default_slope_points() -> usize {
    12
}

impl SlopesSection {
    pub fn k_points(&self, constants: &Constants) -> Result<Vec<f64>, CliError> {
        let unit = parse_unit(&self.k_unit)?;
        let lo = constants
            .to_natural(self.k_min, unit)
            .map_err(|e| CliError::Config(e.to_string()))?;
        let hi = constants
            .to_natural(self.k_max, unit)
            .map_err(|e| CliError::Config(e.to_string()))?;
        if !(hi > lo && lo > 0.0) || self.points < 3 {
            return Err(CliError::Config(
                "slopes: need 0 < k_min < k_max and points >= 3".to_string(),
            ));
        }
        let (la, lb) = (lo.ln(), hi.ln());
        Ok((0..self.points)
            .map(|i| (la + (lb - la) * i as f64 / (self.points - 1) as f64).exp())
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    E0,
    Width,
    Rise,
    U0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    GammaMax,
    KCut,
    ConeAngle,
    PairProbability,
    SinglePhotonProbability,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub parameter: SweepParameter,
    /// Values in the same unit the swept parameter carries in its section.
    pub values: Vec<f64>,
    pub observables: Vec<Observable>,
    /// Cone half-angle for probabilities: theta_scale·√(E₀/E_S)/γ_max.
    #[serde(default = "default_one")]
    pub theta_scale: f64,
    /// k_max for probabilities: k_scale · γ_max·qE₀/m.
    #[serde(default = "default_third")]
    pub k_scale: f64,
    #[serde(default = "default_sweep_k_order")]
    pub k_order: usize,
    #[serde(default = "default_sweep_theta_order")]
    pub theta_order: usize,
}

fn default_one() -> f64 {
    1.0
}

fn default_third() -> f64 {
    1.0 / 3.0
}

fn default_sweep_k_order() -> usize {
    16
}

fn default_sweep_theta_order() -> usize {
    4
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VacuumSection {
    /// Background electric field along ẑ.
    pub e0: f64,
    /// Background magnetic field along x̂.
    pub b0: f64,
    #[serde(default = "default_field_unit")]
    pub field_unit: String,
    pub k: f64,
    #[serde(default = "default_unit")]
    pub k_unit: String,
}

fn default_field_unit() -> String {
    "E_S".to_string()
}

impl VacuumSection {
    pub fn resolve(&self, constants: &Constants) -> Result<(f64, f64, f64), CliError> {
        let funit = parse_unit(&self.field_unit)?;
        let kunit = parse_unit(&self.k_unit)?;
        let e0 = constants
            .to_natural(self.e0, funit)
            .map_err(|e| CliError::Config(e.to_string()))?;
        let b0 = constants
            .to_natural(self.b0, funit)
            .map_err(|e| CliError::Config(e.to_string()))?;
        let k = constants
            .to_natural(self.k, kunit)
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok((e0, b0, k))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrajectorySection {
    /// Number of output samples.
    pub points: usize,
}

impl Default for TrajectorySection {
    fn default() -> Self {
        TrajectorySection { points: 500 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub directory: String,
    pub formats: Vec<String>,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            directory: "out".to_string(),
            formats: vec!["csv".to_string(), "pgm".to_string()],
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ToleranceSection {
    pub abs: f64,
    pub rel: f64,
}

impl Default for ToleranceSection {
    fn default() -> Self {
        let t = Tolerances::default();
        ToleranceSection {
            abs: t.abs,
            rel: t.rel,
        }
    }
}

impl ToleranceSection {
    pub fn scaled(&self, factor: f64) -> Tolerances {
        Tolerances {
            abs: self.abs * factor,
            rel: self.rel * factor,
        }
    }
}

/// Full run configuration; each subcommand consumes its own section.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub pulse: PulseSection,
    #[serde(default)]
    pub electron: ElectronSection,
    pub map: Option<MapSection>,
    pub cone: Option<ConeSection>,
    pub probability: Option<ProbabilitySection>,
    pub slopes: Option<SlopesSection>,
    pub sweep: Option<SweepSection>,
    pub vacuum: Option<VacuumSection>,
    #[serde(default)]
    pub trajectory: TrajectorySection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub tolerances: ToleranceSection,
}

impl RunConfig {
    /// Parses with line-precise diagnostics on schema violations.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: RunConfig =
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        if let Some(sweep) = &config.sweep {
            if sweep.values.is_empty() {
                return Err(CliError::Config(
                    "sweep: values must be non-empty".to_string(),
                ));
            }
            if sweep.observables.is_empty() {
                return Err(CliError::Config(
                    "sweep: observables must be non-empty".to_string(),
                ));
            }
        }
        Ok(config)
    }
}
