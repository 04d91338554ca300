//! Observables built from the emission amplitudes: spectral/angular maps,
//! the quantum-domination cone, mode-sum probabilities, spectral power-law
//! fits, and the acceleration temperature.
//!
//! Mode sums are converted to integrals with Σ_k → V∫d³k/(2π)³; every power
//! of the quantization volume cancels against the stripped amplitudes, so
//! all outputs here are volume-free. The 1D source is azimuthally symmetric,
//! which reduces the pair phase space to four dimensions with the
//! polarization sums integrated over azimuth in closed form.

use crate::kinematics::Trajectory;
use crate::quadrature::{gauss_legendre_on, Tolerances};
use crate::radiation::{
    larmor_coefficient_with, unruh_amplitude_with, AmplitudeMethod, AmplitudeOptions, PhotonMode,
    PolarizationLabel, RadiationError,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingRule {
    /// k′ = k, same direction (the natural map pairing).
    Parallel,
    /// k′ = k, opposite direction.
    BackToBack,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolarizationRule {
    LinearSame,
    LinearCross,
    CircularSame,
    CircularOpposite,
}

impl PolarizationRule {
    fn labels(self) -> (PolarizationLabel, PolarizationLabel) {
        match self {
            PolarizationRule::LinearSame => (PolarizationLabel::Linear1, PolarizationLabel::Linear1),
            PolarizationRule::LinearCross => {
                (PolarizationLabel::Linear1, PolarizationLabel::Linear2)
            }
            PolarizationRule::CircularSame => {
                (PolarizationLabel::CircularPlus, PolarizationLabel::CircularPlus)
            }
            PolarizationRule::CircularOpposite => {
                (PolarizationLabel::CircularPlus, PolarizationLabel::CircularMinus)
            }
        }
    }
}

/// Partner mode geometry under a pairing rule.
fn partner(k: f64, theta: f64, phi: f64, pairing: PairingRule) -> (f64, f64, f64) {
    match pairing {
        PairingRule::Parallel => (k, theta, phi),
        PairingRule::BackToBack => (k, PI - theta, phi + PI),
    }
}

#[derive(Debug, Clone)]
pub struct MapRequest {
    pub k_grid: Vec<f64>,
    pub theta_grid: Vec<f64>,
    pub phi: f64,
    pub pairing: PairingRule,
    pub polarization: PolarizationRule,
    pub method: AmplitudeMethod,
    pub tol: Tolerances,
}

#[derive(Debug, Clone)]
pub struct MapCellFailure {
    pub k_index: usize,
    pub theta_index: usize,
    pub message: String,
}

/// Quantum |V·A| and classical |√V·α|·|√V·α′| magnitudes over a (k, θ) grid,
/// with per-cell absolute error estimates from the quadrature.
#[derive(Debug, Clone)]
pub struct SpectralMap {
    pub k_grid: Vec<f64>,
    pub theta_grid: Vec<f64>,
    /// Indexed [k][theta]; NaN marks a failed cell.
    pub quantum_mag: Vec<Vec<f64>>,
    pub classical_mag: Vec<Vec<f64>>,
    pub quantum_err: Vec<Vec<f64>>,
    pub classical_err: Vec<Vec<f64>>,
    pub failures: Vec<MapCellFailure>,
    pub pairing: PairingRule,
    pub polarization: PolarizationRule,
    pub gamma_max: f64,
}

impl SpectralMap {
    pub fn ratio(&self, ik: usize, it: usize) -> f64 {
        self.quantum_mag[ik][it] / self.classical_mag[ik][it]
    }

    /// Both layers resolved well above their numerical error estimates;
    /// ratios of unresolved cells are noise.
    pub fn cell_resolved(&self, ik: usize, it: usize, margin: f64) -> bool {
        self.quantum_mag[ik][it] > margin * self.quantum_err[ik][it]
            && self.classical_mag[ik][it] > margin * self.classical_err[ik][it]
    }
}

pub fn spectral_map(traj: &Trajectory, req: &MapRequest) -> SpectralMap {
    assert!(
        req.k_grid.windows(2).all(|w| w[1] > w[0]),
        "k grid must be strictly increasing"
    );
    assert!(
        req.theta_grid.windows(2).all(|w| w[1] > w[0]),
        "theta grid must be strictly increasing"
    );
    let (la, lb) = req.polarization.labels();
    let opts = AmplitudeOptions {
        tol: req.tol,
        ..Default::default()
    };
    let nk = req.k_grid.len();
    let nt = req.theta_grid.len();
    let cells: Vec<(usize, usize)> = (0..nk)
        .flat_map(|ik| (0..nt).map(move |it| (ik, it)))
        .collect();
    let results: Vec<Result<(f64, f64, f64, f64), String>> = cells
        .par_iter()
        .map(|&(ik, it)| {
            let k = req.k_grid[ik];
            let theta = req.theta_grid[it];
            let (k2, th2, ph2) = partner(k, theta, req.phi, req.pairing);
            let m1 = PhotonMode::new(k, theta, req.phi, la).map_err(|e| e.to_string())?;
            let m2 = PhotonMode::new(k2, th2, ph2, lb).map_err(|e| e.to_string())?;
            let pair = unruh_amplitude_with(traj, &m1, &m2, req.method, &opts)
                .map_err(|e| e.to_string())?;
            let a1 = larmor_coefficient_with(traj, &m1, req.method, &opts)
                .map_err(|e| e.to_string())?;
            let a2 = larmor_coefficient_with(traj, &m2, req.method, &opts)
                .map_err(|e| e.to_string())?;
            let classical = a1.value.norm() * a2.value.norm();
            let classical_err =
                a1.value.norm() * a2.abs_error + a2.value.norm() * a1.abs_error;
            Ok((pair.value.norm(), classical, pair.abs_error, classical_err))
        })
        .collect();

    let mut quantum = vec![vec![f64::NAN; nt]; nk];
    let mut classical = vec![vec![f64::NAN; nt]; nk];
    let mut quantum_err = vec![vec![f64::NAN; nt]; nk];
    let mut classical_err = vec![vec![f64::NAN; nt]; nk];
    let mut failures = Vec::new();
    for (&(ik, it), res) in cells.iter().zip(results) {
        match res {
            Ok((q, c, qe, ce)) => {
                quantum[ik][it] = q;
                classical[ik][it] = c;
                quantum_err[ik][it] = qe;
                classical_err[ik][it] = ce;
            }
            Err(message) => failures.push(MapCellFailure {
                k_index: ik,
                theta_index: it,
                message,
            }),
        }
    }
    SpectralMap {
        k_grid: req.k_grid.clone(),
        theta_grid: req.theta_grid.clone(),
        quantum_mag: quantum,
        classical_mag: classical,
        quantum_err,
        classical_err,
        failures,
        pairing: req.pairing,
        polarization: req.polarization,
        gamma_max: traj.gamma_max(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeDirection {
    Forward,
    Backward,
}

/// Half-angle of the cone (about the forward or backward axis) inside which
/// the pair amplitude exceeds the product of Larmor coefficients.
#[derive(Debug, Clone, Copy)]
pub struct DominationCone {
    pub k_ref: f64,
    pub theta_max: f64,
    pub direction: ConeDirection,
    /// Relative width of the final bisection bracket.
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub enum DominationResult {
    Cone(DominationCone),
    /// No sign change on the sampled ray; the quantum/classical ratio curve
    /// (angle from the axis, ratio) is attached for diagnosis.
    NoCrossing { ratio_curve: Vec<(f64, f64)> },
}

/// Sign of quantum − classical at angle `a` from the chosen axis.
fn domination_gap(
    traj: &Trajectory,
    k_ref: f64,
    angle_from_axis: f64,
    direction: ConeDirection,
    opts: &AmplitudeOptions,
    method: AmplitudeMethod,
) -> Result<(f64, f64), RadiationError> {
    let theta = match direction {
        ConeDirection::Forward => angle_from_axis,
        ConeDirection::Backward => PI - angle_from_axis,
    };
    let m = PhotonMode::new(k_ref, theta, 0.0, PolarizationLabel::Linear1)?;
    let q = unruh_amplitude_with(traj, &m, &m, method, opts)?.value.norm();
    let a = larmor_coefficient_with(traj, &m, method, opts)?.value.norm();
    Ok((q - a * a, q / (a * a)))
}

pub fn domination_angle(
    traj: &Trajectory,
    k_ref: f64,
    direction: ConeDirection,
) -> Result<DominationResult, RadiationError> {
    let opts = AmplitudeOptions::default();
    let method = AmplitudeMethod::Retarded;
    // log-spaced scan of the ray; the crossing angle can sit anywhere
    // between microradians (ultra-relativistic) and tens of degrees
    let n_scan = 48;
    let (lo_exp, hi_exp) = ((1e-5f64).ln(), (0.999 * PI / 2.0f64).ln());
    let mut prev: Option<(f64, f64)> = None;
    let mut curve = Vec::with_capacity(n_scan);
    let mut bracket = None;
    for i in 0..n_scan {
        let angle = (lo_exp + (hi_exp - lo_exp) * i as f64 / (n_scan - 1) as f64).exp();
        let (gap, ratio) = domination_gap(traj, k_ref, angle, direction, &opts, method)?;
        curve.push((angle, ratio));
        if let Some((prev_angle, prev_gap)) = prev {
            if prev_gap > 0.0 && gap <= 0.0 {
                bracket = Some((prev_angle, angle));
                break;
            }
        }
        prev = Some((angle, gap));
    }
    let Some((mut lo, mut hi)) = bracket else {
        return Ok(DominationResult::NoCrossing { ratio_curve: curve });
    };
    while (hi - lo) / (0.5 * (hi + lo)) > 1e-3 {
        let mid = 0.5 * (lo + hi);
        let (gap, _) = domination_gap(traj, k_ref, mid, direction, &opts, method)?;
        if gap > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let theta_max = 0.5 * (lo + hi);
    Ok(DominationResult::Cone(DominationCone {
        k_ref,
        theta_max,
        direction,
        residual: (hi - lo) / theta_max,
    }))
}

/// Azimuth-averaged |e_λ·e_λ′|² for each linear channel pair, symmetrized
/// over the photon ordering (the mode sum only walks ordered pairs); θ, θ′
/// are the polar angles of the two photons.
fn channel_weights(theta1: f64, theta2: f64) -> [f64; 4] {
    let (c1, s1) = (theta1.cos(), theta1.sin());
    let (c2, s2) = (theta2.cos(), theta2.sin());
    let cross = 0.25 * (c1 * c1 + c2 * c2);
    [
        0.5 * c1 * c1 * c2 * c2 + s1 * s1 * s2 * s2, // (1,1)
        cross,                                       // (1,2)
        cross,                                       // (2,1)
        0.5,                                         // (2,2)
    ]
}

#[derive(Debug, Clone, Copy)]
pub struct ProbabilityOptions {
    pub k_order: usize,
    pub theta_order: usize,
    pub method: AmplitudeMethod,
    pub tol: Tolerances,
    /// Re-evaluate at refined orders and report the difference.
    pub estimate_error: bool,
    /// Include the backward cone (mirror of the forward one).
    pub include_backward: bool,
}

impl Default for ProbabilityOptions {
    fn default() -> Self {
        ProbabilityOptions {
            k_order: 20,
            theta_order: 5,
            method: AmplitudeMethod::Retarded,
            tol: Tolerances::default(),
            estimate_error: true,
            include_backward: true,
        }
    }
}

/// Total pair-emission probability into the cones, with the per-channel
/// linear-polarization breakdown. Volume-free by construction.
#[derive(Debug, Clone)]
pub struct PairProbability {
    pub value: f64,
    pub theta_max: f64,
    pub k_max: f64,
    /// (λ, λ′) channels in order (1,1), (1,2), (2,1), (2,2).
    pub channels: [f64; 4],
    pub error_estimate: Option<f64>,
}

/// Quadrature nodes with weights.
type WeightedNodes = Vec<(f64, f64)>;

/// One-dimensional state grid over (k, θ) used by the tensorized mode sums.
fn cone_states(
    theta_max: f64,
    k_max: f64,
    k_order: usize,
    theta_order: usize,
    include_backward: bool,
) -> (WeightedNodes, WeightedNodes) {
    let k_nodes = gauss_legendre_on(k_order, 0.0, k_max);
    let mut theta_nodes = gauss_legendre_on(theta_order, 0.0, theta_max);
    if include_backward {
        theta_nodes.extend(gauss_legendre_on(theta_order, PI - theta_max, PI));
    }
    (k_nodes, theta_nodes)
}

fn pair_probability_at(
    traj: &Trajectory,
    theta_max: f64,
    k_max: f64,
    opts: &ProbabilityOptions,
    k_order: usize,
    theta_order: usize,
) -> Result<(f64, [f64; 4]), RadiationError> {
    let (k_nodes, theta_nodes) = cone_states(
        theta_max,
        k_max,
        k_order,
        theta_order,
        opts.include_backward,
    );
    let amp_opts = AmplitudeOptions {
        tol: opts.tol,
        ..Default::default()
    };
    let g = traj.constants().g;

    // flattened photon states (k, θ) with combined weights
    let states: Vec<(f64, f64, f64)> = k_nodes
        .iter()
        .flat_map(|&(k, wk)| {
            theta_nodes
                .iter()
                .map(move |&(th, wt)| (k, th, wk * wt * th.sin()))
        })
        .collect();
    let n = states.len();

    // exchange symmetry: the integrand is invariant under swapping the two
    // photons, so only ordered pairs are evaluated
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .collect();
    let partials: Result<Vec<[f64; 4]>, RadiationError> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (k1, th1, w1) = states[i];
            let (k2, th2, w2) = states[j];
            let omega = k1 + k2;
            let c_dir = (k1 * th1.cos() + k2 * th2.cos()) / omega;
            let f = crate::radiation::pair_fourier_factor(
                traj,
                omega,
                c_dir,
                opts.method,
                &amp_opts,
            )?;
            let f2 = f.norm_sqr();
            let sym = if i == j { 1.0 } else { 2.0 };
            let base = sym * w1 * w2 * (k1 * k2 / 4.0) * g * g * f2;
            let weights = channel_weights(th1, th2);
            Ok(core::array::from_fn(|c| base * weights[c]))
        })
        .collect();
    let partials = partials?;
    let norm = 1.0 / (2.0 * PI).powi(4);
    let mut channels = [0.0; 4];
    for p in partials {
        for c in 0..4 {
            channels[c] += p[c] * norm;
        }
    }
    let value = channels.iter().sum();
    Ok((value, channels))
}

pub fn pair_probability(
    traj: &Trajectory,
    theta_max: f64,
    k_max: f64,
    opts: &ProbabilityOptions,
) -> Result<PairProbability, RadiationError> {
    let (value, channels) =
        pair_probability_at(traj, theta_max, k_max, opts, opts.k_order, opts.theta_order)?;
    let error_estimate = if opts.estimate_error {
        let (refined, _) = pair_probability_at(
            traj,
            theta_max,
            k_max,
            opts,
            opts.k_order + opts.k_order / 2,
            opts.theta_order + 2,
        )?;
        Some((refined - value).abs())
    } else {
        None
    };
    Ok(PairProbability {
        value,
        theta_max,
        k_max,
        channels,
        error_estimate,
    })
}

/// Expected number of Larmor photons in the cones (both polarizations; only
/// the in-plane one contributes for 1D motion).
pub fn single_photon_probability(
    traj: &Trajectory,
    theta_max: f64,
    k_max: f64,
    opts: &ProbabilityOptions,
) -> Result<f64, RadiationError> {
    let (k_nodes, theta_nodes) = cone_states(
        theta_max,
        k_max,
        opts.k_order,
        opts.theta_order,
        opts.include_backward,
    );
    let amp_opts = AmplitudeOptions {
        tol: opts.tol,
        ..Default::default()
    };
    let q = traj.constants().q;
    let cells: Vec<(f64, f64, f64)> = k_nodes
        .iter()
        .flat_map(|&(k, wk)| {
            theta_nodes
                .iter()
                .map(move |&(th, wt)| (k, th, wk * wt))
        })
        .collect();
    let total: Result<Vec<f64>, RadiationError> = cells
        .par_iter()
        .map(|&(k, th, w)| {
            let f = crate::radiation::larmor_fourier_factor(
                traj,
                k,
                th.cos(),
                opts.method,
                &amp_opts,
            )?;
            let s = th.sin();
            Ok(w * 0.5 * k * q * q * s * s * s * f.norm_sqr())
        })
        .collect();
    Ok(total?.iter().sum::<f64>() / (2.0 * PI).powi(2))
}

/// Total energy radiated into Larmor photons over the full sphere, by the
/// mode sum Σ k·|α|².
pub fn radiated_energy(
    traj: &Trajectory,
    k_max: f64,
    opts: &ProbabilityOptions,
) -> Result<f64, RadiationError> {
    let k_nodes = gauss_legendre_on(opts.k_order, 0.0, k_max);
    let theta_nodes = gauss_legendre_on(2 * opts.theta_order, 0.0, PI);
    let amp_opts = AmplitudeOptions {
        tol: opts.tol,
        ..Default::default()
    };
    let q = traj.constants().q;
    let cells: Vec<(f64, f64, f64)> = k_nodes
        .iter()
        .flat_map(|&(k, wk)| theta_nodes.iter().map(move |&(th, wt)| (k, th, wk * wt)))
        .collect();
    let total: Result<Vec<f64>, RadiationError> = cells
        .par_iter()
        .map(|&(k, th, w)| {
            let f = crate::radiation::larmor_fourier_factor(
                traj,
                k,
                th.cos(),
                opts.method,
                &amp_opts,
            )?;
            let s = th.sin();
            Ok(w * 0.5 * k * k * q * q * s * s * s * f.norm_sqr())
        })
        .collect();
    Ok(total?.iter().sum::<f64>() / (2.0 * PI).powi(2))
}

/// Independent classical oracle: (q²/6π)·∫ (dβ/dt)² dt along the worldline.
pub fn larmor_energy_oracle(traj: &Trajectory) -> f64 {
    let (t0, t1) = traj.window();
    let n = 200_001; // odd for Simpson
    let h = (t1 - t0) / (n - 1) as f64;
    let dh = 0.5 * h;
    let accel = |t: f64| (traj.velocity(t + dh) - traj.velocity(t - dh)) / (2.0 * dh);
    let mut acc = 0.0;
    for i in 0..n {
        let t = t0 + i as f64 * h;
        let a = accel(t);
        let w = if i == 0 || i == n - 1 {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += w * a * a;
    }
    let q = traj.constants().q;
    q * q / (6.0 * PI) * acc * h / 3.0
}

/// Thermal temperature a/2π seen by a detector at proper acceleration a,
/// in natural units (eV for a in eV).
pub fn unruh_temperature(acceleration: f64) -> f64 {
    assert!(acceleration >= 0.0, "acceleration must be non-negative");
    acceleration / (2.0 * PI)
}

/// Peak proper acceleration qE₀/m of the 1D motion (du/dt equals the
/// instantaneous rest-frame acceleration).
pub fn peak_proper_acceleration(
    profile: &crate::pulse::PulseProfile,
    constants: &crate::units::Constants,
) -> f64 {
    constants.q * profile.peak_field() / constants.m
}

#[derive(Debug, Clone)]
pub struct SlopeRequest {
    /// Polar angle of the ray (k′ = k, parallel pairing, equal linear
    /// polarizations).
    pub theta: f64,
    pub k_points: Vec<f64>,
    pub method: AmplitudeMethod,
    pub tol: Tolerances,
}

/// Least-squares fit of ln(magnitude) against ln(k).
#[derive(Debug, Clone)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// (k, magnitude) samples used for the fit.
    pub points: Vec<(f64, f64)>,
}

impl SlopeFit {
    pub fn extrapolate(&self, k: f64) -> f64 {
        (self.intercept + self.slope * k.ln()).exp()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FitError {
    #[error(transparent)]
    Radiation(#[from] RadiationError),
    #[error("fit ill-conditioned: {0}")]
    IllConditioned(String),
}

fn fit_loglog(points: &[(f64, f64)]) -> Result<SlopeFit, FitError> {
    let clean: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(k, m)| k > 0.0 && m > 0.0 && m.is_finite())
        .collect();
    if clean.len() < 3 {
        return Err(FitError::IllConditioned(format!(
            "only {} usable points",
            clean.len()
        )));
    }
    let n = clean.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(k, m) in &clean {
        let (x, y) = (k.ln(), m.ln());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 * sxx.abs().max(1.0) {
        return Err(FitError::IllConditioned("degenerate abscissae".to_string()));
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    Ok(SlopeFit {
        slope,
        intercept,
        points: clean,
    })
}

/// Spectral power-law fits along a fixed ray.
#[derive(Debug, Clone)]
pub struct SpectralSlopes {
    /// ln|V·A| vs ln k at k′ = k.
    pub quantum_amplitude: SlopeFit,
    /// The Fourier factor |V·A|·2√(kk′), i.e. the Doppler-envelope
    /// transform itself; isolates the spectral decay from the kinematic
    /// prefactor.
    pub quantum_fourier: SlopeFit,
    /// ln|√V·α| vs ln k.
    pub larmor_amplitude: SlopeFit,
}

pub fn spectral_slopes(traj: &Trajectory, req: &SlopeRequest) -> Result<SpectralSlopes, FitError> {
    let opts = AmplitudeOptions {
        tol: req.tol,
        ..Default::default()
    };
    let samples: Result<Vec<(f64, f64, f64)>, RadiationError> = req
        .k_points
        .par_iter()
        .map(|&k| {
            let m = PhotonMode::new(k, req.theta, 0.0, PolarizationLabel::Linear1)?;
            let q = unruh_amplitude_with(traj, &m, &m, req.method, &opts)?.value.norm();
            let a = larmor_coefficient_with(traj, &m, req.method, &opts)?.value.norm();
            Ok((k, q, a))
        })
        .collect();
    let samples = samples?;
    let quantum: Vec<(f64, f64)> = samples.iter().map(|&(k, q, _)| (k, q)).collect();
    let fourier: Vec<(f64, f64)> = samples.iter().map(|&(k, q, _)| (k, q * 2.0 * k)).collect();
    let larmor: Vec<(f64, f64)> = samples.iter().map(|&(k, _, a)| (k, a)).collect();
    Ok(SpectralSlopes {
        quantum_amplitude: fit_loglog(&quantum)?,
        quantum_fourier: fit_loglog(&fourier)?,
        larmor_amplitude: fit_loglog(&larmor)?,
    })
}

/// Ratio of the power-law extrapolation to the actual pair amplitude at a
/// probe wavenumber; values ≫ 1 demonstrate the super-polynomial falloff
/// past the cutoff.
pub fn power_law_beat_ratio(
    traj: &Trajectory,
    theta: f64,
    fit: &SlopeFit,
    k_probe: f64,
    method: AmplitudeMethod,
) -> Result<f64, RadiationError> {
    let m = PhotonMode::new(k_probe, theta, 0.0, PolarizationLabel::Linear1)?;
    let actual = unruh_amplitude_with(traj, &m, &m, method, &AmplitudeOptions::default())?
        .value
        .norm();
    Ok(fit.extrapolate(k_probe) / actual)
}
