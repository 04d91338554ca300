//! Subcommand pipelines: resolve the config, run the computation, write
//! CSV/PGM outputs and the manifest.

use super::config::{
    linspace, MapMode, Observable, RunConfig, SweepParameter, TrajectorySection,
};
use super::output::{format_float, json_num, OutputWriter};
use super::{CliError, RunOptions, Subcommand};
use crate::analysis::{
    self, ConeDirection, DominationResult, MapRequest, ProbabilityOptions, SlopeRequest,
};
use crate::kinematics::{cutoff_wavenumber, KinematicsError, SamplingPolicy, Trajectory};
use crate::pulse::PulseProfile;
use crate::quadrature::Tolerances;
use crate::radiation::{
    unruh_amplitude_with, AmplitudeMethod, AmplitudeOptions, GaussianWindow, PhotonMode,
    PolarizationLabel, RadiationError,
};
use crate::units::Constants;
use crate::vacuum::{
    corrected_polarization, forward_leakage, forward_leakage_from_constitutive, permittivity,
    permittivity_finite_difference, BackgroundField,
};
use num_complex::Complex64;
use serde_json::Value;
use std::path::Path;

fn map_kinematics(e: KinematicsError) -> CliError {
    match e {
        KinematicsError::WindowTooSmall(_) | KinematicsError::InvalidInput(_) => {
            CliError::Config(e.to_string())
        }
    }
}

fn map_radiation(e: RadiationError) -> CliError {
    match e {
        RadiationError::Quadrature(q) => CliError::Numerics(q.to_string()),
        RadiationError::Kinematics(k) => map_kinematics(k),
        RadiationError::InvalidMode(m) => CliError::Config(m),
    }
}

fn solve(
    config: &RunConfig,
    constants: &Constants,
    max_omega: f64,
) -> Result<(PulseProfile, Trajectory), CliError> {
    let profile = config.pulse.resolve(constants)?;
    let traj = Trajectory::solve(
        &profile,
        *constants,
        config.electron.u0,
        profile.default_window(),
        SamplingPolicy::for_max_wavenumber(max_omega),
    )
    .map_err(map_kinematics)?;
    Ok((profile, traj))
}

pub fn execute(
    sub: Subcommand,
    config: &RunConfig,
    config_hash: &str,
    out_dir: &Path,
    opts: &RunOptions,
) -> Result<(), CliError> {
    let constants = Constants::codata();
    let tol = config.tolerances.scaled(opts.tolerance_scale);
    let mut writer = OutputWriter::new(out_dir, config_hash)?;
    let mut manifest: Vec<(String, Value)> = vec![
        ("subcommand".to_string(), Value::String(format!("{sub:?}").to_lowercase())),
        ("alpha_qed".to_string(), json_num(constants.alpha_qed)),
        ("electron_charge".to_string(), json_num(constants.q)),
        ("electron_mass_ev".to_string(), json_num(constants.m)),
        ("coupling_g_inv_ev".to_string(), json_num(constants.g)),
        ("schwinger_field_ev2".to_string(), json_num(constants.schwinger_field)),
        ("tolerance_abs".to_string(), json_num(tol.abs)),
        ("tolerance_rel".to_string(), json_num(tol.rel)),
        ("tolerance_scale".to_string(), json_num(opts.tolerance_scale)),
    ];
    let result = match sub {
        Subcommand::Trajectory => run_trajectory(config, &constants, &mut writer, &mut manifest),
        Subcommand::Map => run_map(config, &constants, tol, &mut writer, &mut manifest),
        Subcommand::Cone => run_cone(config, &constants, &mut writer, &mut manifest),
        Subcommand::Probability => {
            run_probability(config, &constants, tol, &mut writer, &mut manifest)
        }
        Subcommand::Slopes => run_slopes(config, &constants, tol, &mut writer, &mut manifest),
        Subcommand::Sweep => run_sweep(config, &constants, tol, &mut writer, &mut manifest),
        Subcommand::Vacuum => run_vacuum(config, &constants, &mut writer, &mut manifest),
    };
    // the manifest records whatever was produced, even on a failed run
    writer.write_manifest(&manifest)?;
    result
}

fn run_trajectory(
    config: &RunConfig,
    constants: &Constants,
    writer: &mut OutputWriter,
    manifest: &mut Vec<(String, Value)>,
) -> Result<(), CliError> {
    let (profile, traj) = solve(config, constants, 0.0)?;
    let TrajectorySection { points } = config.trajectory;
    let (t0, t1) = traj.window();
    let rows: Vec<Vec<String>> = linspace(t0, t1, points.max(2))
        .into_iter()
        .map(|t| {
            vec![
                format_float(t),
                format_float(traj.position(t)),
                format_float(traj.velocity(t)),
                format_float(traj.gamma(t)),
                format_float(profile.field_at(t)),
            ]
        })
        .collect();
    writer.write_csv(
        "trajectory.csv",
        &[
            "electron worldline; natural units (eV powers)".to_string(),
            "columns: t [1/eV], z [1/eV], beta, gamma, field [eV^2]".to_string(),
        ],
        &["t", "z", "beta", "gamma", "field"],
        &rows,
    )?;
    let kcut = cutoff_wavenumber(&traj, &profile);
    manifest.push(("gamma_max".to_string(), json_num(traj.gamma_max())));
    manifest.push((
        "k_cut_from_pulse_length_ev".to_string(),
        json_num(kcut.from_pulse_length),
    ));
    manifest.push((
        "k_cut_from_acceleration_ev".to_string(),
        json_num(kcut.from_acceleration),
    ));
    manifest.push((
        "unruh_temperature_peak_ev".to_string(),
        json_num(analysis::unruh_temperature(analysis::peak_proper_acceleration(
            &profile, constants,
        ))),
    ));
    Ok(())
}

fn run_map(
    config: &RunConfig,
    constants: &Constants,
    tol: Tolerances,
    writer: &mut OutputWriter,
    manifest: &mut Vec<(String, Value)>,
) -> Result<(), CliError> {
    let section = config
        .map
        .as_ref()
        .ok_or_else(|| CliError::Config("map subcommand needs a [map] section".to_string()))?;
    match section.mode {
        MapMode::Spectral => {
            let k_grid = section.k_grid(constants)?;
            let theta_grid = section.theta_grid()?;
            let k_max = *k_grid.last().unwrap();
            let (_, traj) = solve(config, constants, 2.0 * k_max)?;
            let req = MapRequest {
                k_grid,
                theta_grid,
                phi: section.phi,
                pairing: section.pairing,
                polarization: section.polarization,
                method: AmplitudeMethod::Retarded,
                tol,
            };
            let map = analysis::spectral_map(&traj, &req);
            let grid_csv = |grid: &Vec<Vec<f64>>, errs: Option<&Vec<Vec<f64>>>| {
                let mut rows = Vec::with_capacity(map.k_grid.len() * map.theta_grid.len());
                for (ik, k) in map.k_grid.iter().enumerate() {
                    for (it, th) in map.theta_grid.iter().enumerate() {
                        let mut row = vec![
                            format_float(*k),
                            format_float(*th),
                            format_float(grid[ik][it]),
                        ];
                        if let Some(e) = errs {
                            row.push(format_float(e[ik][it]));
                        }
                        rows.push(row);
                    }
                }
                rows
            };
            let comments = |what: &str| {
                vec![
                    format!("{what}; pairing {:?}, polarization {:?}", map.pairing, map.polarization),
                    "columns: k [eV], theta [rad], magnitude [natural units], abs_error".to_string(),
                ]
            };
            writer.write_csv(
                "quantum.csv",
                &comments("pair amplitude magnitude |V A|"),
                &["k", "theta", "magnitude", "abs_error"],
                &grid_csv(&map.quantum_mag, Some(&map.quantum_err)),
            )?;
            writer.write_csv(
                "classical.csv",
                &comments("Larmor coefficient product |a(k)| |a(k')|"),
                &["k", "theta", "magnitude", "abs_error"],
                &grid_csv(&map.classical_mag, Some(&map.classical_err)),
            )?;
            let ratio: Vec<Vec<f64>> = map
                .quantum_mag
                .iter()
                .zip(&map.classical_mag)
                .map(|(q, c)| q.iter().zip(c).map(|(a, b)| a / b).collect())
                .collect();
            writer.write_csv(
                "ratio.csv",
                &comments("quantum/classical magnitude ratio"),
                &["k", "theta", "ratio"],
                &grid_csv(&ratio, None),
            )?;
            if config.output.formats.iter().any(|f| f == "pgm") {
                writer.write_pgm("quantum.pgm", &map.quantum_mag)?;
                writer.write_pgm("classical.pgm", &map.classical_mag)?;
                writer.write_pgm("ratio.pgm", &ratio)?;
            }
            manifest.push(("gamma_max".to_string(), json_num(map.gamma_max)));
            manifest.push((
                "failed_cells".to_string(),
                Value::Number(map.failures.len().into()),
            ));
            if !map.failures.is_empty() {
                let listed: Vec<String> = map
                    .failures
                    .iter()
                    .map(|f| format!("({}, {}): {}", f.k_index, f.theta_index, f.message))
                    .collect();
                return Err(CliError::Numerics(format!(
                    "{} map cells failed to converge: {}",
                    listed.len(),
                    listed.join("; ")
                )));
            }
            Ok(())
        }
        MapMode::StaticFixture => run_static_fixture(config, constants, tol, writer, manifest),
    }
}

/// Analytic-vs-numeric table for a static scatterer with a Gaussian coupling
/// window; the closed form is the Gaussian Fourier transform.
fn run_static_fixture(
    config: &RunConfig,
    constants: &Constants,
    tol: Tolerances,
    writer: &mut OutputWriter,
    manifest: &mut Vec<(String, Value)>,
) -> Result<(), CliError> {
    let section = config.map.as_ref().expect("checked by caller");
    let k_grid = section.k_grid(constants)?;
    let sigma = section.window_sigma;
    let window = GaussianWindow { sigma, center: 0.0 };
    let half = 9.0 * sigma;
    let traj = Trajectory::from_velocity_profile(|_| 0.0, *constants, (-half, half), 64)
        .map_err(map_kinematics)?;
    let opts = AmplitudeOptions {
        tol,
        coupling_window: Some(window),
    };
    let (theta1, theta2, phi2) = (0.7, 1.2, 0.5);
    let m_of = |k: f64, th, ph| PhotonMode::new(k, th, ph, PolarizationLabel::Linear1);
    let mut rows = Vec::new();
    let mut max_rel = 0.0_f64;
    for &k1 in &k_grid {
        for &k2 in &k_grid {
            let m1 = m_of(k1, theta1, 0.0).map_err(map_radiation)?;
            let m2 = m_of(k2, theta2, phi2).map_err(map_radiation)?;
            let numeric = unruh_amplitude_with(&traj, &m1, &m2, AmplitudeMethod::TimeDomain, &opts)
                .map_err(map_radiation)?
                .value;
            let omega = k1 + k2;
            let pol = crate::radiation::polarization_product(&m1, &m2);
            let analytic = pol
                * constants.g
                * sigma
                * (2.0 * std::f64::consts::PI).sqrt()
                * (-0.5 * sigma * sigma * omega * omega).exp()
                / (Complex64::new(0.0, 2.0) * (k1 * k2).sqrt());
            let rel = (numeric - analytic).norm() / analytic.norm();
            max_rel = max_rel.max(rel);
            rows.push(vec![
                format_float(k1),
                format_float(k2),
                format_float(numeric.re),
                format_float(numeric.im),
                format_float(analytic.re),
                format_float(analytic.im),
                format_float(rel),
            ]);
        }
    }
    writer.write_csv(
        "static_fixture.csv",
        &[
            format!("static scatterer with Gaussian coupling window sigma = {sigma}"),
            "columns: k [eV], k' [eV], numeric re/im, analytic re/im, rel_error".to_string(),
        ],
        &["k", "kp", "num_re", "num_im", "ana_re", "ana_im", "rel_error"],
        &rows,
    )?;
    manifest.push(("max_rel_error".to_string(), json_num(max_rel)));
    Ok(())
}

fn run_cone(
    config: &RunConfig,
    constants: &Constants,
    writer: &mut OutputWriter,
    manifest: &mut Vec<(String, Value)>,
) -> Result<(), CliError> {
    let section = config
        .cone
        .as_ref()
        .ok_or_else(|| CliError::Config("cone subcommand needs a [cone] section".to_string()))?;
    let k_refs = section.resolved_k_refs(constants)?;
    let k_max = k_refs.iter().copied().fold(0.0, f64::max);
    let (_, traj) = solve(config, constants, 2.0 * k_max)?;
    let mut rows = Vec::new();
    let mut no_crossing = 0usize;
    for (idx, &k_ref) in k_refs.iter().enumerate() {
        match analysis::domination_angle(&traj, k_ref, section.direction).map_err(map_radiation)? {
            DominationResult::Cone(cone) => rows.push(vec![
                format_float(k_ref),
                format_float(cone.theta_max),
                format_float(cone.residual),
                "1".to_string(),
            ]),
            DominationResult::NoCrossing { ratio_curve } => {
                no_crossing += 1;
                rows.push(vec![
                    format_float(k_ref),
                    "nan".to_string(),
                    "nan".to_string(),
                    "0".to_string(),
                ]);
                let ray_rows: Vec<Vec<String>> = ratio_curve
                    .iter()
                    .map(|&(a, r)| vec![format_float(a), format_float(r)])
                    .collect();
                writer.write_csv(
                    &format!("cone_ray_{idx}.csv"),
                    &[
                        format!("no quantum/classical crossing at k_ref = {k_ref} eV"),
                        "columns: angle from axis [rad], quantum/classical ratio".to_string(),
                    ],
                    &["angle", "ratio"],
                    &ray_rows,
                )?;
            }
        }
    }
    writer.write_csv(
        "cone.csv",
        &[
            format!("quantum-domination cone, {:?} direction", section.direction),
            "columns: k_ref [eV], theta_max [rad], residual, crossing_found".to_string(),
        ],
        &["k_ref", "theta_max", "residual", "crossing_found"],
        &rows,
    )?;
    manifest.push(("gamma_max".to_string(), json_num(traj.gamma_max())));
    manifest.push((
        "rays_without_crossing".to_string(),
        Value::Number(no_crossing.into()),
    ));
    Ok(())
}

fn run_probability(
    config: &RunConfig,
    constants: &Constants,
    tol: Tolerances,
    writer: &mut OutputWriter,
    manifest: &mut Vec<(String, Value)>,
) -> Result<(), CliError> {
    let section = config.probability.as_ref().ok_or_else(|| {
        CliError::Config("probability subcommand needs a [probability] section".to_string())
    })?;
    let k_max = constants
        .to_natural(
            section.k_max,
            crate::units::Unit::parse(&section.k_unit)
                .map_err(|e| CliError::Config(e.to_string()))?,
        )
        .map_err(|e| CliError::Config(e.to_string()))?;
    let (_, traj) = solve(config, constants, 2.0 * k_max)?;
    let opts = ProbabilityOptions {
        k_order: section.k_order,
        theta_order: section.theta_order,
        include_backward: section.include_backward,
        tol,
        ..Default::default()
    };
    let pair = analysis::pair_probability(&traj, section.theta_max, k_max, &opts)
        .map_err(map_radiation)?;
    let single = analysis::single_photon_probability(&traj, section.theta_max, k_max, &opts)
        .map_err(map_radiation)?;
    let mut rows = vec![
        vec!["pair_total".to_string(), format_float(pair.value)],
        vec!["pair_ch_11".to_string(), format_float(pair.channels[0])],
        vec!["pair_ch_12".to_string(), format_float(pair.channels[1])],
        vec!["pair_ch_21".to_string(), format_float(pair.channels[2])],
        vec!["pair_ch_22".to_string(), format_float(pair.channels[3])],
        vec!["single_photon".to_string(), format_float(single)],
    ];
    if let Some(err) = pair.error_estimate {
        rows.push(vec!["pair_error_estimate".to_string(), format_float(err)]);
    }
    writer.write_csv(
        "probability.csv",
        &[
            format!(
                "emission probabilities inside theta_max = {} rad, k_max = {k_max} eV",
                section.theta_max
            ),
            "columns: quantity, value (dimensionless)".to_string(),
        ],
        &["quantity", "value"],
        &rows,
    )?;
    manifest.push(("gamma_max".to_string(), json_num(traj.gamma_max())));
    manifest.push(("pair_probability".to_string(), json_num(pair.value)));
    manifest.push(("single_photon_probability".to_string(), json_num(single)));
    if let Some(err) = pair.error_estimate {
        manifest.push(("pair_error_estimate".to_string(), json_num(err)));
    }
    Ok(())
}

fn run_slopes(
    config: &RunConfig,
    constants: &Constants,
    tol: Tolerances,
    writer: &mut OutputWriter,
    manifest: &mut Vec<(String, Value)>,
) -> Result<(), CliError> {
    let section = config
        .slopes
        .as_ref()
        .ok_or_else(|| CliError::Config("slopes subcommand needs a [slopes] section".to_string()))?;
    let k_points = section.k_points(constants)?;
    let k_top = *k_points.last().unwrap();
    let probe_max = section
        .probe_factors
        .iter()
        .copied()
        .fold(1.0_f64, f64::max);
    let (_, traj) = solve(config, constants, 2.0 * k_top * probe_max.max(1.0))?;
    let req = SlopeRequest {
        theta: section.theta,
        k_points: k_points.clone(),
        method: AmplitudeMethod::Retarded,
        tol,
    };
    let slopes = analysis::spectral_slopes(&traj, &req)
        .map_err(|e| CliError::Numerics(e.to_string()))?;
    let rows: Vec<Vec<String>> = slopes
        .quantum_amplitude
        .points
        .iter()
        .zip(&slopes.quantum_fourier.points)
        .zip(&slopes.larmor_amplitude.points)
        .map(|(((k, q), (_, f)), (_, l))| {
            vec![
                format_float(*k),
                format_float(*q),
                format_float(*f),
                format_float(*l),
            ]
        })
        .collect();
    writer.write_csv(
        "slopes.csv",
        &[
            format!("spectral samples along theta = {} rad, k' = k", section.theta),
            "columns: k [eV], |V A|, |V A|*2k (Fourier factor), |sqrt(V) alpha|".to_string(),
        ],
        &["k", "quantum", "quantum_fourier", "larmor"],
        &rows,
    )?;
    manifest.push((
        "quantum_amplitude_slope".to_string(),
        json_num(slopes.quantum_amplitude.slope),
    ));
    manifest.push((
        "quantum_fourier_slope".to_string(),
        json_num(slopes.quantum_fourier.slope),
    ));
    manifest.push((
        "larmor_amplitude_slope".to_string(),
        json_num(slopes.larmor_amplitude.slope),
    ));
    if !section.probe_factors.is_empty() {
        let mut probe_rows = Vec::new();
        for &f in &section.probe_factors {
            let k_probe = f * k_top;
            let ratio = analysis::power_law_beat_ratio(
                &traj,
                section.theta,
                &slopes.quantum_amplitude,
                k_probe,
                AmplitudeMethod::Retarded,
            )
            .map_err(map_radiation)?;
            probe_rows.push(vec![format_float(k_probe), format_float(ratio)]);
        }
        writer.write_csv(
            "superpolynomial_probe.csv",
            &[
                "power-law extrapolation / actual amplitude above the fit window".to_string(),
                "columns: k [eV], beat_ratio".to_string(),
            ],
            &["k", "beat_ratio"],
            &probe_rows,
        )?;
    }
    manifest.push(("gamma_max".to_string(), json_num(traj.gamma_max())));
    Ok(())
}

fn run_sweep(
    config: &RunConfig,
    constants: &Constants,
    tol: Tolerances,
    writer: &mut OutputWriter,
    manifest: &mut Vec<(String, Value)>,
) -> Result<(), CliError> {
    let section = config
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Config("sweep subcommand needs a [sweep] section".to_string()))?;
    let mut columns = vec!["value".to_string()];
    for obs in &section.observables {
        columns.push(format!("{obs:?}").to_lowercase());
    }
    let mut rows = Vec::new();
    for &value in &section.values {
        let mut pulse = config.pulse.clone();
        let mut electron = config.electron.clone();
        match section.parameter {
            SweepParameter::E0 => {
                pulse.gamma_max = None;
                pulse.e0 = Some(value);
            }
            SweepParameter::Width => pulse.width = value,
            SweepParameter::Rise => pulse.rise = value,
            SweepParameter::U0 => electron.u0 = value,
        }
        let sub_config = RunConfig {
            pulse,
            electron,
            ..config.clone()
        };
        let profile = sub_config.pulse.resolve(constants)?;
        // k range follows the per-point cutoff estimate
        let probe = Trajectory::solve(
            &profile,
            *constants,
            sub_config.electron.u0,
            profile.default_window(),
            SamplingPolicy::default(),
        )
        .map_err(map_kinematics)?;
        let kcut = cutoff_wavenumber(&probe, &profile);
        let k_max = section.k_scale * kcut.from_acceleration.max(kcut.from_pulse_length);
        let traj = Trajectory::solve(
            &profile,
            *constants,
            sub_config.electron.u0,
            profile.default_window(),
            SamplingPolicy::for_max_wavenumber(2.0 * k_max),
        )
        .map_err(map_kinematics)?;
        let gamma_max = traj.gamma_max();
        let theta_max = section.theta_scale
            * (profile.peak_field() / constants.schwinger_field).sqrt()
            / gamma_max;
        let mut row = vec![format_float(value)];
        for obs in &section.observables {
            let cell = match obs {
                Observable::GammaMax => gamma_max,
                Observable::KCut => kcut.from_acceleration,
                Observable::ConeAngle => {
                    match analysis::domination_angle(
                        &traj,
                        k_max.max(kcut.from_pulse_length / 3.0),
                        ConeDirection::Forward,
                    )
                    .map_err(map_radiation)?
                    {
                        DominationResult::Cone(c) => c.theta_max,
                        DominationResult::NoCrossing { .. } => f64::NAN,
                    }
                }
                Observable::PairProbability => {
                    let opts = ProbabilityOptions {
                        k_order: section.k_order,
                        theta_order: section.theta_order,
                        estimate_error: false,
                        tol,
                        ..Default::default()
                    };
                    analysis::pair_probability(&traj, theta_max, k_max, &opts)
                        .map_err(map_radiation)?
                        .value
                }
                Observable::SinglePhotonProbability => {
                    let opts = ProbabilityOptions {
                        k_order: section.k_order,
                        theta_order: section.theta_order,
                        estimate_error: false,
                        tol,
                        ..Default::default()
                    };
                    analysis::single_photon_probability(&traj, theta_max, k_max, &opts)
                        .map_err(map_radiation)?
                }
            };
            row.push(format_float(cell));
        }
        rows.push(row);
    }
    let column_refs: Vec<&str> = columns.iter().map(|s| s.as_str()).collect();
    writer.write_csv(
        "sweep.csv",
        &[
            format!("sweep over {:?}", section.parameter),
            "cone angles in rad; probabilities dimensionless".to_string(),
        ],
        &column_refs,
        &rows,
    )?;
    manifest.push((
        "sweep_points".to_string(),
        Value::Number(section.values.len().into()),
    ));
    Ok(())
}

fn run_vacuum(
    config: &RunConfig,
    constants: &Constants,
    writer: &mut OutputWriter,
    manifest: &mut Vec<(String, Value)>,
) -> Result<(), CliError> {
    let section = config
        .vacuum
        .as_ref()
        .ok_or_else(|| CliError::Config("vacuum subcommand needs a [vacuum] section".to_string()))?;
    let (e0, b0, k) = section.resolve(constants)?;
    let background = BackgroundField {
        e0: [0.0, 0.0, e0],
        b0: [b0, 0.0, 0.0],
    };
    let closed = permittivity(&background, constants);
    let fd = permittivity_finite_difference(&background, constants);
    let mut rows = Vec::new();
    let mut max_diff = 0.0_f64;
    for i in 0..3 {
        for j in 0..3 {
            let diff = (closed.eps[i][j] - fd.eps[i][j]).abs();
            max_diff = max_diff.max(diff);
            rows.push(vec![
                i.to_string(),
                j.to_string(),
                format_float(closed.eps[i][j]),
                format_float(fd.eps[i][j]),
                format_float(diff),
            ]);
        }
    }
    writer.write_csv(
        "permittivity.csv",
        &[
            "effective permittivity around the background (E0 along z, B0 along x)".to_string(),
            "columns: i, j, closed_form, finite_difference, abs_diff".to_string(),
        ],
        &["i", "j", "closed", "finite_difference", "abs_diff"],
        &rows,
    )?;
    let leak_closed = forward_leakage(k, &background, constants)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let leak_full = forward_leakage_from_constitutive(k, &background, constants)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let corrected = corrected_polarization([0.0, 0.0, 1.0], &background, constants);
    writer.write_csv(
        "leakage.csv",
        &[
            "forward longitudinal components k.e for the two polarizations".to_string(),
            "columns: route, leaking, blind".to_string(),
        ],
        &["route", "leaking", "blind"],
        &[
            vec![
                "closed_form".to_string(),
                format_float(leak_closed.leaking),
                format_float(leak_closed.blind),
            ],
            vec![
                "constitutive".to_string(),
                format_float(leak_full.leaking),
                format_float(leak_full.blind),
            ],
        ],
    )?;
    manifest.push(("permittivity_max_fd_diff".to_string(), json_num(max_diff)));
    manifest.push(("leakage_closed".to_string(), json_num(leak_closed.leaking)));
    manifest.push(("leakage_constitutive".to_string(), json_num(leak_full.leaking)));
    manifest.push((
        "corrected_basis_fallback".to_string(),
        Value::Bool(corrected.fallback),
    ));
    Ok(())
}
