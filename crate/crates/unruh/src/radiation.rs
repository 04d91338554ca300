//! Two-photon (pair) amplitudes and classical Larmor coefficients.
//!
//! Both emission channels reduce to Fourier transforms of slowly varying
//! envelopes along the worldline. For a photon pair with total frequency
//! ω = k + k′ the amplitude (with the quantization volume stripped) is
//!
//! ```text
//! V·A = (e·e′) / (2i√(kk′)) · g ∫ dt √(1-β²) e^{iω(t - c_dir z(t))}
//! ```
//!
//! evaluated either directly in lab time (the position phase folded into a
//! complex envelope) or after substituting the retarded time τ = t − c_dir z,
//! where the phase is exactly linear and the envelope becomes the Doppler
//! factor √(1-β²)/(1-c_dir β). The Larmor coefficient (√V·α) is the same
//! construction with envelope β·(e·ẑ) and frequency k.
//!
//! Before and after the pulse the envelopes approach constants rather than
//! zero, so the integrals are regularized exactly as adiabatic switching
//! prescribes: a constant tail beyond T contributes ∓ env(T)·e^{iφ(T)}/(iφ′),
//! which makes an unaccelerated charge radiate exactly nothing and leaves the
//! result independent of the truncation point.
//!
//! Polarization scalar products are unconjugated, as they enter the pair
//! amplitude; in the circular basis this makes parallel photon pairs carry
//! opposite circular polarizations while linear polarizations are equal.

use crate::kinematics::Trajectory;
use crate::quadrature::{
    fourier_integral, FourierResult, OscillatoryIntegralSpec, QuadratureError, Tolerances,
};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RadiationError {
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Kinematics(#[from] crate::kinematics::KinematicsError),
    #[error("invalid photon mode: {0}")]
    InvalidMode(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmplitudeMethod {
    /// Direct lab-time integral.
    TimeDomain,
    /// Retarded-time integral with exactly linear phase.
    Retarded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolarizationLabel {
    /// Along θ̂ of the frame whose polar axis is the acceleration axis.
    Linear1,
    /// Along φ̂; orthogonal to the axis, blind for 1D motion.
    Linear2,
    CircularPlus,
    CircularMinus,
}

/// Orthonormal linear polarization pair (θ̂, φ̂) for a propagation direction.
///
/// Exactly on the polar axis the frame degenerates; the fixed tie-break
/// e1 = x̂, e2 = ŷ applies at both poles.
pub fn polarization_basis(theta: f64, phi: f64) -> ([f64; 3], [f64; 3]) {
    let (st, ct) = (theta.sin(), theta.cos());
    if st == 0.0 {
        return ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
    }
    let (sp, cp) = (phi.sin(), phi.cos());
    ([ct * cp, ct * sp, -st], [-sp, cp, 0.0])
}

/// Basis from a unit direction vector.
pub fn polarization_basis_for(khat: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let theta = khat[2].clamp(-1.0, 1.0).acos();
    let phi = khat[1].atan2(khat[0]);
    polarization_basis(theta, phi)
}

/// A photon mode: wavenumber, direction relative to the acceleration axis,
/// and polarization (unit complex vector transverse to k̂ in free space).
#[derive(Debug, Clone, Copy)]
pub struct PhotonMode {
    k: f64,
    theta: f64,
    phi: f64,
    label: PolarizationLabel,
    e_vec: [Complex64; 3],
}

fn real3(v: [f64; 3]) -> [Complex64; 3] {
    [v[0].into(), v[1].into(), v[2].into()]
}

impl PhotonMode {
    pub fn new(
        k: f64,
        theta: f64,
        phi: f64,
        label: PolarizationLabel,
    ) -> Result<Self, RadiationError> {
        if !k.is_finite() || k <= 0.0 {
            return Err(RadiationError::InvalidMode(format!(
                "wavenumber must be positive, got {k}"
            )));
        }
        let (e1, e2) = polarization_basis(theta, phi);
        let sqrt_half = std::f64::consts::FRAC_1_SQRT_2;
        let e_vec = match label {
            PolarizationLabel::Linear1 => real3(e1),
            PolarizationLabel::Linear2 => real3(e2),
            PolarizationLabel::CircularPlus => {
                core::array::from_fn(|i| Complex64::new(e1[i], e2[i]) * sqrt_half)
            }
            PolarizationLabel::CircularMinus => {
                core::array::from_fn(|i| Complex64::new(e1[i], -e2[i]) * sqrt_half)
            }
        };
        Ok(PhotonMode {
            k,
            theta,
            phi,
            label,
            e_vec,
        })
    }

    /// Mode with an explicitly supplied polarization vector, for media where
    /// the transversality condition is modified (Euler-Heisenberg vacuum).
    /// The vector must be unit; small longitudinal components are allowed.
    pub fn with_polarization_vector(
        k: f64,
        theta: f64,
        phi: f64,
        label: PolarizationLabel,
        e_vec: [Complex64; 3],
    ) -> Result<Self, RadiationError> {
        if !k.is_finite() || k <= 0.0 {
            return Err(RadiationError::InvalidMode(format!(
                "wavenumber must be positive, got {k}"
            )));
        }
        let norm: f64 = e_vec.iter().map(|c| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(RadiationError::InvalidMode(format!(
                "polarization vector norm {norm} != 1"
            )));
        }
        Ok(PhotonMode {
            k,
            theta,
            phi,
            label,
            e_vec,
        })
    }

    pub fn wavenumber(&self) -> f64 {
        self.k
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn label(&self) -> PolarizationLabel {
        self.label
    }

    pub fn polarization(&self) -> [Complex64; 3] {
        self.e_vec
    }

    pub fn khat(&self) -> [f64; 3] {
        let (st, ct) = (self.theta.sin(), self.theta.cos());
        [st * self.phi.cos(), st * self.phi.sin(), ct]
    }

    /// cos of the angle to the acceleration axis.
    pub fn axis_cosine(&self) -> f64 {
        self.theta.cos()
    }
}

/// Unconjugated complex scalar product, as it enters the pair amplitude.
/// Analytically orthogonal combinations are snapped to an exact zero.
pub fn polarization_product(a: &PhotonMode, b: &PhotonMode) -> Complex64 {
    let dot: Complex64 = a.e_vec.iter().zip(&b.e_vec).map(|(x, y)| x * y).sum();
    if dot.norm() < 16.0 * f64::EPSILON {
        Complex64::new(0.0, 0.0)
    } else {
        dot
    }
}

/// Gaussian switching window on the coupling, a fixture for analytic checks
/// with a static scatterer.
#[derive(Debug, Clone, Copy)]
pub struct GaussianWindow {
    pub sigma: f64,
    pub center: f64,
}

impl GaussianWindow {
    fn value(&self, t: f64) -> f64 {
        let x = (t - self.center) / self.sigma;
        (-0.5 * x * x).exp()
    }

    fn support(&self) -> (f64, f64) {
        // window below 1e-12 of its peak outside this interval
        let half = self.sigma * (-2.0 * 1e-12f64.ln()).sqrt();
        (self.center - half, self.center + half)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AmplitudeOptions {
    pub tol: Tolerances,
    pub coupling_window: Option<GaussianWindow>,
}

/// Volume-stripped two-photon amplitude V·A.
#[derive(Debug, Clone, Copy)]
pub struct TwoPhotonAmplitude {
    pub mode1: PhotonMode,
    pub mode2: PhotonMode,
    pub value: Complex64,
    pub method: AmplitudeMethod,
    pub abs_error: f64,
}

/// Volume-stripped Larmor coherent-state coefficient √V·α.
#[derive(Debug, Clone, Copy)]
pub struct LarmorCoefficient {
    pub mode: PhotonMode,
    pub value: Complex64,
    pub method: AmplitudeMethod,
    pub abs_error: f64,
}

/// Which worldline envelope multiplies the oscillation.
#[derive(Clone, Copy)]
enum EnvelopeKind {
    /// √(1−β²), the pair-creation vertex.
    InverseGamma,
    /// β, the classical current projected on the axis.
    Velocity,
}

impl EnvelopeKind {
    fn lab_shape(&self, beta: f64) -> f64 {
        match self {
            EnvelopeKind::InverseGamma => (1.0 - beta * beta).sqrt(),
            EnvelopeKind::Velocity => beta,
        }
    }
}

/// Regularized Fourier transform of a worldline envelope at frequency ω > 0:
/// `∫ env(t) e^{iω(t − c_dir z(t))} dt` plus the closed-form constant tails.
fn worldline_fourier(
    traj: &Trajectory,
    kind: EnvelopeKind,
    omega: f64,
    c_dir: f64,
    method: AmplitudeMethod,
    opts: &AmplitudeOptions,
) -> Result<(Complex64, f64), RadiationError> {
    debug_assert!(omega > 0.0);
    let (w_lo, w_hi) = traj.window();
    let (base_lo, base_hi) = match opts.coupling_window {
        Some(w) => w.support(),
        None => (w_lo, w_hi),
    };
    let window_factor = move |t: f64| opts.coupling_window.map_or(1.0, |w| w.value(t));
    // one oscillation period of padding, capped at the support width: the
    // closed-form tails already handle the constant region exactly, and very
    // long padded intervals only accumulate projection noise
    let pad = (2.0 * std::f64::consts::PI / omega).min(base_hi - base_lo);

    // absolute tolerance keyed to the envelope magnitude and support width,
    // so deep spectral tails stay meaningful relative to the overall scale
    let scale_of = |env: &dyn Fn(f64) -> Complex64| {
        let mut peak = 0.0_f64;
        for i in 0..=48 {
            let t = base_lo + (base_hi - base_lo) * i as f64 / 48.0;
            peak = peak.max(env(t).norm());
        }
        peak * (base_hi - base_lo)
    };

    match method {
        AmplitudeMethod::Retarded => {
            let map = traj.retarded_map(c_dir)?;
            let envelope = |tau: f64| -> Complex64 {
                let t = map.time_at(tau);
                let beta = traj.velocity(t);
                let doppler = kind.lab_shape(beta) / (1.0 - c_dir * beta);
                (window_factor(t) * doppler).into()
            };
            let tau_lo = map.tau_at(base_lo);
            let tau_hi = map.tau_at(base_hi);
            // padding intervals carry a constant envelope; splitting them off
            // keeps the initial panels aligned with the structured region
            let mut cuts: Vec<f64> =
                traj.breakpoints().iter().map(|&b| map.tau_at(b)).collect();
            cuts.push(tau_lo);
            cuts.push(tau_hi);
            let scale = scale_of(&|t| envelope(map.tau_at(t))).max(f64::MIN_POSITIVE);
            let spec = OscillatoryIntegralSpec {
                envelope: &envelope,
                omega,
                domain: (tau_lo - pad, tau_hi + pad),
                discontinuities: &cuts,
                tol: Tolerances {
                    abs: opts.tol.abs * scale,
                    rel: opts.tol.rel,
                },
            };
            let FourierResult {
                value, abs_error, ..
            } = fourier_integral(&spec)?;
            let iw = Complex64::new(0.0, omega);
            let tail = |tau: f64| envelope(tau) * Complex64::from_polar(1.0, omega * tau) / iw;
            Ok((
                value + tail(tau_lo - pad) - tail(tau_hi + pad),
                abs_error + 1e-15 * scale,
            ))
        }
        AmplitudeMethod::TimeDomain => {
            let envelope = |t: f64| -> Complex64 {
                let beta = traj.velocity(t);
                let amp = window_factor(t) * kind.lab_shape(beta);
                amp * Complex64::from_polar(1.0, -omega * c_dir * traj.position(t))
            };
            let mut cuts: Vec<f64> = traj.breakpoints().to_vec();
            cuts.push(base_lo);
            cuts.push(base_hi);
            let scale = scale_of(&envelope).max(f64::MIN_POSITIVE);
            let spec = OscillatoryIntegralSpec {
                envelope: &envelope,
                omega,
                domain: (base_lo - pad, base_hi + pad),
                discontinuities: &cuts,
                tol: Tolerances {
                    abs: opts.tol.abs * scale,
                    rel: opts.tol.rel,
                },
            };
            let FourierResult {
                value, abs_error, ..
            } = fourier_integral(&spec)?;
            let tail = |t: f64| -> Complex64 {
                let rate = omega * (1.0 - c_dir * traj.velocity(t));
                envelope(t) * Complex64::from_polar(1.0, omega * t) / Complex64::new(0.0, rate)
            };
            Ok((
                value + tail(base_lo - pad) - tail(base_hi + pad),
                abs_error + 1e-15 * scale,
            ))
        }
    }
}

/// Bare pair Fourier factor ∫√(1−β²)·e^{iω(t−c_dir z)}dt (regularized); the
/// mode sums consume it directly with the polarization algebra done in
/// closed form.
pub fn pair_fourier_factor(
    traj: &Trajectory,
    omega: f64,
    c_dir: f64,
    method: AmplitudeMethod,
    opts: &AmplitudeOptions,
) -> Result<Complex64, RadiationError> {
    worldline_fourier(traj, EnvelopeKind::InverseGamma, omega, c_dir, method, opts)
        .map(|(value, _)| value)
}

/// Bare Larmor Fourier factor ∫β·e^{ik(t−cosθ·z)}dt (regularized).
pub fn larmor_fourier_factor(
    traj: &Trajectory,
    k: f64,
    cos_theta: f64,
    method: AmplitudeMethod,
    opts: &AmplitudeOptions,
) -> Result<Complex64, RadiationError> {
    worldline_fourier(traj, EnvelopeKind::Velocity, k, cos_theta, method, opts)
        .map(|(value, _)| value)
}

pub fn unruh_amplitude_with(
    traj: &Trajectory,
    mode1: &PhotonMode,
    mode2: &PhotonMode,
    method: AmplitudeMethod,
    opts: &AmplitudeOptions,
) -> Result<TwoPhotonAmplitude, RadiationError> {
    let pol = polarization_product(mode1, mode2);
    if pol.norm() == 0.0 {
        return Ok(TwoPhotonAmplitude {
            mode1: *mode1,
            mode2: *mode2,
            value: Complex64::new(0.0, 0.0),
            method,
            abs_error: 0.0,
        });
    }
    let (k1, k2) = (mode1.k, mode2.k);
    let omega = k1 + k2;
    let c_dir = (k1 * mode1.axis_cosine() + k2 * mode2.axis_cosine()) / omega;
    let prefactor = pol / (Complex64::new(0.0, 2.0) * (k1 * k2).sqrt());
    let g = traj.constants().g;
    let (f, f_err) =
        worldline_fourier(traj, EnvelopeKind::InverseGamma, omega, c_dir, method, opts)?;
    Ok(TwoPhotonAmplitude {
        mode1: *mode1,
        mode2: *mode2,
        value: prefactor * g * f,
        method,
        abs_error: prefactor.norm() * g * f_err,
    })
}

pub fn unruh_amplitude(
    traj: &Trajectory,
    mode1: &PhotonMode,
    mode2: &PhotonMode,
    method: AmplitudeMethod,
) -> Result<TwoPhotonAmplitude, RadiationError> {
    unruh_amplitude_with(traj, mode1, mode2, method, &AmplitudeOptions::default())
}

pub fn larmor_coefficient_with(
    traj: &Trajectory,
    mode: &PhotonMode,
    method: AmplitudeMethod,
    opts: &AmplitudeOptions,
) -> Result<LarmorCoefficient, RadiationError> {
    // for 1D motion e·ṙ = β(t)·(e·ẑ); on the axis itself sin θ rounds to
    // ~1e-16, which is the exact blind spot
    let axis_component = mode.e_vec[2];
    if axis_component.norm() < 16.0 * f64::EPSILON {
        return Ok(LarmorCoefficient {
            mode: *mode,
            value: Complex64::new(0.0, 0.0),
            method,
            abs_error: 0.0,
        });
    }
    let k = mode.k;
    let c_dir = mode.axis_cosine();
    let q = traj.constants().q;
    let prefactor = q * axis_component / (2.0 * k).sqrt();
    let (f, f_err) =
        worldline_fourier(traj, EnvelopeKind::Velocity, k, c_dir, method, opts)?;
    Ok(LarmorCoefficient {
        mode: *mode,
        value: prefactor * f,
        method,
        abs_error: prefactor.norm() * f_err,
    })
}

pub fn larmor_coefficient(
    traj: &Trajectory,
    mode: &PhotonMode,
    method: AmplitudeMethod,
) -> Result<LarmorCoefficient, RadiationError> {
    larmor_coefficient_with(traj, mode, method, &AmplitudeOptions::default())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolarizationBasis {
    Linear,
    Circular,
}

/// 2×2 matrix of pair amplitudes over a polarization basis for two photon
/// directions `(k, θ, φ)`; rows index the first photon's label.
pub fn polarization_pair_matrix(
    traj: &Trajectory,
    k1: (f64, f64, f64),
    k2: (f64, f64, f64),
    basis: PolarizationBasis,
    method: AmplitudeMethod,
) -> Result<[[Complex64; 2]; 2], RadiationError> {
    let labels = match basis {
        PolarizationBasis::Linear => [PolarizationLabel::Linear1, PolarizationLabel::Linear2],
        PolarizationBasis::Circular => [
            PolarizationLabel::CircularPlus,
            PolarizationLabel::CircularMinus,
        ],
    };
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, &la) in labels.iter().enumerate() {
        for (j, &lb) in labels.iter().enumerate() {
            let m1 = PhotonMode::new(k1.0, k1.1, k1.2, la)?;
            let m2 = PhotonMode::new(k2.0, k2.1, k2.2, lb)?;
            out[i][j] = unruh_amplitude(traj, &m1, &m2, method)?.value;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{SamplingPolicy, Trajectory};
    use crate::pulse::PulseProfile;
    use crate::units::Constants;
    use std::f64::consts::PI;

    fn constants() -> Constants {
        Constants::codata()
    }

    fn static_trajectory() -> Trajectory {
        Trajectory::from_velocity_profile(|_| 0.0, constants(), (-12.0, 12.0), 64).unwrap()
    }

    #[test]
    fn basis_is_orthonormal_and_transverse() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let theta = rng.gen_range(0.0..PI);
            let phi = rng.gen_range(0.0..2.0 * PI);
            let (e1, e2) = polarization_basis(theta, phi);
            let khat = [
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ];
            let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
            assert!(dot(e1, e2).abs() < 1e-14);
            assert!(dot(e1, khat).abs() < 1e-14);
            assert!(dot(e2, khat).abs() < 1e-14);
            assert!((dot(e1, e1) - 1.0).abs() < 1e-14);
            assert!((dot(e2, e2) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn basis_tie_break_and_x_direction() {
        let (e1, e2) = polarization_basis(0.0, 1.234);
        assert_eq!(e1, [1.0, 0.0, 0.0]);
        assert_eq!(e2, [0.0, 1.0, 0.0]);
        let (e1, e2) = polarization_basis(PI / 2.0, 0.0);
        assert!((e1[2] + 1.0).abs() < 1e-15 && e1[0].abs() < 1e-15);
        assert_eq!(e2, [0.0, 1.0, 0.0]);
    }

    #[test]
    fn static_window_fixture_matches_closed_form() {
        let traj = static_trajectory();
        let c = constants();
        let window = GaussianWindow {
            sigma: 1.0,
            center: 0.0,
        };
        let opts = AmplitudeOptions {
            coupling_window: Some(window),
            ..Default::default()
        };
        for &(k1, k2, th1, th2) in &[
            (0.6, 0.6, 0.0, 0.0),
            (0.3, 1.1, 0.4, 1.3),
            (1.4, 0.2, 2.8, 0.9),
        ] {
            let m1 = PhotonMode::new(k1, th1, 0.0, PolarizationLabel::Linear1).unwrap();
            let m2 = PhotonMode::new(k2, th2, 0.5, PolarizationLabel::Linear1).unwrap();
            for method in [AmplitudeMethod::TimeDomain, AmplitudeMethod::Retarded] {
                let amp = unruh_amplitude_with(&traj, &m1, &m2, method, &opts).unwrap();
                let omega = k1 + k2;
                let pol = polarization_product(&m1, &m2);
                let want = pol
                    * c.g
                    * window.sigma
                    * (2.0 * PI).sqrt()
                    * (-0.5 * window.sigma * window.sigma * omega * omega).exp()
                    / (Complex64::new(0.0, 2.0) * (k1 * k2).sqrt());
                let rel = (amp.value - want).norm() / want.norm();
                assert!(rel < 1e-8, "{method:?} rel {rel:.2e}");
            }
        }
    }

    #[test]
    fn orthogonal_polarizations_give_exact_zero() {
        let traj = static_trajectory();
        let m1 = PhotonMode::new(1.0, 0.7, 0.3, PolarizationLabel::Linear1).unwrap();
        let m2 = PhotonMode::new(1.0, 0.7, 0.3, PolarizationLabel::Linear2).unwrap();
        let amp = unruh_amplitude(&traj, &m1, &m2, AmplitudeMethod::Retarded).unwrap();
        assert_eq!(amp.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn no_motion_no_larmor() {
        let traj = static_trajectory();
        let m = PhotonMode::new(0.8, 1.1, 0.0, PolarizationLabel::Linear1).unwrap();
        for method in [AmplitudeMethod::TimeDomain, AmplitudeMethod::Retarded] {
            let a = larmor_coefficient(&traj, &m, method).unwrap();
            assert!(a.value.norm() < 1e-14);
        }
    }

    #[test]
    fn blind_spot_on_axis() {
        let c = constants();
        let p = PulseProfile::gaussian_for_gamma(1.8, 1.0, &c).unwrap();
        let traj = Trajectory::solve(
            &p,
            c,
            0.0,
            (-8.0, 8.0),
            SamplingPolicy::for_max_wavenumber(4.0),
        )
        .unwrap();
        for &theta in &[0.0, PI] {
            let m = PhotonMode::new(1.3, theta, 0.0, PolarizationLabel::Linear1).unwrap();
            let a = larmor_coefficient(&traj, &m, AmplitudeMethod::Retarded).unwrap();
            assert_eq!(a.value, Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn dipole_limit_matches_closed_form() {
        let c = constants();
        let beta0 = 1e-3;
        let sigma = 1.0;
        let traj = Trajectory::from_velocity_profile(
            move |t| beta0 * (-0.5 * t * t / (sigma * sigma)).exp(),
            c,
            (-10.0, 10.0),
            4000,
        )
        .unwrap();
        // at theta = pi/2 retardation vanishes identically
        let k = 1.2;
        let m = PhotonMode::new(k, PI / 2.0, 0.0, PolarizationLabel::Linear1).unwrap();
        let a = larmor_coefficient(&traj, &m, AmplitudeMethod::TimeDomain).unwrap();
        let want = c.q * beta0 * sigma * (2.0 * PI).sqrt() * (-0.5 * sigma * sigma * k * k).exp()
            / (2.0 * k).sqrt();
        let rel = (a.value.norm() - want).abs() / want;
        assert!(rel < 1e-5, "rel {rel:.2e}");
        // oblique angle picks up the sin(theta) projection
        let m2 = PhotonMode::new(k, PI / 3.0, 0.0, PolarizationLabel::Linear1).unwrap();
        let a2 = larmor_coefficient(&traj, &m2, AmplitudeMethod::Retarded).unwrap();
        let want2 = want * (PI / 3.0f64).sin();
        let rel2 = (a2.value.norm() - want2).abs() / want2;
        assert!(rel2 < 1e-2, "rel {rel2:.2e}");
    }

    #[test]
    fn methods_agree_on_accelerated_trajectory() {
        let c = constants();
        let p = PulseProfile::gaussian_for_gamma(2.0, 1.0, &c).unwrap();
        let traj = Trajectory::solve(
            &p,
            c,
            0.0,
            (-8.0, 8.0),
            SamplingPolicy::for_max_wavenumber(6.0),
        )
        .unwrap();
        let m1 = PhotonMode::new(1.1, 0.2, 0.0, PolarizationLabel::Linear1).unwrap();
        let m2 = PhotonMode::new(0.9, 0.35, 1.0, PolarizationLabel::Linear1).unwrap();
        let a_t = unruh_amplitude(&traj, &m1, &m2, AmplitudeMethod::TimeDomain).unwrap();
        let a_r = unruh_amplitude(&traj, &m1, &m2, AmplitudeMethod::Retarded).unwrap();
        let rel = (a_t.value - a_r.value).norm() / a_r.value.norm();
        assert!(rel < 1e-6, "pair methods differ by {rel:.2e}");

        let lm = PhotonMode::new(0.8, 0.5, 0.0, PolarizationLabel::Linear1).unwrap();
        let l_t = larmor_coefficient(&traj, &lm, AmplitudeMethod::TimeDomain).unwrap();
        let l_r = larmor_coefficient(&traj, &lm, AmplitudeMethod::Retarded).unwrap();
        let rel = (l_t.value - l_r.value).norm() / l_r.value.norm();
        assert!(rel < 1e-6, "larmor methods differ by {rel:.2e}");
    }

    #[test]
    fn never_accelerated_charge_does_not_radiate() {
        // uniform motion: regularized amplitudes vanish for both channels
        let c = constants();
        let traj = Trajectory::from_velocity_profile(|_| 0.6, c, (-10.0, 10.0), 400).unwrap();
        let m = PhotonMode::new(0.9, 0.8, 0.0, PolarizationLabel::Linear1).unwrap();
        let a = larmor_coefficient(&traj, &m, AmplitudeMethod::Retarded).unwrap();
        let scale = c.q / (2.0 * 0.9f64).sqrt();
        assert!(a.value.norm() < 1e-9 * scale, "residual {}", a.value.norm());
        let m2 = PhotonMode::new(1.3, 0.8, 0.0, PolarizationLabel::Linear1).unwrap();
        let pair = unruh_amplitude(&traj, &m, &m2, AmplitudeMethod::TimeDomain).unwrap();
        assert!(pair.value.norm() < 1e-9 * c.g);
    }

    #[test]
    fn exchange_symmetry() {
        let c = constants();
        let p = PulseProfile::gaussian_for_gamma(1.6, 1.0, &c).unwrap();
        let traj = Trajectory::solve(
            &p,
            c,
            0.0,
            (-8.0, 8.0),
            SamplingPolicy::for_max_wavenumber(4.0),
        )
        .unwrap();
        let m1 = PhotonMode::new(0.7, 0.3, 0.2, PolarizationLabel::Linear1).unwrap();
        let m2 = PhotonMode::new(1.2, 2.6, 4.0, PolarizationLabel::Linear2).unwrap();
        let a = unruh_amplitude(&traj, &m1, &m2, AmplitudeMethod::Retarded).unwrap();
        let b = unruh_amplitude(&traj, &m2, &m1, AmplitudeMethod::Retarded).unwrap();
        assert!((a.value - b.value).norm() <= 1e-10 * a.value.norm());
    }

    #[test]
    fn ultra_relativistic_magnitude_laws() {
        // deep below the cutoff and inside the boosted cone, the pair
        // amplitude follows g*gamma/(sqrt(kk')(k+k')) and the Larmor
        // coefficient q*theta*gamma^2/k^(3/2), to within a factor 3
        let c = constants();
        let p = PulseProfile::gaussian_for_gamma(12.0, 1.0, &c).unwrap();
        let k_cut = 144.0;
        let traj = Trajectory::solve(
            &p,
            c,
            0.0,
            (-8.0, 8.0),
            SamplingPolicy::for_max_wavenumber(k_cut),
        )
        .unwrap();
        let gamma = traj.gamma_max();
        let theta = 0.15 / gamma;
        for &k in &[k_cut / 30.0, k_cut / 15.0, k_cut / 8.0] {
            let m = PhotonMode::new(k, theta, 0.0, PolarizationLabel::Linear1).unwrap();
            let pair = unruh_amplitude(&traj, &m, &m, AmplitudeMethod::Retarded)
                .unwrap()
                .value
                .norm();
            let expected_pair = c.g * gamma / (k * 2.0 * k);
            let ratio = pair / expected_pair;
            assert!((1.0 / 3.0..3.0).contains(&ratio), "pair ratio {ratio:.3} at k {k}");

            let alpha = larmor_coefficient(&traj, &m, AmplitudeMethod::Retarded)
                .unwrap()
                .value
                .norm();
            let expected_alpha = c.q * theta * gamma * gamma / k.powf(1.5);
            let ratio = alpha / expected_alpha;
            assert!((1.0 / 3.0..3.0).contains(&ratio), "larmor ratio {ratio:.3} at k {k}");
        }
    }

    #[test]
    fn parallel_pair_matrices() {
        let c = constants();
        let p = PulseProfile::gaussian_for_gamma(1.7, 1.0, &c).unwrap();
        let traj = Trajectory::solve(
            &p,
            c,
            0.0,
            (-8.0, 8.0),
            SamplingPolicy::for_max_wavenumber(3.0),
        )
        .unwrap();
        let dir = (0.8, 0.4, 0.7);
        let lin = polarization_pair_matrix(
            &traj,
            dir,
            dir,
            PolarizationBasis::Linear,
            AmplitudeMethod::Retarded,
        )
        .unwrap();
        // same-direction photons: equal linear polarizations only
        assert_eq!(lin[0][1].norm(), 0.0);
        assert_eq!(lin[1][0].norm(), 0.0);
        assert!(lin[0][0].norm() > 0.0);
        let circ = polarization_pair_matrix(
            &traj,
            dir,
            dir,
            PolarizationBasis::Circular,
            AmplitudeMethod::Retarded,
        )
        .unwrap();
        // and opposite circular polarizations only
        assert!(circ[0][0].norm() < 1e-14 * circ[0][1].norm());
        assert!(circ[1][1].norm() < 1e-14 * circ[0][1].norm());
        assert!(circ[0][1].norm() > 0.0 && circ[1][0].norm() > 0.0);

        // unitary basis change preserves the Frobenius norm
        let frob = |m: &[[Complex64; 2]; 2]| {
            m.iter().flatten().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
        };
        let (fl, fc) = (frob(&lin), frob(&circ));
        assert!((fl - fc).abs() < 1e-9 * fl);
    }
}
