//! Uni-directional electric field pulses E(t) driving the electron.
//!
//! Three shapes: a Gaussian (the generic smooth pulse), an idealized
//! rectangular pulse (sharp edges, kept for its 1/(k+k')² spectral tail),
//! and a C∞ flat-top with smooth ramps of adjustable rise time. The Gaussian
//! `width` is the standard deviation σ, not FWHM; the rectangular and
//! flat-top widths are the full support.

use crate::quadrature::{self, Tolerances};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PulseError {
    #[error("invalid pulse: {0}")]
    InvalidProfile(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PulseShape {
    Gaussian,
    Rectangular,
    SmoothFront,
}

/// An electric field pulse along a fixed axis.
#[derive(Debug, Clone, Copy)]
pub struct PulseProfile {
    shape: PulseShape,
    /// Peak field, natural units (eV²).
    e0: f64,
    /// Pulse length: σ for Gaussian, full support otherwise.
    width: f64,
    /// Ramp time of the smooth front, 0 < rise ≤ width.
    rise: f64,
    t_center: f64,
}

/// C∞ partition ramp: 0 for x ≤ 0, 1 for x ≥ 1.
fn smooth_ramp(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / x).exp();
        let b = (-1.0 / (1.0 - x)).exp();
        a / (a + b)
    }
}

/// Stable erf difference erf(b) - erf(a) for a <= b.
fn erf_diff(a: f64, b: f64) -> f64 {
    if a > b {
        return -erf_diff(b, a);
    }
    if a >= 0.0 {
        libm::erfc(a) - libm::erfc(b)
    } else if b <= 0.0 {
        libm::erfc(-b) - libm::erfc(-a)
    } else {
        libm::erf(b) - libm::erf(a)
    }
}

impl PulseProfile {
    pub fn new(
        shape: PulseShape,
        e0: f64,
        width: f64,
        rise: f64,
        t_center: f64,
    ) -> Result<Self, PulseError> {
        if e0.is_nan() || e0 < 0.0 {
            return Err(PulseError::InvalidProfile(format!(
                "peak field must be non-negative, got {e0}"
            )));
        }
        if !width.is_finite() || width <= 0.0 {
            return Err(PulseError::InvalidProfile(format!(
                "pulse width must be positive, got {width}"
            )));
        }
        if shape == PulseShape::SmoothFront && !(rise > 0.0 && rise <= width) {
            return Err(PulseError::InvalidProfile(format!(
                "smooth front needs 0 < rise <= width, got rise {rise}, width {width}"
            )));
        }
        Ok(PulseProfile {
            shape,
            e0,
            width,
            rise,
            t_center,
        })
    }

    pub fn gaussian(e0: f64, sigma: f64, t_center: f64) -> Result<Self, PulseError> {
        PulseProfile::new(PulseShape::Gaussian, e0, sigma, 0.0, t_center)
    }

    pub fn rectangular(e0: f64, support: f64, t_center: f64) -> Result<Self, PulseError> {
        PulseProfile::new(PulseShape::Rectangular, e0, support, 0.0, t_center)
    }

    pub fn smooth_front(
        e0: f64,
        support: f64,
        rise: f64,
        t_center: f64,
    ) -> Result<Self, PulseError> {
        PulseProfile::new(PulseShape::SmoothFront, e0, support, rise, t_center)
    }

    /// Gaussian pulse whose exact momentum transfer reaches the requested
    /// Lorentz factor from rest: u_final = (q/m) E₀ σ √(2π).
    pub fn gaussian_for_gamma(
        gamma_max: f64,
        sigma: f64,
        constants: &crate::units::Constants,
    ) -> Result<Self, PulseError> {
        if gamma_max < 1.0 {
            return Err(PulseError::InvalidProfile(format!(
                "gamma_max must be >= 1, got {gamma_max}"
            )));
        }
        let u = (gamma_max * gamma_max - 1.0).sqrt();
        let e0 = u * constants.m / (constants.q * sigma * (2.0 * std::f64::consts::PI).sqrt());
        PulseProfile::gaussian(e0, sigma, 0.0)
    }

    pub fn shape(&self) -> PulseShape {
        self.shape
    }

    pub fn peak_field(&self) -> f64 {
        self.e0
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn rise(&self) -> f64 {
        self.rise
    }

    pub fn t_center(&self) -> f64 {
        self.t_center
    }

    /// Characteristic time scale: σ for Gaussian, full support otherwise.
    pub fn timescale(&self) -> f64 {
        self.width
    }

    /// E(t).
    pub fn field_at(&self, t: f64) -> f64 {
        let dt = t - self.t_center;
        match self.shape {
            PulseShape::Gaussian => self.e0 * (-0.5 * dt * dt / (self.width * self.width)).exp(),
            PulseShape::Rectangular => {
                if dt.abs() <= 0.5 * self.width {
                    self.e0
                } else {
                    0.0
                }
            }
            PulseShape::SmoothFront => {
                let start = -0.5 * self.width;
                let end = 0.5 * self.width;
                self.e0
                    * smooth_ramp((dt - start) / self.rise)
                    * smooth_ramp((end - dt) / self.rise)
            }
        }
    }

    /// ∫ E(t) dt over [t0, t1]; closed form for Gaussian and rectangular,
    /// adaptive quadrature (rel 1e-12) for the smooth front. Infinite bounds
    /// are allowed.
    pub fn field_time_integral(&self, t0: f64, t1: f64) -> f64 {
        if t0 == t1 {
            return 0.0;
        }
        if t1 < t0 {
            return -self.field_time_integral(t1, t0);
        }
        match self.shape {
            PulseShape::Gaussian => {
                let s = self.width * std::f64::consts::SQRT_2;
                let a = (t0 - self.t_center) / s;
                let b = (t1 - self.t_center) / s;
                self.e0 * self.width * (0.5 * std::f64::consts::PI).sqrt() * erf_diff(a, b)
            }
            PulseShape::Rectangular => {
                let lo = (t0 - self.t_center).max(-0.5 * self.width);
                let hi = (t1 - self.t_center).min(0.5 * self.width);
                self.e0 * (hi - lo).max(0.0)
            }
            PulseShape::SmoothFront => {
                let lo = (t0 - self.t_center).max(-0.5 * self.width);
                let hi = (t1 - self.t_center).min(0.5 * self.width);
                if hi <= lo {
                    return 0.0;
                }
                let tol = Tolerances {
                    abs: 1e-14 * self.e0 * self.width,
                    rel: 1e-12,
                };
                let (v, _) = quadrature::integrate(
                    |t| self.field_at(t + self.t_center),
                    lo,
                    hi,
                    tol,
                )
                .expect("smooth-front field integral converges");
                v
            }
        }
    }

    /// Interval outside which |E| < eps·E₀. `None` for a zero-field pulse.
    pub fn significant_support(&self, eps: f64) -> Option<(f64, f64)> {
        if self.e0 == 0.0 {
            return None;
        }
        match self.shape {
            PulseShape::Gaussian => {
                let half = self.width * (-2.0 * eps.ln()).sqrt();
                Some((self.t_center - half, self.t_center + half))
            }
            PulseShape::Rectangular | PulseShape::SmoothFront => Some((
                self.t_center - 0.5 * self.width,
                self.t_center + 0.5 * self.width,
            )),
        }
    }

    /// A solving window that comfortably covers the pulse: ±8σ for the
    /// Gaussian, 120% of the support otherwise.
    pub fn default_window(&self) -> (f64, f64) {
        let half = match self.shape {
            PulseShape::Gaussian => 8.0 * self.width,
            PulseShape::Rectangular | PulseShape::SmoothFront => 0.6 * self.width,
        };
        (self.t_center - half, self.t_center + half)
    }

    /// Times where E(t) or its derivative jumps; integration panels and
    /// trajectory sample grids must not straddle these.
    pub fn breakpoints(&self) -> Vec<f64> {
        let start = self.t_center - 0.5 * self.width;
        let end = self.t_center + 0.5 * self.width;
        match self.shape {
            PulseShape::Gaussian => Vec::new(),
            PulseShape::Rectangular => vec![start, end],
            PulseShape::SmoothFront => vec![start, start + self.rise, end - self.rise, end],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gaussian_peak_and_sigma_point() {
        let p = PulseProfile::gaussian(2.0, 0.7, 1.5).unwrap();
        assert_eq!(p.field_at(1.5), 2.0);
        let at_sigma = p.field_at(1.5 + 0.7);
        assert!((at_sigma - 2.0 * (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn rectangular_support() {
        let p = PulseProfile::rectangular(1.0, 2.0, 0.0).unwrap();
        assert_eq!(p.field_at(0.99), 1.0);
        assert_eq!(p.field_at(1.01), 0.0);
        assert_eq!(p.field_at(-1.01), 0.0);
        assert_eq!(p.field_time_integral(-5.0, 5.0), 2.0);
    }

    #[test]
    fn gaussian_full_integral() {
        let p = PulseProfile::gaussian(3.0, 0.4, 0.0).unwrap();
        let full = p.field_time_integral(f64::NEG_INFINITY, f64::INFINITY);
        let want = 3.0 * 0.4 * (2.0 * PI).sqrt();
        assert!((full - want).abs() / want < 1e-14);
        // numeric cross-check over a wide finite window
        let tol = Tolerances { abs: 1e-16, rel: 1e-13 };
        let (num, _) = quadrature::integrate(|t| p.field_at(t), -6.0, 6.0, tol).unwrap();
        assert!((num - want).abs() / want < 1e-10);
    }

    #[test]
    fn empty_interval_is_zero() {
        for p in [
            PulseProfile::gaussian(1.0, 1.0, 0.0).unwrap(),
            PulseProfile::rectangular(1.0, 1.0, 0.0).unwrap(),
            PulseProfile::smooth_front(1.0, 1.0, 0.2, 0.0).unwrap(),
        ] {
            assert_eq!(p.field_time_integral(0.3, 0.3), 0.0);
        }
    }

    #[test]
    fn integral_derivative_recovers_field() {
        let pulses = [
            PulseProfile::gaussian(1.3, 0.9, 0.2).unwrap(),
            PulseProfile::smooth_front(0.8, 2.0, 0.5, -0.3).unwrap(),
        ];
        for p in pulses {
            for &t in &[-0.9, -0.2, 0.1, 0.55, 1.3] {
                let h = 1e-5;
                let fd = (p.field_time_integral(-4.0, t + h) - p.field_time_integral(-4.0, t - h))
                    / (2.0 * h);
                let e = p.field_at(t);
                let scale = p.peak_field();
                assert!(
                    (fd - e).abs() <= 1e-8 * scale + 1e-9 * e.abs(),
                    "t = {t}: fd {fd} vs field {e}"
                );
            }
        }
    }

    #[test]
    fn even_about_center() {
        let g = PulseProfile::gaussian(1.0, 0.5, 0.7).unwrap();
        let r = PulseProfile::rectangular(1.0, 1.4, 0.7).unwrap();
        for &s in &[0.1, 0.3, 0.6, 1.1] {
            let (gp, gm) = (g.field_at(0.7 + s), g.field_at(0.7 - s));
            assert!((gp - gm).abs() <= 1e-14 * gp.max(1e-300));
            assert_eq!(r.field_at(0.7 + s), r.field_at(0.7 - s));
        }
    }

    #[test]
    fn smooth_front_shape() {
        let p = PulseProfile::smooth_front(1.0, 4.0, 1.0, 0.0).unwrap();
        assert_eq!(p.field_at(-2.0), 0.0);
        assert_eq!(p.field_at(2.0), 0.0);
        assert_eq!(p.field_at(0.0), 1.0); // interior plateau
        let mid_ramp = p.field_at(-1.5);
        assert!(mid_ramp > 0.0 && mid_ramp < 1.0);
        // C-infinity ramp is exactly 1/2 at the midpoint
        assert!((p.field_at(-2.0 + 0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn invalid_profiles_rejected() {
        assert!(PulseProfile::gaussian(-1.0, 1.0, 0.0).is_err());
        assert!(PulseProfile::gaussian(1.0, 0.0, 0.0).is_err());
        assert!(PulseProfile::smooth_front(1.0, 1.0, 0.0, 0.0).is_err());
        assert!(PulseProfile::smooth_front(1.0, 1.0, 1.5, 0.0).is_err());
    }
}
