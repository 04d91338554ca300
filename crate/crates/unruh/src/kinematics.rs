//! Relativistic 1D electron motion in the pulse and the retarded-time map.
//!
//! The equation of motion d(γβ)/dt = qE(t)/m has the exact first integral
//! u(t) = u₀ + (q/m)∫E dt', so the proper velocity is obtained by quadrature
//! of the pulse rather than ODE stepping: exact for rectangular pulses and
//! limited only by the field integral elsewhere. The position follows by
//! integrating β between dense sample nodes; both are interpolated with
//! cubic Hermite polynomials carrying the exact nodal derivatives.
//!
//! The motion is strictly 1D along the field axis (taken as ẑ); photon
//! directions are measured from that axis. Magnetic deflection and radiation
//! reaction are out of scope.

use crate::pulse::{PulseProfile, PulseShape};
use crate::units::Constants;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum KinematicsError {
    #[error("window does not cover the pulse: |E| at a window edge is {0:.3e} of the peak (must be <= 1e-12)")]
    WindowTooSmall(f64),
    #[error("invalid kinematics input: {0}")]
    InvalidInput(String),
}

const GL7: [(f64, f64); 7] = [
    (-0.9491079123427585, 0.12948496616887065),
    (-0.7415311855993945, 0.2797053914892766),
    (-0.4058451513773972, 0.3818300505051183),
    (0.0, 0.41795918367346896),
    (0.4058451513773972, 0.3818300505051183),
    (0.7415311855993945, 0.2797053914892766),
    (0.9491079123427585, 0.12948496616887065),
];

/// Sample density control for trajectory construction.
///
/// The grid step resolves the pulse envelope and, when a maximum total
/// photon wavenumber is declared, keeps at least `samples_per_period`
/// nodes per shortest oscillation period so downstream phases stay
/// accurate to well below a radian.
#[derive(Debug, Clone, Copy)]
pub struct SamplingPolicy {
    /// Largest k + k' the amplitude integrals will request (natural units).
    pub max_total_wavenumber: f64,
    pub samples_per_period: f64,
    /// Nodes per pulse time scale.
    pub envelope_samples: f64,
}

impl Default for SamplingPolicy {
    fn default() -> Self {
        SamplingPolicy {
            max_total_wavenumber: 0.0,
            samples_per_period: 40.0,
            envelope_samples: 64.0,
        }
    }
}

impl SamplingPolicy {
    pub fn for_max_wavenumber(omega: f64) -> Self {
        SamplingPolicy {
            max_total_wavenumber: omega,
            ..SamplingPolicy::default()
        }
    }

    fn step(&self, profile: Option<&PulseProfile>) -> Option<f64> {
        let mut dt = f64::INFINITY;
        if let Some(p) = profile {
            dt = dt.min(p.timescale() / self.envelope_samples);
            if p.shape() == PulseShape::SmoothFront {
                dt = dt.min(p.rise() / 48.0);
            }
        }
        if self.max_total_wavenumber > 0.0 {
            dt = dt.min(
                2.0 * std::f64::consts::PI / (self.max_total_wavenumber * self.samples_per_period),
            );
        }
        dt.is_finite().then_some(dt)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TrajectorySample {
    pub t: f64,
    pub z: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// The electron worldline: t ↦ (z, β, γ) along the acceleration axis.
#[derive(Debug, Clone)]
pub struct Trajectory {
    constants: Constants,
    t: Vec<f64>,
    u: Vec<f64>,
    z: Vec<f64>,
    /// du/dt approaching each node from the right (used by the interval
    /// starting there) and from the left (used by the interval ending there);
    /// they differ only at rectangular pulse edges.
    du_right: Vec<f64>,
    du_left: Vec<f64>,
    gamma_max: f64,
    u0: f64,
    breakpoints: Vec<f64>,
}

fn gamma_of_u(u: f64) -> f64 {
    (1.0 + u * u).sqrt()
}

fn beta_of_u(u: f64) -> f64 {
    u / gamma_of_u(u)
}

/// Cubic Hermite value on [x0, x1] with nodal values/slopes.
fn hermite(x: f64, x0: f64, x1: f64, y0: f64, y1: f64, d0: f64, d1: f64) -> f64 {
    let h = x1 - x0;
    let s = (x - x0) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    y0 * (2.0 * s3 - 3.0 * s2 + 1.0)
        + d0 * h * (s3 - 2.0 * s2 + s)
        + y1 * (-2.0 * s3 + 3.0 * s2)
        + d1 * h * (s3 - s2)
}

fn locate(xs: &[f64], x: f64) -> usize {
    // index i with xs[i] <= x < xs[i+1], clamped to valid intervals
    match xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
        Ok(i) => i.min(xs.len() - 2),
        Err(0) => 0,
        Err(i) => (i - 1).min(xs.len() - 2),
    }
}

impl Trajectory {
    /// Solves the motion in `profile` over `window`, starting from proper
    /// velocity `u0` at the window start.
    pub fn solve(
        profile: &PulseProfile,
        constants: Constants,
        u0: f64,
        window: (f64, f64),
        sampling: SamplingPolicy,
    ) -> Result<Self, KinematicsError> {
        let (t_start, t_end) = window;
        let span = t_end - t_start;
        if !span.is_finite() || span <= 0.0 {
            return Err(KinematicsError::InvalidInput(format!(
                "window ({t_start}, {t_end}) is empty"
            )));
        }
        if profile.peak_field() > 0.0 {
            let rel = profile
                .field_at(t_start)
                .abs()
                .max(profile.field_at(t_end).abs())
                / profile.peak_field();
            if rel > 1e-12 {
                return Err(KinematicsError::WindowTooSmall(rel));
            }
        }

        let dt = sampling.step(Some(profile)).unwrap_or(span / 512.0);
        let n = ((span / dt).ceil() as usize).clamp(400, 2_000_000);

        // uniform grid plus exact pulse breakpoints
        let mut t: Vec<f64> = (0..=n)
            .map(|i| t_start + span * i as f64 / n as f64)
            .collect();
        for b in profile.breakpoints() {
            if b > t_start && b < t_end {
                t.push(b);
            }
        }
        t.sort_by(|a, b| a.partial_cmp(b).unwrap());
        t.dedup();

        let q_over_m = constants.q / constants.m;
        let m = t.len();
        let mut u = Vec::with_capacity(m);
        let mut du_right = Vec::with_capacity(m);
        let mut du_left = Vec::with_capacity(m);
        u.push(u0);
        for i in 1..m {
            let delta = q_over_m * profile.field_time_integral(t[i - 1], t[i]);
            u.push(u[i - 1] + delta);
        }
        for &ti in &t {
            du_right.push(q_over_m * field_right_limit(profile, ti));
            du_left.push(q_over_m * field_left_limit(profile, ti));
        }

        let mut z = Vec::with_capacity(m);
        z.push(0.0);
        for i in 1..m {
            let (a, b) = (t[i - 1], t[i]);
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            let mut acc = 0.0;
            for &(node, weight) in &GL7 {
                let tt = mid + half * node;
                let uu = hermite(tt, a, b, u[i - 1], u[i], du_right[i - 1], du_left[i]);
                acc += weight * beta_of_u(uu);
            }
            z.push(z[i - 1] + half * acc);
        }

        let gamma_max = u
            .iter()
            .map(|&ui| gamma_of_u(ui))
            .fold(1.0_f64, f64::max);

        let breakpoints = profile
            .breakpoints()
            .into_iter()
            .filter(|&b| b > t_start && b < t_end)
            .collect();

        Ok(Trajectory {
            constants,
            t,
            u,
            z,
            du_right,
            du_left,
            gamma_max,
            u0,
            breakpoints,
        })
    }

    /// Builds a worldline from a prescribed velocity history β(t); intended
    /// for analytic fixtures (dipole limits, static scatterers).
    pub fn from_velocity_profile(
        beta: impl Fn(f64) -> f64,
        constants: Constants,
        window: (f64, f64),
        nodes: usize,
    ) -> Result<Self, KinematicsError> {
        let (t_start, t_end) = window;
        let span = t_end - t_start;
        if !span.is_finite() || span <= 0.0 || nodes < 8 {
            return Err(KinematicsError::InvalidInput(
                "window must be non-empty and nodes >= 8".to_string(),
            ));
        }
        let n = nodes;
        let t: Vec<f64> = (0..=n)
            .map(|i| t_start + span * i as f64 / n as f64)
            .collect();
        let u_of = |tt: f64| {
            let b: f64 = beta(tt);
            b / (1.0 - b * b).sqrt()
        };
        let u: Vec<f64> = t.iter().map(|&tt| u_of(tt)).collect();
        let h = 1e-6 * span;
        let du: Vec<f64> = t
            .iter()
            .map(|&tt| (u_of(tt + h) - u_of(tt - h)) / (2.0 * h))
            .collect();

        let mut z = Vec::with_capacity(n + 1);
        z.push(0.0);
        for i in 1..=n {
            let (a, b) = (t[i - 1], t[i]);
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            let mut acc = 0.0;
            for &(node, weight) in &GL7 {
                acc += weight * beta(mid + half * node);
            }
            z.push(z[i - 1] + half * acc);
        }
        let gamma_max = u.iter().map(|&ui| gamma_of_u(ui)).fold(1.0_f64, f64::max);
        Ok(Trajectory {
            constants,
            t,
            u: u.clone(),
            z,
            du_right: du.clone(),
            du_left: du,
            gamma_max,
            u0: u[0],
            breakpoints: Vec::new(),
        })
    }

    pub fn constants(&self) -> &Constants {
        &self.constants
    }

    /// Acceleration axis in the lab frame; photon polar angles are measured
    /// from it.
    pub fn axis(&self) -> [f64; 3] {
        [0.0, 0.0, 1.0]
    }

    pub fn window(&self) -> (f64, f64) {
        (self.t[0], *self.t.last().unwrap())
    }

    pub fn gamma_max(&self) -> f64 {
        self.gamma_max
    }

    pub fn initial_proper_velocity(&self) -> f64 {
        self.u0
    }

    /// Pulse breakpoints inside the window, in lab time.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn samples(&self) -> Vec<TrajectorySample> {
        self.t
            .iter()
            .zip(&self.u)
            .zip(&self.z)
            .map(|((&t, &u), &z)| TrajectorySample {
                t,
                z,
                beta: beta_of_u(u),
                gamma: gamma_of_u(u),
            })
            .collect()
    }

    /// γβ at time t; constant beyond the window (the field is negligible
    /// there by construction).
    pub fn proper_velocity(&self, t: f64) -> f64 {
        if t <= self.t[0] {
            return self.u[0];
        }
        if t >= *self.t.last().unwrap() {
            return *self.u.last().unwrap();
        }
        let i = locate(&self.t, t);
        hermite(
            t,
            self.t[i],
            self.t[i + 1],
            self.u[i],
            self.u[i + 1],
            self.du_right[i],
            self.du_left[i + 1],
        )
    }

    pub fn velocity(&self, t: f64) -> f64 {
        beta_of_u(self.proper_velocity(t))
    }

    pub fn gamma(&self, t: f64) -> f64 {
        gamma_of_u(self.proper_velocity(t))
    }

    /// z(t), extended linearly with the edge velocity outside the window.
    pub fn position(&self, t: f64) -> f64 {
        if t <= self.t[0] {
            return self.z[0] + beta_of_u(self.u[0]) * (t - self.t[0]);
        }
        let last = self.t.len() - 1;
        if t >= self.t[last] {
            return self.z[last] + beta_of_u(self.u[last]) * (t - self.t[last]);
        }
        let i = locate(&self.t, t);
        hermite(
            t,
            self.t[i],
            self.t[i + 1],
            self.z[i],
            self.z[i + 1],
            beta_of_u(self.u[i]),
            beta_of_u(self.u[i + 1]),
        )
    }

    /// Retarded-time map τ = t − c_dir·z(t) for a direction weight
    /// c_dir = (k+k')·ẑ/(k+k') (pairs) or k̂·ẑ (single photons).
    pub fn retarded_map(&self, c_dir: f64) -> Result<RetardedTimeMap<'_>, KinematicsError> {
        if !(-1.0..=1.0).contains(&c_dir) {
            return Err(KinematicsError::InvalidInput(format!(
                "direction weight {c_dir} outside [-1, 1]"
            )));
        }
        let tau: Vec<f64> = self
            .t
            .iter()
            .zip(&self.z)
            .map(|(&t, &z)| t - c_dir * z)
            .collect();
        Ok(RetardedTimeMap {
            traj: self,
            c_dir,
            tau,
        })
    }
}

fn field_right_limit(p: &PulseProfile, t: f64) -> f64 {
    if p.shape() == PulseShape::Rectangular {
        let dt = t - p.t_center();
        if dt >= -0.5 * p.width() && dt < 0.5 * p.width() {
            return p.peak_field();
        }
        return 0.0;
    }
    p.field_at(t)
}

fn field_left_limit(p: &PulseProfile, t: f64) -> f64 {
    if p.shape() == PulseShape::Rectangular {
        let dt = t - p.t_center();
        if dt > -0.5 * p.width() && dt <= 0.5 * p.width() {
            return p.peak_field();
        }
        return 0.0;
    }
    p.field_at(t)
}

/// Strictly increasing map between lab time and retarded time; dτ/dt =
/// 1 − c_dir·β > 0 because |β| < 1.
pub struct RetardedTimeMap<'a> {
    traj: &'a Trajectory,
    c_dir: f64,
    tau: Vec<f64>,
}

impl<'a> RetardedTimeMap<'a> {
    pub fn direction_weight(&self) -> f64 {
        self.c_dir
    }

    pub fn tau_range(&self) -> (f64, f64) {
        (self.tau[0], *self.tau.last().unwrap())
    }

    fn rate(&self, i: usize) -> f64 {
        1.0 - self.c_dir * beta_of_u(self.traj.u[i])
    }

    /// τ(t).
    pub fn tau_at(&self, t: f64) -> f64 {
        let ts = &self.traj.t;
        if t <= ts[0] {
            return self.tau[0] + self.rate(0) * (t - ts[0]);
        }
        let last = ts.len() - 1;
        if t >= ts[last] {
            return self.tau[last] + self.rate(last) * (t - ts[last]);
        }
        let i = locate(ts, t);
        hermite(
            t,
            ts[i],
            ts[i + 1],
            self.tau[i],
            self.tau[i + 1],
            self.rate(i),
            self.rate(i + 1),
        )
    }

    /// Inverse map t(τ): a Hermite guess polished by Newton iteration on the
    /// forward map, so the round trip is exact to machine precision.
    pub fn time_at(&self, tau: f64) -> f64 {
        let ts = &self.traj.t;
        if tau <= self.tau[0] {
            return ts[0] + (tau - self.tau[0]) / self.rate(0);
        }
        let last = ts.len() - 1;
        if tau >= self.tau[last] {
            return ts[last] + (tau - self.tau[last]) / self.rate(last);
        }
        let i = locate(&self.tau, tau);
        let mut t = hermite(
            tau,
            self.tau[i],
            self.tau[i + 1],
            ts[i],
            ts[i + 1],
            1.0 / self.rate(i),
            1.0 / self.rate(i + 1),
        );
        let scale = (ts[last] - ts[0]).abs();
        for _ in 0..3 {
            let residual = self.tau_at(t) - tau;
            if residual.abs() < 1e-15 * scale {
                break;
            }
            let rate = 1.0 - self.c_dir * self.traj.velocity(t);
            t -= residual / rate;
        }
        t
    }

    /// dt/dτ at the given retarded time.
    pub fn jacobian(&self, tau: f64) -> f64 {
        let t = self.time_at(tau);
        1.0 / (1.0 - self.c_dir * self.traj.velocity(t))
    }
}

/// Cutoff wavenumber estimators beyond which smooth-pulse emission decays
/// super-polynomially. Both are order-of-magnitude quantities used for grid
/// sizing and scaling tests.
#[derive(Debug, Clone, Copy)]
pub struct CutoffWavenumber {
    /// γ_max² / Δt.
    pub from_pulse_length: f64,
    /// γ_max · q E₀ / m.
    pub from_acceleration: f64,
}

pub fn cutoff_wavenumber(traj: &Trajectory, profile: &PulseProfile) -> CutoffWavenumber {
    let gamma_max = traj.gamma_max();
    let c = traj.constants();
    CutoffWavenumber {
        from_pulse_length: gamma_max * gamma_max / profile.timescale(),
        from_acceleration: gamma_max * c.q * profile.peak_field() / c.m,
    }
}
