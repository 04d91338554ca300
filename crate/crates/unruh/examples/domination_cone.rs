//! Solve the quantum-domination cone angle, where the pair amplitude equals
//! the product of Larmor coefficients, and show its scaling with k at
//! moderate velocity and with gamma in the ultra-relativistic regime.

use std::f64::consts::PI;
use unruh::analysis::{domination_angle, ConeDirection, DominationResult};
use unruh::kinematics::{SamplingPolicy, Trajectory};
use unruh::pulse::PulseProfile;
use unruh::units::Constants;

fn main() {
    let c = Constants::codata();

    println!("moderate velocity (gamma_max = 1.1): theta_max^2 ~ (g/q^2) k = k/m");
    let pulse = PulseProfile::gaussian_for_gamma(1.1, 1.0, &c).unwrap();
    let traj = Trajectory::solve(
        &pulse,
        c,
        0.0,
        pulse.default_window(),
        SamplingPolicy::for_max_wavenumber(2.0),
    )
    .unwrap();
    for k in [0.1, 0.2, 0.3, 0.4] {
        match domination_angle(&traj, k, ConeDirection::Forward).unwrap() {
            DominationResult::Cone(cone) => println!(
                "  k = {k:.2} eV: theta_max = {:.3e} rad ({:.3} deg), theta^2 m / k = {:.3}",
                cone.theta_max,
                cone.theta_max * 180.0 / PI,
                cone.theta_max.powi(2) / k * c.m
            ),
            DominationResult::NoCrossing { .. } => println!("  k = {k:.2} eV: no crossing"),
        }
    }

    println!("\nultra-relativistic at fixed E/E_S = 2e-5: theta_max ~ sqrt(E/E_S)/gamma");
    let e0 = 2e-5 * c.schwinger_field;
    for gamma in [5.0, 10.0, 20.0] {
        let u = (gamma * gamma - 1.0f64).sqrt();
        let sigma = u * c.m / (c.q * e0 * (2.0 * PI).sqrt());
        let pulse = PulseProfile::gaussian(e0, sigma, 0.0).unwrap();
        let k_ref = gamma * c.q * e0 / c.m / 3.0;
        let traj = Trajectory::solve(
            &pulse,
            c,
            0.0,
            pulse.default_window(),
            SamplingPolicy::for_max_wavenumber(2.0 * k_ref),
        )
        .unwrap();
        match domination_angle(&traj, k_ref, ConeDirection::Forward).unwrap() {
            DominationResult::Cone(cone) => println!(
                "  gamma = {gamma:4.1}: theta_max = {:.3e} rad, theta_max * gamma = {:.4e}",
                cone.theta_max,
                cone.theta_max * traj.gamma_max()
            ),
            DominationResult::NoCrossing { .. } => println!("  gamma = {gamma}: no crossing"),
        }
    }
}
