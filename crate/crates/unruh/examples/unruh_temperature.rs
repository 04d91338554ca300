//! The thermal scale of the acceleration: T = a/2pi, its value at the
//! Schwinger acceleration, and how the emission cutoff tracks the
//! gamma-boosted temperature.

use unruh::analysis::{peak_proper_acceleration, unruh_temperature};
use unruh::kinematics::{cutoff_wavenumber, SamplingPolicy, Trajectory};
use unruh::pulse::PulseProfile;
use unruh::units::{Constants, KELVIN_PER_EV};

fn main() {
    let c = Constants::codata();

    let a_schwinger = c.q * c.schwinger_field / c.m; // equals m
    let t = unruh_temperature(a_schwinger);
    println!(
        "at the Schwinger acceleration qE_S/m: T = m/2pi = {:.2} keV = {:.3e} K",
        t / 1e3,
        t * KELVIN_PER_EV
    );

    println!("\ncutoff vs boosted thermal scale, Gaussian pulses (width 1/eV):");
    println!("  gamma   k_cut[eV]   2 pi T gamma [eV]   ratio");
    for gamma in [2.0, 5.0, 10.0, 20.0] {
        let pulse = PulseProfile::gaussian_for_gamma(gamma, 1.0, &c).unwrap();
        let traj = Trajectory::solve(
            &pulse,
            c,
            0.0,
            pulse.default_window(),
            SamplingPolicy::default(),
        )
        .unwrap();
        let kcut = cutoff_wavenumber(&traj, &pulse).from_pulse_length;
        let boosted = 2.0 * std::f64::consts::PI
            * unruh_temperature(peak_proper_acceleration(&pulse, &c))
            * traj.gamma_max();
        println!(
            "  {gamma:5.1}   {kcut:9.2}   {boosted:15.2}   {:7.3}",
            kcut / boosted
        );
    }
    println!("\nthe typical photon energy is the acceleration temperature boosted by gamma");
}
