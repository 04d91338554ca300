//! Solve the 1D relativistic motion in a 0.3-attosecond Gaussian pulse tuned
//! to reach gamma = 2 from rest, and print worldline milestones.

use unruh::kinematics::{cutoff_wavenumber, SamplingPolicy, Trajectory};
use unruh::pulse::PulseProfile;
use unruh::units::{Constants, Unit};

fn main() {
    let c = Constants::codata();
    let sigma = c.to_natural(0.3, Unit::Attosecond).unwrap();
    let pulse = PulseProfile::gaussian_for_gamma(2.0, sigma, &c).unwrap();

    println!(
        "pulse: sigma = {:.3e} 1/eV (0.3 as), peak field = {:.3e} eV^2 = {:.3e} of E_S",
        sigma,
        pulse.peak_field(),
        pulse.peak_field() / c.schwinger_field
    );

    let traj = Trajectory::solve(
        &pulse,
        c,
        0.0,
        pulse.default_window(),
        SamplingPolicy::default(),
    )
    .unwrap();

    println!("\n      t/sigma      beta        gamma       z [1/eV]");
    for i in -4..=4 {
        let t = i as f64 * 2.0 * sigma;
        println!(
            "  {:10.1}  {:10.6}  {:10.6}  {:12.4e}",
            t / sigma,
            traj.velocity(t),
            traj.gamma(t),
            traj.position(t)
        );
    }

    let kcut = cutoff_wavenumber(&traj, &pulse);
    println!("\ngamma_max = {:.6}", traj.gamma_max());
    println!(
        "cutoff wavenumber: gamma^2/dt = {:.2} keV, gamma q E0/m = {:.2} keV",
        kcut.from_pulse_length / 1e3,
        kcut.from_acceleration / 1e3
    );
}
