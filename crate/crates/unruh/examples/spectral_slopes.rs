//! Spectral power laws below the cutoff and the super-polynomial falloff
//! beyond it, for a smooth pulse at gamma = 12: pair amplitude ~ 1/k^2
//! (probability 1/k^4), Larmor coefficient ~ 1/k^1.5 (pair product 1/k^6).

use unruh::analysis::{power_law_beat_ratio, spectral_slopes, SlopeRequest};
use unruh::kinematics::{SamplingPolicy, Trajectory};
use unruh::pulse::PulseProfile;
use unruh::quadrature::Tolerances;
use unruh::radiation::AmplitudeMethod;
use unruh::units::Constants;

fn main() {
    let c = Constants::codata();
    let pulse = PulseProfile::gaussian_for_gamma(12.0, 1.0, &c).unwrap();
    let k_cut = 12.0f64.powi(2); // gamma^2 / width
    let traj = Trajectory::solve(
        &pulse,
        c,
        0.0,
        pulse.default_window(),
        SamplingPolicy::for_max_wavenumber(8.0 * k_cut),
    )
    .unwrap();
    let theta = 0.2 / traj.gamma_max();

    let k_points: Vec<f64> = (0..12)
        .map(|i| {
            let (lo, hi) = ((k_cut / 50.0f64).ln(), (k_cut / 5.0f64).ln());
            (lo + (hi - lo) * i as f64 / 11.0).exp()
        })
        .collect();
    let slopes = spectral_slopes(
        &traj,
        &SlopeRequest {
            theta,
            k_points,
            method: AmplitudeMethod::Retarded,
            tol: Tolerances::default(),
        },
    )
    .unwrap();

    println!("fit window k in [k_cut/50, k_cut/5], k_cut = {k_cut:.0} eV, theta = {theta:.4}");
    println!("  pair amplitude slope:   {:+.3}  (1/k^2 expected)", slopes.quantum_amplitude.slope);
    println!("  Fourier factor slope:   {:+.3}  (1/k expected)", slopes.quantum_fourier.slope);
    println!("  Larmor coefficient:     {:+.3}  (1/k^1.5 expected)", slopes.larmor_amplitude.slope);

    println!("\nbeyond the cutoff the smooth pulse decays faster than any power:");
    for factor in [1.0, 2.0, 3.0, 4.0] {
        let k_probe = factor * k_cut;
        let beat = power_law_beat_ratio(
            &traj,
            theta,
            &slopes.quantum_amplitude,
            k_probe,
            AmplitudeMethod::Retarded,
        )
        .unwrap();
        println!("  k = {factor:.0} k_cut: power-law extrapolation / actual = {beat:10.1}");
    }
}
