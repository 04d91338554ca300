//! Analytic check of the pair-amplitude machinery: a scatterer at rest with
//! a Gaussian coupling window has a closed-form amplitude (the Gaussian
//! Fourier transform), compared here against both integration methods.

use num_complex::Complex64;
use std::f64::consts::PI;
use unruh::kinematics::Trajectory;
use unruh::radiation::{
    polarization_product, unruh_amplitude_with, AmplitudeMethod, AmplitudeOptions, GaussianWindow,
    PhotonMode, PolarizationLabel,
};
use unruh::units::Constants;

fn main() {
    let c = Constants::codata();
    let traj = Trajectory::from_velocity_profile(|_| 0.0, c, (-12.0, 12.0), 64).unwrap();
    let window = GaussianWindow {
        sigma: 1.0,
        center: 0.0,
    };
    let opts = AmplitudeOptions {
        coupling_window: Some(window),
        ..Default::default()
    };

    println!("     k      k'    |V A| numeric   |V A| analytic   rel err (time)  rel err (ret)");
    for &(k1, k2) in &[(0.1, 0.1), (0.3, 0.5), (0.6, 0.6), (0.9, 0.2), (1.2, 1.0)] {
        let m1 = PhotonMode::new(k1, 0.7, 0.0, PolarizationLabel::Linear1).unwrap();
        let m2 = PhotonMode::new(k2, 1.2, 0.5, PolarizationLabel::Linear1).unwrap();
        let omega = k1 + k2;
        let analytic = polarization_product(&m1, &m2) * c.g * window.sigma * (2.0 * PI).sqrt()
            * (-0.5 * window.sigma * window.sigma * omega * omega).exp()
            / (Complex64::new(0.0, 2.0) * (k1 * k2).sqrt());
        let mut rels = Vec::new();
        let mut numeric = Complex64::default();
        for method in [AmplitudeMethod::TimeDomain, AmplitudeMethod::Retarded] {
            numeric = unruh_amplitude_with(&traj, &m1, &m2, method, &opts)
                .unwrap()
                .value;
            rels.push((numeric - analytic).norm() / analytic.norm());
        }
        println!(
            "  {k1:.2}   {k2:.2}   {:.8e}   {:.8e}   {:.1e}        {:.1e}",
            numeric.norm(),
            analytic.norm(),
            rels[0],
            rels[1]
        );
    }
}
