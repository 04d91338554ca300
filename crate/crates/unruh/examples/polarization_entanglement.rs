//! Polarization structure of the created pairs: for photons emitted in the
//! same direction, linear polarizations must match and circular
//! polarizations must be opposite. This entanglement pattern tells the
//! pair channel apart from independent Larmor photons.

use unruh::kinematics::{SamplingPolicy, Trajectory};
use unruh::pulse::PulseProfile;
use unruh::radiation::{polarization_pair_matrix, AmplitudeMethod, PolarizationBasis};
use unruh::units::Constants;

fn main() {
    let c = Constants::codata();
    let pulse = PulseProfile::gaussian_for_gamma(1.7, 1.0, &c).unwrap();
    let traj = Trajectory::solve(
        &pulse,
        c,
        0.0,
        pulse.default_window(),
        SamplingPolicy::for_max_wavenumber(3.0),
    )
    .unwrap();

    let dir = (0.8, 0.4, 0.7); // (k, theta, phi)
    for (basis, rows) in [
        (PolarizationBasis::Linear, ["1", "2"]),
        (PolarizationBasis::Circular, ["+", "-"]),
    ] {
        let m = polarization_pair_matrix(&traj, dir, dir, basis, AmplitudeMethod::Retarded)
            .unwrap();
        println!("parallel photons, {basis:?} basis, |V A|:");
        for (i, row) in m.iter().enumerate() {
            println!(
                "  {}:  {:.4e}   {:.4e}",
                rows[i],
                row[0].norm(),
                row[1].norm()
            );
        }
        println!();
    }

    let oblique = (1.1, 1.9, 2.5);
    let m = polarization_pair_matrix(&traj, dir, oblique, PolarizationBasis::Linear, AmplitudeMethod::Retarded)
        .unwrap();
    println!("non-parallel directions mix the channels (linear basis):");
    for row in &m {
        println!("     {:.4e}   {:.4e}", row[0].norm(), row[1].norm());
    }
}
