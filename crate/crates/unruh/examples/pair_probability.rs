//! Mode-sum probabilities: total pair emission into the domination cones
//! with its polarization-channel breakdown, the single-photon Larmor
//! expectation, and the field-strength power laws.

use unruh::analysis::{pair_probability, single_photon_probability, ProbabilityOptions};
use unruh::kinematics::{cutoff_wavenumber, SamplingPolicy, Trajectory};
use unruh::pulse::PulseProfile;
use unruh::units::Constants;

fn main() {
    let c = Constants::codata();
    // demo-grade orders; the acceptance suite runs the heavier versions
    let opts = ProbabilityOptions {
        k_order: 12,
        theta_order: 3,
        estimate_error: false,
        ..Default::default()
    };

    println!("field sweep at fixed shape (width = 1/eV), cones theta < sqrt(E/E_S)/gamma:");
    println!("   E/E_S      gamma    k_max[eV]   P(pair)      P(single)");
    let mut previous: Option<(f64, f64, f64)> = None;
    for e_frac in [4e-6, 8e-6, 1.6e-5] {
        let e0 = e_frac * c.schwinger_field;
        let pulse = PulseProfile::gaussian(e0, 1.0, 0.0).unwrap();
        let probe = Trajectory::solve(&pulse, c, 0.0, pulse.default_window(), SamplingPolicy::default()).unwrap();
        let k_max = cutoff_wavenumber(&probe, &pulse).from_acceleration / 3.0;
        let traj = Trajectory::solve(
            &pulse,
            c,
            0.0,
            pulse.default_window(),
            SamplingPolicy::for_max_wavenumber(2.0 * k_max),
        )
        .unwrap();
        let theta_max = e_frac.sqrt() / traj.gamma_max();
        let pair = pair_probability(&traj, theta_max, k_max, &opts).unwrap();
        let single = single_photon_probability(&traj, theta_max, k_max, &opts).unwrap();
        print!(
            "  {e_frac:8.1e}  {:7.2}  {k_max:9.2}   {:.3e}   {:.3e}",
            traj.gamma_max(),
            pair.value,
            single
        );
        if let Some((pe, pp, ps)) = previous {
            let r = e_frac / pe;
            print!(
                "   (x{:.2} field: pair x{:.1} ~ x{:.1}, single x{:.1} ~ x{:.1})",
                r,
                pair.value / pp,
                r.powi(4),
                single / ps,
                r.powi(2)
            );
        }
        println!();
        previous = Some((e_frac, pair.value, single));
        if e_frac == 1.6e-5 {
            println!("\n  polarization channels at the last point (lambda, lambda'):");
            for (label, value) in [("(1,1)", 0), ("(1,2)", 1), ("(2,1)", 2), ("(2,2)", 3)]
                .map(|(l, i)| (l, pair.channels[i]))
            {
                println!("    {label}: {value:.3e}");
            }
        }
    }
}
