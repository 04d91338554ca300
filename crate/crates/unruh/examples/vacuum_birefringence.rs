//! Euler-Heisenberg response at strong backgrounds: the permittivity tensor
//! against its finite-difference oracle, and the forward polarization
//! leakage that opens the Larmor blind spot when a perpendicular magnetic
//! field is present.

use unruh::units::Constants;
use unruh::vacuum::{
    corrected_polarization, eh_lagrangian, forward_leakage, forward_leakage_from_constitutive,
    permittivity, permittivity_finite_difference, BackgroundField,
};

fn main() {
    let c = Constants::codata();
    let es = c.schwinger_field;

    let bg_e = BackgroundField::pure_electric([0.0, 0.0, es]);
    println!(
        "L(E_S z, 0) = {:.6e} eV^4 (free part {:.6e})",
        eh_lagrangian(bg_e.e0, bg_e.b0, &c),
        0.5 * es * es
    );

    let eps = permittivity(&bg_e, &c);
    let fd = permittivity_finite_difference(&bg_e, &c);
    println!("\npermittivity at E0 = E_S z (closed form | finite differences):");
    for i in 0..3 {
        println!(
            "  {:+.9e} {:+.9e} {:+.9e}  |  {:+.9e} {:+.9e} {:+.9e}",
            eps.eps[i][0], eps.eps[i][1], eps.eps[i][2], fd.eps[i][0], fd.eps[i][1], fd.eps[i][2]
        );
    }

    let crossed = BackgroundField {
        e0: [0.0, 0.0, es],
        b0: [es, 0.0, 0.0],
    };
    let k = 1.0;
    let closed = forward_leakage(k, &crossed, &c).unwrap();
    let full = forward_leakage_from_constitutive(k, &crossed, &c).unwrap();
    println!("\nforward leakage per unit k at E0 = B0 = E_S (k || E0, B0 perpendicular):");
    println!("  closed form   : leaking {:.6e}, blind {:.1e}", closed.leaking, closed.blind);
    println!("  constitutive  : leaking {:.6e}, blind {:.1e}", full.leaking, full.blind);
    println!("  (4 alpha / 45 pi = {:.6e})", 4.0 * c.alpha_qed / (45.0 * std::f64::consts::PI));

    let cp = corrected_polarization([0.0, 0.0, 1.0], &bg_e, &c);
    println!(
        "\nmotion along a pure E background keeps the free forward basis: e1 = {:?}, e2 = {:?}",
        cp.e1, cp.e2
    );
}
