//! Spectra of `−i d/dφ` on the cone for several boundary phases, next to
//! the plane and the shifted total operator.

use std::f64::consts::PI;

use num_rational::Rational64;
use spinstat::phase::OffsetLambda;
use spinstat::spectral2d::{cone_spectrum, involution_r, plane_spectrum, total_j_spectrum, ExtensionBC};

fn main() {
    println!("plane: {}", plane_spectrum(3).to_json_array());
    for bc in [
        ExtensionBC::periodic(),
        ExtensionBC::antiperiodic(),
        ExtensionBC::from_pi_fraction(Rational64::new(1, 2)),
        ExtensionBC::new(PI / 3.0),
    ] {
        let r = involution_r(&bc);
        println!(
            "θ/π = {:.4}  involutive {:<5}  cone {}",
            bc.theta_over_pi(),
            r.involutive,
            cone_spectrum(&bc, 3).to_json_array()
        );
    }
    let lambda = OffsetLambda::new(Rational64::new(1, 2));
    let j = total_j_spectrum(&ExtensionBC::periodic(), lambda, 3);
    println!("j at λ = 1/2, θ = 0: {}", j.to_json_array());
}
