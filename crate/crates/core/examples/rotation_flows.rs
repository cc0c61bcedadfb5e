//! The rotation group on the cone, once in modes and once by transporting
//! samples across the glued boundary.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spinstat::intertwine::random_band_limited;
use spinstat::spectral2d::{flow_discrepancy, rotate_transport, AngularDomain, ExtensionBC};

fn main() -> spinstat::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for bc in [ExtensionBC::periodic(), ExtensionBC::antiperiodic()] {
        let psi = random_band_limited(AngularDomain::Cone2D(bc), 8, &mut rng);
        let worst = [0.1, 0.7, PI / 2.0, 2.0, PI, 5.0]
            .iter()
            .map(|&a| flow_discrepancy(&psi, a, 64))
            .collect::<spinstat::error::Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!("θ/π = {}: largest flow gap {worst:.2e}", bc.theta_over_pi());

        // rotating by the chart length crosses the boundary once
        let samples = psi.to_samples(64)?;
        let turned = rotate_transport(&samples, PI, &bc)?;
        let sign = bc.boundary_phase().re;
        println!("  rotation by π equals {sign:+} times identity: {:.2e}", turned.sup_distance(&samples.scaled(sign.into()))?);
    }
    Ok(())
}
