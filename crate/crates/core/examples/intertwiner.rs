//! The map `U_ν` from cone states to plane states: unitarity, the mode
//! shift `m -> 2m − ν`, and the intertwining relation for admissible ν.

use spinstat::intertwine::{
    angle_grid, apply_u_modes, intertwining_residual, plane_test_set, unitarity_residual, IntertwinerSpec, TestSetKind,
};
use spinstat::spectral2d::{AngularDomain, AngularWaveFunction, ExtensionBC};

fn main() -> spinstat::error::Result<()> {
    let tests = plane_test_set(TestSetKind::BandLimited, 6, 16, 128, 3)?;
    let angles = angle_grid(16);
    for bc in [ExtensionBC::periodic(), ExtensionBC::antiperiodic()] {
        let r = bc.require_involutive()?;
        for nu in -2..=2 {
            let spec = IntertwinerSpec::planar(nu);
            let res = intertwining_residual(&spec, &bc, &tests, &angles)?;
            println!(
                "R = {r}  ν = {nu:>2}  admissible {:<5}  residual {:.2e}  unitarity {:.1e}",
                spec.admissible(r),
                res.residual,
                unitarity_residual(&spec, &tests)?
            );
        }
    }

    let spec = IntertwinerSpec::planar(1);
    let bc = ExtensionBC::antiperiodic();
    let cone = AngularDomain::Cone2D(bc);
    for m in -2..=2 {
        let image = apply_u_modes(&spec, &AngularWaveFunction::mode(AngularDomain::Plane, 2, m), &bc)?;
        let (k, c) = image.modes().find(|(_, c)| c.norm() > 1e-12).expect("one mode");
        println!("ν = 1: plane mode {m:>2} -> cone eigenvalue {:>2} (2m - ν = {:>2}), weight {:.4}", cone.eigenvalue(k), spec.mode_image(m), c.norm());
    }
    Ok(())
}
