//! Planar verdicts over a small grid: the spin-statistics connection holds
//! exactly when the two angular-momentum spectra agree.

use num_rational::Rational64;
use spinstat::intertwine::{theorem1_verdict, VerdictOptions};
use spinstat::phase::{OffsetLambda, SpinLabel};
use spinstat::spectral2d::ExtensionBC;

fn main() -> spinstat::error::Result<()> {
    let opts = VerdictOptions { include_spectra: false, ..Default::default() };
    println!("{:>5} {:>5} {:>4} {:>5} {:>5} {:>9}", "λ", "σ", "θ", "ssc", "equiv", "residual");
    for lambda in [Rational64::new(0, 1), Rational64::new(1, 2), Rational64::new(1, 1), Rational64::new(3, 2)] {
        for twice_sigma in 0..=2 {
            for bc in [ExtensionBC::periodic(), ExtensionBC::antiperiodic()] {
                let rep = theorem1_verdict(SpinLabel::new(twice_sigma), OffsetLambda::new(lambda), &bc, &opts)?;
                let residual = rep.residuals.get("residual").map(|r| format!("{r:.1e}")).unwrap_or_default();
                println!(
                    "{:>5} {:>5} {:>4} {:>5} {:>5} {:>9}",
                    rep.parameters["lambda"],
                    rep.parameters["sigma"],
                    rep.parameters["theta"],
                    rep.verdicts["ssc"],
                    rep.verdicts["equiv"],
                    residual
                );
                assert!(rep.passed());
            }
        }
    }
    Ok(())
}
