//! Which two-particle bound states survive exchange symmetry, their
//! z-parity sector, and a numerical check of the parity of `Y_lm`.

use spinstat::spectral3d::{bound_state_classify, ylm_parity_check, BoundStateLabel, Exchange};

fn main() -> spinstat::error::Result<()> {
    for exchange in [Exchange::Bose, Exchange::Fermi] {
        println!("{exchange}:");
        for l in 0..=3 {
            for m in -l..=l {
                let class = bound_state_classify(BoundStateLabel::new(l, m, exchange)?);
                if !class.allowed {
                    continue;
                }
                let check = ylm_parity_check(l as u32, m as i32, 24, 48)?;
                println!(
                    "  l={l} m={m:>2}  sector {}  granted {:<5}  Lz {:<5}  |Y(-z) - {:+}Y| = {:.1e}",
                    class.sector.map(|s| s.to_string()).unwrap_or_default(),
                    class.in_granted_sector,
                    class.lz_eigenvalue.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                    check.parity,
                    check.residual
                );
            }
        }
    }
    Ok(())
}
