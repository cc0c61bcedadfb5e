//! Three dimensions: the connection holds in exactly one z-parity sector,
//! never on the full space.

use spinstat::intertwine::VerdictOptions;
use spinstat::phase::{InvolutionSign, OffsetLambda, SpinLabel};
use spinstat::spectral3d::{obstruction_check, theorem4_verdict};

fn main() -> spinstat::error::Result<()> {
    let opts = VerdictOptions { include_spectra: false, ..Default::default() };
    for s in [InvolutionSign::Plus, InvolutionSign::Minus] {
        for lambda in 0..=1 {
            for twice_sigma in 0..=1 {
                let (sigma, lambda) = (SpinLabel::new(twice_sigma), OffsetLambda::integer(lambda));
                let rep = theorem4_verdict(sigma, lambda, s, &opts)?;
                let full = obstruction_check(sigma, lambda, s, opts.order)?;
                println!(
                    "s = {s}  λ = {lambda}  σ = {:<3}  H+ {:<5}  H- {:<5}  full space {}",
                    sigma.to_string(),
                    rep.verdicts["equiv_plus"],
                    rep.verdicts["equiv_minus"],
                    full.verdicts["full_space_equiv"]
                );
            }
        }
    }
    Ok(())
}
