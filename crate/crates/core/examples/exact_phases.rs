//! Statistics phases, the spin-statistics test and the condition triples,
//! all in exact rational arithmetic.

use num_rational::Rational64;
use spinstat::phase::{
    braid_phases, intertwiner_shift, lemma3_conditions, lemma6_conditions, ssc_holds, statistics_phase_2d,
    statistics_phase_3d, ExactPhase, InvolutionSign, OffsetLambda, SectorLabel, SpinLabel,
};

fn main() -> spinstat::error::Result<()> {
    // e^{iπ/2}·e^{iπ/2} = −1, compared without rounding
    let quarter = ExactPhase::pi_times(1, 2);
    assert_eq!(quarter * quarter, ExactPhase::MINUS_ONE);
    println!("e^(iπ/2)² = {}", quarter * quarter);

    println!("\nplanar: λ, σ, R -> κ, ssc, ν");
    for (lambda, twice_sigma, r) in [(0, 0, InvolutionSign::Plus), (1, 1, InvolutionSign::Plus), (1, 1, InvolutionSign::Minus), (2, 1, InvolutionSign::Minus)] {
        let (lambda, sigma) = (OffsetLambda::integer(lambda), SpinLabel::new(twice_sigma));
        let kappa = statistics_phase_2d(lambda, r);
        println!(
            "  {:>3} {:>4} {:>3} -> {:>6} {:>5} {:?}",
            lambda.to_string(),
            sigma.to_string(),
            r.to_string(),
            kappa.to_string(),
            ssc_holds(sigma, kappa),
            intertwiner_shift(lambda, sigma)
        );
    }

    let anyonic = OffsetLambda::new(Rational64::new(1, 3));
    let kappa = statistics_phase_2d(anyonic, InvolutionSign::Plus);
    println!("\nanyons at λ = 1/3: κ = {kappa}");
    for n in 2..=4 {
        let b = braid_phases(n, kappa);
        println!("  n = {n}: relative {}, centre of mass {}, total {}", b.relative, b.center_of_mass, b.total);
    }

    println!("\nplanar triples at λ = 1, σ = 1/2");
    for r in [InvolutionSign::Plus, InvolutionSign::Minus] {
        let t = lemma3_conditions(OffsetLambda::integer(1), SpinLabel::new(1), r);
        println!("  R = {r}: {:?}, two imply third: {}", t.as_array(), t.two_imply_third());
    }

    println!("\nsector triples at λ = 1, σ = 0");
    for s in [InvolutionSign::Plus, InvolutionSign::Minus] {
        println!("  s = {s}: κ = {}", statistics_phase_3d(OffsetLambda::integer(1), s)?);
        for sector in [SectorLabel::Even, SectorLabel::Odd] {
            let t = lemma6_conditions(OffsetLambda::integer(1), SpinLabel::new(0), s, sector)?;
            println!("    {sector}: {:?}", t.as_array());
        }
    }
    Ok(())
}
