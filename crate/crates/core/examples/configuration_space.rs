//! Two particles in the plane and in space: centre-of-mass split, the cone
//! chart, and winding numbers of exchange loops.

use spinstat::geometry::{chart_fold, com_split, exchange_winding, holonomy_phase, validate_config, ExchangePath};
use spinstat::phase::ExactPhase;

fn main() -> spinstat::error::Result<()> {
    let pair = validate_config(vec![vec![3.0, 1.0], vec![-1.0, 4.0]], 2)?;
    let split = com_split(&pair)?;
    println!("split of {:?}: {:?}", pair.points(), split);
    println!("chart point: {}", split.chart_point()?);

    // v and −v land on the same chart point
    for v in [[1.0, 2.0], [-1.0, -2.0], [0.0, -3.0]] {
        println!("fold {v:?} -> {}", chart_fold(&v)?);
    }
    println!("fold [0, 0, -1] -> {}", chart_fold(&[0.0, 0.0, -1.0])?);

    let kappa = ExactPhase::pi_times(1, 4);
    for w in [-2, -1, 1, 3] {
        let path = ExchangePath::circle(1.0, 0.3, w, 24);
        let found = exchange_winding(&path)?;
        println!("loop of {w:>2} half turns: winding {found:>2}, holonomy {}", holonomy_phase(found, kappa));
    }

    let out = ExchangePath::circle(1.0, 0.0, 1, 16);
    let back = out.reversed();
    println!("there and back: {}", exchange_winding(&out.concat(&back)?)?);
    Ok(())
}
