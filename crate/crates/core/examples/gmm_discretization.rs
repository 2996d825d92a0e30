//! Two 1-D Gaussian mixtures discretized on a shared grid, then compared.

use tradeoff_curves::dist::{discretize_gmm, total_variation, GmmSpec};
use tradeoff_curves::pr::pr_curve_default;

fn main() -> tradeoff_curves::Result<()> {
    let p = GmmSpec::from_triples(&[(0.5, -1.0, 1.0), (0.5, 3.0, 1.0)])?;
    let q = GmmSpec::from_triples(&[(0.5, 1.0, 1.0), (0.5, 6.0, 1.0)])?;
    for grid in [101, 501, 2001] {
        let pair = discretize_gmm(&p, &q, grid, 6.0)?;
        let pr = pr_curve_default(&pair);
        println!(
            "grid {grid:>5}: TV {:.6}, alpha_1 {:.6}, alpha_inf {:.6}, beta_0 {:.6}",
            total_variation(pair.p(), pair.q())?,
            pr.at(1.0).expect("grid contains 1").alpha,
            pr.alpha_at_infinity(),
            pr.beta_at_zero()
        );
    }
    println!("density of P at 0: {:.6}", p.density(0.0));
    Ok(())
}
