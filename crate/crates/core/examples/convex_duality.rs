//! α recovered from the Lorenz curve through its convex conjugate, and the
//! Lorenz curve rebuilt from a PR curve.

use tradeoff_curves::dist::DistPair;
use tradeoff_curves::duality::{
    alpha_by_bisection, alpha_by_golden_section, alpha_from_lorenz, legendre, lorenz_curve_from_pr,
};
use tradeoff_curves::lorenz::lorenz_curve;
use tradeoff_curves::pr::{default_lambda_grid, pr_curve, pr_point_direct, ratio_augmented_grid};

fn main() -> tradeoff_curves::Result<()> {
    let pair = DistPair::from_weights(vec![0.4, 0.1, 0.3, 0.2, 0.0], vec![0.1, 0.1, 0.3, 0.2, 0.3])?;
    let curve = lorenz_curve(&pair);
    for lambda in [0.25, 1.0, 3.0] {
        let direct = pr_point_direct(&pair, lambda)?.alpha;
        println!(
            "lambda {lambda}: direct {direct:.12}, lambda - F* {:.12}, bisection {:.12}, golden {:.12}, F* = {:.6}",
            alpha_from_lorenz(&curve, lambda)?,
            alpha_by_bisection(&curve, lambda)?.alpha,
            alpha_by_golden_section(&curve, lambda)?.alpha,
            legendre(&curve, lambda)?,
        );
    }

    let grid = ratio_augmented_grid(&pair, &default_lambda_grid(201));
    let rebuilt = lorenz_curve_from_pr(&pr_curve(&pair, &grid)?)?;
    for &(t, f) in curve.breakpoints() {
        println!("t {t:.2}: F {f:.12}, rebuilt {:.12}", rebuilt.eval(t)?);
    }
    Ok(())
}
