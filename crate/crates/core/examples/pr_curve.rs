//! PR curve of a small pair on the default grid, and both formulations at λ = 1.

use tradeoff_curves::dist::DistPair;
use tradeoff_curves::pr::{pr_curve_default, pr_point_direct, pr_point_via_sets, prd_membership};

fn main() -> tradeoff_curves::Result<()> {
    let pair = DistPair::from_weights(vec![0.5, 0.3, 0.2, 0.0], vec![0.1, 0.3, 0.2, 0.4])?;
    let pr = pr_curve_default(&pair);
    println!("alpha_inf = Q(supp P) = {}", pr.alpha_at_infinity());
    println!("beta_0    = P(supp Q) = {}", pr.beta_at_zero());
    for pt in pr.points().iter().step_by(25) {
        println!("lambda {:>12.6} alpha {:.6} beta {:.6}", pt.lambda, pt.alpha, pt.beta);
    }

    let direct = pr_point_direct(&pair, 1.0)?;
    let sets = pr_point_via_sets(&pair, 1.0)?;
    println!("lambda 1: direct ({}, {}), ratio set ({}, {})", direct.alpha, direct.beta, sets.alpha, sets.beta);
    println!("(0.3, 0.3) in PRD: {}", prd_membership(&pair, 0.3, 0.3)?);
    println!("(0.9, 0.9) in PRD: {}", prd_membership(&pair, 0.9, 0.9)?);
    Ok(())
}
