//! Target-error bounds for a classifier that errs on a fixed set of atoms.

use tradeoff_curves::adaptation::{bound_report, DaInstance};
use tradeoff_curves::dist::DistPair;

fn main() -> tradeoff_curves::Result<()> {
    let pair = DistPair::from_weights(
        vec![0.30, 0.25, 0.20, 0.15, 0.10, 0.0],
        vec![0.05, 0.10, 0.15, 0.20, 0.25, 0.25],
    )?;
    let inst = DaInstance::from_error_atoms(pair, &[4, 5])?;
    let r = bound_report(&inst)?;
    println!("source error {:.4}, target error {:.4}", r.eps_p, r.eps_q);
    println!("TV bound      {:.4}", r.bound_tv);
    println!("Lorenz bound  {:.4}", r.bound_lorenz);
    println!("PR bound      {:.4} at lambda* = {:.4}", r.bound_pr, r.lambda_star);
    println!("PR bound at 1 {:.4}", r.bound_pr_at_one);
    println!("TV = 2(1 - alpha_1): {} = {}", r.tv, 2.0 * (1.0 - r.alpha_1));
    Ok(())
}
