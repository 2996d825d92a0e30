//! Order-∞ Rényi divergence and the frontier traced by the PR curve.

use tradeoff_curves::dist::DistPair;
use tradeoff_curves::pr::pr_curve_default;
use tradeoff_curves::renyi::{frontier_from_pr, pr_pair_for_mu, renyi_divergence, witness_mu};

fn main() -> tradeoff_curves::Result<()> {
    let pair = DistPair::from_weights(vec![0.6, 0.3, 0.1], vec![0.2, 0.3, 0.5])?;
    for a in [0.5, 1.0, 2.0, f64::INFINITY] {
        println!("D_{a}(P || Q) = {:.6}", renyi_divergence(pair.p(), pair.q(), a)?);
    }

    let pr = pr_curve_default(&pair);
    for f in frontier_from_pr(&pr).iter().step_by(40) {
        println!("lambda {:>10.4}  D(mu||P) <= {:.6}  D(mu||Q) <= {:.6}", f.lambda, f.pi, f.rho);
    }

    // The witness at λ attains the PR point.
    let mu = witness_mu(&pair, 1.0).expect("supports overlap");
    let (a, b) = pr_pair_for_mu(&mu, &pair)?;
    let pt = pr.at(1.0).expect("grid contains 1");
    println!("witness at 1: ({a:.6}, {b:.6}) vs curve ({:.6}, {:.6})", pt.alpha, pt.beta);
    Ok(())
}
