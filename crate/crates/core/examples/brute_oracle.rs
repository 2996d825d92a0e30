//! Closed forms checked against subset enumeration, plus a short seeded
//! verification run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tradeoff_curves::dist::DistPair;
use tradeoff_curves::lorenz::lorenz_curve;
use tradeoff_curves::oracle::{oracle_alpha, oracle_lorenz, oracle_soft_f_domination, oracle_sup_ratio};
use tradeoff_curves::verify::{run_verification, VerifyConfig};

fn main() -> tradeoff_curves::Result<()> {
    let pair = DistPair::from_weights(vec![0.5, 0.2, 0.2, 0.1, 0.0], vec![0.1, 0.2, 0.3, 0.0, 0.4])?;
    println!("{}", oracle_alpha(&pair, 0.7)?);
    println!("{}", oracle_sup_ratio(pair.p(), pair.q())?);
    println!("{}", oracle_lorenz(&pair, &lorenz_curve(&pair), 0.5)?);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    println!("{}", oracle_soft_f_domination(&pair, 1.0, 100, &mut rng)?);

    let summary = run_verification(&VerifyConfig {
        seed: 7,
        instances: 100,
        ..VerifyConfig::default()
    })?;
    println!("{} instances, {} checks, {} violations", summary.instances, summary.checks, summary.violations.len());
    Ok(())
}
