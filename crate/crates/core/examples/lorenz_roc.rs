//! Lorenz curve, its slopes, and the reflected ROC curve.

use tradeoff_curves::dist::DistPair;
use tradeoff_curves::lorenz::{lorenz_curve, roc_curve};

fn main() -> tradeoff_curves::Result<()> {
    let pair = DistPair::from_weights(vec![0.4, 0.1, 0.3, 0.2, 0.0], vec![0.1, 0.1, 0.3, 0.2, 0.3])?;
    let curve = lorenz_curve(&pair);
    println!("Lorenz breakpoints (t, F):");
    for (&(t, f), s) in curve.breakpoints().iter().skip(1).zip(curve.slopes()) {
        println!("  ({t:.3}, {f:.3})  slope before = {s}");
    }
    println!("F(0.5) = {}", curve.eval(0.5)?);
    let (lo, hi) = curve.subdifferential(0.5)?;
    println!("subdifferential at 0.5 = [{lo}, {hi}]");
    println!("ROC:");
    for (x, y) in roc_curve(&curve) {
        println!("  ({x:.3}, {y:.3})");
    }
    Ok(())
}
