//! Rényi divergences and the order-∞ divergence frontier.
//!
//! At order `∞` the divergence is `log` of the largest density ratio, and the
//! frontier of pairs `(D_∞(μ‖Q), D_∞(μ‖P))` over common components `μ` is the
//! coordinatewise `−log` image of the precision-recall curve.

use serde::Serialize;

use crate::dist::{DiscreteDistribution, DistPair};
use crate::error::{Error, Result};
use crate::pr::{PrCurve, PrPoint};

/// Divergence pair `(π, ρ) = (D(μ‖Q), D(μ‖P))`, tagged with the `λ` it
/// came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrontierPoint {
    pub lambda: f64,
    pub pi: f64,
    pub rho: f64,
}

fn same_len(mu: &DiscreteDistribution, nu: &DiscreteDistribution) -> Result<()> {
    if mu.len() != nu.len() {
        return Err(Error::SupportMismatch(mu.len(), nu.len()));
    }
    Ok(())
}

/// `D_a(μ‖ν)` for `a ∈ [0, ∞]`.
///
/// `a = 1` is the Kullback-Leibler divergence and `a = ∞` is
/// `log max_{μ_i>0} μ_i/ν_i`. If `μ` is not absolutely continuous w.r.t.
/// `ν` the result is `+∞` for `a ≥ 1`. Sums run over `supp μ` only.
pub fn renyi_divergence(mu: &DiscreteDistribution, nu: &DiscreteDistribution, a: f64) -> Result<f64> {
    same_len(mu, nu)?;
    if a.is_nan() || a < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "Renyi order must lie in [0, inf], got {a}"
        )));
    }
    let atoms = || {
        mu.weights()
            .iter()
            .zip(nu.weights())
            .filter(|(&m, _)| m > 0.0)
            .map(|(&m, &n)| (m, n))
    };
    let ac = mu.is_absolutely_continuous(nu);
    let d = if a == f64::INFINITY {
        if !ac {
            f64::INFINITY
        } else {
            atoms().map(|(m, n)| m / n).fold(0.0, f64::max).ln()
        }
    } else if a == 1.0 {
        if !ac {
            f64::INFINITY
        } else {
            atoms().map(|(m, n)| m * (m / n).ln()).sum()
        }
    } else if a > 1.0 && !ac {
        f64::INFINITY
    } else {
        // Terms with ν_i = 0 vanish for a < 1.
        let s: f64 = atoms()
            .filter(|&(_, n)| n > 0.0)
            .map(|(m, n)| m.powf(a) * n.powf(1.0 - a))
            .sum();
        s.ln() / (a - 1.0)
    };
    // D(μ‖μ) evaluates to ±1e-17 through rounding.
    Ok(if d.abs() < 1e-15 { 0.0 } else { d })
}

/// `sup_A μ(A)/ν(A)` over nonempty sets, with `0/0 = 0`.
///
/// Equals `max_{μ_i>0} μ_i/ν_i`, which is `+∞` when some atom of `supp μ`
/// has `ν_i = 0`.
pub fn sup_ratio(mu: &DiscreteDistribution, nu: &DiscreteDistribution) -> Result<f64> {
    same_len(mu, nu)?;
    Ok(mu
        .weights()
        .iter()
        .zip(nu.weights())
        .filter(|(&m, _)| m > 0.0)
        .map(|(&m, &n)| if n > 0.0 { m / n } else { f64::INFINITY })
        .fold(0.0, f64::max))
}

/// `−log x` with `−log 0 = +∞` and no negative zero.
fn neg_log(x: f64) -> f64 {
    if x <= 0.0 {
        f64::INFINITY
    } else {
        let v = -x.ln();
        if v == 0.0 {
            0.0
        } else {
            v
        }
    }
}

/// Maps each curve point `(α_λ, β_λ)` to `(π, ρ) = (−log α_λ, −log β_λ)`.
pub fn frontier_from_pr(pr: &PrCurve) -> Vec<FrontierPoint> {
    pr.points().iter().map(frontier_point).collect()
}

pub fn frontier_point(pt: &PrPoint) -> FrontierPoint {
    FrontierPoint {
        lambda: pt.lambda,
        pi: neg_log(pt.alpha),
        rho: neg_log(pt.beta),
    }
}

/// Inverse map `(π, ρ) ↦ (e^{−π}, e^{−ρ})`.
pub fn pr_from_frontier(pt: &FrontierPoint) -> (f64, f64) {
    ((-pt.pi).exp(), (-pt.rho).exp())
}

/// The largest precision-recall pair witnessed by `μ`:
/// `(e^{−D_∞(μ‖Q)}, e^{−D_∞(μ‖P)})`.
///
/// `μ` must be absolutely continuous w.r.t. both `P` and `Q`.
pub fn pr_pair_for_mu(mu: &DiscreteDistribution, pair: &DistPair) -> Result<(f64, f64)> {
    same_len(mu, pair.p())?;
    for (index, (&m, (p, q))) in mu.weights().iter().zip(pair.atoms()).enumerate() {
        if m > 0.0 && (p == 0.0 || q == 0.0) {
            return Err(Error::NotAbsolutelyContinuous { index });
        }
    }
    let d_q = renyi_divergence(mu, pair.q(), f64::INFINITY)?;
    let d_p = renyi_divergence(mu, pair.p(), f64::INFINITY)?;
    Ok(((-d_q).exp(), (-d_p).exp()))
}

/// The witness `μ_λ ∝ min(λ p_i, q_i)`; `None` when `α_λ = 0`.
pub fn witness_mu(pair: &DistPair, lambda: f64) -> Option<DiscreteDistribution> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return None;
    }
    let w: Vec<f64> = pair.atoms().map(|(p, q)| (lambda * p).min(q)).collect();
    DiscreteDistribution::from_unnormalized(w).ok()
}
