//! Domain-adaptation error bounds under covariate shift.
//!
//! A classifier is encoded by its error set over the shared support, so the
//! source and target errors are `ε_P = P(err)` and `ε_Q = Q(err)`. Three
//! upper bounds on `ε_Q` are compared:
//!
//! * the total-variation bound `ε_P + Σ|p − q|`,
//! * the Lorenz bound `1 − F(1 − ε_P)`,
//! * the PR bound `min_λ λ ε_P + 1 − α_λ`, its Legendre dual.

use serde::Serialize;

use crate::dist::{total_variation, DistPair};
use crate::error::{Error, Result};
use crate::lorenz::{lorenz_curve, LorenzCurve};
use crate::pr::{alpha, alpha_slopes, pr_curve_default, PrCurve};
use crate::search::golden_section_max;

/// Slack allowed when checking `ε_Q ≤ bound`.
pub const VALIDITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct DaInstance {
    pair: DistPair,
    error_mask: Vec<bool>,
}

impl DaInstance {
    pub fn new(pair: DistPair, error_mask: Vec<bool>) -> Result<Self> {
        if error_mask.len() != pair.len() {
            return Err(Error::MaskLength {
                mask: error_mask.len(),
                support: pair.len(),
            });
        }
        Ok(Self { pair, error_mask })
    }

    /// Builds the mask from a list of misclassified atom indices.
    pub fn from_error_atoms(pair: DistPair, atoms: &[usize]) -> Result<Self> {
        let mut mask = vec![false; pair.len()];
        for &index in atoms {
            if index >= pair.len() {
                return Err(Error::MaskIndex {
                    index,
                    support: pair.len(),
                });
            }
            mask[index] = true;
        }
        Self::new(pair, mask)
    }

    pub fn pair(&self) -> &DistPair {
        &self.pair
    }

    pub fn error_mask(&self) -> &[bool] {
        &self.error_mask
    }
}

/// `(ε_P, ε_Q)`.
pub fn source_target_errors(inst: &DaInstance) -> (f64, f64) {
    (
        inst.pair.p().mass_of(&inst.error_mask).min(1.0),
        inst.pair.q().mass_of(&inst.error_mask).min(1.0),
    )
}

/// `ε_P + Σ|p − q|`, unclipped. Values above 1 say nothing.
pub fn bound_tv(inst: &DaInstance) -> f64 {
    let (eps_p, _) = source_target_errors(inst);
    // Same support length by construction.
    eps_p + total_variation(inst.pair.p(), inst.pair.q()).unwrap_or(2.0)
}

/// `1 − F(1 − ε_P)` for the Lorenz curve of the instance's pair.
pub fn bound_lorenz(inst: &DaInstance, curve: &LorenzCurve) -> f64 {
    let (eps_p, _) = source_target_errors(inst);
    let t = (1.0 - eps_p).clamp(0.0, 1.0);
    1.0 - curve.eval_unchecked(t)
}

/// `λ ε_P + 1 − α_λ`, the PR bound at a fixed `λ`.
pub fn bound_pr_at(inst: &DaInstance, lambda: f64) -> f64 {
    let (eps_p, _) = source_target_errors(inst);
    lambda * eps_p + 1.0 - alpha(&inst.pair, lambda)
}

/// The PR bound at the optimal `λ* = argmax_λ α_λ − λ ε_P`.
///
/// The objective is concave and piecewise linear. The best grid point of
/// `pr` gives a bracket (extended by doubling past the last grid value), and
/// golden-section search refines inside it. `α_λ` is evaluated exactly
/// from the instance, not interpolated from `pr`.
///
/// With `ε_P = 0` the supremum `α_∞` is reached at the largest finite
/// likelihood ratio, which is returned as `λ*`.
pub fn bound_pr_optimal(inst: &DaInstance, pr: &PrCurve) -> (f64, f64) {
    let (eps_p, _) = source_target_errors(inst);
    let pair = &inst.pair;
    if eps_p == 0.0 {
        let lambda = pair
            .atoms()
            .filter(|&(p, q)| p > 0.0 && q > 0.0)
            .map(|(p, q)| q / p)
            .fold(0.0, f64::max);
        return (1.0 - alpha(pair, f64::INFINITY), lambda);
    }
    let objective = |lambda: f64| alpha(pair, lambda) - lambda * eps_p;

    let grid: Vec<f64> = pr
        .points()
        .iter()
        .map(|pt| pt.lambda)
        .filter(|l| l.is_finite())
        .collect();
    let values: Vec<f64> = grid.iter().map(|&l| objective(l)).collect();
    let mut k = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[k] {
            k = i;
        }
    }
    let mut best = (values[k], grid[k]);

    let lo = if k == 0 { grid[0] } else { grid[k - 1] };
    let hi = if k + 1 < grid.len() {
        grid[k + 1]
    } else {
        // Past the grid: double until the objective turns down.
        let (mut prev, mut hi) = (grid[k], grid[k].max(1.0) * 2.0);
        let mut prev_value = values[k];
        loop {
            let v = objective(hi);
            if v < prev_value || hi > 1e300 {
                break;
            }
            prev = hi;
            prev_value = v;
            hi *= 2.0;
        }
        if prev_value > best.0 {
            best = (prev_value, prev);
        }
        hi
    };
    let tol = 1e-12 * hi.max(1.0);
    let m = golden_section_max(objective, lo, hi, tol);
    if m.value > best.0 {
        best = (m.value, m.x);
    }
    let (value, lambda) = best;
    (1.0 - value, lambda)
}

/// Interval `[right, left]` of one-sided derivatives of `λ ↦ α_λ`, widened
/// by relative `slack` in `λ`. At an optimal `λ*`, `ε_P` lies inside.
pub fn alpha_superdifferential(pair: &DistPair, lambda: f64, slack: f64) -> (f64, f64) {
    let (_, right) = alpha_slopes(pair, lambda * (1.0 + slack));
    let (left, _) = alpha_slopes(pair, lambda * (1.0 - slack));
    (right, left)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Informative {
    pub tv: bool,
    pub lorenz: bool,
    pub pr: bool,
    pub pr_at_one: bool,
}

/// Side-by-side comparison of the bounds for one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub eps_p: f64,
    pub eps_q: f64,
    pub tv: f64,
    pub alpha_1: f64,
    pub bound_tv: f64,
    pub bound_tv_clipped: f64,
    pub bound_lorenz: f64,
    pub bound_pr: f64,
    pub lambda_star: f64,
    pub bound_pr_at_one: f64,
    pub informative: Informative,
}

/// Computes every bound and checks that `ε_Q` lies below each.
///
/// Fails with [`Error::BoundViolation`] if a bound is exceeded by more than
/// `VALIDITY_TOL`.
pub fn bound_report(inst: &DaInstance) -> Result<BoundReport> {
    let (eps_p, eps_q) = source_target_errors(inst);
    let tv = total_variation(inst.pair.p(), inst.pair.q())?;
    let curve = lorenz_curve(&inst.pair);
    let pr = pr_curve_default(&inst.pair);
    let b_tv = bound_tv(inst);
    let b_lorenz = bound_lorenz(inst, &curve);
    let (b_pr, lambda_star) = bound_pr_optimal(inst, &pr);
    let b_one = bound_pr_at(inst, 1.0);
    let report = BoundReport {
        eps_p,
        eps_q,
        tv,
        alpha_1: alpha(&inst.pair, 1.0),
        bound_tv: b_tv,
        bound_tv_clipped: b_tv.min(1.0),
        bound_lorenz: b_lorenz,
        bound_pr: b_pr,
        lambda_star,
        bound_pr_at_one: b_one,
        informative: Informative {
            tv: b_tv < 1.0,
            lorenz: b_lorenz < 1.0,
            pr: b_pr < 1.0,
            pr_at_one: b_one < 1.0,
        },
    };
    for (name, bound) in [
        ("tv", b_tv),
        ("lorenz", b_lorenz),
        ("pr", b_pr),
        ("pr_at_one", b_one),
    ] {
        if eps_q > bound + VALIDITY_TOL {
            return Err(Error::BoundViolation(format!(
                "eps_q = {eps_q} exceeds the {name} bound {bound}"
            )));
        }
    }
    Ok(report)
}
