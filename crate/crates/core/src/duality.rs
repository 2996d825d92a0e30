//! Legendre duality between Lorenz and precision-recall curves.
//!
//! The conjugate of the Lorenz curve is `F*(λ) = sup_t λt − F(t) = λ − α_λ`.
//! So `α_λ` is recovered from `F` by the 1-D convex problem
//! `min_t F(t) + λ(1 − t)`, and `F` from the PR curve by the concave problem
//! `sup_λ α_λ + λ(t − 1)`.
//!
//! `F` is exactly piecewise linear, so the conjugate is computed exactly over
//! breakpoints. Two solver paths, bisection on the subdifferential and
//! golden-section search, are kept alongside as independent checks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lorenz::LorenzCurve;
use crate::pr::{PrCurve, PrPoint};
use crate::search::{bisect_index, golden_section_min};

/// Target accuracy of the golden-section path on the objective value.
pub const GOLDEN_VALUE_TOL: f64 = 1e-9;

/// Golden-section tolerance on `t` before scaling by the objective's
/// Lipschitz constant.
pub const GOLDEN_T_TOL: f64 = 1e-8;

fn check_finite_lambda(lambda: f64) -> Result<()> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "conjugate needs finite lambda >= 0, got {lambda}"
        )));
    }
    Ok(())
}

/// `F*(λ) = max_k λ t_k − F(t_k)`, exact for piecewise-linear `F`.
pub fn legendre(curve: &LorenzCurve, lambda: f64) -> Result<f64> {
    check_finite_lambda(lambda)?;
    Ok(curve
        .breakpoints()
        .iter()
        .map(|&(t, f)| lambda * t - f)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// The conjugate `F*` as a piecewise-linear function of `λ ≥ 0`.
///
/// On `[s_{k−1}, s_k]` (consecutive segment slopes of `F`) it equals
/// `λ t_k − F(t_k)`, so its knots are the slopes of `F` and its own slopes
/// are the abscissas `t_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjugateCurve {
    knots: Vec<f64>,
    t: Vec<f64>,
    f: Vec<f64>,
}

impl ConjugateCurve {
    pub fn from_lorenz(curve: &LorenzCurve) -> Self {
        let (t, f) = curve.breakpoints().iter().copied().unzip();
        Self {
            knots: curve.slopes().to_vec(),
            t,
            f,
        }
    }

    /// Slopes of `F`, where `F*` changes slope.
    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn eval(&self, lambda: f64) -> Result<f64> {
        check_finite_lambda(lambda)?;
        let k = self.knots.partition_point(|&s| s < lambda);
        Ok(lambda * self.t[k] - self.f[k])
    }

    /// `t_λ`, the slope of `F*` just right of `λ`.
    pub fn argmax_t(&self, lambda: f64) -> f64 {
        self.t[self.knots.partition_point(|&s| s <= lambda)]
    }
}

/// `α_λ = λ − F*(λ)`. At `λ = ∞` returns `F(1) = Q(supp P)`.
pub fn alpha_from_lorenz(curve: &LorenzCurve, lambda: f64) -> Result<f64> {
    if lambda == f64::INFINITY {
        return Ok(curve.end_value());
    }
    Ok(lambda - legendre(curve, lambda)?)
}

/// A solver's answer to `min_t F(t) + λ(1 − t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolvedAlpha {
    pub alpha: f64,
    /// Minimizing abscissa `t_λ`.
    pub t: f64,
}

/// Bisection over the breakpoints on the condition `λ ∈ ∂F(t)`.
///
/// Moving right across segment `k` changes the objective by
/// `(s_k − λ)·Δt`, so the minimizer is the breakpoint preceding the first
/// segment with `s_k ≥ λ`. Exact.
pub fn alpha_by_bisection(curve: &LorenzCurve, lambda: f64) -> Result<SolvedAlpha> {
    check_finite_lambda(lambda)?;
    let slopes = curve.slopes();
    let k = bisect_index(slopes.len(), |i| slopes[i] >= lambda);
    let (t, f) = curve.breakpoints()[k];
    Ok(SolvedAlpha {
        alpha: f + lambda * (1.0 - t),
        t,
    })
}

/// Derivative-free golden-section search on `t ↦ F(t) + λ(1 − t)`.
///
/// The tolerance on `t` is `GOLDEN_T_TOL` divided by the objective's
/// Lipschitz constant, so the value error stays near `GOLDEN_VALUE_TOL`
/// even for steep segments.
pub fn alpha_by_golden_section(curve: &LorenzCurve, lambda: f64) -> Result<SolvedAlpha> {
    check_finite_lambda(lambda)?;
    let steepest = curve.slopes().iter().copied().fold(0.0, f64::max);
    let lipschitz = lambda.max(steepest).max(1.0);
    let tol = (GOLDEN_T_TOL * GOLDEN_VALUE_TOL / lipschitz).max(1e-16);
    let m = golden_section_min(
        |t| curve.eval_unchecked(t) + lambda * (1.0 - t),
        0.0,
        1.0,
        tol,
    );
    Ok(SolvedAlpha {
        alpha: m.value,
        t: m.x,
    })
}

/// Subdifferential of `F` at `t`; the `λ` values whose ratio set has
/// `P(A_λ) = t`.
pub fn lambda_from_t(curve: &LorenzCurve, t: f64) -> Result<(f64, f64)> {
    curve.subdifferential(t)
}

/// `F(t) ≈ sup_λ α_λ + λ(t − 1)` over the curve's `λ` values, with the
/// maximizing `λ`.
///
/// This is a lower bound on `F(t)` that is exact once the grid contains a
/// slope of `F` at `t`. The `λ = ∞` endpoint contributes `α_∞` at `t = 1`
/// and nothing elsewhere.
pub fn lorenz_from_pr(pr: &PrCurve, t: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!(
            "Lorenz abscissa must lie in [0, 1], got {t}"
        )));
    }
    let mut best = (f64::NEG_INFINITY, 0.0);
    for pt in pr.points() {
        let v = if pt.lambda == f64::INFINITY {
            if t == 1.0 {
                pt.alpha
            } else {
                continue;
            }
        } else if pt.lambda == 0.0 {
            pt.alpha
        } else {
            pt.alpha + pt.lambda * (t - 1.0)
        };
        if v > best.0 {
            best = (v, pt.lambda);
        }
    }
    Ok(best)
}

/// Lorenz curve reconstructed from a sampled PR curve: the upper envelope of
/// the lines `t ↦ α_λ + λ(t − 1)` over finite grid `λ`.
///
/// Grid-limited: it lies below the true curve and meets it at every
/// breakpoint whose slope interval contains a grid value.
pub fn lorenz_curve_from_pr(pr: &PrCurve) -> Result<LorenzCurve> {
    // (slope, intercept), sorted by slope.
    let lines: Vec<(f64, f64)> = pr
        .points()
        .iter()
        .filter(|pt| pt.lambda.is_finite())
        .map(|pt| (pt.lambda, pt.alpha - pt.lambda))
        .collect();
    let cross = |a: (f64, f64), b: (f64, f64)| (a.1 - b.1) / (b.0 - a.0);
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &line in &lines {
        // Equal slopes: keep the higher intercept.
        if let Some(&top) = hull.last() {
            if top.0 == line.0 {
                if top.1 >= line.1 {
                    continue;
                }
                hull.pop();
            }
        }
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if cross(a, line) <= cross(a, b) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(line);
    }
    let eval = |t: f64| {
        hull.iter()
            .map(|&(s, c)| s * t + c)
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let mut ts = vec![0.0];
    ts.extend(
        hull.windows(2)
            .map(|w| cross(w[0], w[1]))
            .filter(|&x| x > 0.0 && x < 1.0),
    );
    ts.push(1.0);
    ts.sort_by(f64::total_cmp);
    ts.dedup_by(|a, b| (*a - *b).abs() <= 1e-15);
    let breakpoints = ts
        .into_iter()
        .map(|t| (t, if t == 0.0 { 0.0 } else { eval(t).max(0.0) }))
        .collect();
    LorenzCurve::from_breakpoints(breakpoints, 1e-9)
}

/// PR curve recovered from a Lorenz curve on `grid`, endpoints included.
///
/// `β_0 = 1 − t_0` where `[0, t_0]` is the zero-slope part of `F` (mass of
/// `P` outside `supp Q`); `α_∞ = F(1)`.
pub fn pr_from_lorenz(curve: &LorenzCurve, grid: &[f64]) -> Result<PrCurve> {
    let flat = if curve.slopes()[0] == 0.0 {
        curve.breakpoints()[1].0
    } else {
        0.0
    };
    let mut points = vec![PrPoint {
        lambda: 0.0,
        alpha: 0.0,
        beta: 1.0 - flat,
        set_mask: None,
    }];
    for &lambda in grid {
        let alpha = alpha_from_lorenz(curve, lambda)?;
        points.push(PrPoint {
            lambda,
            alpha,
            beta: alpha / lambda,
            set_mask: None,
        });
    }
    points.push(PrPoint {
        lambda: f64::INFINITY,
        alpha: curve.end_value(),
        beta: 0.0,
        set_mask: None,
    });
    PrCurve::from_points(points)
}
