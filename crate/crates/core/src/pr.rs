//! Precision-recall curves between two distributions.
//!
//! For `λ ∈ [0, ∞]` the curve point is
//!
//! ```text
//! α_λ = Σ min(λ p_i, q_i)        β_λ = Σ min(p_i, q_i / λ)
//! ```
//!
//! and the same values follow from the likelihood-ratio set
//! `A_λ = { i : q_i ≤ λ p_i }` as `α_λ = λ (1 − P(A_λ)) + Q(A_λ)`.
//! Both routes are exposed so that each can check the other.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::dist::{measure_min, ratio_profile, DistPair};
use crate::error::{Error, Result};

/// Number of interior `λ` values in the default grid.
pub const DEFAULT_LAMBDA_COUNT: usize = 201;

/// Slack used by [`prd_membership`] when comparing against `(α_λ, β_λ)`.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// One point `(λ, α_λ, β_λ)` of the curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrPoint {
    /// `λ ∈ [0, ∞]`; the upper endpoint is stored as `f64::INFINITY`.
    pub lambda: f64,
    /// Precision `α_λ`.
    pub alpha: f64,
    /// Recall `β_λ`.
    pub beta: f64,
    /// Membership of each atom in `A_λ`, when computed via the ratio sets.
    #[serde(skip)]
    pub set_mask: Option<Vec<bool>>,
}

/// A sampled precision-recall curve, sorted by `λ`, endpoints included.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrCurve {
    points: Vec<PrPoint>,
}

impl PrCurve {
    /// Wraps already-computed points. They must be sorted by `λ`, start at
    /// `λ = 0` and end at `λ = ∞`.
    pub fn from_points(points: Vec<PrPoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidGrid("curve needs both endpoints".into()));
        }
        if points[0].lambda != 0.0 || points[points.len() - 1].lambda != f64::INFINITY {
            return Err(Error::InvalidGrid(
                "curve must start at lambda = 0 and end at lambda = inf".into(),
            ));
        }
        for w in points.windows(2) {
            if !(w[1].lambda > w[0].lambda) {
                return Err(Error::InvalidGrid(format!(
                    "lambda not strictly increasing at {}",
                    w[1].lambda
                )));
            }
        }
        for pt in &points {
            if !(0.0..=1.0 + 1e-9).contains(&pt.alpha) || !(0.0..=1.0 + 1e-9).contains(&pt.beta) {
                return Err(Error::InvalidCurve(format!(
                    "point ({}, {}) outside the unit square",
                    pt.alpha, pt.beta
                )));
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[PrPoint] {
        &self.points
    }

    /// Interior points (finite, positive `λ`).
    pub fn interior(&self) -> &[PrPoint] {
        &self.points[1..self.points.len() - 1]
    }

    /// `α_∞ = Q(supp P)`.
    pub fn alpha_at_infinity(&self) -> f64 {
        self.points[self.points.len() - 1].alpha
    }

    /// `β_0 = P(supp Q)`.
    pub fn beta_at_zero(&self) -> f64 {
        self.points[0].beta
    }

    /// Point whose `λ` equals `lambda` exactly, if present.
    pub fn at(&self, lambda: f64) -> Option<&PrPoint> {
        self.points.iter().find(|pt| pt.lambda == lambda)
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_nan() || lambda < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "lambda must lie in [0, inf], got {lambda}"
        )));
    }
    Ok(())
}

/// `α_λ` by the atomwise minimum.
pub(crate) fn alpha(pair: &DistPair, lambda: f64) -> f64 {
    measure_min(pair, lambda)
}

/// `β_λ = (P ∧ Q/λ)(Ω)`, with `1/0 = ∞` and `1/∞ = 0`.
pub(crate) fn beta(pair: &DistPair, lambda: f64) -> f64 {
    let inv = if lambda == 0.0 {
        f64::INFINITY
    } else if lambda == f64::INFINITY {
        0.0
    } else {
        1.0 / lambda
    };
    measure_min(&pair.swapped(), inv)
}

/// Curve point from the measure-minimum definition; valid on all of `[0, ∞]`.
pub fn pr_point_direct(pair: &DistPair, lambda: f64) -> Result<PrPoint> {
    check_lambda(lambda)?;
    Ok(PrPoint {
        lambda,
        alpha: alpha(pair, lambda),
        beta: beta(pair, lambda),
        set_mask: None,
    })
}

/// The likelihood-ratio set `A_λ = { q_i ≤ λ p_i }` over the joint support.
pub fn ratio_set(pair: &DistPair, lambda: f64) -> Vec<bool> {
    pair.atoms()
        .map(|(p, q)| p + q > 0.0 && q <= lambda * p)
        .collect()
}

/// Curve point through the likelihood-ratio set, for `λ ∈ (0, ∞)`.
pub fn pr_point_via_sets(pair: &DistPair, lambda: f64) -> Result<PrPoint> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "ratio-set formulation needs 0 < lambda < inf, got {lambda}"
        )));
    }
    let mask = ratio_set(pair, lambda);
    let p_a = pair.p().mass_of(&mask);
    let q_a = pair.q().mass_of(&mask);
    Ok(PrPoint {
        lambda,
        alpha: lambda * (1.0 - p_a) + q_a,
        beta: 1.0 - p_a + q_a / lambda,
        set_mask: Some(mask),
    })
}

/// Angularly spaced grid `λ_k = tan(kπ / (2(m+1)))`, `k = 1..m`.
///
/// The upper half is computed as reciprocals of the lower half, which keeps
/// `λ = 1` exact when `m` is odd (`tan(π/4)` is one ulp short of 1).
pub fn default_lambda_grid(m: usize) -> Vec<f64> {
    let step = FRAC_PI_2 / (m + 1) as f64;
    (1..=m)
        .map(|k| {
            let mirror = m + 1 - k;
            match k.cmp(&mirror) {
                std::cmp::Ordering::Less => (k as f64 * step).tan(),
                std::cmp::Ordering::Equal => 1.0,
                std::cmp::Ordering::Greater => 1.0 / (mirror as f64 * step).tan(),
            }
        })
        .collect()
}

/// `grid` merged with every distinct finite positive atom ratio `q_i / p_i`.
pub fn ratio_augmented_grid(pair: &DistPair, grid: &[f64]) -> Vec<f64> {
    let profile = ratio_profile(pair);
    let mut out: Vec<f64> = grid
        .iter()
        .copied()
        .chain(
            profile
                .ratio
                .iter()
                .copied()
                .filter(|r| *r > 0.0 && r.is_finite()),
        )
        .collect();
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("empty lambda grid".into()));
    }
    if let Some(bad) = grid.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
        return Err(Error::InvalidGrid(format!(
            "grid values must be positive and finite, got {bad}"
        )));
    }
    if let Some(w) = grid.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid(format!(
            "grid not strictly increasing at {} -> {}",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// The curve over `grid`, plus exact endpoints `λ = 0` and `λ = ∞`.
pub fn pr_curve(pair: &DistPair, grid: &[f64]) -> Result<PrCurve> {
    check_grid(grid)?;
    let points = std::iter::once(0.0)
        .chain(grid.iter().copied())
        .chain(std::iter::once(f64::INFINITY))
        .map(|lambda| PrPoint {
            lambda,
            alpha: alpha(pair, lambda),
            beta: beta(pair, lambda),
            set_mask: None,
        })
        .collect();
    Ok(PrCurve { points })
}

/// [`pr_curve`] on [`default_lambda_grid`]`(201)`.
pub fn pr_curve_default(pair: &DistPair) -> PrCurve {
    pr_curve(pair, &default_lambda_grid(DEFAULT_LAMBDA_COUNT))
        .expect("default grid is valid")
}

/// Whether `(α, β)` belongs to the precision-recall set.
///
/// The pair is compared against the curve point on its own ray
/// `λ = α / β`. The origin is always a member.
pub fn prd_membership(pair: &DistPair, a: f64, b: f64) -> Result<bool> {
    if a.is_nan() || b.is_nan() || a < 0.0 || b < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "precision and recall must be nonnegative, got ({a}, {b})"
        )));
    }
    if a == 0.0 && b == 0.0 {
        return Ok(true);
    }
    let lambda = if b == 0.0 { f64::INFINITY } else { a / b };
    Ok(a <= alpha(pair, lambda) + MEMBERSHIP_TOL && b <= beta(pair, lambda) + MEMBERSHIP_TOL)
}

/// One-sided derivatives `(left, right)` of the concave map `λ ↦ α_λ`.
///
/// `right = P({q > λp})`, `left = P({q ≥ λp})`; their interval is the
/// superdifferential at `λ`.
pub fn alpha_slopes(pair: &DistPair, lambda: f64) -> (f64, f64) {
    let mut left = 0.0;
    let mut right = 0.0;
    for (p, q) in pair.atoms() {
        if p > 0.0 {
            if q >= lambda * p {
                left += p;
            }
            if q > lambda * p {
                right += p;
            }
        }
    }
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(p: &[f64], q: &[f64]) -> DistPair {
        DistPair::from_weights(p.to_vec(), q.to_vec()).unwrap()
    }

    fn three_atom() -> DistPair {
        pair(&[0.5, 0.5, 0.0], &[0.25, 0.25, 0.5])
    }

    #[test]
    fn direct_examples() {
        let same = pair(&[0.3, 0.7], &[0.3, 0.7]);
        let pt = pr_point_direct(&same, 2.0).unwrap();
        assert_eq!((pt.alpha, pt.beta), (1.0, 0.5));

        let singular = pair(&[1.0, 0.0], &[0.0, 1.0]);
        for l in [0.0, 0.3, 1.0, 7.0, f64::INFINITY] {
            let pt = pr_point_direct(&singular, l).unwrap();
            assert_eq!((pt.alpha, pt.beta), (0.0, 0.0));
        }

        let pt = pr_point_direct(&three_atom(), 1.0).unwrap();
        assert_eq!((pt.alpha, pt.beta), (0.5, 0.5));
    }

    #[test]
    fn endpoints_follow_zero_times_infinity() {
        let pair = three_atom();
        let zero = pr_point_direct(&pair, 0.0).unwrap();
        assert_eq!((zero.alpha, zero.beta), (0.0, 1.0));
        let inf = pr_point_direct(&pair, f64::INFINITY).unwrap();
        assert_eq!((inf.alpha, inf.beta), (0.5, 0.0));
        assert!(pr_point_direct(&pair, -1.0).is_err());
        assert!(pr_point_direct(&pair, f64::NAN).is_err());
    }

    #[test]
    fn via_sets_examples() {
        let same = pair(&[0.3, 0.7], &[0.3, 0.7]);
        let pt = pr_point_via_sets(&same, 1.0).unwrap();
        assert_eq!(pt.set_mask.as_deref(), Some(&[true, true][..]));
        assert_eq!((pt.alpha, pt.beta), (1.0, 1.0));

        let pt = pr_point_via_sets(&three_atom(), 1.0).unwrap();
        assert_eq!(pt.set_mask.as_deref(), Some(&[true, true, false][..]));
        assert_eq!(pt.alpha, 0.5);

        let pt = pr_point_via_sets(&three_atom(), 0.25).unwrap();
        assert_eq!(pt.set_mask.as_deref(), Some(&[false, false, false][..]));
        assert_eq!((pt.alpha, pt.beta), (0.25, 1.0));

        assert!(pr_point_via_sets(&three_atom(), 0.0).is_err());
        assert!(pr_point_via_sets(&three_atom(), f64::INFINITY).is_err());
    }

    #[test]
    fn identical_pair_traces_the_corner_path() {
        let same = pair(&[0.2, 0.3, 0.5], &[0.2, 0.3, 0.5]);
        let curve = pr_curve_default(&same);
        for pt in curve.interior() {
            assert!((pt.alpha - pt.lambda.min(1.0)).abs() < 1e-12);
            assert!((pt.beta - (1.0 / pt.lambda).min(1.0)).abs() < 1e-12);
        }
        assert_eq!(curve.at(1.0).map(|p| (p.alpha, p.beta)), Some((1.0, 1.0)));
    }

    #[test]
    fn singular_pair_collapses_to_origin() {
        let curve = pr_curve_default(&pair(&[0.5, 0.5, 0.0], &[0.0, 0.0, 1.0]));
        assert!(curve.points().iter().all(|p| p.alpha == 0.0 && p.beta == 0.0));
    }

    #[test]
    fn three_atom_alpha_is_min_lambda_half() {
        let curve = pr_curve_default(&three_atom());
        for pt in curve.interior() {
            assert!((pt.alpha - pt.lambda.min(0.5)).abs() < 1e-15);
        }
        assert_eq!(curve.alpha_at_infinity(), 0.5);
        assert_eq!(curve.beta_at_zero(), 1.0);
    }

    #[test]
    fn grid_validation() {
        let p = three_atom();
        assert!(matches!(pr_curve(&p, &[]), Err(Error::InvalidGrid(_))));
        assert!(pr_curve(&p, &[1.0, 1.0]).is_err());
        assert!(pr_curve(&p, &[0.0, 1.0]).is_err());
        assert!(pr_curve(&p, &[1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn default_grid_is_reciprocal_symmetric() {
        let g = default_lambda_grid(DEFAULT_LAMBDA_COUNT);
        assert_eq!(g.len(), 201);
        assert_eq!(g[100], 1.0);
        for k in 101..g.len() {
            assert_eq!(g[k], 1.0 / g[g.len() - 1 - k]);
        }
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn membership_examples() {
        let same = pair(&[0.5, 0.5], &[0.5, 0.5]);
        assert!(prd_membership(&same, 1.0, 1.0).unwrap());
        let singular = pair(&[1.0, 0.0], &[0.0, 1.0]);
        assert!(!prd_membership(&singular, 0.1, 0.1).unwrap());
        assert!(prd_membership(&singular, 0.0, 0.0).unwrap());
        assert!(prd_membership(&three_atom(), 0.5, 0.5).unwrap());
        assert!(!prd_membership(&three_atom(), 0.6, 0.6).unwrap());
        assert!(prd_membership(&three_atom(), 0.5, 0.0).unwrap());
        assert!(!prd_membership(&three_atom(), 0.51, 0.0).unwrap());
        assert!(prd_membership(&three_atom(), -0.1, 0.0).is_err());
    }

    #[test]
    fn augmented_grid_contains_ratios() {
        let g = ratio_augmented_grid(&three_atom(), &[1.0, 2.0]);
        assert_eq!(g, vec![0.5, 1.0, 2.0]);
    }

    #[test]
    fn alpha_slopes_bracket_kinks() {
        // α_λ = min(λ, 0.5): kink at 0.5.
        assert_eq!(alpha_slopes(&three_atom(), 0.5), (1.0, 0.0));
        assert_eq!(alpha_slopes(&three_atom(), 0.2), (1.0, 1.0));
        assert_eq!(alpha_slopes(&three_atom(), 0.8), (0.0, 0.0));
    }
}
