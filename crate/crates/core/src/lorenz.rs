//! Lorenz curves and their ROC reflection.
//!
//! `F(t)` is the least `Q`-mass a soft set `0 ≤ f ≤ 1` must carry to
//! capture at least `t` of `P`'s mass. For discrete pairs the optimal soft
//! sets are Neyman-Pearson sets: take atoms of `supp P` in order of
//! increasing likelihood ratio `q_i / p_i`. The curve is therefore exactly
//! piecewise linear, with one segment per distinct ratio.

use serde::Serialize;

use crate::dist::{ratio_profile, CompensatedSum, DistPair};
use crate::error::{Error, Result};

/// Two abscissas closer than this are treated as the same breakpoint.
const BREAKPOINT_EPS: f64 = 1e-12;

/// Piecewise-linear convex nondecreasing `F` on `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LorenzCurve {
    /// `(t, F(t))`, starting at `(0, 0)` and ending at `t = 1`.
    breakpoints: Vec<(f64, f64)>,
    /// Slope of each segment; `slopes[k]` joins breakpoints `k` and `k + 1`.
    slopes: Vec<f64>,
}

impl LorenzCurve {
    /// Rebuilds a curve from `(t, F)` breakpoints, e.g. read back from CSV.
    ///
    /// Requires `(0, 0)` first, strictly increasing `t` ending at 1, and
    /// nondecreasing slopes up to `tol` (relative to the slope magnitude).
    pub fn from_breakpoints(breakpoints: Vec<(f64, f64)>, tol: f64) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidCurve("need at least two breakpoints".into()));
        }
        if breakpoints[0] != (0.0, 0.0) {
            return Err(Error::InvalidCurve(format!(
                "first breakpoint must be (0, 0), got {:?}",
                breakpoints[0]
            )));
        }
        let last = breakpoints[breakpoints.len() - 1];
        if (last.0 - 1.0).abs() > tol {
            return Err(Error::InvalidCurve(format!(
                "last abscissa must be 1, got {}",
                last.0
            )));
        }
        let mut slopes = Vec::with_capacity(breakpoints.len() - 1);
        for w in breakpoints.windows(2) {
            let (t0, f0) = w[0];
            let (t1, f1) = w[1];
            if !(t1 > t0) {
                return Err(Error::InvalidCurve(format!(
                    "abscissas not strictly increasing at t = {t1}"
                )));
            }
            if !(0.0..=1.0 + tol).contains(&f1) {
                return Err(Error::InvalidCurve(format!("F = {f1} outside [0, 1]")));
            }
            slopes.push(((f1 - f0) / (t1 - t0)).max(0.0));
            if f1 < f0 - tol {
                return Err(Error::InvalidCurve(format!("F decreases at t = {t1}")));
            }
        }
        for w in slopes.windows(2) {
            if w[1] < w[0] - tol * w[0].abs().max(1.0) {
                return Err(Error::InvalidCurve(format!(
                    "slopes not nondecreasing: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self {
            breakpoints,
            slopes,
        })
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    /// `F(1) = Q(supp P)`.
    pub fn end_value(&self) -> f64 {
        self.breakpoints[self.breakpoints.len() - 1].1
    }

    /// Piecewise-linear evaluation of `F(t)`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidParameter(format!(
                "Lorenz abscissa must lie in [0, 1], got {t}"
            )));
        }
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> f64 {
        let bp = &self.breakpoints;
        // Index of the first breakpoint strictly right of t.
        let k = bp.partition_point(|&(tk, _)| tk <= t);
        if k == 0 {
            return 0.0;
        }
        if k == bp.len() {
            return bp[bp.len() - 1].1;
        }
        let (t0, f0) = bp[k - 1];
        let (t1, f1) = bp[k];
        f0 + (f1 - f0) * (t - t0) / (t1 - t0)
    }

    /// Subdifferential `[λ⁻, λ⁺]` of `F` at `t`, restricted to `λ ≥ 0`.
    ///
    /// At `t = 0` the lower end is 0 and at `t = 1` the upper end is `+∞`,
    /// reflecting that `F` is `+∞` outside `[0, 1]`.
    pub fn subdifferential(&self, t: f64) -> Result<(f64, f64)> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidParameter(format!(
                "Lorenz abscissa must lie in [0, 1], got {t}"
            )));
        }
        let bp = &self.breakpoints;
        let s = &self.slopes;
        let last = bp.len() - 1;
        if t <= BREAKPOINT_EPS {
            return Ok((0.0, s[0]));
        }
        if t >= bp[last].0 - BREAKPOINT_EPS {
            return Ok((s[s.len() - 1], f64::INFINITY));
        }
        for k in 1..last {
            if (t - bp[k].0).abs() <= BREAKPOINT_EPS {
                return Ok((s[k - 1], s[k]));
            }
        }
        let k = bp.partition_point(|&(tk, _)| tk <= t) - 1;
        Ok((s[k], s[k]))
    }
}

/// Builds the exact Lorenz curve of `(P, Q)`.
///
/// Atoms of `supp P` are sorted by `q_i / p_i`; atoms with `q_i = 0` come
/// first with slope 0, atoms outside `supp P` never enter. Atoms with equal
/// ratio form a single segment.
pub fn lorenz_curve(pair: &DistPair) -> LorenzCurve {
    let profile = ratio_profile(pair);
    let (p, q) = (pair.p().weights(), pair.q().weights());
    let mut order: Vec<usize> = (0..pair.len()).filter(|&i| p[i] > 0.0).collect();
    order.sort_by(|&a, &b| profile.ratio[a].total_cmp(&profile.ratio[b]).then(a.cmp(&b)));

    let mut breakpoints = vec![(0.0, 0.0)];
    let mut slopes = Vec::new();
    let (mut t, mut f) = (CompensatedSum::default(), CompensatedSum::default());
    let mut i = 0;
    while i < order.len() {
        let r = profile.ratio[order[i]];
        while i < order.len() && profile.ratio[order[i]] == r {
            t.add(p[order[i]]);
            f.add(q[order[i]]);
            i += 1;
        }
        breakpoints.push((t.value(), f.value()));
        slopes.push(r);
    }
    // Σ_{supp P} p_i is 1 up to rounding; pin the domain to [0, 1].
    if let Some(last) = breakpoints.last_mut() {
        last.0 = 1.0;
    }
    LorenzCurve {
        breakpoints,
        slopes,
    }
}

/// Reflects points across the main diagonal: `(a, b) ↦ (b, a)`.
pub fn reflect(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    points.iter().map(|&(a, b)| (b, a)).collect()
}

/// ROC curve: the Lorenz breakpoints reflected across the diagonal.
///
/// The result is concave and nondecreasing; it bounds the region of
/// achievable `(Q(A), P(A))` pairs.
pub fn roc_curve(curve: &LorenzCurve) -> Vec<(f64, f64)> {
    reflect(curve.breakpoints())
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
    fn identical_pair_is_diagonal() {
        let c = lorenz_curve(&pair(&[0.2, 0.3, 0.5], &[0.2, 0.3, 0.5]));
        assert_eq!(c.breakpoints(), &[(0.0, 0.0), (1.0, 1.0)]);
        assert_eq!(c.eval(0.37).unwrap(), 0.37);
        assert_eq!(c.eval(0.0).unwrap(), 0.0);
        assert_eq!(c.subdifferential(0.4).unwrap(), (1.0, 1.0));
    }

    #[test]
    fn singular_pair_is_zero() {
        let c = lorenz_curve(&pair(&[0.5, 0.5, 0.0], &[0.0, 0.0, 1.0]));
        for t in [0.0, 0.3, 1.0] {
            assert_eq!(c.eval(t).unwrap(), 0.0);
        }
        assert_eq!(c.end_value(), 0.0);
    }

    #[test]
    fn three_atom_single_segment() {
        let c = lorenz_curve(&three_atom());
        assert_eq!(c.breakpoints(), &[(0.0, 0.0), (1.0, 0.5)]);
        assert_eq!(c.slopes(), &[0.5]);
        assert_eq!(c.eval(0.8).unwrap(), 0.4);
        assert_eq!(c.subdifferential(0.5).unwrap(), (0.5, 0.5));
        assert_eq!(c.subdifferential(0.0).unwrap(), (0.0, 0.5));
        assert_eq!(c.subdifferential(1.0).unwrap(), (0.5, f64::INFINITY));
    }

    #[test]
    fn breakpoint_subdifferential_matches_finite_differences() {
        // Ratios 0.25, 1, 1, 4: the tied pair merges into one segment.
        let pr = pair(&[0.4, 0.1, 0.3, 0.2], &[0.1, 0.1, 0.3, 0.5]);
        let c = lorenz_curve(&pr);
        assert_eq!(c.slopes(), &[0.25, 1.0, 2.5]);
        let (t, _) = c.breakpoints()[1];
        let (lo, hi) = c.subdifferential(t).unwrap();
        let h = 1e-7;
        let left = (c.eval(t).unwrap() - c.eval(t - h).unwrap()) / h;
        let right = (c.eval(t + h).unwrap() - c.eval(t).unwrap()) / h;
        assert!((lo - left).abs() < 1e-6, "{lo} vs {left}");
        assert!((hi - right).abs() < 1e-6, "{hi} vs {right}");
        assert!(lo < hi);
    }

    #[test]
    fn zero_q_atoms_come_first_at_slope_zero() {
        let c = lorenz_curve(&pair(&[0.3, 0.7, 0.0], &[0.0, 0.6, 0.4]));
        assert_eq!(c.slopes()[0], 0.0);
        assert_eq!(c.breakpoints()[1], (0.3, 0.0));
        assert!((c.end_value() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn eval_rejects_out_of_range() {
        let c = lorenz_curve(&three_atom());
        assert!(c.eval(-0.1).is_err());
        assert!(c.eval(1.1).is_err());
        assert!(c.subdifferential(2.0).is_err());
    }

    #[test]
    fn roc_reflection() {
        let c = lorenz_curve(&three_atom());
        let roc = roc_curve(&c);
        assert_eq!(roc, vec![(0.0, 0.0), (0.5, 1.0)]);
        assert_eq!(reflect(&roc), c.breakpoints());

        let diag = lorenz_curve(&pair(&[0.5, 0.5], &[0.5, 0.5]));
        assert_eq!(roc_curve(&diag), diag.breakpoints());
    }

    #[test]
    fn from_breakpoints_validates_shape() {
        assert!(LorenzCurve::from_breakpoints(vec![(0.0, 0.0), (1.0, 0.5)], 1e-9).is_ok());
        // Concave, rejected.
        assert!(LorenzCurve::from_breakpoints(
            vec![(0.0, 0.0), (0.5, 0.4), (1.0, 0.5)],
            1e-9
        )
        .is_err());
        assert!(LorenzCurve::from_breakpoints(vec![(0.1, 0.0), (1.0, 0.5)], 1e-9).is_err());
        assert!(LorenzCurve::from_breakpoints(vec![(0.0, 0.0), (0.8, 0.5)], 1e-9).is_err());
        let c = LorenzCurve::from_breakpoints(vec![(0.0, 0.0), (0.5, 0.1), (1.0, 0.9)], 1e-9)
            .unwrap();
        assert!((c.slopes()[1] - 1.6).abs() < 1e-12);
    }
}
