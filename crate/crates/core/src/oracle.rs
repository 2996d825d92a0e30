//! Exponential-time reference computations over all subsets of the support.
//!
//! Each oracle recomputes a closed-form quantity from its set-based
//! definition and reports both values with their gap. Among subsets of
//! equal value the smallest bitmask wins, so witnesses are reproducible.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::dist::{DiscreteDistribution, DistPair};
use crate::error::{Error, Result};
use crate::lorenz::LorenzCurve;
use crate::pr::{alpha, ratio_set};
use crate::renyi::sup_ratio;

pub const MAX_ENUMERATION: usize = 20;
pub const MAX_LORENZ_ENUMERATION: usize = 16;

/// Allowed slack for soft functions undercutting `α_λ`.
pub const DOMINATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub quantity: String,
    pub closed_form: f64,
    pub oracle: f64,
    pub gap: f64,
    /// Per-atom weights of the optimal set or function.
    pub witness: Vec<f64>,
}

impl OracleReport {
    pub fn new(quantity: impl Into<String>, closed_form: f64, oracle: f64, witness: Vec<f64>) -> Self {
        Self {
            quantity: quantity.into(),
            closed_form,
            oracle,
            gap: abs_gap(closed_form, oracle),
            witness,
        }
    }

    /// Fails with [`Error::OracleViolation`] when `gap > tol`.
    pub fn check(&self, tol: f64) -> Result<()> {
        if self.gap <= tol {
            Ok(())
        } else {
            Err(Error::OracleViolation {
                quantity: self.quantity.clone(),
                detail: format!(
                    "closed form {} vs oracle {} (gap {:e} > {:e})",
                    self.closed_form, self.oracle, self.gap, tol
                ),
            })
        }
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<16} closed={:<24} oracle={:<24} gap={:.3e}",
            self.quantity, self.closed_form, self.oracle, self.gap
        )
    }
}

/// `|a − b|`, zero when both are the same infinity and `+∞` when exactly
/// one is infinite.
pub fn abs_gap(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs()
    }
}

fn check_size(n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::SupportTooLarge { n, max });
    }
    Ok(())
}

/// `sums[mask] = Σ_{i ∈ mask} w_i` for all `2ⁿ` masks.
pub fn subset_sums(w: &[f64]) -> Vec<f64> {
    let mut sums = vec![0.0; 1 << w.len()];
    for mask in 1..sums.len() {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + w[low];
    }
    sums
}

fn indicator(mask: usize, n: usize) -> Vec<f64> {
    (0..n).map(|i| if mask >> i & 1 == 1 { 1.0 } else { 0.0 }).collect()
}

/// `α_λ = min_A λ P(Aᶜ) + Q(A)` by enumeration, against the atomwise
/// minimum formula. `λ` must be finite and positive.
pub fn oracle_alpha(pair: &DistPair, lambda: f64) -> Result<OracleReport> {
    let n = pair.len();
    check_size(n, MAX_ENUMERATION)?;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "alpha oracle needs finite lambda > 0, got {lambda}"
        )));
    }
    let sp = subset_sums(pair.p().weights());
    let sq = subset_sums(pair.q().weights());
    let full = (1usize << n) - 1;
    let mut best = (f64::INFINITY, 0);
    for mask in 0..=full {
        let v = lambda * sp[full ^ mask] + sq[mask];
        if v < best.0 {
            best = (v, mask);
        }
    }
    Ok(OracleReport::new(
        "alpha",
        alpha(pair, lambda),
        best.0,
        indicator(best.1, n),
    ))
}

/// `sup_A μ(A)/ν(A)` over nonempty `A`, with `0/0 = 0` and `x/0 = ∞`.
pub fn oracle_sup_ratio(mu: &DiscreteDistribution, nu: &DiscreteDistribution) -> Result<OracleReport> {
    let n = mu.len();
    if nu.len() != n {
        return Err(Error::SupportMismatch(n, nu.len()));
    }
    check_size(n, MAX_ENUMERATION)?;
    let sm = subset_sums(mu.weights());
    let sn = subset_sums(nu.weights());
    let mut best = (f64::NEG_INFINITY, 1);
    for mask in 1..sm.len() {
        let (a, b) = (sm[mask], sn[mask]);
        let r = if a == 0.0 {
            0.0
        } else if b == 0.0 {
            f64::INFINITY
        } else {
            a / b
        };
        if r > best.0 {
            best = (r, mask);
        }
    }
    Ok(OracleReport::new(
        "sup_ratio",
        sup_ratio(mu, nu)?,
        best.0,
        indicator(best.1, n),
    ))
}

/// Lower convex envelope of the indicator points `(P(A), Q(A))`.
///
/// Restricting the Lorenz problem to indicator functions loses convexity;
/// the envelope of the indicator points restores it.
#[derive(Debug, Clone)]
pub struct LorenzEnvelope {
    n: usize,
    /// Hull vertices `(x, y, mask)` with strictly increasing `x`.
    hull: Vec<(f64, f64, usize)>,
}

impl LorenzEnvelope {
    pub fn new(pair: &DistPair) -> Result<Self> {
        let n = pair.len();
        check_size(n, MAX_LORENZ_ENUMERATION)?;
        let sp = subset_sums(pair.p().weights());
        let sq = subset_sums(pair.q().weights());
        let mut pts: Vec<(f64, f64, usize)> = (0..sp.len()).map(|m| (sp[m], sq[m], m)).collect();
        pts.sort_by(|a, b| {
            a.0.total_cmp(&b.0)
                .then(a.1.total_cmp(&b.1))
                .then(a.2.cmp(&b.2))
        });
        let cross = |o: (f64, f64, usize), a: (f64, f64, usize), b: (f64, f64, usize)| {
            (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
        };
        let mut hull: Vec<(f64, f64, usize)> = Vec::new();
        for pt in pts {
            if let Some(last) = hull.last() {
                if last.0 == pt.0 {
                    continue;
                }
            }
            while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0.0 {
                hull.pop();
            }
            hull.push(pt);
        }
        Ok(Self { n, hull })
    }

    /// Envelope value at `t`, clamped to the envelope's domain, with the
    /// soft witness mixing the two bracketing subsets.
    pub fn eval(&self, t: f64) -> (f64, Vec<f64>) {
        let h = &self.hull;
        let last = h[h.len() - 1];
        if t >= last.0 {
            return (last.1, indicator(last.2, self.n));
        }
        let k = h.partition_point(|v| v.0 <= t);
        if k == 0 {
            return (h[0].1, indicator(h[0].2, self.n));
        }
        let (a, b) = (h[k - 1], h[k]);
        let w = (t - a.0) / (b.0 - a.0);
        let value = a.1 + w * (b.1 - a.1);
        let witness = (0..self.n)
            .map(|i| {
                let ia = (a.2 >> i & 1) as f64;
                let ib = (b.2 >> i & 1) as f64;
                (1.0 - w) * ia + w * ib
            })
            .collect();
        (value, witness)
    }

    pub fn report(&self, curve: &LorenzCurve, t: f64) -> Result<OracleReport> {
        let (value, witness) = self.eval(t);
        Ok(OracleReport::new("lorenz", curve.eval(t)?, value, witness))
    }
}

/// `F(t)` from the envelope of indicator points, against `curve`.
pub fn oracle_lorenz(pair: &DistPair, curve: &LorenzCurve, t: f64) -> Result<OracleReport> {
    LorenzEnvelope::new(pair)?.report(curve, t)
}

/// `λ(1 − Σ f_i p_i) + Σ f_i q_i` for a soft set `f ∈ [0,1]ⁿ`.
pub fn soft_objective(pair: &DistPair, lambda: f64, f: &[f64]) -> f64 {
    let (fp, fq) = pair
        .atoms()
        .zip(f)
        .fold((0.0, 0.0), |(a, b), ((p, q), &w)| (a + w * p, b + w * q));
    lambda * (1.0 - fp) + fq
}

/// Samples `trials` random soft sets and checks none undercuts `α_λ`.
///
/// The indicator of `A_λ` is evaluated first and attains `α_λ`; the report's
/// oracle value is the smallest objective seen. Fails with
/// [`Error::OracleViolation`] if any sample lies below `α_λ − DOMINATION_TOL`.
pub fn oracle_soft_f_domination<R: Rng + ?Sized>(
    pair: &DistPair,
    lambda: f64,
    trials: usize,
    rng: &mut R,
) -> Result<OracleReport> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "soft domination needs finite lambda >= 0, got {lambda}"
        )));
    }
    let target = alpha(pair, lambda);
    let n = pair.len();
    let mut best_f: Vec<f64> = ratio_set(pair, lambda)
        .into_iter()
        .map(|b| if b { 1.0 } else { 0.0 })
        .collect();
    let mut best = soft_objective(pair, lambda, &best_f);
    let mut f = vec![0.0; n];
    for _ in 0..trials {
        for w in f.iter_mut() {
            *w = rng.random::<f64>();
        }
        let v = soft_objective(pair, lambda, &f);
        if v < target - DOMINATION_TOL {
            return Err(Error::OracleViolation {
                quantity: "soft_domination".into(),
                detail: format!("soft set value {v} below alpha {target} at lambda {lambda}"),
            });
        }
        if v < best {
            best = v;
            best_f.copy_from_slice(&f);
        }
    }
    if best < target - DOMINATION_TOL {
        return Err(Error::OracleViolation {
            quantity: "soft_domination".into(),
            detail: format!("indicator value {best} below alpha {target}"),
        });
    }
    Ok(OracleReport::new("soft_domination", target, best, best_f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorenz::lorenz_curve;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pair(p: &[f64], q: &[f64]) -> DistPair {
        DistPair::from_weights(p.to_vec(), q.to_vec()).unwrap()
    }

    fn dist(w: &[f64]) -> DiscreteDistribution {
        DiscreteDistribution::new(w.to_vec()).unwrap()
    }

    #[test]
    fn subset_sums_match_direct() {
        let w = [0.1, 0.2, 0.3];
        let s = subset_sums(&w);
        assert_eq!(s.len(), 8);
        assert_eq!(s[0], 0.0);
        assert_eq!(s[0b101], 0.1 + 0.3);
        assert_eq!(s[0b010], 0.2);
    }

    #[test]
    fn alpha_oracle_examples() {
        let r = oracle_alpha(&pair(&[0.5, 0.5], &[0.5, 0.5]), 1.0).unwrap();
        assert_eq!(r.oracle, 1.0);
        assert_eq!(r.gap, 0.0);
        // Ties at value 1: the empty set (mask 0) is the smallest bitmask.
        assert_eq!(r.witness, vec![0.0, 0.0]);

        let r = oracle_alpha(&pair(&[0.5, 0.5, 0.0], &[0.25, 0.25, 0.5]), 1.0).unwrap();
        assert_eq!(r.oracle, 0.5);
        assert_eq!(r.witness, vec![1.0, 1.0, 0.0]);

        let r = oracle_alpha(&pair(&[1.0, 0.0], &[0.0, 1.0]), 3.0).unwrap();
        assert_eq!(r.oracle, 0.0);
        assert_eq!(r.witness, vec![1.0, 0.0]);

        assert!(oracle_alpha(&pair(&[1.0, 0.0], &[0.0, 1.0]), 0.0).is_err());
        let big = DistPair::new(
            DiscreteDistribution::uniform(21).unwrap(),
            DiscreteDistribution::uniform(21).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            oracle_alpha(&big, 1.0),
            Err(Error::SupportTooLarge { n: 21, max: 20 })
        ));
    }

    #[test]
    fn sup_ratio_oracle_examples() {
        let mu = dist(&[0.3, 0.7]);
        let r = oracle_sup_ratio(&mu, &mu).unwrap();
        assert_eq!((r.oracle, r.gap), (1.0, 0.0));

        let r = oracle_sup_ratio(&mu, &dist(&[0.6, 0.4])).unwrap();
        assert!((r.oracle - 1.75).abs() < 1e-15);
        assert_eq!(r.witness, vec![0.0, 1.0]);
        assert!(r.gap <= 1e-12);

        let r = oracle_sup_ratio(&dist(&[0.5, 0.5, 0.0]), &dist(&[0.5, 0.0, 0.5])).unwrap();
        assert_eq!(r.oracle, f64::INFINITY);
        assert_eq!(r.gap, 0.0);
    }

    #[test]
    fn lorenz_oracle_examples() {
        let same = pair(&[0.5, 0.5], &[0.5, 0.5]);
        let r = oracle_lorenz(&same, &lorenz_curve(&same), 0.5).unwrap();
        assert_eq!(r.oracle, 0.5);

        let three = pair(&[0.5, 0.5, 0.0], &[0.25, 0.25, 0.5]);
        let r = oracle_lorenz(&three, &lorenz_curve(&three), 0.8).unwrap();
        assert!((r.oracle - 0.4).abs() < 1e-15);
        assert!(r.gap <= 1e-9);
        // The witness is soft and meets the P-mass constraint.
        let fp: f64 = r.witness.iter().zip(three.p().weights()).map(|(f, p)| f * p).sum();
        assert!((fp - 0.8).abs() < 1e-12);
    }

    #[test]
    fn lorenz_envelope_random_five_atoms() {
        let p = pair(&[0.1, 0.3, 0.05, 0.25, 0.3], &[0.2, 0.1, 0.3, 0.0, 0.4]);
        let env = LorenzEnvelope::new(&p).unwrap();
        let curve = lorenz_curve(&p);
        for k in 0..=10 {
            let r = env.report(&curve, k as f64 / 10.0).unwrap();
            assert!(r.gap <= 1e-9, "{r}");
        }
    }

    #[test]
    fn soft_domination_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let three = pair(&[0.5, 0.5, 0.0], &[0.25, 0.25, 0.5]);
        let r = oracle_soft_f_domination(&three, 1.0, 10_000, &mut rng).unwrap();
        assert!(r.oracle >= 0.5 - DOMINATION_TOL);
        assert_eq!(r.closed_form, 0.5);

        let same = pair(&[0.5, 0.5], &[0.5, 0.5]);
        assert_eq!(soft_objective(&same, 1.0, &[0.5, 0.5]), 1.0);
        let r = oracle_soft_f_domination(&same, 1.0, 100, &mut rng).unwrap();
        assert_eq!(r.oracle, 1.0);
    }

    #[test]
    fn indicator_of_ratio_set_attains_alpha() {
        let p = pair(&[0.1, 0.3, 0.05, 0.25, 0.3], &[0.2, 0.1, 0.3, 0.0, 0.4]);
        for lambda in [0.3, 1.0, 2.5] {
            let f: Vec<f64> = ratio_set(&p, lambda).into_iter().map(|b| b as u8 as f64).collect();
            let v = soft_objective(&p, lambda, &f);
            assert!((v - alpha(&p, lambda)).abs() < 1e-15);
        }
    }

    #[test]
    fn report_check_and_gap_conventions() {
        assert_eq!(abs_gap(f64::INFINITY, f64::INFINITY), 0.0);
        assert_eq!(abs_gap(f64::INFINITY, 1.0), f64::INFINITY);
        let r = OracleReport::new("x", 1.0, 1.5, vec![]);
        assert_eq!(r.gap, 0.5);
        assert!(r.check(0.1).unwrap_err().is_violation());
        assert!(r.check(0.5).is_ok());
    }
}
