//! Discrete distributions on a shared finite support, the measure primitives
//! built on them, and discretization of 1-D Gaussian mixtures.
//!
//! Every curve in this crate is computed from a [`DistPair`]: two probability
//! vectors indexed by the same atoms. Absolute continuity becomes an atomwise
//! condition and supports are plain index sets.
//!
//! Two conventions from measure theory are used throughout: `0 × ∞ = 0` (see
//! [`scaled`]) and `0 / 0 = 0` for likelihood ratios.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `Σ w = 1` accepted by [`DiscreteDistribution::new`].
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Default number of grid points used to discretize mixtures.
pub const DEFAULT_GRID_POINTS: usize = 2001;

/// Default half-width of the discretization window, in units of the largest std.
pub const DEFAULT_SIGMA_SPAN: f64 = 6.0;

/// `s · w` with the convention `0 × ∞ = 0`.
#[inline]
pub fn scaled(s: f64, w: f64) -> f64 {
    if w == 0.0 || s == 0.0 {
        0.0
    } else {
        s * w
    }
}

/// Running Neumaier-compensated sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    c: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// Compensated sum, accurate to about one ulp for nonnegative terms.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = CompensatedSum::default();
    values.into_iter().for_each(|x| acc.add(x));
    acc.value()
}

/// Divides by the total, then moves the rounding residual onto the largest
/// weight so the weights sum to one as closely as `f64` allows.
fn normalize_in_place(weights: &mut [f64], sum: f64) {
    // Already normalized to the ulp: leave untouched so that a second
    // normalization is the identity.
    if (sum - 1.0).abs() <= 4.0 * f64::EPSILON {
        return;
    }
    weights.iter_mut().for_each(|w| *w /= sum);
    let largest = (0..weights.len())
        .max_by(|&a, &b| weights[a].total_cmp(&weights[b]).then(b.cmp(&a)))
        .unwrap_or(0);
    for _ in 0..3 {
        let residual = 1.0 - compensated_sum(weights.iter().copied());
        if residual == 0.0 || weights[largest] + residual < 0.0 {
            break;
        }
        weights[largest] += residual;
    }
}

/// A probability vector over atoms `0..n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct DiscreteDistribution {
    weights: Vec<f64>,
}

impl DiscreteDistribution {
    /// Validates and renormalizes `weights`; the sum must be within
    /// [`NORMALIZATION_TOL`] of one.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(weights, NORMALIZATION_TOL)
    }

    /// Like [`new`](Self::new) with a caller-chosen normalization tolerance.
    pub fn with_tolerance(mut weights: Vec<f64>, tolerance: f64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptySupport);
        }
        for (index, &value) in weights.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
            if value < 0.0 {
                return Err(Error::NegativeWeight { index, value });
            }
        }
        let sum = compensated_sum(weights.iter().copied());
        // Representation slack so that e.g. 0.999999 passes a 1e-6 tolerance.
        if (sum - 1.0).abs() > tolerance + 1e-12 {
            return Err(Error::NotNormalized { sum, tolerance });
        }
        normalize_in_place(&mut weights, sum);
        Ok(Self { weights })
    }

    /// Normalizes arbitrary nonnegative weights with positive total.
    pub fn from_unnormalized(mut weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptySupport);
        }
        for (index, &value) in weights.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
            if value < 0.0 {
                return Err(Error::NegativeWeight { index, value });
            }
        }
        let sum = compensated_sum(weights.iter().copied());
        if sum <= 0.0 {
            return Err(Error::NotNormalized {
                sum,
                tolerance: f64::INFINITY,
            });
        }
        normalize_in_place(&mut weights, sum);
        Ok(Self { weights })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySupport);
        }
        Ok(Self {
            weights: vec![1.0 / n as f64; n],
        })
    }

    /// Unit mass on atom `index` of an `n`-atom support.
    pub fn point(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::InvalidParameter(format!(
                "point mass index {index} outside support of size {n}"
            )));
        }
        let mut weights = vec![0.0; n];
        weights[index] = 1.0;
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Per-atom support indicator.
    pub fn support(&self) -> Vec<bool> {
        self.weights.iter().map(|&w| w > 0.0).collect()
    }

    /// Mass of the atoms selected by `mask`.
    pub fn mass_of(&self, mask: &[bool]) -> f64 {
        compensated_sum(
            self.weights
                .iter()
                .zip(mask)
                .filter(|(_, &m)| m)
                .map(|(&w, _)| w),
        )
    }

    /// `μ ≪ ν` atomwise.
    pub fn is_absolutely_continuous(&self, other: &Self) -> bool {
        self.weights
            .iter()
            .zip(&other.weights)
            .all(|(&m, &n)| m == 0.0 || n > 0.0)
    }
}

impl TryFrom<Vec<f64>> for DiscreteDistribution {
    type Error = Error;

    fn try_from(weights: Vec<f64>) -> Result<Self> {
        Self::new(weights)
    }
}

impl From<DiscreteDistribution> for Vec<f64> {
    fn from(d: DiscreteDistribution) -> Self {
        d.weights
    }
}

/// Two distributions `P` (reference) and `Q` (model) on one shared support.
#[derive(Debug, Clone, PartialEq)]
pub struct DistPair {
    p: DiscreteDistribution,
    q: DiscreteDistribution,
}

impl DistPair {
    pub fn new(p: DiscreteDistribution, q: DiscreteDistribution) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::SupportMismatch(p.len(), q.len()));
        }
        Ok(Self { p, q })
    }

    /// Convenience constructor from raw weight vectors.
    pub fn from_weights(p: Vec<f64>, q: Vec<f64>) -> Result<Self> {
        Self::new(DiscreteDistribution::new(p)?, DiscreteDistribution::new(q)?)
    }

    pub fn p(&self) -> &DiscreteDistribution {
        &self.p
    }

    pub fn q(&self) -> &DiscreteDistribution {
        &self.q
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// The pair with the roles of `P` and `Q` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            p: self.q.clone(),
            q: self.p.clone(),
        }
    }

    /// Iterator over `(p_i, q_i)`.
    pub fn atoms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.p
            .weights
            .iter()
            .copied()
            .zip(self.q.weights.iter().copied())
    }

    /// `Q(supp P)`, the precision reached at `λ = ∞`.
    pub fn q_mass_on_p_support(&self) -> f64 {
        self.atoms().filter(|&(p, _)| p > 0.0).map(|(_, q)| q).sum()
    }

    /// `P(supp Q)`, the recall reached at `λ = 0`.
    pub fn p_mass_on_q_support(&self) -> f64 {
        self.atoms().filter(|&(_, q)| q > 0.0).map(|(p, _)| p).sum()
    }

    pub fn is_identical(&self) -> bool {
        self.p == self.q
    }

    pub fn is_singular(&self) -> bool {
        self.atoms().all(|(p, q)| p == 0.0 || q == 0.0)
    }

    /// Merges contiguous atoms into `bins` groups of near-equal count.
    ///
    /// Used to bring discretized mixtures within reach of subset enumeration.
    pub fn coarsen(&self, bins: usize) -> Result<Self> {
        let n = self.len();
        if bins == 0 {
            return Err(Error::InvalidParameter("cannot coarsen to 0 bins".into()));
        }
        if bins >= n {
            return Ok(self.clone());
        }
        let mut p = vec![0.0; bins];
        let mut q = vec![0.0; bins];
        for (i, (pi, qi)) in self.atoms().enumerate() {
            let b = i * bins / n;
            p[b] += pi;
            q[b] += qi;
        }
        Self::new(
            DiscreteDistribution::from_unnormalized(p)?,
            DiscreteDistribution::from_unnormalized(q)?,
        )
    }
}

/// `((s·P) ∧ Q)(Ω) = Σ min(s·p_i, q_i)`, for `s ∈ [0, ∞]`.
///
/// At `s = ∞` this is `Q(supp P)`.
pub fn measure_min(pair: &DistPair, s: f64) -> f64 {
    compensated_sum(pair.atoms().map(|(p, q)| scaled(s, p).min(q)))
}

/// Full-mass total variation `Σ |p_i − q_i|`, in `[0, 2]`.
pub fn total_variation(p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::SupportMismatch(p.len(), q.len()));
    }
    Ok(compensated_sum(
        p.weights.iter().zip(&q.weights).map(|(a, b)| (a - b).abs()),
    ))
}

/// Per-atom densities with respect to `P + Q` and likelihood ratios `q_i / p_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LikelihoodRatioProfile {
    /// `dP/d(P+Q)` on each atom; zero on inert atoms.
    pub dp: Vec<f64>,
    /// `dQ/d(P+Q)` on each atom; zero on inert atoms.
    pub dq: Vec<f64>,
    /// `q_i / p_i` with `0/0 = 0` and `q/0 = +∞`.
    pub ratio: Vec<f64>,
    /// Atoms outside both supports.
    pub inert: Vec<bool>,
}

impl LikelihoodRatioProfile {
    /// Atom indices of the joint support ordered by nondecreasing ratio,
    /// ties by index.
    pub fn sorted_atoms(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.ratio.len()).filter(|&i| !self.inert[i]).collect();
        idx.sort_by(|&a, &b| self.ratio[a].total_cmp(&self.ratio[b]).then(a.cmp(&b)));
        idx
    }
}

/// `q / p` with `0/0 = 0` and `q/0 = +∞`.
#[inline]
pub fn likelihood_ratio(p: f64, q: f64) -> f64 {
    if p > 0.0 {
        q / p
    } else if q > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

pub fn ratio_profile(pair: &DistPair) -> LikelihoodRatioProfile {
    let n = pair.len();
    let mut dp = Vec::with_capacity(n);
    let mut dq = Vec::with_capacity(n);
    let mut ratio = Vec::with_capacity(n);
    let mut inert = Vec::with_capacity(n);
    for (p, q) in pair.atoms() {
        let total = p + q;
        if total > 0.0 {
            dp.push(p / total);
            dq.push(q / total);
            inert.push(false);
        } else {
            dp.push(0.0);
            dq.push(0.0);
            inert.push(true);
        }
        ratio.push(likelihood_ratio(p, q));
    }
    LikelihoodRatioProfile {
        dp,
        dq,
        ratio,
        inert,
    }
}

/// One weighted normal component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GmmComponent {
    pub weight: f64,
    pub mean: f64,
    pub std: f64,
}

/// A 1-D Gaussian mixture.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GmmSpec {
    pub components: Vec<GmmComponent>,
}

impl GmmSpec {
    pub fn new(components: Vec<GmmComponent>) -> Result<Self> {
        let spec = Self { components };
        spec.validate()?;
        Ok(spec)
    }

    /// Builds from `(weight, mean, std)` triples.
    pub fn from_triples(triples: &[(f64, f64, f64)]) -> Result<Self> {
        Self::new(
            triples
                .iter()
                .map(|&(weight, mean, std)| GmmComponent { weight, mean, std })
                .collect(),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::InvalidGmm("no components".into()));
        }
        for (i, c) in self.components.iter().enumerate() {
            if !(c.weight > 0.0 && c.weight <= 1.0) {
                return Err(Error::InvalidGmm(format!(
                    "component {i}: weight {} not in (0, 1]",
                    c.weight
                )));
            }
            if !(c.std > 0.0) || !c.std.is_finite() {
                return Err(Error::InvalidGmm(format!(
                    "component {i}: std {} must be positive",
                    c.std
                )));
            }
            if !c.mean.is_finite() {
                return Err(Error::InvalidGmm(format!("component {i}: non-finite mean")));
            }
        }
        let total: f64 = self.components.iter().map(|c| c.weight).sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidGmm(format!("weights sum to {total}")));
        }
        Ok(())
    }

    pub fn density(&self, x: f64) -> f64 {
        const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
        self.components
            .iter()
            .map(|c| {
                let z = (x - c.mean) / c.std;
                c.weight * INV_SQRT_2PI / c.std * (-0.5 * z * z).exp()
            })
            .sum()
    }

    /// Mixture density with each component truncated to `mean ± span·std`.
    ///
    /// Truncated components are not renormalized; callers renormalize the
    /// discretized vector as a whole.
    pub fn truncated_density(&self, x: f64, span: f64) -> f64 {
        const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
        self.components
            .iter()
            .map(|c| {
                let z = (x - c.mean) / c.std;
                if z.abs() > span {
                    0.0
                } else {
                    c.weight * INV_SQRT_2PI / c.std * (-0.5 * z * z).exp()
                }
            })
            .sum()
    }

    fn mean_range(&self) -> (f64, f64) {
        self.components
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| {
                (lo.min(c.mean), hi.max(c.mean))
            })
    }

    fn max_std(&self) -> f64 {
        self.components.iter().map(|c| c.std).fold(0.0, f64::max)
    }
}

/// Uniform grid covering `[min mean − span·max std, max mean + span·max std]`
/// over both mixtures.
pub fn shared_grid(
    spec_p: &GmmSpec,
    spec_q: &GmmSpec,
    grid_points: usize,
    sigma_span: f64,
) -> Result<Vec<f64>> {
    spec_p.validate()?;
    spec_q.validate()?;
    if grid_points < 2 {
        return Err(Error::DegenerateGrid(format!(
            "need at least 2 grid points, got {grid_points}"
        )));
    }
    if !(sigma_span > 0.0) || !sigma_span.is_finite() {
        return Err(Error::DegenerateGrid(format!(
            "sigma span must be positive, got {sigma_span}"
        )));
    }
    let (lo_p, hi_p) = spec_p.mean_range();
    let (lo_q, hi_q) = spec_q.mean_range();
    let sigma = spec_p.max_std().max(spec_q.max_std());
    let lo = lo_p.min(lo_q) - sigma_span * sigma;
    let hi = hi_p.max(hi_q) + sigma_span * sigma;
    if !(hi > lo) {
        return Err(Error::DegenerateGrid(format!("zero-width span [{lo}, {hi}]")));
    }
    let step = (hi - lo) / (grid_points - 1) as f64;
    Ok((0..grid_points).map(|k| lo + step * k as f64).collect())
}

/// Evaluates both mixtures on a shared grid and renormalizes each to a
/// probability vector.
///
/// Each component is truncated at `sigma_span` standard deviations, so the
/// discrete supports reflect which modes are actually present: without the
/// cut every Gaussian charges every grid point and `P(supp Q)` is always 1.
pub fn discretize_gmm(
    spec_p: &GmmSpec,
    spec_q: &GmmSpec,
    grid_points: usize,
    sigma_span: f64,
) -> Result<DistPair> {
    let grid = shared_grid(spec_p, spec_q, grid_points, sigma_span)?;
    for (label, spec) in [("P", spec_p), ("Q", spec_q)] {
        for (k, c) in spec.components.iter().enumerate() {
            if !grid.iter().any(|&x| ((x - c.mean) / c.std).abs() <= sigma_span) {
                return Err(Error::DegenerateGrid(format!(
                    "component {k} of {label} falls between grid points; increase grid_points"
                )));
            }
        }
    }
    let p: Vec<f64> = grid
        .iter()
        .map(|&x| spec_p.truncated_density(x, sigma_span))
        .collect();
    let q: Vec<f64> = grid
        .iter()
        .map(|&x| spec_q.truncated_density(x, sigma_span))
        .collect();
    DistPair::new(
        DiscreteDistribution::from_unnormalized(p)?,
        DiscreteDistribution::from_unnormalized(q)?,
    )
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

    /// `min_A s·P(Aᶜ) + Q(A)` by enumeration of all subsets.
    fn subset_min(pair: &DistPair, s: f64) -> f64 {
        let n = pair.len();
        let (p, q) = (pair.p().weights(), pair.q().weights());
        (0..1u32 << n)
            .map(|mask| {
                let (mut pa, mut qa) = (0.0, 0.0);
                for i in 0..n {
                    if mask >> i & 1 == 1 {
                        pa += p[i];
                        qa += q[i];
                    }
                }
                s * (1.0 - pa) + qa
            })
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn measure_min_examples() {
        assert_eq!(measure_min(&pair(&[0.5, 0.5], &[0.5, 0.5]), 1.0), 1.0);
        assert_eq!(measure_min(&pair(&[1.0, 0.0], &[0.0, 1.0]), 1.0), 0.0);
        let p = three_atom();
        assert_eq!(subset_min(&p, 1.0), 0.5);
        assert_eq!(measure_min(&p, 1.0), 0.5);
    }

    #[test]
    fn measure_min_infinite_scale_is_q_mass_on_p_support() {
        let p = three_atom();
        assert_eq!(measure_min(&p, f64::INFINITY), 0.5);
        assert_eq!(p.q_mass_on_p_support(), 0.5);
        assert_eq!(measure_min(&p.swapped(), f64::INFINITY), 1.0);
        assert_eq!(measure_min(&p, 0.0), 0.0);
    }

    #[test]
    fn total_variation_examples() {
        let d = DiscreteDistribution::new(vec![0.3, 0.7]).unwrap();
        assert_eq!(total_variation(&d, &d).unwrap(), 0.0);
        let a = DiscreteDistribution::point(2, 0).unwrap();
        let b = DiscreteDistribution::point(2, 1).unwrap();
        assert_eq!(total_variation(&a, &b).unwrap(), 2.0);
        let p = three_atom();
        let tv = total_variation(p.p(), p.q()).unwrap();
        assert_eq!(tv, 1.0);
        assert_eq!(tv, 2.0 * (1.0 - measure_min(&p, 1.0)));
    }

    #[test]
    fn total_variation_rejects_mismatch() {
        let a = DiscreteDistribution::uniform(2).unwrap();
        let b = DiscreteDistribution::uniform(3).unwrap();
        assert!(matches!(
            total_variation(&a, &b),
            Err(Error::SupportMismatch(2, 3))
        ));
        assert!(DistPair::new(a, b).is_err());
    }

    #[test]
    fn ratio_profile_examples() {
        let prof = ratio_profile(&pair(&[0.5, 0.5], &[0.5, 0.5]));
        assert_eq!(prof.ratio, vec![1.0, 1.0]);
        let prof = ratio_profile(&three_atom());
        assert_eq!(prof.ratio, vec![0.5, 0.5, f64::INFINITY]);
        let prof = ratio_profile(&pair(&[1.0, 0.0], &[0.5, 0.5]));
        assert_eq!(prof.ratio, vec![0.5, f64::INFINITY]);
        for i in 0..2 {
            assert!((prof.dp[i] + prof.dq[i] - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn ratio_profile_flags_inert_atoms() {
        let prof = ratio_profile(&pair(&[0.5, 0.0, 0.5], &[0.5, 0.0, 0.5]));
        assert_eq!(prof.inert, vec![false, true, false]);
        assert_eq!(prof.ratio[1], 0.0);
        assert_eq!(prof.sorted_atoms(), vec![0, 2]);
    }

    #[test]
    fn constructor_rejects_bad_weights() {
        assert!(matches!(
            DiscreteDistribution::new(vec![0.5, -0.1, 0.6]),
            Err(Error::NegativeWeight { index: 1, .. })
        ));
        assert!(matches!(
            DiscreteDistribution::new(vec![0.5, 0.4]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(DiscreteDistribution::new(vec![]).is_err());
        assert!(DiscreteDistribution::new(vec![f64::NAN, 1.0]).is_err());
        let d = DiscreteDistribution::new(vec![0.5, 0.5 + 5e-10]).unwrap();
        assert_eq!(d.weights().iter().sum::<f64>(), 1.0);
    }

    #[test]
    fn gmm_identical_specs_discretize_equal() {
        let spec = GmmSpec::from_triples(&[(0.3, -1.0, 0.5), (0.7, 2.0, 1.5)]).unwrap();
        let pair = discretize_gmm(&spec, &spec, DEFAULT_GRID_POINTS, DEFAULT_SIGMA_SPAN).unwrap();
        for (p, q) in pair.atoms() {
            assert!((p - q).abs() <= 1e-12);
        }
        assert_eq!(pair.len(), DEFAULT_GRID_POINTS);
    }

    #[test]
    fn gmm_far_apart_have_negligible_overlap() {
        let a = GmmSpec::from_triples(&[(1.0, 0.0, 1.0)]).unwrap();
        let b = GmmSpec::from_triples(&[(1.0, 20.0, 1.0)]).unwrap();
        let pair = discretize_gmm(&a, &b, 2001, 6.0).unwrap();
        assert!(measure_min(&pair, 1.0) < 1e-6);
        assert!(pair.is_singular());
    }

    #[test]
    fn gmm_dropped_component_leaves_p_mass_off_q_support() {
        let third = 1.0 / 3.0;
        let p = GmmSpec::from_triples(&[(third, -4.0, 0.5), (third, 0.0, 0.5), (third, 4.0, 0.5)])
            .unwrap();
        let q = GmmSpec::from_triples(&[(0.5, -4.0, 0.5), (0.5, 0.0, 0.5)]).unwrap();
        let pair = discretize_gmm(&p, &q, 2001, 6.0).unwrap();
        assert!(pair.p_mass_on_q_support() < 1.0);
    }

    #[test]
    fn gmm_validation() {
        assert!(GmmSpec::from_triples(&[(1.0, 0.0, 0.0)]).is_err());
        assert!(GmmSpec::from_triples(&[(0.5, 0.0, 1.0)]).is_err());
        assert!(GmmSpec::from_triples(&[]).is_err());
        let s = GmmSpec::from_triples(&[(1.0, 0.0, 1.0)]).unwrap();
        assert!(matches!(
            discretize_gmm(&s, &s, 1, 6.0),
            Err(Error::DegenerateGrid(_))
        ));
        assert!(matches!(
            discretize_gmm(&s, &s, 10, 0.0),
            Err(Error::DegenerateGrid(_))
        ));
    }

    #[test]
    fn coarsen_preserves_mass() {
        let spec_p = GmmSpec::from_triples(&[(1.0, 0.0, 1.0)]).unwrap();
        let spec_q = GmmSpec::from_triples(&[(1.0, 1.0, 1.0)]).unwrap();
        let pair = discretize_gmm(&spec_p, &spec_q, 101, 6.0).unwrap();
        let c = pair.coarsen(12).unwrap();
        assert_eq!(c.len(), 12);
        assert!((c.p().weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
