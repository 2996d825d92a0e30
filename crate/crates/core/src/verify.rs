//! Random instance generation and the oracle verification suite.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::Serialize;

use crate::dist::{DiscreteDistribution, DistPair};
use crate::duality::alpha_from_lorenz;
use crate::error::{Error, Result};
use crate::lorenz::lorenz_curve;
use crate::oracle::{
    oracle_alpha, oracle_soft_f_domination, oracle_sup_ratio, LorenzEnvelope, OracleReport,
    MAX_LORENZ_ENUMERATION,
};
use crate::pr::{alpha, ratio_augmented_grid};

/// Probability that an atom is zeroed in one of the two marginals.
pub const ZERO_ATOM_RATE: f64 = 0.1;

pub const LORENZ_ORACLE_TOL: f64 = 1e-9;
pub const DUALITY_TOL: f64 = 1e-9;

/// Soft sets sampled per instance by the verification suite.
pub const SOFT_TRIALS: usize = 200;

/// Flat Dirichlet draw of length `n`.
pub fn dirichlet<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

/// Random pair on `n ∈ [min_n, max_n]` atoms: flat Dirichlet marginals with
/// roughly `ZERO_ATOM_RATE` of atoms zeroed in one marginal.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, min_n: usize, max_n: usize) -> DistPair {
    let n = rng.random_range(min_n.max(1)..=max_n.max(min_n).max(1));
    loop {
        let mut p = dirichlet(rng, n);
        let mut q = dirichlet(rng, n);
        for i in 0..n {
            if rng.random_bool(ZERO_ATOM_RATE) {
                if rng.random_bool(0.5) {
                    p[i] = 0.0;
                } else {
                    q[i] = 0.0;
                }
            }
        }
        if let (Ok(p), Ok(q)) = (
            DiscreteDistribution::from_unnormalized(p),
            DiscreteDistribution::from_unnormalized(q),
        ) {
            if let Ok(pair) = DistPair::new(p, q) {
                return pair;
            }
        }
    }
}

/// Random `μ` absolutely continuous w.r.t. both marginals, supported on a
/// random nonempty subset of the common support. `None` if `P ⊥ Q`.
pub fn random_common_component<R: Rng + ?Sized>(rng: &mut R, pair: &DistPair) -> Option<DiscreteDistribution> {
    let common: Vec<usize> = pair
        .atoms()
        .enumerate()
        .filter(|(_, (p, q))| *p > 0.0 && *q > 0.0)
        .map(|(i, _)| i)
        .collect();
    if common.is_empty() {
        return None;
    }
    let mut w = vec![0.0; pair.len()];
    let forced = common[rng.random_range(0..common.len())];
    for &i in &common {
        if i == forced || rng.random_bool(0.7) {
            w[i] = rng.sample::<f64, _>(Exp1) + 1e-3;
        }
    }
    DiscreteDistribution::from_unnormalized(w).ok()
}

/// Degenerate geometries: singular, identical, one-atom overlap, and mass
/// missing from one side.
pub fn fixtures() -> Vec<DistPair> {
    let w = |p: &[f64], q: &[f64]| DistPair::from_weights(p.to_vec(), q.to_vec()).expect("valid fixture");
    vec![
        w(&[1.0, 0.0], &[0.0, 1.0]),
        w(&[0.5, 0.5, 0.0, 0.0], &[0.0, 0.0, 0.3, 0.7]),
        w(&[0.5, 0.5], &[0.5, 0.5]),
        w(&[0.2, 0.3, 0.1, 0.4], &[0.2, 0.3, 0.1, 0.4]),
        w(&[0.6, 0.4, 0.0], &[0.0, 0.3, 0.7]),
        w(&[0.7, 0.1, 0.2, 0.0, 0.0], &[0.0, 0.0, 0.5, 0.25, 0.25]),
        w(&[0.5, 0.5, 0.0], &[0.25, 0.25, 0.5]),
        w(&[1.0], &[1.0]),
        w(&[0.25; 4], &[0.1, 0.2, 0.3, 0.4]),
    ]
}

/// A report together with the tolerance it is held to.
#[derive(Debug, Clone, PartialEq)]
pub struct Checked {
    pub report: OracleReport,
    pub tol: f64,
}

impl Checked {
    pub fn passed(&self) -> bool {
        self.report.gap <= self.tol
    }
}

fn grid_for(pair: &DistPair) -> Vec<f64> {
    ratio_augmented_grid(pair, &[0.1, 0.5, 1.0, 2.0, 10.0])
}

/// Runs every oracle on one pair.
///
/// Alpha and sup-ratio oracles need `n ≤ 20`; the Lorenz envelope needs
/// `n ≤ 16` and is skipped above that.
pub fn pair_reports<R: Rng + ?Sized>(pair: &DistPair, rng: &mut R) -> Result<Vec<Checked>> {
    let n = pair.len() as f64;
    let mut out = Vec::new();
    let grid = grid_for(pair);
    for &lambda in &grid {
        out.push(Checked {
            report: oracle_alpha(pair, lambda)?,
            tol: 1e-12 * n,
        });
    }
    for (mu, nu) in [(pair.p(), pair.q()), (pair.q(), pair.p())] {
        let report = oracle_sup_ratio(mu, nu)?;
        let tol = 1e-12 * report.closed_form.max(1.0);
        out.push(Checked { report, tol });
    }
    let curve = lorenz_curve(pair);
    if pair.len() <= MAX_LORENZ_ENUMERATION {
        let env = LorenzEnvelope::new(pair)?;
        for k in 0..=10 {
            out.push(Checked {
                report: env.report(&curve, k as f64 / 10.0)?,
                tol: LORENZ_ORACLE_TOL,
            });
        }
    }
    for &lambda in &grid {
        out.push(Checked {
            report: OracleReport::new(
                "duality_alpha",
                alpha(pair, lambda),
                alpha_from_lorenz(&curve, lambda)?,
                Vec::new(),
            ),
            tol: DUALITY_TOL,
        });
    }
    let lambda = grid[rng.random_range(0..grid.len())];
    for l in [1.0, lambda] {
        out.push(Checked {
            report: oracle_soft_f_domination(pair, l, SOFT_TRIALS, rng)?,
            // Domination is enforced inside the oracle; the gap is the
            // distance of the best sample from the optimum.
            tol: f64::INFINITY,
        });
    }
    Ok(out)
}

/// Runs [`pair_reports`] with a fixed seed and returns the largest finite
/// gap, or the first failure.
pub fn cross_check_pair(pair: &DistPair) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut worst: f64 = 0.0;
    for c in pair_reports(pair, &mut rng)? {
        if !c.passed() {
            return Err(c.report.check(c.tol).unwrap_err());
        }
        if c.tol.is_finite() {
            worst = worst.max(c.report.gap);
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub instances: usize,
    pub min_support: usize,
    pub max_support: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            instances: 1000,
            min_support: 2,
            max_support: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub instances: usize,
    pub checks: usize,
    /// Largest-gap report per quantity.
    pub worst: Vec<OracleReport>,
    pub violations: Vec<String>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Fixtures followed by `cfg.instances` random pairs, all oracles on each.
pub fn run_verification(cfg: &VerifyConfig) -> Result<VerifySummary> {
    if cfg.min_support == 0 || cfg.min_support > cfg.max_support {
        return Err(Error::InvalidParameter(format!(
            "support range {}..={} is empty",
            cfg.min_support, cfg.max_support
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut pairs = fixtures();
    for _ in 0..cfg.instances {
        pairs.push(random_pair(&mut rng, cfg.min_support, cfg.max_support));
    }
    let mut worst: BTreeMap<String, OracleReport> = BTreeMap::new();
    let mut violations = Vec::new();
    let mut checks = 0;
    for (i, pair) in pairs.iter().enumerate() {
        let reports = match pair_reports(pair, &mut rng) {
            Ok(r) => r,
            Err(e) if e.is_violation() => {
                violations.push(format!("instance {i}: {e}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        for c in reports {
            checks += 1;
            if !c.passed() {
                violations.push(format!("instance {i}: {}", c.report));
            }
            let entry = worst.entry(c.report.quantity.clone()).or_insert_with(|| c.report.clone());
            if c.report.gap > entry.gap {
                *entry = c.report;
            }
        }
    }
    Ok(VerifySummary {
        instances: pairs.len(),
        checks,
        worst: worst.into_values().collect(),
        violations,
    })
}
