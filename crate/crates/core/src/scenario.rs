//! Named scenarios, run configuration, and the curve bundle written per run.
//!
//! Scenario parameters live in `scenarios.json` at the crate root, compiled
//! into the library so every run of a given version sees the same mixtures.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::adaptation::{bound_report, BoundReport, DaInstance};
use crate::dist::{discretize_gmm, total_variation, DistPair, GmmSpec, DEFAULT_GRID_POINTS, DEFAULT_SIGMA_SPAN};
use crate::error::{Error, Result};
use crate::io::{write_file, write_frontier_csv, write_lorenz_csv, write_pr_csv, write_roc_csv};
use crate::lorenz::{lorenz_curve, roc_curve, LorenzCurve};
use crate::pr::{default_lambda_grid, pr_curve, PrCurve, DEFAULT_LAMBDA_COUNT};
use crate::renyi::{frontier_from_pr, FrontierPoint};
use crate::verify::cross_check_pair;

const SCENARIOS_JSON: &str = include_str!("../scenarios.json");

/// Support size the scenario pair is coarsened to for subset enumeration.
pub const CROSS_CHECK_BINS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioName {
    Identical,
    Singular,
    ModeDrop,
    ModeInvent,
    ModeReweight,
    #[serde(rename = "fig2-like")]
    Fig2Like,
}

impl ScenarioName {
    pub const ALL: [ScenarioName; 6] = [
        ScenarioName::Identical,
        ScenarioName::Singular,
        ScenarioName::ModeDrop,
        ScenarioName::ModeInvent,
        ScenarioName::ModeReweight,
        ScenarioName::Fig2Like,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioName::Identical => "identical",
            ScenarioName::Singular => "singular",
            ScenarioName::ModeDrop => "mode-drop",
            ScenarioName::ModeInvent => "mode-invent",
            ScenarioName::ModeReweight => "mode-reweight",
            ScenarioName::Fig2Like => "fig2-like",
        }
    }
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownScenario(s.to_owned()))
    }
}

/// Where a scenario's pair comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ScenarioSource {
    Gmm { p: GmmSpec, q: GmmSpec },
    Discrete { p: Vec<f64>, q: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub name: ScenarioName,
    #[serde(flatten)]
    pub source: ScenarioSource,
}

#[derive(Debug, Clone, Deserialize)]
struct ScenarioFile {
    version: u32,
    scenarios: Vec<ScenarioSpec>,
}

fn scenario_file() -> Result<ScenarioFile> {
    Ok(serde_json::from_str(SCENARIOS_JSON)?)
}

/// Version of the bundled scenario parameters.
pub fn scenarios_version() -> u32 {
    scenario_file().map(|f| f.version).unwrap_or(0)
}

impl ScenarioSpec {
    pub fn builtin(name: ScenarioName) -> Result<Self> {
        scenario_file()?
            .scenarios
            .into_iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownScenario(name.to_string()))
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Self::builtin(name.parse()?)
    }

    /// The concrete pair on the support the config prescribes.
    pub fn expand(&self, cfg: &RunConfig) -> Result<DistPair> {
        match &self.source {
            ScenarioSource::Gmm { p, q } => discretize_gmm(p, q, cfg.grid_points, cfg.sigma_span),
            ScenarioSource::Discrete { p, q } => DistPair::from_weights(p.clone(), q.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub lambda_count: usize,
    pub grid_points: usize,
    pub sigma_span: f64,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            lambda_count: DEFAULT_LAMBDA_COUNT,
            grid_points: DEFAULT_GRID_POINTS,
            sigma_span: DEFAULT_SIGMA_SPAN,
            seed: 0,
            out_dir: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.lambda_count == 0 {
            return Err(Error::InvalidParameter("lambda count must be positive".into()));
        }
        if self.grid_points < 2 {
            return Err(Error::DegenerateGrid(format!(
                "need at least 2 grid points, got {}",
                self.grid_points
            )));
        }
        if !(self.sigma_span > 0.0 && self.sigma_span.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sigma span must be positive, got {}",
                self.sigma_span
            )));
        }
        Ok(())
    }

    pub fn lambda_grid(&self) -> Vec<f64> {
        default_lambda_grid(self.lambda_count)
    }
}

/// All four curves for one pair.
#[derive(Debug, Clone)]
pub struct CurveSet {
    pub pr: PrCurve,
    pub lorenz: LorenzCurve,
    pub roc: Vec<(f64, f64)>,
    pub frontier: Vec<FrontierPoint>,
}

impl CurveSet {
    pub fn compute(pair: &DistPair, grid: &[f64]) -> Result<Self> {
        let pr = pr_curve(pair, grid)?;
        let lorenz = lorenz_curve(pair);
        let roc = roc_curve(&lorenz);
        let frontier = frontier_from_pr(&pr);
        Ok(Self {
            pr,
            lorenz,
            roc,
            frontier,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignatureCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl SignatureCheck {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_owned(),
            passed,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub scenario: ScenarioName,
    pub scenarios_version: u32,
    pub support_size: usize,
    pub lambda_count: usize,
    pub grid_points: usize,
    pub sigma_span: f64,
    pub alpha_1: f64,
    pub tv: f64,
    pub alpha_inf: f64,
    pub beta_0: f64,
    pub checks: Vec<SignatureCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundReport>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone)]
pub struct ScenarioRun {
    pub pair: DistPair,
    pub curves: CurveSet,
    pub summary: Summary,
}

fn signature_checks(name: ScenarioName, pair: &DistPair, curves: &CurveSet, s: &Summary) -> Vec<SignatureCheck> {
    let mut checks = Vec::new();
    let gap = (s.tv - 2.0 * (1.0 - s.alpha_1)).abs();
    checks.push(SignatureCheck::new(
        "tv_identity",
        gap <= 1e-12,
        format!("|TV - 2(1 - alpha_1)| = {gap:e}"),
    ));
    match name {
        ScenarioName::Identical => {
            let worst = curves
                .pr
                .points()
                .iter()
                .map(|p| (p.alpha - p.lambda.min(1.0)).abs())
                .fold(0.0, f64::max);
            checks.push(SignatureCheck::new(
                "alpha_is_min_lambda_1",
                worst <= 1e-12,
                format!("max |alpha - min(lambda, 1)| = {worst:e}"),
            ));
            let diagonal = curves.lorenz.breakpoints() == [(0.0, 0.0), (1.0, 1.0)];
            checks.push(SignatureCheck::new(
                "lorenz_diagonal",
                diagonal,
                format!("{} breakpoints", curves.lorenz.breakpoints().len()),
            ));
        }
        ScenarioName::Singular => {
            let zero_pr = curves.pr.points().iter().all(|p| p.alpha == 0.0 && p.beta == 0.0);
            checks.push(SignatureCheck::new("pr_all_zero", zero_pr, format!("singular = {}", pair.is_singular())));
            let zero_f = curves.lorenz.breakpoints().iter().all(|&(_, f)| f == 0.0);
            checks.push(SignatureCheck::new("lorenz_zero", zero_f, String::new()));
            let inf = curves.frontier.iter().all(|p| p.pi == f64::INFINITY && p.rho == f64::INFINITY);
            checks.push(SignatureCheck::new("frontier_infinite", inf, String::new()));
        }
        ScenarioName::ModeDrop => checks.push(SignatureCheck::new(
            "recall_gap",
            s.beta_0 < 0.95,
            format!("beta_0 = {}", s.beta_0),
        )),
        ScenarioName::ModeInvent => checks.push(SignatureCheck::new(
            "precision_gap",
            s.alpha_inf < 0.95,
            format!("alpha_inf = {}", s.alpha_inf),
        )),
        ScenarioName::ModeReweight => checks.push(SignatureCheck::new(
            "extremes_not_simultaneous",
            s.beta_0 > 0.999 && s.alpha_inf > 0.999 && s.alpha_1 < 0.999,
            format!("beta_0 = {}, alpha_inf = {}, alpha_1 = {}", s.beta_0, s.alpha_inf, s.alpha_1),
        )),
        ScenarioName::Fig2Like => checks.push(SignatureCheck::new(
            "alpha_1_bracket",
            (0.36..=0.40).contains(&s.alpha_1),
            format!("alpha_1 = {}", s.alpha_1),
        )),
    }
    checks
}

/// Expands the scenario, computes every curve, and runs the scenario's
/// signature checks plus the cross-module checks on a coarsened copy.
///
/// If `mask` is given the domain-adaptation bound report is included. Files
/// are written when `cfg.out_dir` is set.
pub fn run_scenario(spec: &ScenarioSpec, cfg: &RunConfig, mask: Option<&[bool]>) -> Result<ScenarioRun> {
    cfg.validate()?;
    let pair = spec.expand(cfg)?;
    let curves = CurveSet::compute(&pair, &cfg.lambda_grid())?;
    let alpha_1 = curves
        .pr
        .at(1.0)
        .map(|p| p.alpha)
        .unwrap_or_else(|| crate::pr::alpha(&pair, 1.0));
    let bounds = match mask {
        Some(m) => Some(bound_report(&DaInstance::new(pair.clone(), m.to_vec())?)?),
        None => None,
    };
    let mut summary = Summary {
        scenario: spec.name,
        scenarios_version: scenarios_version(),
        support_size: pair.len(),
        lambda_count: cfg.lambda_count,
        grid_points: cfg.grid_points,
        sigma_span: cfg.sigma_span,
        alpha_1,
        tv: total_variation(pair.p(), pair.q())?,
        alpha_inf: curves.pr.alpha_at_infinity(),
        beta_0: curves.pr.beta_at_zero(),
        checks: Vec::new(),
        bounds,
    };
    summary.checks = signature_checks(spec.name, &pair, &curves, &summary);
    let coarse = pair.coarsen(CROSS_CHECK_BINS)?;
    let cross = cross_check_pair(&coarse);
    summary.checks.push(SignatureCheck::new(
        "cross_checks",
        cross.is_ok(),
        match &cross {
            Ok(worst) => format!("worst oracle gap {worst:e} on {} bins", coarse.len()),
            Err(e) => e.to_string(),
        },
    ));

    let run = ScenarioRun {
        pair,
        curves,
        summary,
    };
    if let Some(dir) = &cfg.out_dir {
        emit_curves(&run, dir)?;
    }
    Ok(run)
}

/// Writes `pr.csv`, `lorenz.csv`, `roc.csv`, `frontier.csv` and
/// `summary.json` into `dir`.
pub fn emit_curves(run: &ScenarioRun, dir: &Path) -> Result<()> {
    let c = &run.curves;
    let mut buf = Vec::new();
    write_pr_csv(&mut buf, &c.pr)?;
    write_file(dir, "pr.csv", &buf)?;
    buf.clear();
    write_lorenz_csv(&mut buf, &c.lorenz)?;
    write_file(dir, "lorenz.csv", &buf)?;
    buf.clear();
    write_roc_csv(&mut buf, &c.roc)?;
    write_file(dir, "roc.csv", &buf)?;
    buf.clear();
    write_frontier_csv(&mut buf, &c.frontier)?;
    write_file(dir, "frontier.csv", &buf)?;
    let mut json = serde_json::to_string_pretty(&run.summary)?;
    json.push('\n');
    write_file(dir, "summary.json", json.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in ScenarioName::ALL {
            assert_eq!(n.as_str().parse::<ScenarioName>().unwrap(), n);
            assert_eq!(ScenarioSpec::builtin(n).unwrap().name, n);
        }
        assert!(matches!("nope".parse::<ScenarioName>(), Err(Error::UnknownScenario(_))));
        assert_eq!(scenarios_version(), 1);
    }

    #[test]
    fn mode_invent_is_mode_drop_swapped() {
        let drop = ScenarioSpec::builtin(ScenarioName::ModeDrop).unwrap();
        let invent = ScenarioSpec::builtin(ScenarioName::ModeInvent).unwrap();
        match (drop.source, invent.source) {
            (ScenarioSource::Gmm { p: dp, q: dq }, ScenarioSource::Gmm { p: ip, q: iq }) => {
                assert_eq!(dp, iq);
                assert_eq!(dq, ip);
            }
            _ => panic!("expected mixtures"),
        }
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::default().validate().is_ok());
        let bad = RunConfig {
            grid_points: 1,
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = RunConfig {
            sigma_span: 0.0,
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn discrete_source_expands_directly() {
        let spec = ScenarioSpec {
            name: ScenarioName::Identical,
            source: ScenarioSource::Discrete {
                p: vec![0.5, 0.5],
                q: vec![0.5, 0.5],
            },
        };
        let run = run_scenario(&spec, &RunConfig::default(), None).unwrap();
        assert_eq!(run.summary.alpha_1, 1.0);
        assert!(run.summary.passed(), "{:?}", run.summary.checks);
    }
}
