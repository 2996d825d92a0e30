//! File formats: paired-distribution and mixture JSON, error masks, and the
//! CSV schemas of each curve.
//!
//! Floats are written in the shortest form that parses back to the same
//! `f64`, with `inf` for infinity, so output is byte-stable and lossless.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dist::{DiscreteDistribution, DistPair, GmmSpec};
use crate::error::{Error, Result};
use crate::lorenz::LorenzCurve;
use crate::pr::{PrCurve, PrPoint};
use crate::renyi::FrontierPoint;

/// Accepted deviation of input weight sums from 1; inputs inside it are
/// renormalized.
pub const INPUT_SUM_TOL: f64 = 1e-6;

pub fn format_float(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else if x == 0.0 {
        "0".into()
    } else {
        format!("{x}")
    }
}

pub fn parse_float(s: &str) -> Result<f64> {
    let s = s.trim();
    match s {
        "inf" | "+inf" | "Infinity" => Ok(f64::INFINITY),
        "-inf" | "-Infinity" => Ok(f64::NEG_INFINITY),
        _ => s
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("not a number: '{s}'"))),
    }
}

/// JSON number, or the string `"inf"` for values JSON cannot hold.
pub fn json_float(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(x)
        .map(serde_json::Value::Number)
        .unwrap_or_else(|| serde_json::Value::String(format_float(x)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub p: f64,
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairFile {
    pub atoms: Vec<Atom>,
}

impl From<&DistPair> for PairFile {
    fn from(pair: &DistPair) -> Self {
        Self {
            atoms: pair.atoms().map(|(p, q)| Atom { p, q }).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaskFile {
    pub error_atoms: Vec<usize>,
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn validated(weights: Vec<f64>) -> Result<DiscreteDistribution> {
    for (index, &value) in weights.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite { index, value });
        }
        if value < 0.0 {
            return Err(Error::NegativeWeight { index, value });
        }
    }
    DiscreteDistribution::with_tolerance(weights, INPUT_SUM_TOL)
}

/// Parses `{"atoms": [{"p": …, "q": …}, …]}` into a validated pair.
pub fn parse_distribution_str(s: &str) -> Result<DistPair> {
    let file: PairFile = serde_json::from_str(s)?;
    if file.atoms.is_empty() {
        return Err(Error::EmptySupport);
    }
    let p = validated(file.atoms.iter().map(|a| a.p).collect())?;
    let q = validated(file.atoms.iter().map(|a| a.q).collect())?;
    DistPair::new(p, q)
}

pub fn parse_distribution(path: impl AsRef<Path>) -> Result<DistPair> {
    parse_distribution_str(&read_to_string(path.as_ref())?)
}

pub fn distribution_to_string(pair: &DistPair) -> Result<String> {
    Ok(serde_json::to_string_pretty(&PairFile::from(pair))?)
}

pub fn write_distribution(pair: &DistPair, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut s = distribution_to_string(pair)?;
    s.push('\n');
    fs::write(path, s).map_err(|e| Error::io(path, e))
}

pub fn parse_gmm_str(s: &str) -> Result<GmmSpec> {
    let spec: GmmSpec = serde_json::from_str(s)?;
    spec.validate()?;
    Ok(spec)
}

pub fn parse_gmm(path: impl AsRef<Path>) -> Result<GmmSpec> {
    parse_gmm_str(&read_to_string(path.as_ref())?)
}

/// Parses `{"error_atoms": [...]}` into a mask over `n` atoms.
pub fn parse_mask_str(s: &str, n: usize) -> Result<Vec<bool>> {
    let file: MaskFile = serde_json::from_str(s)?;
    let mut mask = vec![false; n];
    for index in file.error_atoms {
        if index >= n {
            return Err(Error::MaskIndex { index, support: n });
        }
        mask[index] = true;
    }
    Ok(mask)
}

pub fn parse_mask(path: impl AsRef<Path>, n: usize) -> Result<Vec<bool>> {
    parse_mask_str(&read_to_string(path.as_ref())?, n)
}

fn write_rows<W: Write>(w: W, header: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> Result<()> {
    let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    out.write_record(header)?;
    for row in rows {
        out.write_record(row.into_iter().map(format_float))?;
    }
    out.flush().map_err(|e| Error::io("<csv output>", e))?;
    Ok(())
}

fn read_rows<R: Read>(r: R, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let found: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if found != header {
        return Err(Error::Parse(format!(
            "expected CSV header {}, found {}",
            header.join(","),
            found.join(",")
        )));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let row = rec.iter().map(parse_float).collect::<Result<Vec<_>>>()?;
        if row.len() != header.len() {
            return Err(Error::Parse(format!("row has {} fields", row.len())));
        }
        rows.push(row);
    }
    Ok(rows)
}

pub const PR_HEADER: [&str; 3] = ["lambda", "alpha", "beta"];
pub const LORENZ_HEADER: [&str; 2] = ["t", "F"];
pub const ROC_HEADER: [&str; 2] = ["x", "y"];
pub const FRONTIER_HEADER: [&str; 3] = ["lambda", "pi", "rho"];

pub fn write_pr_csv<W: Write>(w: W, pr: &PrCurve) -> Result<()> {
    write_rows(w, &PR_HEADER, pr.points().iter().map(|p| vec![p.lambda, p.alpha, p.beta]))
}

pub fn read_pr_csv<R: Read>(r: R) -> Result<PrCurve> {
    let points = read_rows(r, &PR_HEADER)?
        .into_iter()
        .map(|row| PrPoint {
            lambda: row[0],
            alpha: row[1],
            beta: row[2],
            set_mask: None,
        })
        .collect();
    PrCurve::from_points(points)
}

pub fn write_lorenz_csv<W: Write>(w: W, curve: &LorenzCurve) -> Result<()> {
    write_rows(w, &LORENZ_HEADER, curve.breakpoints().iter().map(|&(t, f)| vec![t, f]))
}

pub fn read_lorenz_csv<R: Read>(r: R) -> Result<LorenzCurve> {
    let bps = read_rows(r, &LORENZ_HEADER)?
        .into_iter()
        .map(|row| (row[0], row[1]))
        .collect();
    LorenzCurve::from_breakpoints(bps, 1e-9)
}

pub fn write_roc_csv<W: Write>(w: W, roc: &[(f64, f64)]) -> Result<()> {
    write_rows(w, &ROC_HEADER, roc.iter().map(|&(x, y)| vec![x, y]))
}

pub fn write_frontier_csv<W: Write>(w: W, frontier: &[FrontierPoint]) -> Result<()> {
    write_rows(
        w,
        &FRONTIER_HEADER,
        frontier.iter().map(|p| vec![p.lambda, p.pi, p.rho]),
    )
}

fn json_rows(header: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> serde_json::Value {
    serde_json::Value::Array(
        rows.map(|row| {
            serde_json::Value::Object(
                header
                    .iter()
                    .zip(row)
                    .map(|(k, v)| ((*k).to_owned(), json_float(v)))
                    .collect(),
            )
        })
        .collect(),
    )
}

pub fn pr_json(pr: &PrCurve) -> serde_json::Value {
    json_rows(&PR_HEADER, pr.points().iter().map(|p| vec![p.lambda, p.alpha, p.beta]))
}

pub fn lorenz_json(curve: &LorenzCurve) -> serde_json::Value {
    json_rows(&LORENZ_HEADER, curve.breakpoints().iter().map(|&(t, f)| vec![t, f]))
}

pub fn roc_json(roc: &[(f64, f64)]) -> serde_json::Value {
    json_rows(&ROC_HEADER, roc.iter().map(|&(x, y)| vec![x, y]))
}

pub fn frontier_json(frontier: &[FrontierPoint]) -> serde_json::Value {
    json_rows(
        &FRONTIER_HEADER,
        frontier.iter().map(|p| vec![p.lambda, p.pi, p.rho]),
    )
}

/// Writes `bytes` to `dir/name`, creating `dir` if needed.
pub fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, bytes).map_err(|e| Error::io(&path, e))
}
