//! Manifests and file export.
//!
//! JSON outputs embed their manifest; CSV outputs get a sidecar
//! `<path>.manifest.json`. Outputs carry no timestamps so a fixed seed
//! reproduces files byte for byte.

use crate::error::Result;
use crate::montecarlo::StatisticSeries;
use crate::spectrum::Spectrum;
use crate::sweep::DistanceCurve;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Reproducibility record attached to every output file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub params: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub version: String,
}

impl Manifest {
    pub fn new(command: impl Into<String>, params: Value) -> Self {
        Self {
            command: command.into(),
            params,
            seed: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// Rationals serialize as `num/den` strings.
pub fn rational_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn spectrum_csv(spec: &Spectrum) -> String {
    let mut out = String::from("eig_adj,eig_p_num,eig_p_den,dim\n");
    for line in &spec.lines {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            line.eig_adj, line.eig_num, line.eig_den, line.dim
        );
    }
    out
}

pub fn spectrum_json(spec: &Spectrum, manifest: &Manifest) -> Value {
    json!({
        "manifest": manifest,
        "n": spec.n,
        "delta": spec.delta,
        "two_step": spec.two_step,
        "total_dim": spec.total_dim.to_string(),
        "lines": spec.lines.iter().map(|l| json!({
            "eig_adj": l.eig_adj,
            "eig_p": format!("{}/{}", l.eig_num, l.eig_den),
            "dim": l.dim.to_string(),
        })).collect::<Vec<_>>(),
    })
}

pub fn curves_csv(curves: &[DistanceCurve<f64>]) -> String {
    let mut out = String::from("t,value,kind\n");
    for curve in curves {
        for p in &curve.points {
            let _ = writeln!(out, "{},{},{}", p.t, p.value, curve.kind.name());
        }
    }
    out
}

pub fn curves_json(curves: &[DistanceCurve<f64>], manifest: &Manifest) -> Value {
    json!({
        "manifest": manifest,
        "curves": curves.iter().map(|c| json!({
            "kind": c.kind.name(),
            "points": c.points.iter().map(|p| json!([p.t, p.value])).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn stats_csv(series: &StatisticSeries) -> String {
    let mut out = String::from("t,statistic,mean,ci99\n");
    for (kind, points) in &series.stats {
        for (idx, p) in points.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                series.times[idx],
                kind.name(),
                p.mean,
                p.ci99
            );
        }
    }
    out
}

pub fn stats_json(series: &StatisticSeries, manifest: &Manifest) -> Value {
    json!({
        "manifest": manifest,
        "times": series.times,
        "stats": series.stats.iter().map(|(kind, points)| json!({
            "statistic": kind.name(),
            "points": points,
        })).collect::<Vec<_>>(),
    })
}

/// Writes `content` to `path`, or to stdout when `path` is `None`.
pub fn write_text(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent() {
                if !dir.as_os_str().is_empty() {
                    std::fs::create_dir_all(dir)?;
                }
            }
            std::fs::write(p, content)?;
        }
        None => print!("{content}"),
    }
    Ok(())
}

/// Sidecar manifest path for CSV outputs: `<path>.manifest.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut os = path.as_os_str().to_owned();
    os.push(".manifest.json");
    PathBuf::from(os)
}

/// Writes a CSV payload plus its manifest sidecar; stdout gets the CSV with
/// the manifest omitted.
pub fn write_csv_with_manifest(path: Option<&Path>, csv: &str, manifest: &Manifest) -> Result<()> {
    write_text(path, csv)?;
    if let Some(p) = path {
        let m = serde_json::to_string_pretty(manifest).expect("manifest serializes") + "\n";
        std::fs::write(sidecar_path(p), m)?;
    }
    Ok(())
}
