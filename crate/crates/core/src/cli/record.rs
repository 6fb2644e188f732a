use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::checks::BohrStatus;
use crate::models::{FunctionFile, HypothesisReport};

pub const TOOL: &str = "bohrlab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Violated,
    Inconclusive,
    /// A step whose precondition fails for this instance and radius.
    NotApplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Violated => "violated",
            Status::Inconclusive => "inconclusive",
            Status::NotApplicable => "not_applicable",
        }
    }
}

impl From<BohrStatus> for Status {
    fn from(s: BohrStatus) -> Self {
        match s {
            BohrStatus::Holds => Status::Holds,
            BohrStatus::Violated => Status::Violated,
            BohrStatus::Inconclusive => Status::Inconclusive,
        }
    }
}

/// One checked (instance, radius) or (instance, step) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub instance_id: String,
    pub class: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    pub status: Status,
    /// Signed distance to equality; negative means violated.
    pub margin: f64,
    pub boundary: bool,
    pub detail: serde_json::Value,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub holds: usize,
    pub violated: usize,
    pub inconclusive: usize,
    #[serde(default)]
    pub not_applicable: usize,
    #[serde(default)]
    pub boundary: usize,
}

impl Summary {
    pub fn of(records: &[Record]) -> Self {
        let mut s = Summary::default();
        for r in records {
            s.add_status(r.status);
            if r.boundary {
                s.boundary += 1;
            }
        }
        s
    }

    fn add_status(&mut self, status: Status) {
        match status {
            Status::Holds => self.holds += 1,
            Status::Violated => self.violated += 1,
            Status::Inconclusive => self.inconclusive += 1,
            Status::NotApplicable => self.not_applicable += 1,
        }
    }

    pub fn add(&mut self, other: &Summary) {
        self.holds += other.holds;
        self.violated += other.violated;
        self.inconclusive += other.inconclusive;
        self.not_applicable += other.not_applicable;
        self.boundary += other.boundary;
    }

    pub fn total(&self) -> usize {
        self.holds + self.violated + self.inconclusive + self.not_applicable
    }
}

/// Output of `verify`, `proofcheck` and `radius`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config_hash: String,
    pub config: serde_json::Value,
    /// Command line that reproduces this record.
    pub reproduce: String,
    pub records: Vec<Record>,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl RunRecord {
    pub fn new<C: Serialize>(command: &str, config: &C, reproduce: String, records: Vec<Record>) -> Self {
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.into(),
            config_hash: super::config::config_hash(config),
            config: serde_json::to_value(config).expect("config serializes"),
            reproduce,
            summary: Summary::of(&records),
            records,
            wall_time_s: None,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("instance_id,class,dim,step,r,status,margin\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{:e}",
                r.instance_id,
                r.class,
                r.dim,
                r.step.as_deref().unwrap_or(""),
                r.r.map(|r| r.to_string()).unwrap_or_default(),
                r.status.as_str(),
                r.margin
            );
        }
        out
    }
}

/// Function file written by `gen`, with its hypothesis report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratedFile {
    pub function: FunctionFile,
    pub hypotheses: HypothesisReport,
}

/// Reads a bare function file, or any JSON object with a `function` member
/// (generated instances, search witnesses).
pub fn load_function_file(path: &Path) -> anyhow::Result<FunctionFile> {
    let text = std::fs::read_to_string(path).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    let inner = match value.get("function") {
        Some(f) => f.clone(),
        None => value,
    };
    FunctionFile::deserialize(&inner).map_err(|e| anyhow::anyhow!("{}: function file: {e}", path.display()))
}

pub fn instance_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Upper edges of the margin histogram; the last bin is open.
pub const MARGIN_EDGES: [f64; 7] = [-1e-3, -1e-9, 1e-9, 1e-6, 1e-3, 1e-1, 1.0];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub count: usize,
}

pub fn margin_histogram<'a>(margins: impl Iterator<Item = &'a f64>) -> Vec<HistogramBin> {
    let mut counts = [0usize; MARGIN_EDGES.len() + 1];
    for &m in margins {
        let bin = MARGIN_EDGES.iter().position(|&edge| m < edge).unwrap_or(MARGIN_EDGES.len());
        counts[bin] += 1;
    }
    counts
        .iter()
        .enumerate()
        .map(|(i, &count)| HistogramBin {
            lower: i.checked_sub(1).map(|j| MARGIN_EDGES[j]),
            upper: MARGIN_EDGES.get(i).copied(),
            count,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceSummary {
    pub source: String,
    pub command: String,
    pub config_hash: String,
    pub reproduce: String,
    pub summary: Summary,
}

/// Aggregate of several run records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub sources: Vec<SourceSummary>,
    pub total: Summary,
    pub margin_histogram: Vec<HistogramBin>,
}

impl Report {
    pub fn aggregate(runs: &[(String, RunRecord)]) -> Self {
        let mut total = Summary::default();
        let sources = runs
            .iter()
            .map(|(source, run)| {
                let summary = Summary::of(&run.records);
                total.add(&summary);
                SourceSummary {
                    source: source.clone(),
                    command: run.command.clone(),
                    config_hash: run.config_hash.clone(),
                    reproduce: run.reproduce.clone(),
                    summary,
                }
            })
            .collect();
        let margins: Vec<f64> = runs
            .iter()
            .flat_map(|(_, run)| run.records.iter())
            .filter(|r| r.status != Status::NotApplicable && r.margin.is_finite())
            .map(|r| r.margin)
            .collect();
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            sources,
            total,
            margin_histogram: margin_histogram(margins.iter()),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("source,command,config_hash,holds,violated,inconclusive,not_applicable,boundary\n");
        let row = |out: &mut String, source: &str, command: &str, hash: &str, s: &Summary| {
            let _ = writeln!(
                out,
                "{source},{command},{hash},{},{},{},{},{}",
                s.holds, s.violated, s.inconclusive, s.not_applicable, s.boundary
            );
        };
        for s in &self.sources {
            row(&mut out, &s.source, &s.command, &s.config_hash, &s.summary);
        }
        row(&mut out, "total", "", "", &self.total);
        out.push_str("\nmargin_lower,margin_upper,count\n");
        for b in &self.margin_histogram {
            let _ = writeln!(out, "{},{},{}", edge(b.lower, "-inf"), edge(b.upper, "inf"), b.count);
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("# {} report (version {})\n\n## Counts\n\n", self.tool, self.version);
        out.push_str("| source | command | holds | violated | inconclusive | not applicable | boundary |\n");
        out.push_str("|---|---|---:|---:|---:|---:|---:|\n");
        let row = |out: &mut String, source: &str, command: &str, s: &Summary| {
            let _ = writeln!(
                out,
                "| {source} | {command} | {} | {} | {} | {} | {} |",
                s.holds, s.violated, s.inconclusive, s.not_applicable, s.boundary
            );
        };
        for s in &self.sources {
            row(&mut out, &s.source, &s.command, &s.summary);
        }
        row(&mut out, "**total**", "", &self.total);
        out.push_str("\n## Margin histogram\n\n| lower | upper | count |\n|---|---|---:|\n");
        for b in &self.margin_histogram {
            let _ = writeln!(out, "| {} | {} | {} |", edge(b.lower, "-inf"), edge(b.upper, "inf"), b.count);
        }
        out.push_str("\n## Reproduction\n\n");
        for s in &self.sources {
            let _ = writeln!(out, "- `{}` (config `{}`): `{}`", s.source, s.config_hash, s.reproduce);
        }
        out
    }
}

fn edge(v: Option<f64>, open: &str) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_else(|| open.into())
}
