//! Report records printed by the commands. JSON reports carry `schema: 1`;
//! parsing one and serializing it again gives the same bytes.

use std::fmt::Write as _;

use nilcrunch_core::identities::SuiteEntry;
use nilcrunch_core::linearize::{FieldSpec, GeneratorRecord};
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Reached,
    NotReached,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotencyReport {
    pub schema: u32,
    pub command: String,
    pub n: u32,
    pub d: usize,
    pub field: FieldSpec,
    pub dmax: usize,
    pub status: Status,
    /// The nilpotency degree, when reached.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<usize>,
    /// Least degree not excluded, when not reached.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lower_bound: Option<usize>,
    /// The degree was certified by a saturated truncation.
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub total_dim: Option<usize>,
    /// Truncations built during the search, in order.
    pub probed: Vec<usize>,
    pub elapsed_ms: u64,
}

/// Dimensions of the same algebra over the infinite field of equal
/// characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfiniteComparison {
    pub field: FieldSpec,
    pub c: usize,
    pub dims: Vec<usize>,
    pub total_dim: usize,
    /// `total_dim` here minus `total_dim` there.
    pub delta: i64,
    /// Basis words present here and absent there.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub extra_words: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsReport {
    pub schema: u32,
    pub command: String,
    pub n: u32,
    pub d: usize,
    pub field: FieldSpec,
    pub c: usize,
    /// `dims[k-1]` is the dimension in degree `k`.
    pub dims: Vec<usize>,
    pub total_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub basis: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub infinite: Option<InfiniteComparison>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsReport {
    pub schema: u32,
    pub command: String,
    pub n: u32,
    pub field: FieldSpec,
    pub generators: Vec<GeneratorRecord>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub schema: u32,
    pub command: String,
    pub n: u32,
    pub d: usize,
    pub q: u64,
    pub truncation: usize,
    pub k: usize,
    pub generator_rank: usize,
    pub oracle_rank: usize,
    /// Reduced row echelon forms agree entry for entry.
    pub equal: bool,
    pub oracle_saturated: bool,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub command: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub identities: Vec<SuiteEntry>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    Nilpotency(NilpotencyReport),
    Dims(DimsReport),
    Generators(GeneratorsReport),
    Oracle(OracleReport),
    Verify(VerifyReport),
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render(&self, format: OutputFormat) -> Result<String, String> {
        match format {
            OutputFormat::Json => Ok(self.to_json() + "\n"),
            OutputFormat::Text => Ok(self.text()),
            OutputFormat::Csv => match self {
                Report::Dims(r) => Ok(dims_csv(r)),
                _ => Err("csv output is only available for dims and basis".into()),
            },
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        match self {
            Report::Nilpotency(r) => {
                match r.c {
                    Some(c) => {
                        let _ = writeln!(s, "C_{{{},{}}} over {} = {c}", r.n, r.d, r.field);
                    }
                    None => {
                        let _ = writeln!(
                            s,
                            "C_{{{},{}}} over {}: not reached by D = {}, so C >= {}",
                            r.n,
                            r.d,
                            r.field,
                            r.dmax,
                            r.lower_bound.unwrap_or(0)
                        );
                    }
                }
                if let Some(dims) = &r.dims {
                    let _ = writeln!(s, "dims: {dims:?} total {}", r.total_dim.unwrap_or(0));
                }
            }
            Report::Dims(r) => {
                let _ = writeln!(s, "N_{{{},{}}} over {}: C = {}, total dim {}", r.n, r.d, r.field, r.c, r.total_dim);
                for (k, v) in r.dims.iter().enumerate() {
                    let _ = writeln!(s, "  degree {:>2}: {v}", k + 1);
                }
                if let Some(inf) = &r.infinite {
                    let _ = writeln!(s, "over {}: total dim {}, delta {}", inf.field, inf.total_dim, inf.delta);
                    if let Some(extra) = &inf.extra_words {
                        let _ = writeln!(s, "basis words not in the infinite-field basis: {}", extra.join(" "));
                    }
                }
                if let Some(basis) = &r.basis {
                    for w in basis {
                        let _ = writeln!(s, "{w}");
                    }
                }
            }
            Report::Generators(r) => {
                let _ = writeln!(s, "{} generators for n = {} over {}", r.generators.len(), r.n, r.field);
                for g in &r.generators {
                    let _ = writeln!(s, "  {:<9} {:?}: {}", g.kind, g.exponents, g.text);
                }
            }
            Report::Oracle(r) => {
                let _ = writeln!(
                    s,
                    "n={} d={} q={} D={} k={}: generator rank {}, oracle rank {}, {}",
                    r.n,
                    r.d,
                    r.q,
                    r.truncation,
                    r.k,
                    r.generator_rank,
                    r.oracle_rank,
                    if r.equal { "equal" } else { "DIFFERENT" }
                );
            }
            Report::Verify(r) => {
                for c in &r.checks {
                    let _ = writeln!(s, "{:<7} {}: {}", status_word(&c.status), c.name, c.detail);
                }
                for e in &r.identities {
                    let n = e.n.map(|n| format!(" n={n}")).unwrap_or_default();
                    let w = e
                        .witness
                        .as_ref()
                        .map(|w| format!(" witness {} (coefficient {})", w.word, w.coefficient))
                        .unwrap_or_default();
                    let _ = writeln!(
                        s,
                        "{:<7} identity {} over {}{n}{w}",
                        if e.pass { "PASS" } else { "FAIL" },
                        e.identity_id,
                        e.ring
                    );
                }
                let _ = writeln!(s, "{}", if r.pass { "all checks passed" } else { "some checks FAILED" });
            }
        }
        s
    }

    /// Same report with every timing field zeroed.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        match &mut r {
            Report::Nilpotency(x) => x.elapsed_ms = 0,
            Report::Dims(x) => x.elapsed_ms = 0,
            Report::Generators(x) => x.elapsed_ms = 0,
            Report::Oracle(x) => x.elapsed_ms = 0,
            Report::Verify(x) => x.elapsed_ms = 0,
        }
        r
    }
}

fn status_word(s: &CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "PASS",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Skipped => "SKIPPED",
    }
}

fn dims_csv(r: &DimsReport) -> String {
    let mut s = String::new();
    if let Some(basis) = &r.basis {
        s.push_str("degree,word\n");
        for w in basis {
            let deg = if w == "1" { 0 } else { w.split('*').count() };
            let _ = writeln!(s, "{deg},{w}");
        }
        return s;
    }
    let inf = r.infinite.as_ref();
    s.push_str(if inf.is_some() { "degree,dim,dim_infinite\n" } else { "degree,dim\n" });
    let top = r.dims.len().max(inf.map_or(0, |i| i.dims.len()));
    for k in 0..top {
        let here = r.dims.get(k).copied().unwrap_or(0);
        match inf {
            Some(i) => {
                let _ = writeln!(s, "{},{here},{}", k + 1, i.dims.get(k).copied().unwrap_or(0));
            }
            None => {
                let _ = writeln!(s, "{},{here}", k + 1);
            }
        }
    }
    s
}
