use coloring::{ColoredGraph, ColoringError};
use engine::Trace;
use netgraph::{min_qualified_vertex_cut, Exec, Network};
use num_rational::Ratio;
use serde::Serialize;

use crate::AnalysisError;

/// n/(n+1).
pub fn throughput_bound(n: usize) -> Ratio<u64> {
    Ratio::new(n as u64, n as u64 + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub bound: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_f: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color_bound: Option<String>,
}

/// Min qualified vertex cut and, given a coloring, the min color cut.
pub fn bound_report(net: &Network, colored: Option<&ColoredGraph>, exec: Exec) -> Result<BoundReport, AnalysisError> {
    let n = min_qualified_vertex_cut(net)?;
    let n_f = colored.map(|cg| cg.min_color_cut(exec)).transpose().map_err(|e: ColoringError| AnalysisError::Coloring(e))?;
    Ok(BoundReport {
        n,
        bound: throughput_bound(n).to_string(),
        n_f,
        color_bound: n_f.map(|m| throughput_bound(m).to_string()),
    })
}

/// D / W_D for a completed trace.
pub fn measure_throughput(trace: &Trace) -> Result<Ratio<u64>, AnalysisError> {
    match trace.w_d {
        Some(w) => Ok(Ratio::new(trace.layout.d as u64, w as u64)),
        None => Err(AnalysisError::NotDecoded { slots: trace.slots, deficits: trace.deficits() }),
    }
}

pub fn ratio_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
