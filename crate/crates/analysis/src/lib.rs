//! Analyses on top of the simulator: cut-based throughput bounds, measured
//! throughput, decode-probability bound and Monte-Carlo estimate, the
//! small-network infeasibility search, determinant sampling, and the
//! disjoint shortest-path checker for grid numberings.

mod bounds;
mod conjecture;
mod det;
mod fig2;
mod paths;
mod prob;

pub use bounds::{bound_report, measure_throughput, ratio_f64, throughput_bound, BoundReport};
pub use conjecture::{
    labels, node_classes, verify_conjecture, verify_grid, ConjectureReport, LadderOptions, LadderStep, NodeClasses, NodeReport,
    Verdict, PATH_LIMIT,
};
pub use det::{aggregate, coefficient_product, sample_determinant_vanishing, staggered_nodes, DetSample};
pub use fig2::{check_fig2_infeasibility, Fig2Verdict, SlotSets};
pub use num_rational::Ratio;
pub use paths::{enumerate_shortest_paths, PathClass, PathSet};
pub use prob::{
    binomial_sigma, estimate_decode_success, run_grid_trials, success_prob_lower_bound, trial_seeds, GridTrials, SuccessEstimate,
    TrialCoeffs,
};

use coloring::ColoringError;
use engine::EngineError;
use gf2s::FieldError;
use netgraph::NetError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("did not decode within {slots} slots; rank deficits {deficits:?}")]
    NotDecoded { slots: usize, deficits: Vec<usize> },
    #[error("{0}")]
    Config(String),
}
