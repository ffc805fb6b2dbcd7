use engine::{run, RunOptions};
use gf2s::Field;
use netgraph::{Exec, Network};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schemes::{default_slot_cap, CoeffMode, GridTernary};
use serde::Serialize;

use crate::AnalysisError;

/// (1 − 2MN/(2^s − 1))^(D/2), or 0 once the base is not positive.
pub fn success_prob_lower_bound(rows: usize, cols: usize, d: usize, s: u32) -> f64 {
    let q = (1u64 << s) as f64 - 1.0;
    let base = 1.0 - 2.0 * (rows * cols) as f64 / q;
    if base <= 0.0 {
        return if d == 0 { 1.0 } else { 0.0 };
    }
    base.powi((d / 2) as i32)
}

/// Per-trial seeds, all derived from one seed.
pub fn trial_seeds(seed: u64, trials: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| rng.gen()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SuccessEstimate {
    pub trials: usize,
    pub successes: usize,
    pub rate: f64,
    /// Binomial standard error, floored at 1/trials so a perfect score
    /// still carries some slack.
    pub sigma: f64,
    pub bound: f64,
    /// Completion slot of each trial, if it decoded.
    pub w_d: Vec<Option<usize>>,
}

impl SuccessEstimate {
    pub fn consistent_with_bound(&self, k_sigma: f64) -> bool {
        self.rate >= self.bound - k_sigma * self.sigma
    }
}

pub fn binomial_sigma(p: f64, n: usize) -> f64 {
    ((p * (1.0 - p)) / n as f64).sqrt().max(1.0 / n as f64)
}

#[derive(Debug, Clone)]
pub struct GridTrials {
    pub rows: usize,
    pub cols: usize,
    pub source: (usize, usize),
    pub d: usize,
    pub s: u32,
    pub coeffs: TrialCoeffs,
    pub slot_cap: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialCoeffs {
    Ones,
    Random,
}

/// Runs the ternary grid schedule once per seed; trials are independent and
/// may run concurrently.
pub fn run_grid_trials(cfg: &GridTrials, seeds: &[u64], exec: Exec) -> Result<Vec<Option<usize>>, AnalysisError> {
    let net = Network::grid(cfg.rows, cfg.cols, cfg.source)?;
    let field = Field::with_width(cfg.s)?;
    let cap = cfg.slot_cap.unwrap_or_else(|| default_slot_cap(cfg.rows, cfg.cols, cfg.d));
    let results = exec.map_slice(seeds, |&seed| {
        let coeffs = match cfg.coeffs {
            TrialCoeffs::Ones => CoeffMode::AllOnes,
            TrialCoeffs::Random => CoeffMode::IidRandom { seed },
        };
        let mut scheme = GridTernary::new(&net, cfg.d, coeffs)?;
        run(&net, &mut scheme, &field, &RunOptions::new(cap)).map(|t| t.w_d)
    });
    results.into_iter().map(|r| r.map_err(AnalysisError::from)).collect()
}

/// Fraction of seeded runs in which every node decodes within the horizon.
pub fn estimate_decode_success(cfg: &GridTrials, trials: usize, seed: u64, exec: Exec) -> Result<SuccessEstimate, AnalysisError> {
    if trials == 0 {
        return Err(AnalysisError::Config("need at least one trial".into()));
    }
    let w_d = run_grid_trials(cfg, &trial_seeds(seed, trials), exec)?;
    let successes = w_d.iter().filter(|w| w.is_some()).count();
    let rate = successes as f64 / trials as f64;
    Ok(SuccessEstimate {
        trials,
        successes,
        rate,
        sigma: binomial_sigma(rate, trials),
        bound: success_prob_lower_bound(cfg.rows, cfg.cols, cfg.d, cfg.s),
        w_d,
    })
}
