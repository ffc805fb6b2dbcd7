use coloring::{ColoredGraph, HamiltonianNumbering};
use gf2s::{Field, FieldElement};
use netgraph::{Exec, Network, NodeId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::conjecture::{labels, node_classes};
use crate::prob::{binomial_sigma, trial_seeds};
use crate::AnalysisError;

/// g_p(t) = ∏_{r=1..l} α_{k_r}(t − (l − r)) for p = k_1 … k_l → k, where
/// k_1 (a virtual source) contributes 1.
pub fn coefficient_product(field: &Field, path: &[NodeId], t: i64, alpha: &dyn Fn(NodeId, i64) -> FieldElement) -> FieldElement {
    let l = path.len() - 1;
    (2..=l).fold(1, |acc, r| field.mul(acc, alpha(path[r - 1], t - (l - r) as i64)))
}

/// a_S(t) = ⊕_{p ∈ S} g_p(t).
pub fn aggregate(field: &Field, paths: &[Vec<NodeId>], t: i64, alpha: &dyn Fn(NodeId, i64) -> FieldElement) -> FieldElement {
    paths.iter().fold(0, |acc, p| acc ^ coefficient_product(field, p, t, alpha))
}

#[derive(Debug, Clone, Serialize)]
pub struct DetSample {
    pub node: NodeId,
    pub label: String,
    pub lengths: [usize; 4],
    pub path_counts: [usize; 4],
    pub samples: usize,
    pub zeros: usize,
    pub rate: f64,
    pub sigma: f64,
    /// 2MN/(2^s − 1).
    pub bound: f64,
}

impl DetSample {
    pub fn within_bound(&self, k_sigma: f64) -> bool {
        self.rate <= self.bound + k_sigma * self.sigma
    }
}

fn colored(h: &HamiltonianNumbering) -> Result<(Network, ColoredGraph), AnalysisError> {
    let net = Network::grid(h.rows, h.cols, h.source)?;
    let cg = ColoredGraph::new(&net, h.coloring(&net)?)?;
    Ok((net, cg))
}

/// Nodes with i0 < i1, j0 < j1 and i1 − i0 = j1 − j0.
pub fn staggered_nodes(h: &HamiltonianNumbering) -> Result<Vec<NodeId>, AnalysisError> {
    let (net, cg) = colored(h)?;
    let x0 = h.node_of(&net, 1)?;
    let x1 = h.node_of(&net, h.last())?;
    Ok((0..net.node_count())
        .filter(|&k| k != net.source() && k != x0 && k != x1)
        .filter(|&k| {
            let c = node_classes(&cg, x0, x1, k);
            match (c.s0.length, c.s1.length, c.t0.length, c.t1.length) {
                (Some(i0), Some(i1), Some(j0), Some(j1)) => i0 < i1 && j0 < j1 && i1 - i0 == j1 - j0,
                _ => false,
            }
        })
        .collect())
}

/// Draws i.i.d. nonzero α per (node, round) and reports how often
/// a_S0(i1)·a_T1(j1) ⊕ a_S1(i1)·a_T0(j1) vanishes.
pub fn sample_determinant_vanishing(
    h: &HamiltonianNumbering,
    node: NodeId,
    s: u32,
    samples: usize,
    seed: u64,
    exec: Exec,
) -> Result<DetSample, AnalysisError> {
    let (net, cg) = colored(h)?;
    let field = Field::with_width(s)?;
    let x0 = h.node_of(&net, 1)?;
    let x1 = h.node_of(&net, h.last())?;
    if node == net.source() || node == x0 || node == x1 || node >= net.node_count() {
        return Err(AnalysisError::Config(format!("node {node} is not a relay")));
    }
    let c = node_classes(&cg, x0, x1, node);
    let (Some(i0), Some(i1), Some(j0), Some(j1)) = (c.s0.length, c.s1.length, c.t0.length, c.t1.length) else {
        return Err(AnalysisError::Config(format!("node {node} lacks one of the four path classes")));
    };
    let limit = crate::conjecture::PATH_LIMIT;
    let sets: Vec<Vec<Vec<NodeId>>> = [&c.s0, &c.s1, &c.t0, &c.t1].iter().map(|cl| cl.enumerate(&cg, limit).paths).collect();
    let longest = [i0, i1, j0, j1].into_iter().max().unwrap() as i64;
    let (ti, tj) = (i1 as i64, j1 as i64);
    // Rounds that can appear: from min(t) − longest + 1 up to max(t).
    let r_lo = ti.min(tj) - longest;
    let r_n = (ti.max(tj) - r_lo + 1) as usize;
    let n = net.node_count();
    let seeds = trial_seeds(seed, samples);
    let zeros = exec
        .map_slice(&seeds, |&sd| {
            let mut rng = ChaCha8Rng::seed_from_u64(sd);
            let table: Vec<FieldElement> = (0..r_n * n).map(|_| field.sample_nonzero(&mut rng)).collect();
            let alpha = |k: NodeId, r: i64| table[(r - r_lo) as usize * n + k];
            let a = |i: usize, t: i64| aggregate(&field, &sets[i], t, &alpha);
            let det = field.mul(a(0, ti), a(3, tj)) ^ field.mul(a(1, ti), a(2, tj));
            det == 0
        })
        .into_iter()
        .filter(|&z| z)
        .count();
    let rate = zeros as f64 / samples.max(1) as f64;
    Ok(DetSample {
        node,
        label: labels(h, &net)?[node].clone(),
        lengths: [i0, i1, j0, j1],
        path_counts: [sets[0].len(), sets[1].len(), sets[2].len(), sets[3].len()],
        samples,
        zeros,
        rate,
        sigma: binomial_sigma(rate, samples.max(1)),
        bound: 2.0 * (h.rows * h.cols) as f64 / ((1u64 << s) as f64 - 1.0),
    })
}
