use crate::{Exec, NetError, Network, NodeId};
use std::collections::VecDeque;

/// Largest |V \ ({X} ∪ N(X))| the subset enumeration accepts.
pub const BRUTE_FORCE_LIMIT: usize = 30;

/// Minimum vertex-cut size over all qualified cuts (max-flow method).
pub fn min_qualified_vertex_cut(net: &Network) -> Result<usize, NetError> {
    min_qualified_vertex_cut_flow(net, Exec::Parallel)
}

/// Enumerates every nonempty V2 ⊆ V \ ({X} ∪ N(X)).
pub fn min_qualified_vertex_cut_brute(net: &Network, exec: Exec) -> Result<usize, NetError> {
    let far = net.far_nodes();
    if far.is_empty() {
        return Err(NetError::NoQualifiedCut);
    }
    if far.len() > BRUTE_FORCE_LIMIT || net.node_count() > 64 {
        return Err(NetError::TooLarge(far.len()));
    }
    let adj: Vec<u64> = (0..net.node_count())
        .map(|u| net.adj(u).iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    let far_adj: Vec<u64> = far.iter().map(|&v| adj[v]).collect();
    let far_bit: Vec<u64> = far.iter().map(|&v| 1u64 << v).collect();

    let total: u64 = 1 << far.len();
    let chunk_bits = far.len().saturating_sub(6);
    let chunks = (total >> chunk_bits) as usize;
    let best = exec.map_range(chunks, |ch| {
        let lo = (ch as u64) << chunk_bits;
        let hi = lo + (1u64 << chunk_bits);
        let mut best = usize::MAX;
        for sub in lo.max(1)..hi {
            let (mut v2, mut nb) = (0u64, 0u64);
            let mut bits = sub;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                v2 |= far_bit[i];
                nb |= far_adj[i];
                bits &= bits - 1;
            }
            best = best.min((nb & !v2).count_ones() as usize);
        }
        best
    });
    Ok(best.into_iter().min().unwrap())
}

/// For each far node v, the minimum X–v vertex separator (which may use
/// neighbors of X but never X itself); the answer is the minimum over v.
pub fn min_qualified_vertex_cut_flow(net: &Network, exec: Exec) -> Result<usize, NetError> {
    let far = net.far_nodes();
    if far.is_empty() {
        return Err(NetError::NoQualifiedCut);
    }
    let x = net.source();
    let sizes = exec.map_slice(&far, |&v| vertex_connectivity(net, x, v));
    Ok(sizes.into_iter().min().unwrap())
}

struct FlowGraph {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i32>,
}

impl FlowGraph {
    fn new(n: usize) -> FlowGraph {
        FlowGraph { head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    fn add(&mut self, u: usize, v: usize, c: i32) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    // Unit augmentations along BFS paths; flows here are at most deg(X).
    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut flow = 0;
        loop {
            let mut pred = vec![usize::MAX; self.head.len()];
            pred[s] = usize::MAX - 1;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                if u == t {
                    break;
                }
                for &e in &self.head[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && pred[v] == usize::MAX {
                        pred[v] = e;
                        q.push_back(v);
                    }
                }
            }
            if pred[t] == usize::MAX {
                return flow;
            }
            let mut v = t;
            while v != s {
                let e = pred[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
            flow += 1;
        }
    }
}

/// Number of internally vertex-disjoint s–t paths (= minimum s–t vertex
/// separator for non-adjacent s, t, by Menger).
pub fn vertex_connectivity(net: &Network, s: NodeId, t: NodeId) -> usize {
    let n = net.node_count();
    let inf = n as i32 + 1;
    let mut g = FlowGraph::new(2 * n);
    for u in 0..n {
        let c = if u == s || u == t { inf } else { 1 };
        g.add(2 * u, 2 * u + 1, c);
        for &v in net.adj(u) {
            g.add(2 * u + 1, 2 * v, inf);
        }
    }
    g.max_flow(2 * s + 1, 2 * t)
}
