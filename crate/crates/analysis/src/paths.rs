use coloring::ColoredGraph;
use netgraph::NodeId;
use serde::Serialize;
use std::collections::VecDeque;

/// Shortest paths `from → … → u → to` in the colored graph where the
/// last-hop node u optionally has a prescribed color and `banned` nodes are
/// avoided. Paths are stored implicitly as a layered DAG.
#[derive(Debug, Clone)]
pub struct PathClass {
    pub from: NodeId,
    pub to: NodeId,
    /// Edge count of the shortest such path.
    pub length: Option<usize>,
    dist: Vec<Option<usize>>,
    ends: Vec<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathSet {
    pub length: Option<usize>,
    pub paths: Vec<Vec<NodeId>>,
    /// True if the limit stopped the enumeration early.
    pub overflow: bool,
}

impl PathClass {
    pub fn new(cg: &ColoredGraph, from: NodeId, to: NodeId, banned: &[bool], last_hop_color: Option<u8>) -> PathClass {
        let n = cg.base.node_count();
        let mut dist = vec![None; n];
        let blocked = |v: NodeId| banned[v] || v == to;
        if !blocked(from) {
            dist[from] = Some(0);
            let mut q = VecDeque::from([from]);
            while let Some(u) = q.pop_front() {
                let du = dist[u].unwrap();
                for &v in cg.adj(u) {
                    if dist[v].is_none() && !blocked(v) {
                        dist[v] = Some(du + 1);
                        q.push_back(v);
                    }
                }
            }
        }
        let cands: Vec<(NodeId, usize)> = cg
            .adj(to)
            .iter()
            .filter(|&&u| last_hop_color.is_none_or(|c| cg.color(u) == Some(c)))
            .filter_map(|&u| dist[u].map(|d| (u, d)))
            .collect();
        let best = cands.iter().map(|c| c.1).min();
        let ends = cands.iter().filter(|c| Some(c.1) == best).map(|c| c.0).collect();
        PathClass { from, to, length: best.map(|b| b + 1), dist, ends }
    }

    pub fn is_empty(&self) -> bool {
        self.length.is_none()
    }

    fn preds<'a>(&'a self, cg: &'a ColoredGraph, v: NodeId) -> impl Iterator<Item = NodeId> + 'a {
        let dv = self.dist[v].unwrap();
        cg.adj(v).iter().copied().filter(move |&w| dv > 0 && self.dist[w] == Some(dv - 1))
    }

    /// Number of paths, saturating.
    pub fn count(&self, cg: &ColoredGraph) -> u64 {
        let n = self.dist.len();
        let mut order: Vec<NodeId> = (0..n).filter(|&v| self.dist[v].is_some()).collect();
        order.sort_by_key(|&v| self.dist[v]);
        let mut ways = vec![0u64; n];
        for v in order {
            ways[v] = if v == self.from { 1 } else { self.preds(cg, v).fold(0u64, |a, w| a.saturating_add(ways[w])) };
        }
        self.ends.iter().fold(0u64, |a, &u| a.saturating_add(ways[u]))
    }

    /// Lists paths (from … to), at most `limit` of them.
    pub fn enumerate(&self, cg: &ColoredGraph, limit: usize) -> PathSet {
        let mut paths = Vec::new();
        let mut overflow = false;
        let mut stack: Vec<NodeId> = Vec::new();
        for &u in &self.ends {
            stack.clear();
            stack.push(u);
            if !self.walk(cg, &mut stack, &mut paths, limit) {
                overflow = true;
                break;
            }
        }
        PathSet { length: self.length, paths, overflow }
    }

    // Depth-first back to `from`; `stack` holds the path reversed.
    fn walk(&self, cg: &ColoredGraph, stack: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>, limit: usize) -> bool {
        let v = *stack.last().unwrap();
        if v == self.from {
            if out.len() >= limit {
                return false;
            }
            let mut p: Vec<NodeId> = stack.iter().rev().copied().collect();
            p.push(self.to);
            out.push(p);
            return true;
        }
        let preds: Vec<NodeId> = self.preds(cg, v).collect();
        for w in preds {
            stack.push(w);
            let ok = self.walk(cg, stack, out, limit);
            stack.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    /// Some path of this class, if any.
    pub fn any_path(&self, cg: &ColoredGraph) -> Option<Vec<NodeId>> {
        self.enumerate(cg, 1).paths.pop()
    }
}

/// All shortest `from → to` paths avoiding `banned`, optionally with the
/// node before `to` of a given color.
pub fn enumerate_shortest_paths(
    cg: &ColoredGraph,
    from: NodeId,
    to: NodeId,
    banned: &[NodeId],
    last_hop_color: Option<u8>,
    limit: usize,
) -> PathSet {
    let mut b = vec![false; cg.base.node_count()];
    for &v in banned {
        b[v] = true;
    }
    if from == to {
        return PathSet { length: Some(0), paths: vec![vec![from]], overflow: false };
    }
    PathClass::new(cg, from, to, &b, last_hop_color).enumerate(cg, limit)
}
