//! Single-source broadcast networks: topology, cuts, and the minimum
//! qualified vertex cut that bounds PNC broadcast throughput at n/(n+1).

mod cut;
mod exec;
pub mod random;
mod topo;

pub use cut::{min_qualified_vertex_cut, min_qualified_vertex_cut_brute, min_qualified_vertex_cut_flow, vertex_connectivity};
pub use exec::Exec;
pub use topo::TopologyFile;

use std::collections::VecDeque;
use thiserror::Error;

pub type NodeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetError {
    #[error("invalid dimensions: {0}")]
    BadDimensions(String),
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("network is not connected")]
    NotConnected,
    #[error("no qualified cut: every node is a neighbor of the source")]
    NoQualifiedCut,
    #[error("cut must be a nonempty node set without the source")]
    BadCut,
    #[error("brute-force search over {0} candidate nodes is too large")]
    TooLarge(usize),
}

/// Grid coordinates of every node. Node 0 is the source; the remaining cells
/// take ids 1.. in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridShape {
    pub rows: usize,
    pub cols: usize,
    pub source: (usize, usize),
    cells: Vec<(usize, usize)>,
    ids: Vec<NodeId>,
}

impl GridShape {
    fn new(rows: usize, cols: usize, source: (usize, usize)) -> GridShape {
        let mut cells = vec![source];
        let mut ids = vec![0; rows * cols];
        for r in 0..rows {
            for c in 0..cols {
                if (r, c) != source {
                    ids[r * cols + c] = cells.len();
                    cells.push((r, c));
                }
            }
        }
        GridShape { rows, cols, source, cells, ids }
    }

    pub fn node_at(&self, r: usize, c: usize) -> NodeId {
        self.ids[r * self.cols + c]
    }

    pub fn cell_of(&self, id: NodeId) -> (usize, usize) {
        self.cells[id]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    adj: Vec<Vec<NodeId>>,
    source: NodeId,
    labels: Vec<String>,
    grid: Option<GridShape>,
}

impl Network {
    /// Builds an undirected network; duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)], source: NodeId) -> Result<Network, NetError> {
        if n == 0 {
            return Err(NetError::BadDimensions("empty network".into()));
        }
        if source >= n {
            return Err(NetError::UnknownNode(source));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(NetError::UnknownNode(u));
            }
            if v >= n {
                return Err(NetError::UnknownNode(v));
            }
            if u == v {
                return Err(NetError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        let labels = (0..n).map(|i| if i == source { "X".to_string() } else { i.to_string() }).collect();
        let net = Network { adj, source, labels, grid: None };
        if !net.is_connected() {
            return Err(NetError::NotConnected);
        }
        Ok(net)
    }

    fn with_labels(mut self, labels: Vec<String>) -> Network {
        self.labels = labels;
        self
    }

    /// Path X=0 — 1 — … — n−1, source at one end.
    pub fn line(n: usize) -> Result<Network, NetError> {
        if n < 2 {
            return Err(NetError::BadDimensions(format!("line needs n >= 2, got {n}")));
        }
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Network::from_edges(n, &edges, 0)
    }

    pub fn ring(n: usize) -> Result<Network, NetError> {
        if n < 3 {
            return Err(NetError::BadDimensions(format!("ring needs n >= 3, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Network::from_edges(n, &edges, 0)
    }

    /// Six-node chord ring: ring X-1-2-3-4-5-X plus chords X-2, X-4, 1-3,
    /// 1-5, 2-4, 3-5. Every node has degree 4 and node 3 is the only node
    /// not adjacent to X (the octahedron).
    pub fn chord_ring() -> Network {
        let edges = [
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0),
            (0, 2), (0, 4), (1, 3), (1, 5), (2, 4), (3, 5),
        ];
        Network::from_edges(6, &edges, 0).expect("static topology")
    }

    /// The six-node network whose PNC throughput stays below n/(n+1).
    /// Ids: X=0, X0=1, X1=2, then nodes 1, 2, 3 as ids 3, 4, 5.
    pub fn fig2() -> Network {
        let edges = [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 5), (4, 5)];
        let labels = ["X", "X0", "X1", "1", "2", "3"].iter().map(|s| s.to_string()).collect();
        Network::from_edges(6, &edges, 0).expect("static topology").with_labels(labels)
    }

    pub fn grid(rows: usize, cols: usize, source: (usize, usize)) -> Result<Network, NetError> {
        if rows < 2 || cols < 2 {
            return Err(NetError::BadDimensions(format!("grid needs M,N >= 2, got {rows}x{cols}")));
        }
        if source.0 >= rows || source.1 >= cols {
            return Err(NetError::BadDimensions(format!("source {source:?} outside {rows}x{cols}")));
        }
        let shape = GridShape::new(rows, cols, source);
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let u = shape.node_at(r, c);
                if r + 1 < rows {
                    edges.push((u, shape.node_at(r + 1, c)));
                }
                if c + 1 < cols {
                    edges.push((u, shape.node_at(r, c + 1)));
                }
            }
        }
        let labels = shape.cells.iter().map(|&(r, c)| format!("({r},{c})")).collect();
        let mut net = Network::from_edges(rows * cols, &edges, 0)?.with_labels(labels);
        net.labels[0] = "X".into();
        net.grid = Some(shape);
        Ok(net)
    }

    pub fn complete(n: usize) -> Result<Network, NetError> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Network::from_edges(n, &edges, 0)
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn grid_shape(&self) -> Option<&GridShape> {
        self.grid.as_ref()
    }

    pub fn label(&self, k: NodeId) -> &str {
        &self.labels[k]
    }

    pub fn neighbors(&self, k: NodeId) -> Result<&[NodeId], NetError> {
        self.adj.get(k).map(|v| v.as_slice()).ok_or(NetError::UnknownNode(k))
    }

    /// Unchecked variant for hot loops.
    pub fn adj(&self, k: NodeId) -> &[NodeId] {
        &self.adj[k]
    }

    pub fn is_adjacent(&self, u: NodeId, v: NodeId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for (u, a) in self.adj.iter().enumerate() {
            out.extend(a.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_dist(self.source).iter().all(|d| d.is_some())
    }

    pub fn bfs_dist(&self, from: NodeId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        dist[from] = Some(0);
        let mut q = VecDeque::from([from]);
        while let Some(u) = q.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    q.push_back(v);
                }
            }
        }
        dist
    }

    /// N(X) = V \ {X}.
    pub fn is_trivial(&self) -> bool {
        self.adj[self.source].len() + 1 == self.node_count()
    }

    /// Nodes that are neither X nor neighbors of X: the only candidates for V2.
    pub fn far_nodes(&self) -> Vec<NodeId> {
        (0..self.node_count())
            .filter(|&v| v != self.source && !self.is_adjacent(self.source, v))
            .collect()
    }

    /// Same network with node `v` renamed `perm[v]`.
    pub fn relabel(&self, perm: &[NodeId]) -> Result<Network, NetError> {
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Network::from_edges(self.node_count(), &edges, perm[self.source])
    }

    pub fn check_cut(&self, cut: &Cut) -> Result<(), NetError> {
        if cut.v2.is_empty() || cut.v2.contains(&self.source) {
            return Err(NetError::BadCut);
        }
        if let Some(&v) = cut.v2.iter().find(|&&v| v >= self.node_count()) {
            return Err(NetError::UnknownNode(v));
        }
        Ok(())
    }

    /// |V1'|: nodes outside V2 with a neighbor inside V2.
    pub fn vertex_cut_size(&self, cut: &Cut) -> Result<usize, NetError> {
        self.check_cut(cut)?;
        Ok(self.boundary(cut).len())
    }

    pub fn boundary(&self, cut: &Cut) -> Vec<NodeId> {
        let mut in_v2 = vec![false; self.node_count()];
        for &v in &cut.v2 {
            in_v2[v] = true;
        }
        (0..self.node_count())
            .filter(|&u| !in_v2[u] && self.adj[u].iter().any(|&w| in_v2[w]))
            .collect()
    }

    /// Qualified iff X is not on the V1 side of the boundary, i.e. no
    /// neighbor of X lies in V2.
    pub fn is_qualified(&self, cut: &Cut) -> Result<bool, NetError> {
        self.check_cut(cut)?;
        Ok(cut.v2.iter().all(|&v| !self.is_adjacent(self.source, v)))
    }
}

/// A cut is given by its far side V2; V1 is the complement and holds X.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub v2: Vec<NodeId>,
}

impl Cut {
    pub fn new(mut v2: Vec<NodeId>) -> Cut {
        v2.sort_unstable();
        v2.dedup();
        Cut { v2 }
    }
}
