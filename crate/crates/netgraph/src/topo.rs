use crate::{NetError, Network, NodeId};
use serde::{Deserialize, Serialize};

/// On-disk topology: `{"nodes": n, "edges": [[u, v], ...], "source": x}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyFile {
    pub nodes: usize,
    pub edges: Vec<[NodeId; 2]>,
    pub source: NodeId,
}

impl TopologyFile {
    pub fn from_network(net: &Network) -> TopologyFile {
        TopologyFile {
            nodes: net.node_count(),
            edges: net.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            source: net.source(),
        }
    }

    pub fn to_network(&self) -> Result<Network, NetError> {
        let edges: Vec<_> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Network::from_edges(self.nodes, &edges, self.source)
    }
}
