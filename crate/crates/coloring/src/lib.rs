//! Vertex colorings of broadcast networks and the color-cut bound n_f/(n_f+1),
//! plus Hamiltonian-cycle 3-colorings of grids.

mod hamilton;
mod rank;

pub use hamilton::{Construction, HamiltonianNumbering, Orientation, SEARCH_BUDGET};
pub use rank::{gf2_rank, gf2_rank_u64, pack_rows, rational_rank};

use netgraph::{Cut, Exec, NetError, Network, NodeId};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring has {got} entries for {want} nodes")]
    SizeMismatch { got: usize, want: usize },
    #[error("node {0} has no color")]
    Uncolored(NodeId),
    #[error("node {node} has color {color} outside palette of {palette}")]
    OutOfPalette { node: NodeId, color: u8, palette: usize },
    #[error("network is not a grid")]
    NotAGrid,
    #[error("no numbering of this kind for a {rows}x{cols} grid with source {at:?}")]
    NoNumbering { rows: usize, cols: usize, at: (usize, usize) },
    #[error(transparent)]
    Net(#[from] NetError),
}

/// `colors[k]` is `None` only for the source, which transmits on a schedule
/// of its own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub palette_size: usize,
    pub colors: Vec<Option<u8>>,
}

impl Coloring {
    pub fn new(net: &Network, palette_size: usize, colors: Vec<Option<u8>>) -> Result<Coloring, ColoringError> {
        if colors.len() != net.node_count() {
            return Err(ColoringError::SizeMismatch { got: colors.len(), want: net.node_count() });
        }
        for (k, c) in colors.iter().enumerate() {
            match c {
                None if k != net.source() => return Err(ColoringError::Uncolored(k)),
                Some(c) if *c as usize >= palette_size => {
                    return Err(ColoringError::OutOfPalette { node: k, color: *c, palette: palette_size })
                }
                _ => {}
            }
        }
        Ok(Coloring { palette_size, colors })
    }

    /// Every non-source node gets color 0.
    pub fn monochrome(net: &Network) -> Coloring {
        let colors = (0..net.node_count()).map(|k| (k != net.source()).then_some(0)).collect();
        Coloring { palette_size: 1, colors }
    }

    pub fn color(&self, k: NodeId) -> Option<u8> {
        self.colors[k]
    }
}

/// The base network with edges between like-colored nodes removed. Edges at
/// the (uncolored) source are kept.
#[derive(Debug, Clone)]
pub struct ColoredGraph {
    pub base: Network,
    pub coloring: Coloring,
    ef: Vec<Vec<NodeId>>,
}

impl ColoredGraph {
    pub fn new(base: &Network, coloring: Coloring) -> Result<ColoredGraph, ColoringError> {
        let coloring = Coloring::new(base, coloring.palette_size, coloring.colors)?;
        let ef = (0..base.node_count())
            .map(|u| {
                base.adj(u)
                    .iter()
                    .copied()
                    .filter(|&v| coloring.colors[u].is_none() || coloring.colors[u] != coloring.colors[v])
                    .collect()
            })
            .collect();
        Ok(ColoredGraph { base: base.clone(), coloring, ef })
    }

    pub fn adj(&self, k: NodeId) -> &[NodeId] {
        &self.ef[k]
    }

    pub fn color(&self, k: NodeId) -> Option<u8> {
        self.coloring.colors[k]
    }

    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for (u, a) in self.ef.iter().enumerate() {
            out.extend(a.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    /// V1' and V2' of a cut in the colored graph: nodes on either side with
    /// a colored-graph edge across.
    pub fn cut_sides(&self, cut: &Cut) -> (Vec<NodeId>, Vec<NodeId>) {
        let n = self.base.node_count();
        let mut in_v2 = vec![false; n];
        for &v in &cut.v2 {
            in_v2[v] = true;
        }
        let across = |u: NodeId| self.ef[u].iter().any(|&w| in_v2[w] != in_v2[u]);
        let v1p = (0..n).filter(|&u| !in_v2[u] && across(u)).collect();
        let v2p = cut.v2.iter().copied().filter(|&v| across(v)).collect();
        (v1p, v2p)
    }

    /// The 0/1 matrix between the color-`c` nodes of V1' (rows) and V2'
    /// (columns); entries are base-graph adjacencies.
    pub fn group_matrix(&self, cut: &Cut, c: u8) -> Vec<Vec<u8>> {
        let (v1p, v2p) = self.cut_sides(cut);
        v1p.into_iter()
            .filter(|&u| self.color(u) == Some(c))
            .map(|u| v2p.iter().map(|&v| self.base.is_adjacent(u, v) as u8).collect())
            .collect()
    }

    /// Rank over GF(2) of the color-`c` group matrix; 0 if the color is absent.
    pub fn color_group_cut_size(&self, cut: &Cut, c: u8) -> Result<usize, ColoringError> {
        self.base.check_cut(cut)?;
        Ok(gf2_rank(&pack_rows(&self.group_matrix(cut, c))))
    }

    /// Rational rank of the same matrix, for comparison with the GF(2) choice.
    pub fn color_group_cut_size_rational(&self, cut: &Cut, c: u8) -> Result<usize, ColoringError> {
        self.base.check_cut(cut)?;
        let rows: Vec<Vec<i64>> =
            self.group_matrix(cut, c).into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect();
        Ok(rational_rank(&rows))
    }

    pub fn color_cut_size(&self, cut: &Cut) -> Result<usize, ColoringError> {
        let mut total = 0;
        for c in 0..self.coloring.palette_size as u8 {
            total += self.color_group_cut_size(cut, c)?;
        }
        Ok(total)
    }

    /// n_f: the minimum color-cut size over all qualified cuts, by
    /// enumerating V2 ⊆ V \ ({X} ∪ N(X)).
    pub fn min_color_cut(&self, exec: Exec) -> Result<usize, ColoringError> {
        let net = &self.base;
        let far = net.far_nodes();
        if far.is_empty() {
            return Err(NetError::NoQualifiedCut.into());
        }
        if far.len() > netgraph_limit() || net.node_count() > 64 {
            return Err(NetError::TooLarge(far.len()).into());
        }
        let n = net.node_count();
        let mask = |a: &[NodeId]| a.iter().fold(0u64, |m, &v| m | 1 << v);
        let adj: Vec<u64> = (0..n).map(|u| mask(net.adj(u))).collect();
        let ef: Vec<u64> = (0..n).map(|u| mask(&self.ef[u])).collect();
        let colors: Vec<u8> = (0..n).map(|u| self.color(u).unwrap_or(u8::MAX)).collect();
        let palette = self.coloring.palette_size;

        let total: u64 = 1 << far.len();
        let chunk_bits = far.len().saturating_sub(8);
        let chunks = (total >> chunk_bits) as usize;
        let best = exec.map_range(chunks, |ch| {
            let lo = (ch as u64) << chunk_bits;
            let hi = lo + (1u64 << chunk_bits);
            let mut best = usize::MAX;
            let mut rows: Vec<Vec<u64>> = vec![Vec::new(); palette];
            for sub in lo.max(1)..hi {
                let (mut v2, mut nb) = (0u64, 0u64);
                let mut bits = sub;
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    v2 |= 1 << far[i];
                    nb |= ef[far[i]];
                    bits &= bits - 1;
                }
                let mut v2p = 0u64;
                let mut bits = v2;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    if ef[v] & !v2 != 0 {
                        v2p |= 1 << v;
                    }
                    bits &= bits - 1;
                }
                let mut v1p = nb & !v2;
                rows.iter_mut().for_each(|r| r.clear());
                while v1p != 0 {
                    let u = v1p.trailing_zeros() as usize;
                    rows[colors[u] as usize].push(adj[u] & v2p);
                    v1p &= v1p - 1;
                }
                let size: usize = rows.iter().map(|r| gf2_rank_u64(r)).sum();
                best = best.min(size);
            }
            best
        });
        Ok(best.into_iter().min().unwrap())
    }
}

fn netgraph_limit() -> usize {
    30
}
