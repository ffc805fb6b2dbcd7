use engine::{EngineError, Equation, Layout, ReceptionModel, Scheme, SlotAction};
use gf2s::Field;
use netgraph::Network;

/// Hop distances from X if `net` is a path with X at one end.
fn path_distances(net: &Network) -> Result<Vec<usize>, EngineError> {
    let x = net.source();
    let n = net.node_count();
    let is_path = net.adj(x).len() == 1 && net.edges().len() == n - 1 && (0..n).all(|k| net.adj(k).len() <= 2);
    if !is_path {
        return Err(EngineError::Config("line schemes need a path with the source at one end".into()));
    }
    Ok(net.bfs_dist(x).into_iter().map(|d| d.expect("connected")).collect())
}

/// Native packets only: the node at hop distance i sends x((τ−i)/2) in
/// every slot τ ≥ i with τ ≡ i (mod 2). A listener hears the new packet
/// from upstream XORed with an old one from downstream, which it already
/// has.
#[derive(Debug, Clone)]
pub struct LinePnc {
    layout: Layout,
    dist: Vec<usize>,
}

impl LinePnc {
    pub fn new(net: &Network, d: usize) -> Result<LinePnc, EngineError> {
        Ok(LinePnc { layout: Layout::new(d, 1)?, dist: path_distances(net)? })
    }
}

impl Scheme for LinePnc {
    fn name(&self) -> String {
        "line-pnc".into()
    }
    fn layout(&self) -> Layout {
        self.layout
    }
    fn check(&self, net: &Network) -> Result<(), EngineError> {
        (path_distances(net)? == self.dist).then_some(()).ok_or_else(|| EngineError::Config("different line".into()))
    }
    fn actions(&mut self, slot: usize, _net: &Network, _field: &Field) -> Vec<SlotAction> {
        self.dist
            .iter()
            .map(|&i| match slot.checked_sub(i) {
                Some(a) if a % 2 == 0 && a / 2 < self.layout.d => SlotAction::Transmit(Equation::unit(self.layout, 0, a / 2)),
                _ => SlotAction::Listen,
            })
            .collect()
    }
}

/// Classic pipelined flooding: the node at distance d forwards x(t) in slot
/// 3t+d. Receptions with two or more transmitting neighbors are lost.
#[derive(Debug, Clone)]
pub struct LineStoreForward {
    layout: Layout,
    dist: Vec<usize>,
}

impl LineStoreForward {
    pub fn new(net: &Network, d: usize) -> Result<LineStoreForward, EngineError> {
        Ok(LineStoreForward { layout: Layout::new(d, 1)?, dist: path_distances(net)? })
    }
}

impl Scheme for LineStoreForward {
    fn name(&self) -> String {
        "line-store-forward".into()
    }
    fn layout(&self) -> Layout {
        self.layout
    }
    fn model(&self) -> ReceptionModel {
        ReceptionModel::Collision
    }
    fn check(&self, net: &Network) -> Result<(), EngineError> {
        (path_distances(net)? == self.dist).then_some(()).ok_or_else(|| EngineError::Config("different line".into()))
    }
    fn actions(&mut self, slot: usize, _net: &Network, _field: &Field) -> Vec<SlotAction> {
        self.dist
            .iter()
            .map(|&i| match slot.checked_sub(i) {
                Some(a) if a % 3 == 0 && a / 3 < self.layout.d => SlotAction::Transmit(Equation::unit(self.layout, 0, a / 3)),
                _ => SlotAction::Listen,
            })
            .collect()
    }
}
