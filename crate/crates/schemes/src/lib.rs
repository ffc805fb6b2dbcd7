//! Broadcast schedules for the engine: native-packet relaying on a line,
//! store-and-forward on a line, the two six-node table schedules, and the
//! color-based ternary schedule for grids.

mod grid;
mod line;
mod table;

pub use grid::{default_slot_cap, source_payload, CoeffMode, GridTernary, Role};
pub use line::{LinePnc, LineStoreForward};
pub use table::TableScheme;

use engine::{EngineError, Scheme};
use netgraph::Network;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeKind {
    LinePnc,
    LineStoreForward,
    RingTable,
    ChordRingTable,
    GridTernary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeConfig {
    pub kind: SchemeKind,
    #[serde(default = "all_ones")]
    pub coeff_mode: CoeffMode,
    #[serde(rename = "D")]
    pub d: usize,
}

fn all_ones() -> CoeffMode {
    CoeffMode::AllOnes
}

impl SchemeConfig {
    pub fn build(&self, net: &Network) -> Result<Box<dyn Scheme>, EngineError> {
        let s: Box<dyn Scheme> = match self.kind {
            SchemeKind::LinePnc => Box::new(LinePnc::new(net, self.d)?),
            SchemeKind::LineStoreForward => Box::new(LineStoreForward::new(net, self.d)?),
            SchemeKind::RingTable => Box::new(TableScheme::ring(self.d)?),
            SchemeKind::ChordRingTable => Box::new(TableScheme::chord_ring(self.d)?),
            SchemeKind::GridTernary => Box::new(GridTernary::new(net, self.d, self.coeff_mode)?),
        };
        s.check(net)?;
        Ok(s)
    }

    /// A horizon comfortably past the schedule's nominal completion.
    pub fn default_slot_cap(&self, net: &Network) -> usize {
        match (self.kind, net.grid_shape()) {
            (SchemeKind::GridTernary, Some(g)) => default_slot_cap(g.rows, g.cols, self.d),
            _ => 4 * self.d + 4 * net.node_count(),
        }
    }
}
