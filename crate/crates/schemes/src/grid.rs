use coloring::{ColoringError, HamiltonianNumbering};
use engine::{superpose, EngineError, Equation, Layout, Scheme, SlotAction};
use gf2s::{Field, FieldElement};
use netgraph::{Network, NodeId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoeffMode {
    AllOnes,
    /// Fresh nonzero α per node and round, drawn round by round in node-id
    /// order from one seeded stream.
    IidRandom { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Role {
    Source,
    VirtualSource0,
    VirtualSource1,
    XNeighbor,
    Relay,
}

/// X's packet in phase 0, 1, 2 of round t: x0(t), x1(t), x0(t)⊕x1(t); null
/// once the streams run out.
pub fn source_payload(layout: Layout, t: usize, phase: usize) -> Equation {
    let a = Equation::unit(layout, 0, t);
    let b = Equation::unit(layout, 1, t);
    match phase {
        0 => a,
        1 => b,
        _ => superpose(layout, [&a, &b]),
    }
}

/// Ternary color schedule on a grid. Every node has color (number mod 3)
/// and transmits only in slot 3t + color of each round t. Nodes 1 and L
/// (the virtual sources, both next to X) forward x0(t−1) and x1(t−1); every
/// other node sends α·(r0 ⊕ r1), where r0, r1 are its receptions in the
/// slots of colors c−1 and c+1 of the previous round, after removing X's
/// packets if it is next to X.
#[derive(Debug, Clone)]
pub struct GridTernary {
    layout: Layout,
    numbering: HamiltonianNumbering,
    roles: Vec<Role>,
    colors: Vec<u8>,
    x_neighbor: Vec<bool>,
    coeffs: CoeffMode,
    rng: Option<ChaCha8Rng>,
    alpha: Vec<FieldElement>,
    prev: Vec<[Option<Equation>; 3]>,
    cur: Vec<[Option<Equation>; 3]>,
    rows: usize,
    cols: usize,
}

impl GridTernary {
    pub fn new(net: &Network, d: usize, coeffs: CoeffMode) -> Result<GridTernary, EngineError> {
        let g = net.grid_shape().ok_or_else(|| EngineError::Config("grid scheme needs a grid network".into()))?;
        let h = HamiltonianNumbering::build(g.rows, g.cols, g.source).map_err(cfg)?;
        GridTernary::with_numbering(net, d, coeffs, h)
    }

    pub fn with_numbering(
        net: &Network,
        d: usize,
        coeffs: CoeffMode,
        numbering: HamiltonianNumbering,
    ) -> Result<GridTernary, EngineError> {
        let layout = Layout::new(d, 2)?;
        let numbers = numbering.numbers(net).map_err(cfg)?;
        let x = net.source();
        let last = numbering.last();
        let n = net.node_count();
        let x0 = numbering.node_of(net, 1).map_err(cfg)?;
        let x1 = numbering.node_of(net, last).map_err(cfg)?;
        let roles = (0..n)
            .map(|k| match k {
                _ if k == x => Role::Source,
                _ if k == x0 => Role::VirtualSource0,
                _ if k == x1 => Role::VirtualSource1,
                _ if net.is_adjacent(k, x) => Role::XNeighbor,
                _ => Role::Relay,
            })
            .collect();
        let colors = numbers.iter().map(|k| k.map_or(u8::MAX, |k| (k % 3) as u8)).collect();
        let x_neighbor = (0..n).map(|k| net.is_adjacent(k, x)).collect();
        let rng = match coeffs {
            CoeffMode::AllOnes => None,
            CoeffMode::IidRandom { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        Ok(GridTernary {
            layout,
            rows: numbering.rows,
            cols: numbering.cols,
            numbering,
            roles,
            colors,
            x_neighbor,
            coeffs,
            rng,
            alpha: vec![1; n],
            prev: vec![Default::default(); n],
            cur: vec![Default::default(); n],
        })
    }

    pub fn numbering(&self) -> &HamiltonianNumbering {
        &self.numbering
    }

    pub fn role(&self, k: NodeId) -> Role {
        self.roles[k]
    }

    pub fn color(&self, k: NodeId) -> Option<u8> {
        (self.colors[k] != u8::MAX).then_some(self.colors[k])
    }

    /// α of every node in the current round.
    pub fn alphas(&self) -> &[FieldElement] {
        &self.alpha
    }

    fn payload(&self, k: NodeId, t: usize) -> Equation {
        let l = self.layout;
        let c = self.colors[k] as usize;
        match self.roles[k] {
            Role::Source => unreachable!("X follows its own schedule"),
            Role::VirtualSource0 => t.checked_sub(1).map_or(Equation::null(l), |p| Equation::unit(l, 0, p)),
            Role::VirtualSource1 => t.checked_sub(1).map_or(Equation::null(l), |p| Equation::unit(l, 1, p)),
            Role::XNeighbor | Role::Relay => {
                let Some(p) = t.checked_sub(1) else { return Equation::null(l) };
                let mut sum = Equation::null(l);
                for phase in [(c + 2) % 3, (c + 1) % 3] {
                    if let Some(r) = &self.prev[k][phase] {
                        sum.add_assign(r);
                    }
                    if self.x_neighbor[k] {
                        sum.add_assign(&source_payload(l, p, phase));
                    }
                }
                sum
            }
        }
    }
}

fn cfg(e: ColoringError) -> EngineError {
    EngineError::Config(e.to_string())
}

impl Scheme for GridTernary {
    fn name(&self) -> String {
        let mode = match self.coeffs {
            CoeffMode::AllOnes => "ones",
            CoeffMode::IidRandom { .. } => "random",
        };
        format!("grid-ternary-{mode}")
    }
    fn layout(&self) -> Layout {
        self.layout
    }
    fn check(&self, net: &Network) -> Result<(), EngineError> {
        match net.grid_shape() {
            Some(g) if (g.rows, g.cols, g.source) == (self.rows, self.cols, self.numbering.source) => Ok(()),
            _ => Err(EngineError::Config("grid scheme built for a different grid".into())),
        }
    }
    fn actions(&mut self, slot: usize, net: &Network, field: &Field) -> Vec<SlotAction> {
        let (t, phase) = (slot / 3, slot % 3);
        if phase == 0 {
            self.prev = std::mem::replace(&mut self.cur, vec![Default::default(); net.node_count()]);
            if let Some(rng) = self.rng.as_mut() {
                for k in 0..net.node_count() {
                    if k != net.source() {
                        self.alpha[k] = field.sample_nonzero(rng);
                    }
                }
            }
        }
        (0..net.node_count())
            .map(|k| match self.roles[k] {
                Role::Source => SlotAction::Transmit(source_payload(self.layout, t, phase)),
                _ if self.colors[k] as usize != phase => SlotAction::Listen,
                // Scheduled nodes stay on the air even with nothing to say.
                Role::XNeighbor | Role::Relay => SlotAction::Transmit(self.payload(k, t).scaled(field, self.alpha[k])),
                _ => SlotAction::Transmit(self.payload(k, t)),
            })
            .collect()
    }
    fn observe(&mut self, slot: usize, receptions: &[Option<Equation>]) {
        let phase = slot % 3;
        for (k, r) in receptions.iter().enumerate() {
            self.cur[k][phase] = r.clone();
        }
    }
}

/// The grid schedules' default horizon: 3(D/2 + MN) slots.
pub fn default_slot_cap(rows: usize, cols: usize, d: usize) -> usize {
    3 * (d / 2 + rows * cols)
}
