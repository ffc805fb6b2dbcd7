use gf2s::Field;
use netgraph::{Network, NodeId};
use serde::Serialize;

use crate::decoder::Decoder;
use crate::equation::{superpose, Equation, Layout};
use crate::EngineError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlotAction {
    Listen,
    /// Transmitting a null equation is allowed (a scheduled node with
    /// nothing useful to say); it still keeps the node off the air for
    /// receiving.
    Transmit(Equation),
}

impl SlotAction {
    pub fn payload(&self) -> Option<&Equation> {
        match self {
            SlotAction::Transmit(e) => Some(e),
            SlotAction::Listen => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReceptionModel {
    /// A listener maps simultaneous signals to the XOR of the payloads.
    Pnc,
    /// Two or more transmitting neighbors destroy each other.
    Collision,
}

/// One slot: what every node hears. Transmitters get `None`; a listener
/// with no transmitting neighbor gets the null equation.
pub fn step(net: &Network, layout: Layout, actions: &[SlotAction], model: ReceptionModel) -> Vec<Option<Equation>> {
    (0..net.node_count())
        .map(|k| {
            if actions[k].payload().is_some() {
                return None;
            }
            let heard: Vec<&Equation> = net.adj(k).iter().filter_map(|&u| actions[u].payload()).collect();
            Some(match model {
                ReceptionModel::Collision if heard.len() > 1 => Equation::null(layout),
                _ => superpose(layout, heard),
            })
        })
        .collect()
}

pub trait Scheme {
    fn name(&self) -> String;
    fn layout(&self) -> Layout;
    fn model(&self) -> ReceptionModel {
        ReceptionModel::Pnc
    }
    /// Rejects networks the schedule was not written for.
    fn check(&self, net: &Network) -> Result<(), EngineError>;
    fn actions(&mut self, slot: usize, net: &Network, field: &Field) -> Vec<SlotAction>;
    fn observe(&mut self, _slot: usize, _receptions: &[Option<Equation>]) {}
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub slot_cap: usize,
    /// Keep every action and reception (needed for CSV export and golden
    /// comparisons; costly for long runs).
    pub record: bool,
    /// Fail if a relay transmits something outside the span of what it has
    /// received.
    pub check_causality: bool,
}

impl RunOptions {
    pub fn new(slot_cap: usize) -> RunOptions {
        RunOptions { slot_cap, record: false, check_causality: false }
    }
}

#[derive(Debug, Clone)]
pub struct Trace {
    pub scheme: String,
    pub layout: Layout,
    pub source: NodeId,
    /// Slots actually simulated.
    pub slots: usize,
    /// Slot count at which every non-source node first had rank D.
    pub w_d: Option<usize>,
    /// `rank_history[τ][k]`: rank of node k after slot τ (the source counts as D).
    pub rank_history: Vec<Vec<usize>>,
    pub actions: Vec<Vec<SlotAction>>,
    pub receptions: Vec<Vec<Option<Equation>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceSummary {
    pub scheme: String,
    pub d: usize,
    pub streams: usize,
    pub slots: usize,
    pub w_d: Option<usize>,
    pub final_ranks: Vec<usize>,
    pub rank_history: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    slot: usize,
    node: NodeId,
    action: &'a str,
    payload: String,
}

impl Trace {
    pub fn completed(&self) -> bool {
        self.w_d.is_some()
    }

    pub fn final_ranks(&self) -> Vec<usize> {
        self.rank_history.last().cloned().unwrap_or_default()
    }

    /// D − rank for every node.
    pub fn deficits(&self) -> Vec<usize> {
        self.final_ranks().iter().map(|r| self.layout.d - r).collect()
    }

    pub fn summary(&self) -> TraceSummary {
        TraceSummary {
            scheme: self.scheme.clone(),
            d: self.layout.d,
            streams: self.layout.streams,
            slots: self.slots,
            w_d: self.w_d,
            final_ranks: self.final_ranks(),
            rank_history: self.rank_history.clone(),
        }
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary()).expect("plain data")
    }

    /// `slot,node,action,payload` with `tx`/`rx` actions and hex payloads.
    /// Empty unless the run was recorded.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<(), EngineError> {
        let mut w = csv::Writer::from_writer(out);
        for (slot, (acts, rx)) in self.actions.iter().zip(&self.receptions).enumerate() {
            for (node, (a, r)) in acts.iter().zip(rx).enumerate() {
                let (action, payload) = match (a, r) {
                    (SlotAction::Transmit(e), _) => ("tx", e.to_hex()),
                    (SlotAction::Listen, Some(e)) => ("rx", e.to_hex()),
                    (SlotAction::Listen, None) => continue,
                };
                w.serialize(CsvRow { slot, node, action, payload }).map_err(|e| EngineError::Io(e.to_string()))?;
            }
        }
        w.flush().map_err(|e| EngineError::Io(e.to_string()))?;
        Ok(())
    }
}

/// Drives `scheme` slot by slot until every node decodes or the cap is hit.
pub fn run(net: &Network, scheme: &mut dyn Scheme, field: &Field, opts: &RunOptions) -> Result<Trace, EngineError> {
    if opts.slot_cap == 0 {
        return Err(EngineError::Config("slot cap must be positive".into()));
    }
    scheme.check(net)?;
    let layout = scheme.layout();
    let model = scheme.model();
    let n = net.node_count();
    let x = net.source();
    let mut dec: Vec<Decoder> = (0..n).map(|_| Decoder::new(layout)).collect();
    let mut trace = Trace {
        scheme: scheme.name(),
        layout,
        source: x,
        slots: 0,
        w_d: None,
        rank_history: Vec::new(),
        actions: Vec::new(),
        receptions: Vec::new(),
    };
    for slot in 0..opts.slot_cap {
        let actions = scheme.actions(slot, net, field);
        if actions.len() != n {
            return Err(EngineError::Config(format!("scheme produced {} actions for {n} nodes", actions.len())));
        }
        if opts.check_causality {
            for (k, a) in actions.iter().enumerate() {
                if let (true, Some(e)) = (k != x, a.payload()) {
                    if !dec[k].contains(field, e) {
                        return Err(EngineError::Causality { slot, node: k });
                    }
                }
            }
        }
        let rx = step(net, layout, &actions, model);
        for (k, r) in rx.iter().enumerate() {
            if let (true, Some(e)) = (k != x, r) {
                dec[k].insert(field, e);
            }
        }
        scheme.observe(slot, &rx);
        let ranks: Vec<usize> = (0..n).map(|k| if k == x { layout.d } else { dec[k].rank() }).collect();
        let done = ranks.iter().all(|&r| r == layout.d);
        trace.rank_history.push(ranks);
        if opts.record {
            trace.actions.push(actions);
            trace.receptions.push(rx);
        }
        trace.slots = slot + 1;
        if done {
            trace.w_d = Some(slot + 1);
            break;
        }
    }
    Ok(trace)
}
