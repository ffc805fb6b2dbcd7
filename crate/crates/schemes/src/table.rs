use engine::{superpose, EngineError, Equation, Layout, Scheme, SlotAction};
use gf2s::Field;
use netgraph::Network;

/// A term x_stream(t − lag) of a relay payload.
type Term = (usize, i64);

/// One scheduled transmission per round: `(node, slot offset, terms)`.
type Entry = (usize, usize, &'static [Term]);

// Six-node ring, X = 0, nodes 1..5 around. Two streams, rounds of 3 slots.
const RING: &[Entry] = &[
    (1, 1, &[(0, 1)]),
    (2, 2, &[(0, 2), (1, 4)]),
    (3, 0, &[(0, 3), (1, 3)]),
    (4, 1, &[(0, 4), (1, 2)]),
    (5, 2, &[(1, 1)]),
];

// Chord ring, four streams, rounds of 5 slots; node 3 only listens.
const CHORD: &[Entry] = &[(1, 0, &[(0, 1)]), (2, 1, &[(1, 1)]), (4, 2, &[(2, 1)]), (5, 3, &[(3, 1)])];

/// Round-periodic schedule for one of the two six-node example networks:
/// X sends each stream's packet of the round and then the XOR of all of
/// them; relays send fixed combinations of delayed packets. Terms before
/// the start or past the end of a stream are dropped; a relay with no terms
/// left listens.
#[derive(Debug, Clone)]
pub struct TableScheme {
    name: &'static str,
    layout: Layout,
    entries: &'static [Entry],
    expected: Network,
}

impl TableScheme {
    pub fn ring(d: usize) -> Result<TableScheme, EngineError> {
        let expected = Network::ring(6).expect("valid ring");
        Ok(TableScheme { name: "ring-table", layout: Layout::new(d, 2)?, entries: RING, expected })
    }

    pub fn chord_ring(d: usize) -> Result<TableScheme, EngineError> {
        let expected = Network::chord_ring();
        Ok(TableScheme { name: "chord-ring-table", layout: Layout::new(d, 4)?, entries: CHORD, expected })
    }

    /// Slots per round.
    pub fn period(&self) -> usize {
        self.layout.streams + 1
    }

    /// X's packet in slot `slot`.
    pub fn source_payload(&self, slot: usize) -> Equation {
        let (t, phase) = (slot / self.period(), slot % self.period());
        let l = self.layout;
        if phase < l.streams {
            Equation::unit(l, phase, t)
        } else {
            superpose(l, &(0..l.streams).map(|s| Equation::unit(l, s, t)).collect::<Vec<_>>())
        }
    }
}

impl Scheme for TableScheme {
    fn name(&self) -> String {
        self.name.into()
    }
    fn layout(&self) -> Layout {
        self.layout
    }
    fn check(&self, net: &Network) -> Result<(), EngineError> {
        if net.node_count() == 6 && net.source() == 0 && net.edges() == self.expected.edges() {
            Ok(())
        } else {
            Err(EngineError::Config(format!("{} runs only on its own six-node network", self.name)))
        }
    }
    fn actions(&mut self, slot: usize, net: &Network, _field: &Field) -> Vec<SlotAction> {
        let (t, phase) = ((slot / self.period()) as i64, slot % self.period());
        let mut out = vec![SlotAction::Listen; net.node_count()];
        let x = self.source_payload(slot);
        if !x.is_null() {
            out[0] = SlotAction::Transmit(x);
        }
        for &(node, offset, terms) in self.entries {
            if offset != phase {
                continue;
            }
            let mut e = Equation::null(self.layout);
            for &(s, lag) in terms {
                if t - lag >= 0 {
                    e.add_assign(&Equation::unit(self.layout, s, (t - lag) as usize));
                }
            }
            if !e.is_null() {
                out[node] = SlotAction::Transmit(e);
            }
        }
        out
    }
}
