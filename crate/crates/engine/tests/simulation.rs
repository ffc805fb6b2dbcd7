use engine::{run, step, superpose, Decoder, EngineError, Equation, Layout, ReceptionModel, RunOptions, Scheme, SlotAction};
use gf2s::Field;
use netgraph::{random::connected_gnp, Network};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn step_examples() {
    let l = Layout::single(4);
    let net = Network::line(3).unwrap();
    let listen = vec![SlotAction::Listen; 3];
    let rx = step(&net, l, &listen, ReceptionModel::Pnc);
    assert!(rx.iter().all(|r| r.as_ref().unwrap().is_null()));

    let e = Equation::unit(l, 0, 2);
    let acts = vec![SlotAction::Listen, SlotAction::Transmit(e.clone()), SlotAction::Listen];
    let rx = step(&net, l, &acts, ReceptionModel::Pnc);
    assert_eq!(rx, vec![Some(e.clone()), None, Some(e)]);
}

#[test]
fn three_transmitting_neighbors_superpose() {
    let l = Layout::single(4);
    // Star: node 1 in the middle of 0, 2, 3.
    let net = Network::from_edges(4, &[(0, 1), (1, 2), (1, 3)], 0).unwrap();
    let p: Vec<Equation> = (0..3).map(|t| Equation::unit(l, 0, t)).collect();
    let acts = vec![
        SlotAction::Transmit(p[0].clone()),
        SlotAction::Listen,
        SlotAction::Transmit(p[1].clone()),
        SlotAction::Transmit(p[2].clone()),
    ];
    let rx = step(&net, l, &acts, ReceptionModel::Pnc);
    assert_eq!(rx[1].as_ref().unwrap(), &superpose(l, &p));
    let rx = step(&net, l, &acts, ReceptionModel::Collision);
    assert!(rx[1].as_ref().unwrap().is_null());
}

/// Every node flips a coin each slot; transmitters send a random combination
/// of what they know (the source knows everything).
struct RandomScheme {
    layout: Layout,
    rng: ChaCha8Rng,
    p_tx: f64,
    known: Vec<Vec<Equation>>,
}

impl RandomScheme {
    fn new(net: &Network, d: usize, seed: u64) -> RandomScheme {
        let layout = Layout::new(d, 2).unwrap();
        let mut known = vec![Vec::new(); net.node_count()];
        known[net.source()] = (0..2).flat_map(|s| (0..d / 2).map(move |t| (s, t))).map(|(s, t)| Equation::unit(layout, s, t)).collect();
        RandomScheme { layout, rng: ChaCha8Rng::seed_from_u64(seed), p_tx: 0.4, known }
    }
}

impl Scheme for RandomScheme {
    fn name(&self) -> String {
        "random".into()
    }
    fn layout(&self) -> Layout {
        self.layout
    }
    fn check(&self, _net: &Network) -> Result<(), EngineError> {
        Ok(())
    }
    fn actions(&mut self, _slot: usize, net: &Network, field: &Field) -> Vec<SlotAction> {
        (0..net.node_count())
            .map(|k| {
                if !self.rng.gen_bool(self.p_tx) {
                    return SlotAction::Listen;
                }
                let mut e = Equation::null(self.layout);
                for i in 0..self.known[k].len() {
                    let c = self.rng.gen_range(0..field.order()) as u16;
                    e.axpy(c, &self.known[k][i], Some(field));
                }
                SlotAction::Transmit(e)
            })
            .collect()
    }
    fn observe(&mut self, _slot: usize, rx: &[Option<Equation>]) {
        for (k, r) in rx.iter().enumerate() {
            if let Some(e) = r.as_ref().filter(|e| !e.is_null()) {
                self.known[k].push(e.clone());
            }
        }
    }
}

fn recorded(slots: usize) -> RunOptions {
    RunOptions { slot_cap: slots, record: true, check_causality: true }
}

#[test]
fn slot_cap_zero_is_rejected() {
    let net = Network::line(3).unwrap();
    let f = Field::with_width(4).unwrap();
    let mut s = RandomScheme::new(&net, 4, 0);
    assert!(run(&net, &mut s, &f, &RunOptions::new(0)).is_err());
}

#[test]
fn causality_violation_is_reported() {
    struct Cheat(Layout);
    impl Scheme for Cheat {
        fn name(&self) -> String {
            "cheat".into()
        }
        fn layout(&self) -> Layout {
            self.0
        }
        fn check(&self, _net: &Network) -> Result<(), EngineError> {
            Ok(())
        }
        fn actions(&mut self, _slot: usize, net: &Network, _f: &Field) -> Vec<SlotAction> {
            let mut a = vec![SlotAction::Listen; net.node_count()];
            a[2] = SlotAction::Transmit(Equation::unit(self.0, 0, 0));
            a
        }
    }
    let net = Network::line(3).unwrap();
    let f = Field::with_width(4).unwrap();
    let err = run(&net, &mut Cheat(Layout::single(2)), &f, &recorded(5)).unwrap_err();
    assert_eq!(err, EngineError::Causality { slot: 0, node: 2 });
}

#[test]
fn trace_exports() {
    let net = Network::ring(4).unwrap();
    let f = Field::with_width(8).unwrap();
    let mut s = RandomScheme::new(&net, 4, 3);
    let t = run(&net, &mut s, &f, &recorded(200)).unwrap();
    assert!(t.completed());
    let mut csv = Vec::new();
    t.write_csv(&mut csv).unwrap();
    let text = String::from_utf8(csv).unwrap();
    assert!(text.starts_with("slot,node,action,payload\n"));
    let json: serde_json::Value = serde_json::from_str(&t.summary_json()).unwrap();
    assert_eq!(json["w_d"].as_u64(), t.w_d.map(|w| w as u64));
}

fn random_case() -> impl Strategy<Value = (u64, usize, usize)> {
    (any::<u64>(), 3usize..9, 1usize..4).prop_map(|(seed, n, half)| (seed, n, 2 * half))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn schedule_invariants((seed, n, d) in random_case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = connected_gnp(n, 0.5, &mut rng);
        let f = Field::with_width(4).unwrap();
        let mut s = RandomScheme::new(&net, d, seed);
        let t = run(&net, &mut s, &f, &recorded(40)).unwrap();

        // Half-duplex: transmitters hear nothing, listeners always hear something (maybe null).
        for (acts, rx) in t.actions.iter().zip(&t.receptions) {
            for (a, r) in acts.iter().zip(rx) {
                prop_assert_eq!(a.payload().is_some(), r.is_none());
            }
        }
        // Rank is monotone and bounded.
        for w in t.rank_history.windows(2) {
            for k in 0..n {
                prop_assert!(w[0][k] <= w[1][k] && w[1][k] <= d);
            }
        }
        if let Some(w) = t.w_d {
            prop_assert_eq!(w, t.slots);
            prop_assert!(t.rank_history[w - 1].iter().all(|&r| r == d));
            if w >= 2 {
                prop_assert!(t.rank_history[w - 2].iter().any(|&r| r < d));
            }
        }
        // Conservation: each reception lies in the span of neighbor payloads so far.
        let l = t.layout;
        let mut heard: Vec<Decoder> = (0..n).map(|_| Decoder::new(l)).collect();
        for (acts, rx) in t.actions.iter().zip(&t.receptions) {
            for k in 0..n {
                for &u in net.adj(k) {
                    if let Some(e) = acts[u].payload() {
                        heard[k].insert(&f, e);
                    }
                }
                if let Some(e) = &rx[k] {
                    prop_assert!(heard[k].contains(&f, e));
                }
            }
        }
        // Determinism.
        let mut s2 = RandomScheme::new(&net, d, seed);
        let t2 = run(&net, &mut s2, &f, &recorded(40)).unwrap();
        prop_assert_eq!(&t.rank_history, &t2.rank_history);
        prop_assert_eq!(&t.receptions, &t2.receptions);
    }

    #[test]
    fn locality((seed, n, d) in random_case(), target in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = connected_gnp(n, 0.4, &mut rng);
        let l = Layout::new(d, 2).unwrap();
        let k = target % n;
        let acts: Vec<SlotAction> = (0..n)
            .map(|u| if u == k || rng.gen_bool(0.5) { SlotAction::Listen } else { SlotAction::Transmit(Equation::unit(l, u % 2, 0)) })
            .collect();
        let before = step(&net, l, &acts, ReceptionModel::Pnc);
        let mut perturbed = acts.clone();
        for u in 0..n {
            if u != k && !net.is_adjacent(u, k) {
                perturbed[u] = SlotAction::Transmit(Equation::unit(l, 1, d / 2 - 1));
            }
        }
        let after = step(&net, l, &perturbed, ReceptionModel::Pnc);
        prop_assert_eq!(&before[k], &after[k]);
    }
}
