//! Random connected test networks.

use crate::Network;
use rand::Rng;

/// G(n, p) conditioned on connectivity (rejection sampling), source 0.
pub fn connected_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Network {
    assert!(n >= 1);
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        if let Ok(net) = Network::from_edges(n, &edges, 0) {
            return net;
        }
    }
}
