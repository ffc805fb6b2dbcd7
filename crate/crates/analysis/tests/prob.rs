use analysis::{
    binomial_sigma, coefficient_product, estimate_decode_success, run_grid_trials, sample_determinant_vanishing, staggered_nodes,
    success_prob_lower_bound, trial_seeds, GridTrials, TrialCoeffs,
};
use coloring::HamiltonianNumbering;
use gf2s::Field;
use netgraph::Exec;
use proptest::prelude::*;

#[test]
fn lower_bound_value() {
    let b = success_prob_lower_bound(6, 5, 50, 16);
    let want = (1.0 - 60.0 / 65535.0f64).powi(25);
    assert!((b - want).abs() < 1e-15);
    assert!((b - 0.977361).abs() < 1e-6);
    // Tiny fields give no guarantee.
    assert_eq!(success_prob_lower_bound(6, 5, 50, 4), 0.0);
    assert_eq!(success_prob_lower_bound(6, 5, 0, 4), 1.0);
}

#[test]
fn sigma_floor() {
    assert_eq!(binomial_sigma(1.0, 200), 1.0 / 200.0);
    assert!((binomial_sigma(0.5, 100) - 0.05).abs() < 1e-12);
}

#[test]
fn seeds_are_reproducible() {
    assert_eq!(trial_seeds(7, 5), trial_seeds(7, 5));
    assert_ne!(trial_seeds(7, 5), trial_seeds(8, 5));
    assert_eq!(trial_seeds(7, 3)[..], trial_seeds(7, 5)[..3]);
}

fn cfg(d: usize) -> GridTrials {
    GridTrials { rows: 6, cols: 5, source: (1, 1), d, s: 16, coeffs: TrialCoeffs::Random, slot_cap: None }
}

#[test]
fn random_coefficients_decode() {
    let est = estimate_decode_success(&cfg(50), 20, 1, Exec::Parallel).unwrap();
    assert_eq!(est.trials, 20);
    assert!(est.consistent_with_bound(3.0), "{est:?}");
    assert!(est.w_d.iter().all(|w| w.is_some()));
}

#[test]
fn parallel_and_sequential_agree() {
    let seeds = trial_seeds(3, 4);
    let a = run_grid_trials(&cfg(20), &seeds, Exec::Parallel).unwrap();
    let b = run_grid_trials(&cfg(20), &seeds, Exec::Sequential).unwrap();
    assert_eq!(a, b);
}

#[test]
fn determinant_rarely_vanishes() {
    let h = HamiltonianNumbering::build(6, 5, (1, 1)).unwrap();
    let nodes = staggered_nodes(&h).unwrap();
    assert!(!nodes.is_empty());
    for &k in nodes.iter().take(3) {
        let d = sample_determinant_vanishing(&h, k, 16, 500, 9, Exec::Parallel).unwrap();
        assert!(d.within_bound(3.0), "{d:?}");
        let [i0, i1, j0, j1] = d.lengths;
        assert!(i0 < i1 && j0 < j1 && i1 - i0 == j1 - j0);
        assert!(d.path_counts.iter().all(|&c| c >= 1));
    }
}

#[test]
fn tiny_field_vanishes_often() {
    // Over GF(2) every α is 1; the determinant is a fixed sum of path counts.
    let h = HamiltonianNumbering::build(6, 5, (1, 1)).unwrap();
    let k = staggered_nodes(&h).unwrap()[0];
    let d = sample_determinant_vanishing(&h, k, 1, 50, 0, Exec::Sequential).unwrap();
    assert!(d.zeros == 0 || d.zeros == 50);
}

proptest! {
    #[test]
    fn product_of_ones_is_one(path in proptest::collection::vec(0usize..30, 2..10), t in 0i64..100) {
        let f = Field::with_width(8).unwrap();
        prop_assert_eq!(coefficient_product(&f, &path, t, &|_, _| 1), 1);
    }

    #[test]
    fn product_skips_the_first_hop(a in 1u16..256, b in 1u16..256) {
        let f = Field::with_width(8).unwrap();
        // Path 0 -> 1 -> 2: the virtual source contributes 1; node 1 scales at round t.
        let g = coefficient_product(&f, &[0, 1, 2], 5, &|k, r| match (k, r) { (0, _) => a, (1, 5) => b, _ => 0 });
        prop_assert_eq!(g, b);
    }
}
