use analysis::{check_fig2_infeasibility, Fig2Verdict, Ratio};

#[test]
fn two_thirds_is_infeasible_for_short_periods() {
    for p in [3, 6] {
        let v = check_fig2_infeasibility(p, Ratio::new(2, 3)).unwrap();
        assert!(v.is_unsat(), "P={p}: {v:?}");
        if let Fig2Verdict::Unsat { assignments, .. } = v {
            assert_eq!(assignments, 5u64.pow(p as u32));
        }
    }
}

#[test]
fn relaxed_target_has_a_witness() {
    let v = check_fig2_infeasibility(6, Ratio::new(1, 2)).unwrap();
    let Fig2Verdict::Sat { witness, .. } = v else { panic!("expected SAT") };
    let sets = [&witness.x0, &witness.x1, &witness.n2, &witness.n3];
    for s in sets {
        assert!(s.len() <= 3);
    }
    let union = |a: &Vec<usize>, b: &Vec<usize>| a.len() + b.len();
    assert!(union(&witness.x0, &witness.n3) >= 3);
    assert!(union(&witness.x1, &witness.n2) >= 3);
    let mut all: Vec<usize> = sets.iter().flat_map(|s| s.iter().copied()).collect();
    all.sort();
    all.dedup();
    assert_eq!(all.len(), sets.iter().map(|s| s.len()).sum::<usize>());
}

#[test]
fn rejects_bad_inputs() {
    assert!(check_fig2_infeasibility(4, Ratio::new(2, 3)).is_err());
    assert!(check_fig2_infeasibility(0, Ratio::new(2, 3)).is_err());
    assert!(check_fig2_infeasibility(3, Ratio::new(1, 1)).is_err());
    assert!(check_fig2_infeasibility(3, Ratio::new(0, 1)).is_err());
}

#[test]
fn verdict_json_tag() {
    let v = check_fig2_infeasibility(3, Ratio::new(2, 3)).unwrap();
    let js = serde_json::to_value(&v).unwrap();
    assert_eq!(js["verdict"], "UNSAT");
}
