use analysis::{bound_report, measure_throughput, ratio_f64, throughput_bound, AnalysisError, Ratio};
use coloring::{ColoredGraph, HamiltonianNumbering};
use engine::{run, RunOptions};
use gf2s::Field;
use netgraph::{Exec, Network};
use schemes::{LinePnc, TableScheme};

#[test]
fn bound_values() {
    assert_eq!(throughput_bound(1), Ratio::new(1, 2));
    assert_eq!(throughput_bound(2), Ratio::new(2, 3));
    assert_eq!(throughput_bound(4), Ratio::new(4, 5));
    assert!((ratio_f64(throughput_bound(2)) - 2.0 / 3.0).abs() < 1e-12);
}

#[test]
fn reports_for_named_networks() {
    let line = bound_report(&Network::line(5).unwrap(), None, Exec::Sequential).unwrap();
    assert_eq!((line.n, line.bound.as_str(), line.n_f), (1, "1/2", None));
    assert_eq!(bound_report(&Network::ring(6).unwrap(), None, Exec::Sequential).unwrap().n, 2);
    assert_eq!(bound_report(&Network::chord_ring(), None, Exec::Sequential).unwrap().n, 4);
    assert_eq!(bound_report(&Network::fig2(), None, Exec::Sequential).unwrap().n, 2);
}

#[test]
fn grid_report_with_coloring() {
    let net = Network::grid(6, 5, (1, 1)).unwrap();
    let h = HamiltonianNumbering::build(6, 5, (1, 1)).unwrap();
    let cg = ColoredGraph::new(&net, h.coloring(&net).unwrap()).unwrap();
    let r = bound_report(&net, Some(&cg), Exec::Parallel).unwrap();
    assert_eq!(r.n, 2);
    assert_eq!(r.n_f, Some(2));
    assert_eq!(r.color_bound.as_deref(), Some("2/3"));
    let js = serde_json::to_value(&r).unwrap();
    assert_eq!(js["bound"], "2/3");
}

#[test]
fn measured_throughput_matches_w_d() {
    let net = Network::line(5).unwrap();
    let field = Field::with_width(8).unwrap();
    let mut s = LinePnc::new(&net, 200).unwrap();
    let t = run(&net, &mut s, &field, &RunOptions::new(2000)).unwrap();
    assert_eq!(measure_throughput(&t).unwrap(), Ratio::new(200, 402));

    let ring = Network::ring(6).unwrap();
    let mut s = TableScheme::ring(300).unwrap();
    let t = run(&ring, &mut s, &field, &RunOptions::new(2000)).unwrap();
    assert!(ratio_f64(measure_throughput(&t).unwrap()) >= 0.64);
}

#[test]
fn incomplete_trace_is_an_error() {
    let net = Network::line(5).unwrap();
    let field = Field::with_width(8).unwrap();
    let mut s = LinePnc::new(&net, 200).unwrap();
    let t = run(&net, &mut s, &field, &RunOptions::new(50)).unwrap();
    match measure_throughput(&t) {
        Err(AnalysisError::NotDecoded { slots, deficits }) => {
            assert_eq!(slots, 50);
            assert!(deficits.iter().any(|&d| d > 0));
        }
        other => panic!("expected NotDecoded, got {other:?}"),
    }
}
