use analysis::{enumerate_shortest_paths, labels, node_classes, verify_conjecture, verify_grid, LadderOptions, LadderStep, Verdict, PATH_LIMIT};
use coloring::{ColoredGraph, HamiltonianNumbering};
use netgraph::{Exec, Network, NodeId};
use std::collections::HashSet;

struct Setup {
    cg: ColoredGraph,
    labels: Vec<String>,
    x0: NodeId,
    x1: NodeId,
}

fn setup(rows: usize, cols: usize, x: (usize, usize)) -> Setup {
    let h = HamiltonianNumbering::build(rows, cols, x).unwrap();
    let net = Network::grid(rows, cols, x).unwrap();
    let cg = ColoredGraph::new(&net, h.coloring(&net).unwrap()).unwrap();
    let labels = labels(&h, &net).unwrap();
    let x0 = h.node_of(&net, 1).unwrap();
    let x1 = h.node_of(&net, h.last()).unwrap();
    Setup { cg, labels, x0, x1 }
}

impl Setup {
    fn id(&self, label: &str) -> NodeId {
        self.labels.iter().position(|l| l == label).unwrap_or_else(|| panic!("no node {label}"))
    }
    fn path(&self, s: &str) -> Vec<NodeId> {
        s.split('-').map(|l| self.id(l)).collect()
    }
}

fn golden(text: &str) -> Vec<(String, String, String)> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            (f[0].to_string(), f[1].to_string(), f[2].to_string())
        })
        .collect()
}

#[derive(Debug, PartialEq)]
enum Mismatch {
    /// Not a colored-graph walk ending at the node.
    Malformed,
    /// A valid walk, but longer than the class's shortest length.
    NotShortest,
}

/// Each listed pair should be two node-disjoint shortest paths of the two
/// classes of one case. Returns the rows that are not, with the reason.
fn check_listed(s: &Setup, rows: &[(String, String, String)]) -> Vec<(String, Mismatch)> {
    let mut bad = Vec::new();
    for (node, a, b) in rows {
        let k = s.id(node);
        let (p0, p1) = (s.path(a), s.path(b));
        let walk = |p: &Vec<NodeId>| p.last() == Some(&k) && p.windows(2).all(|w| s.cg.adj(w[0]).contains(&w[1]));
        if !walk(&p0) || !walk(&p1) {
            bad.push((node.clone(), Mismatch::Malformed));
            continue;
        }
        let cls = node_classes(&s.cg, s.x0, s.x1, k);
        let all = |c: &analysis::PathClass| -> HashSet<Vec<NodeId>> { c.enumerate(&s.cg, PATH_LIMIT).paths.into_iter().collect() };
        let case1 = all(&cls.s0).contains(&p0) && all(&cls.t1).contains(&p1);
        let case2 = all(&cls.t0).contains(&p0) && all(&cls.s1).contains(&p1);
        assert!(p0.iter().all(|v| *v == k || !p1.contains(v)), "row {node} shares a node");
        if !(case1 || case2) {
            bad.push((node.clone(), Mismatch::NotShortest));
        }
    }
    bad
}

fn pinned(list: Vec<(&str, Mismatch)>) -> Vec<(String, Mismatch)> {
    list.into_iter().map(|(n, m)| (n.to_string(), m)).collect()
}

// The reference tables carry a few rows with typos (a hop that is not an
// edge, or a path stopping short of the node) and a few valid but
// non-shortest pairs. Everything else must match exactly.
#[test]
fn listed_pairs_7x5() {
    let s = setup(7, 5, (1, 1));
    let rows = golden(include_str!("golden/paths_7x5.txt"));
    assert_eq!(rows.len(), 32);
    let expect = pinned(vec![("7*", Mismatch::NotShortest), ("9", Mismatch::Malformed)]);
    let mut got = check_listed(&s, &rows);
    got.sort_by(|a, b| a.0.cmp(&b.0));
    assert_eq!(got, expect);
}

#[test]
fn listed_pairs_10x9() {
    use Mismatch::*;
    let s = setup(10, 9, (3, 4));
    let rows = golden(include_str!("golden/paths_10x9.txt"));
    assert_eq!(rows.len(), 87);
    let expect = pinned(vec![
        ("2", Malformed),
        ("22", Malformed),
        ("24", Malformed),
        ("37", Malformed),
        ("38", Malformed),
        ("54", Malformed),
        ("55", Malformed),
        ("88", NotShortest),
    ]);
    let mut got = check_listed(&s, &rows);
    got.sort_by(|a, b| a.0.cmp(&b.0));
    assert_eq!(got, expect);
}

#[test]
fn path_enumeration_examples() {
    let s = setup(7, 5, (1, 1));
    let ten = s.id("10");
    let ban = [0];
    let from_x0 = enumerate_shortest_paths(&s.cg, s.x0, ten, &ban, None, PATH_LIMIT);
    assert!(from_x0.paths.contains(&s.path("1-8-9-10")));
    assert_eq!(from_x0.length, Some(3));
    let via = enumerate_shortest_paths(&s.cg, s.x1, ten, &[0, s.x0], Some(2), PATH_LIMIT);
    assert!(via.paths.contains(&s.path("31-2-7-8*-7*-12-11-10")));
    // Adjacent pair: the single edge.
    let two = s.id("2");
    let e = enumerate_shortest_paths(&s.cg, s.x0, two, &ban, None, PATH_LIMIT);
    assert_eq!(e.paths, vec![vec![s.x0, two]]);
    // Every listed path is a colored-graph walk of the reported length.
    for p in &via.paths {
        assert_eq!(p.len() - 1, via.length.unwrap());
        assert!(p.windows(2).all(|w| s.cg.adj(w[0]).contains(&w[1])));
    }
    let capped = enumerate_shortest_paths(&s.cg, s.x1, ten, &[0, s.x0], Some(2), 1);
    assert!(capped.overflow || via.paths.len() == 1);
}

#[test]
fn reference_grids_pass_canonically() {
    for (m, n, x, count) in [(7, 5, (1, 1), 32), (10, 9, (3, 4), 87)] {
        let h = HamiltonianNumbering::build(m, n, x).unwrap();
        let r = verify_conjecture(&h, Exec::Parallel, PATH_LIMIT).unwrap();
        assert_eq!(r.nodes.len(), count);
        assert_eq!(r.failures, 0, "{m}x{n}\n{}", r.table());
        // Nodes whose length offsets differ fall outside the claim.
        assert_eq!(r.satisfied + r.not_applicable, count, "{m}x{n}");
        assert!(r.satisfied > 0);
        assert!(r.passed());
    }
}

#[test]
fn ten_by_eight_needs_the_flip() {
    let no_flip = LadderOptions { allow_flip: false, extended: false, ..Default::default() };
    let r = verify_grid(10, 8, (1, 1), &no_flip, Exec::Parallel).unwrap();
    assert!(!r.passed());
    assert_eq!(r.step, LadderStep::Exhausted);
    let failed: Vec<&str> = r.nodes.iter().filter(|n| n.verdict == Verdict::Failed).map(|n| n.label.as_str()).collect();
    assert!(!failed.is_empty());
    let flip = LadderOptions { extended: false, ..Default::default() };
    let r = verify_grid(10, 8, (1, 1), &flip, Exec::Parallel).unwrap();
    assert!(r.passed());
    assert_eq!(r.step, LadderStep::Flipped);
    assert!(r.flip_used);
}

#[test]
fn every_small_grid_passes_somewhere_on_the_ladder() {
    let mut steps = std::collections::BTreeMap::new();
    for m in 2..=8 {
        for n in 2..=8 {
            for r in 0..m {
                for c in 0..n {
                    let rep = verify_grid(m, n, (r, c), &LadderOptions::default(), Exec::Parallel).unwrap();
                    assert!(rep.passed(), "{m}x{n} at ({r},{c})\n{}", rep.table());
                    *steps.entry(rep.step).or_insert(0usize) += 1;
                }
            }
        }
    }
    assert_eq!(steps.values().sum::<usize>(), 1225);
    assert!(steps[&LadderStep::Canonical] > 1000);
    assert!(steps.contains_key(&LadderStep::Flipped));
}

