use coloring::{ColoredGraph, Construction, HamiltonianNumbering, Orientation};
use netgraph::{Exec, Network, NodeId};
use serde::Serialize;

use crate::paths::PathClass;
use crate::AnalysisError;

/// Default cap on paths enumerated per class before giving up on a node.
pub const PATH_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Case 1: p0 arrives via color c−1, p1 via c+1. Case 2: the reverse.
    Satisfied { case: u8, p0: Vec<String>, p1: Vec<String> },
    /// Some class is empty or i1−i0 ≠ j1−j0; the claim says nothing.
    NotApplicable,
    Failed,
    /// Too many paths to finish the search.
    Overflow,
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeReport {
    pub node: NodeId,
    pub label: String,
    /// i0, i1, j0, j1: shortest lengths from X0 / X1 arriving via color
    /// c−1 (i) or c+1 (j).
    pub lengths: [Option<usize>; 4],
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LadderStep {
    Canonical,
    Flipped,
    /// Another orientation or parallel-row choice of the comb.
    CombVariant,
    /// A numbering found by exhaustive cycle search.
    Searched,
    /// Nothing tried worked; the report is for the canonical numbering.
    Exhausted,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub rows: usize,
    pub cols: usize,
    pub source: (usize, usize),
    pub step: LadderStep,
    pub flip_used: bool,
    pub orientation: Orientation,
    pub construction: Construction,
    pub numberings_tried: usize,
    pub satisfied: usize,
    pub not_applicable: usize,
    pub failures: usize,
    pub nodes: Vec<NodeReport>,
    pub picture: String,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// node | path from X0 | path from X1, one row per satisfied node.
    pub fn table(&self) -> String {
        let mut s = format!("{:<6} {:<40} {}\n", "node", "path from X0", "path from X1");
        for n in &self.nodes {
            match &n.verdict {
                Verdict::Satisfied { p0, p1, .. } => {
                    s += &format!("{:<6} {:<40} {}\n", n.label, p0.join("-"), p1.join("-"));
                }
                v => s += &format!("{:<6} {:?}\n", n.label, v),
            }
        }
        s
    }
}

/// Labels: numbers, `k*` for stars, `X` for the source.
pub fn labels(h: &HamiltonianNumbering, net: &Network) -> Result<Vec<String>, AnalysisError> {
    let g = net.grid_shape().ok_or(AnalysisError::Config("not a grid".into()))?;
    Ok((0..net.node_count())
        .map(|id| {
            let cell = g.cell_of(id);
            match h.number_at(cell) {
                None => "X".to_string(),
                Some(k) if h.is_star(cell) => format!("{k}*"),
                Some(k) => k.to_string(),
            }
        })
        .collect())
}

/// The four path classes towards `k`, computed with X removed and each
/// virtual source barred from the other's paths.
pub struct NodeClasses {
    pub s0: PathClass,
    pub s1: PathClass,
    pub t0: PathClass,
    pub t1: PathClass,
}

pub fn node_classes(cg: &ColoredGraph, x0: NodeId, x1: NodeId, k: NodeId) -> NodeClasses {
    let n = cg.base.node_count();
    let x = cg.base.source();
    let c = cg.color(k).expect("colored node");
    let (c0, c1) = ((c + 2) % 3, (c + 1) % 3);
    let mut ban0 = vec![false; n];
    ban0[x] = true;
    let mut ban1 = ban0.clone();
    ban0[x1] = true;
    ban1[x0] = true;
    NodeClasses {
        s0: PathClass::new(cg, x0, k, &ban0, Some(c0)),
        s1: PathClass::new(cg, x1, k, &ban1, Some(c0)),
        t0: PathClass::new(cg, x0, k, &ban0, Some(c1)),
        t1: PathClass::new(cg, x1, k, &ban1, Some(c1)),
    }
}

enum Pair {
    Found(Vec<NodeId>, Vec<NodeId>),
    None,
    Overflow,
}

/// A node-disjoint (except at k) pair (pa ∈ a, pb ∈ b). Enumerates the
/// smaller class and asks whether the other still has a path of the same
/// length once that path's nodes are removed.
fn disjoint_pair(cg: &ColoredGraph, a: &PathClass, b: &PathClass, ban_a: &[bool], ban_b: &[bool], c_a: u8, c_b: u8, limit: usize) -> Pair {
    let swap = a.count(cg) > b.count(cg);
    let (small, other, ban_other, c_other) = if swap { (b, a, ban_a, c_a) } else { (a, b, ban_b, c_b) };
    let set = small.enumerate(cg, limit);
    for p in &set.paths {
        let mut ban = ban_other.to_vec();
        for &v in &p[..p.len() - 1] {
            ban[v] = true;
        }
        let q = PathClass::new(cg, other.from, other.to, &ban, Some(c_other));
        if q.length == other.length {
            let q = q.any_path(cg).expect("nonempty class");
            return if swap { Pair::Found(q, p.clone()) } else { Pair::Found(p.clone(), q) };
        }
    }
    if set.overflow {
        Pair::Overflow
    } else {
        Pair::None
    }
}

fn check_node(cg: &ColoredGraph, x0: NodeId, x1: NodeId, k: NodeId, labels: &[String], limit: usize) -> NodeReport {
    let cls = node_classes(cg, x0, x1, k);
    let lengths = [cls.s0.length, cls.s1.length, cls.t0.length, cls.t1.length];
    let label = labels[k].clone();
    let applicable = match lengths {
        [Some(i0), Some(i1), Some(j0), Some(j1)] => i1 as i64 - i0 as i64 == j1 as i64 - j0 as i64,
        _ => false,
    };
    if !applicable {
        return NodeReport { node: k, label, lengths, verdict: Verdict::NotApplicable };
    }
    let n = cg.base.node_count();
    let x = cg.base.source();
    let c = cg.color(k).unwrap();
    let (c0, c1) = ((c + 2) % 3, (c + 1) % 3);
    let mut ban0 = vec![false; n];
    ban0[x] = true;
    let mut ban1 = ban0.clone();
    ban0[x1] = true;
    ban1[x0] = true;
    let name = |p: Vec<NodeId>| p.into_iter().map(|v| labels[v].clone()).collect::<Vec<_>>();
    let mut overflow = false;
    for (case, a, b, ca, cb) in [(1u8, &cls.s0, &cls.t1, c0, c1), (2, &cls.t0, &cls.s1, c1, c0)] {
        match disjoint_pair(cg, a, b, &ban0, &ban1, ca, cb, limit) {
            Pair::Found(p0, p1) => {
                let verdict = Verdict::Satisfied { case, p0: name(p0), p1: name(p1) };
                return NodeReport { node: k, label, lengths, verdict };
            }
            Pair::Overflow => overflow = true,
            Pair::None => {}
        }
    }
    let verdict = if overflow { Verdict::Overflow } else { Verdict::Failed };
    NodeReport { node: k, label, lengths, verdict }
}

/// Checks every node other than X, X0 and X1 under one numbering.
pub fn verify_conjecture(h: &HamiltonianNumbering, exec: Exec, limit: usize) -> Result<ConjectureReport, AnalysisError> {
    let net = Network::grid(h.rows, h.cols, h.source)?;
    let cg = ColoredGraph::new(&net, h.coloring(&net)?)?;
    let x0 = h.node_of(&net, 1)?;
    let x1 = h.node_of(&net, h.last())?;
    let labels = labels(h, &net)?;
    let targets: Vec<NodeId> = (0..net.node_count()).filter(|&k| k != net.source() && k != x0 && k != x1).collect();
    let nodes = exec.map_slice(&targets, |&k| check_node(&cg, x0, x1, k, &labels, limit));
    let count = |f: fn(&Verdict) -> bool| nodes.iter().filter(|n| f(&n.verdict)).count();
    Ok(ConjectureReport {
        rows: h.rows,
        cols: h.cols,
        source: h.source,
        step: LadderStep::Canonical,
        flip_used: false,
        orientation: h.orientation,
        construction: h.construction.clone(),
        numberings_tried: 1,
        satisfied: count(|v| matches!(v, Verdict::Satisfied { .. })),
        not_applicable: count(|v| matches!(v, Verdict::NotApplicable)),
        failures: count(|v| matches!(v, Verdict::Failed | Verdict::Overflow)),
        nodes,
        picture: h.picture(),
    })
}

#[derive(Debug, Clone)]
pub struct LadderOptions {
    /// Try the mirrored numbering when the canonical one fails.
    pub allow_flip: bool,
    /// Go on to other comb variants and searched numberings.
    pub extended: bool,
    /// How many searched numberings to try.
    pub search_limit: usize,
    pub path_limit: usize,
}

impl Default for LadderOptions {
    fn default() -> Self {
        LadderOptions { allow_flip: true, extended: true, search_limit: 200, path_limit: PATH_LIMIT }
    }
}

/// Canonical numbering, then its mirror image, then (if extended) other
/// comb variants and searched numberings, stopping at the first with no
/// failures.
pub fn verify_grid(rows: usize, cols: usize, source: (usize, usize), opts: &LadderOptions, exec: Exec) -> Result<ConjectureReport, AnalysisError> {
    let canonical = HamiltonianNumbering::build(rows, cols, source)?;
    let first = verify_conjecture(&canonical, exec, opts.path_limit)?;
    if first.passed() {
        return Ok(first);
    }
    let mut tried = vec![canonical.clone()];
    let attempt = |h: HamiltonianNumbering, step: LadderStep, tried: &mut Vec<HamiltonianNumbering>| -> Result<Option<ConjectureReport>, AnalysisError> {
        if tried.iter().any(|t| t.order() == h.order() && t.twins() == h.twins()) {
            return Ok(None);
        }
        let mut r = verify_conjecture(&h, exec, opts.path_limit)?;
        tried.push(h);
        r.numberings_tried = tried.len();
        r.step = step;
        r.flip_used = step == LadderStep::Flipped;
        log::debug!("{rows}x{cols} {source:?}: {step:?} attempt {} has {} failures", tried.len(), r.failures);
        Ok(r.passed().then_some(r))
    };
    if opts.allow_flip {
        if let Ok(f) = canonical.flip_horizontal() {
            if let Some(r) = attempt(f, LadderStep::Flipped, &mut tried)? {
                return Ok(r);
            }
        }
    }
    if opts.extended {
        for h in HamiltonianNumbering::comb_variants(rows, cols, source) {
            if let Some(r) = attempt(h, LadderStep::CombVariant, &mut tried)? {
                return Ok(r);
            }
        }
        for h in HamiltonianNumbering::search(rows, cols, source, Orientation::IDENTITY, opts.search_limit) {
            if let Some(r) = attempt(h, LadderStep::Searched, &mut tried)? {
                return Ok(r);
            }
        }
    }
    let mut r = first;
    r.step = LadderStep::Exhausted;
    r.numberings_tried = tried.len();
    Ok(r)
}
