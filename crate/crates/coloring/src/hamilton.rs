//! Hamiltonian numberings of grids.
//!
//! The comb: column 0 is the spine, rows are teeth over columns 1..N−1,
//! snaking right/left from row 0, returning up the spine. With M even this
//! visits every cell. With M and N both odd, one row `r` is left out of the
//! comb and visited alongside tooth `r−1`: the tooth's first cell splits,
//! row `r` (shifted by one column) runs parallel as the starred twins, and
//! both sub-paths merge at the cell of row `r` under the tooth's last cell.
//!
//! Other shapes are handled by building in a transformed ("native") frame:
//! an [`Orientation`] maps grid coordinates into that frame and back.
//! Numbers run in the cycle's native direction starting after X.

use crate::{Coloring, ColoringError};
use netgraph::{GridShape, Network, NodeId};
use serde::Serialize;

pub type Cell = (usize, usize);

/// Expansion budget for the exhaustive cycle search.
pub const SEARCH_BUDGET: u64 = 20_000_000;

/// Transpose first, then mirror columns / rows of the transposed frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Orientation {
    pub transpose: bool,
    pub hflip: bool,
    pub vflip: bool,
}

impl Orientation {
    pub const IDENTITY: Orientation = Orientation { transpose: false, hflip: false, vflip: false };

    pub fn all() -> impl Iterator<Item = Orientation> {
        (0..8u8).map(|b| Orientation { transpose: b & 4 != 0, hflip: b & 1 != 0, vflip: b & 2 != 0 })
    }

    pub fn native_dims(self, rows: usize, cols: usize) -> (usize, usize) {
        if self.transpose { (cols, rows) } else { (rows, cols) }
    }

    pub fn forward(self, rows: usize, cols: usize, (r, c): Cell) -> Cell {
        let (m, n) = self.native_dims(rows, cols);
        let (mut r, mut c) = if self.transpose { (c, r) } else { (r, c) };
        if self.hflip {
            c = n - 1 - c;
        }
        if self.vflip {
            r = m - 1 - r;
        }
        (r, c)
    }

    pub fn backward(self, rows: usize, cols: usize, (r, c): Cell) -> Cell {
        let (m, n) = self.native_dims(rows, cols);
        let r = if self.vflip { m - 1 - r } else { r };
        let c = if self.hflip { n - 1 - c } else { c };
        if self.transpose { (c, r) } else { (r, c) }
    }

    /// The orientation `g'` with `g'(p) = g(mirror(p))`, where mirror maps
    /// column c to cols−1−c.
    fn after_mirror(self, rows: usize, cols: usize) -> Orientation {
        Orientation::all()
            .filter(|o| o.transpose == self.transpose)
            .find(|o| {
                (0..rows).all(|r| {
                    (0..cols).all(|c| o.forward(rows, cols, (r, c)) == self.forward(rows, cols, (r, cols - 1 - c)))
                })
            })
            .expect("dihedral group is closed")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Construction {
    /// Comb, with the parallel row for odd×odd grids.
    Comb { insert_row: Option<usize> },
    /// The `rank`-th numbering found by exhaustive search (cycle, or cycle
    /// plus one parallel sub-path when M·N is odd).
    Searched { rank: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HamiltonianNumbering {
    pub rows: usize,
    pub cols: usize,
    pub source: Cell,
    pub orientation: Orientation,
    pub construction: Construction,
    /// `order[k-1]` is the cell numbered k.
    order: Vec<Cell>,
    /// `(k, cell of k*)`, ascending in k.
    twins: Vec<(usize, Cell)>,
}

type Layout = (Vec<Cell>, Vec<(usize, Cell)>);

fn grid_adjacent(a: Cell, b: Cell) -> bool {
    a.0.abs_diff(b.0) + a.1.abs_diff(b.1) == 1
}

fn neighbors(m: usize, n: usize, (r, c): Cell) -> impl Iterator<Item = Cell> {
    // right, down, left, up
    let cand = [
        (c + 1 < n).then(|| (r, c + 1)),
        (r + 1 < m).then(|| (r + 1, c)),
        (c > 0).then(|| (r, c - 1)),
        (r > 0).then(|| (r - 1, c)),
    ];
    cand.into_iter().flatten()
}

fn comb_native(m: usize, n: usize, x: Cell, insert_row: Option<usize>) -> Option<Layout> {
    match insert_row {
        None if m % 2 != 0 => return None,
        Some(r) if m % 2 == 0 || n % 2 == 0 || r == 0 || r + 1 >= m => return None,
        _ => {}
    }
    let mut cyc = vec![(0, 0)];
    let mut stars: Vec<(Cell, Cell)> = Vec::new(); // (twin, star)
    let teeth = (0..m).filter(|&r| Some(r) != insert_row);
    for (i, r) in teeth.enumerate() {
        let cols: Vec<usize> = if i % 2 == 0 { (1..n).collect() } else { (1..n).rev().collect() };
        let start = cyc.len();
        cyc.extend(cols.iter().map(|&c| (r, c)));
        if let Some(ins) = insert_row.filter(|&ins| ins == r + 1) {
            for &(rr, c) in &cyc[start + 1..] {
                let sc = if i % 2 == 0 { c - 1 } else { c + 1 };
                stars.push(((rr, c), (ins, sc)));
            }
            cyc.push((ins, *cols.last().unwrap()));
        }
    }
    cyc.extend((1..m).rev().map(|r| (r, 0)));
    debug_assert_eq!(cyc.len() + stars.len(), m * n);

    let pos = cyc.iter().position(|&c| c == x)?;
    if !stars.is_empty() {
        let first = cyc.iter().position(|&c| c == stars[0].0).unwrap();
        let last = first + stars.len() - 1;
        if pos + 1 >= first && pos <= last + 1 {
            // X would be the split, a twin, or the merge.
            return None;
        }
    }
    let order: Vec<Cell> = cyc[pos + 1..].iter().chain(&cyc[..pos]).copied().collect();
    let twins = stars
        .iter()
        .map(|&(t, s)| (order.iter().position(|&c| c == t).unwrap() + 1, s))
        .collect();
    Some((order, twins))
}

/// Insert-row preference: rows M−3, M−5, … then M−2, M−4, ….
fn insert_row_preference(m: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..m - 1).rev().filter(|&r| (m - 1 - r) % 2 == 0).collect();
    out.extend((1..m - 1).rev().filter(|&r| (m - 1 - r) % 2 == 1));
    out
}

struct Search {
    m: usize,
    n: usize,
    x: Cell,
    budget: u64,
    visited: Vec<bool>,
    path: Vec<Cell>,
}

impl Search {
    fn idx(&self, (r, c): Cell) -> usize {
        r * self.n + c
    }

    // Unvisited cells next to `u` must keep two usable neighbors (unvisited,
    // the path head, or X which closes the cycle).
    fn dead_end(&self, head: Cell) -> bool {
        let prev = self.path[self.path.len() - 2];
        neighbors(self.m, self.n, prev).any(|w| {
            if self.visited[self.idx(w)] {
                return false;
            }
            let free = neighbors(self.m, self.n, w)
                .filter(|&z| !self.visited[self.idx(z)] || z == head || z == self.x)
                .count();
            free < 2
        })
    }

    fn cycles(&mut self, want_full: bool, sink: &mut dyn FnMut(&[Cell]) -> bool) -> bool {
        if self.budget == 0 {
            return true;
        }
        self.budget -= 1;
        let head = *self.path.last().unwrap();
        let total = self.m * self.n;
        if self.path.len() >= 4 && grid_adjacent(head, self.x) && (!want_full || self.path.len() == total) && sink(&self.path) {
            return true;
        }
        if self.path.len() == total {
            return false;
        }
        let nbrs: Vec<Cell> = neighbors(self.m, self.n, head).collect();
        for v in nbrs {
            let i = self.idx(v);
            if self.visited[i] {
                continue;
            }
            self.visited[i] = true;
            self.path.push(v);
            let stop = if want_full && self.dead_end(v) { false } else { self.cycles(want_full, sink) };
            self.path.pop();
            self.visited[i] = false;
            if stop {
                return true;
            }
        }
        false
    }
}

/// Given a cycle through X, finds a parallel sub-path covering all other cells.
fn split_layouts(m: usize, n: usize, cycle: &[Cell]) -> Vec<Layout> {
    let order = &cycle[1..];
    let l = order.len();
    let rest: Vec<Cell> = (0..m)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|c| !cycle.contains(c))
        .collect();
    let k = rest.len();
    let mut out = Vec::new();
    if k == 0 || l < k + 2 {
        return out;
    }
    for i in 0..l - k - 1 {
        let mut chain: Vec<Cell> = Vec::new();
        if extend_chain(&rest, order[i], order[i + k + 1], &mut chain) {
            let twins = chain.iter().enumerate().map(|(j, &s)| (i + 2 + j, s)).collect();
            out.push((order.to_vec(), twins));
        }
    }
    out
}

fn extend_chain(rest: &[Cell], prev: Cell, merge: Cell, chain: &mut Vec<Cell>) -> bool {
    let last = chain.last().copied().unwrap_or(prev);
    if chain.len() == rest.len() {
        return grid_adjacent(last, merge);
    }
    for &q in rest {
        if grid_adjacent(last, q) && !chain.contains(&q) {
            chain.push(q);
            if extend_chain(rest, prev, merge, chain) {
                return true;
            }
            chain.pop();
        }
    }
    false
}

fn search_native(m: usize, n: usize, x: Cell, mut visit: impl FnMut(Layout) -> bool) {
    let mut s = Search { m, n, x, budget: SEARCH_BUDGET, visited: vec![false; m * n], path: vec![x] };
    let i = s.idx(x);
    s.visited[i] = true;
    if (m * n) % 2 == 0 {
        s.cycles(true, &mut |p| visit((p[1..].to_vec(), Vec::new())));
    } else {
        s.cycles(false, &mut |p| split_layouts(m, n, p).into_iter().any(&mut visit));
    }
}

impl HamiltonianNumbering {
    /// The default numbering: the comb (transposed when only N is even),
    /// the split-merge comb for odd×odd grids, and a searched numbering
    /// when X sits where no comb variant can place it.
    pub fn build(rows: usize, cols: usize, source: Cell) -> Result<HamiltonianNumbering, ColoringError> {
        let err = ColoringError::NoNumbering { rows, cols, at: source };
        if rows < 2 || cols < 2 || source.0 >= rows || source.1 >= cols {
            return Err(err);
        }
        if rows % 2 == 0 {
            return Self::build_with(rows, cols, source, Orientation::IDENTITY, Construction::Comb { insert_row: None });
        }
        let t = Orientation { transpose: true, ..Orientation::IDENTITY };
        if cols % 2 == 0 {
            return Self::build_with(rows, cols, source, t, Construction::Comb { insert_row: None });
        }
        for o in [Orientation::IDENTITY, t] {
            if let Ok(h) = Self::comb_default_insert(rows, cols, source, o) {
                return Ok(h);
            }
        }
        Self::build_with(rows, cols, source, Orientation::IDENTITY, Construction::Searched { rank: 0 })
    }

    fn comb_default_insert(rows: usize, cols: usize, source: Cell, o: Orientation) -> Result<Self, ColoringError> {
        let (m, _) = o.native_dims(rows, cols);
        for r in insert_row_preference(m) {
            if let Ok(h) = Self::build_with(rows, cols, source, o, Construction::Comb { insert_row: Some(r) }) {
                return Ok(h);
            }
        }
        Err(ColoringError::NoNumbering { rows, cols, at: source })
    }

    pub fn build_with(
        rows: usize,
        cols: usize,
        source: Cell,
        orientation: Orientation,
        construction: Construction,
    ) -> Result<HamiltonianNumbering, ColoringError> {
        let err = ColoringError::NoNumbering { rows, cols, at: source };
        if rows < 2 || cols < 2 || source.0 >= rows || source.1 >= cols {
            return Err(err);
        }
        let (m, n) = orientation.native_dims(rows, cols);
        let x = orientation.forward(rows, cols, source);
        let layout = match &construction {
            Construction::Comb { insert_row } => comb_native(m, n, x, *insert_row),
            Construction::Searched { rank } => {
                let mut seen = 0;
                let mut found = None;
                search_native(m, n, x, |lay| {
                    if seen == *rank {
                        found = Some(lay);
                        return true;
                    }
                    seen += 1;
                    false
                });
                found
            }
        };
        let (order, twins) = layout.ok_or(err)?;
        let back = |c: Cell| orientation.backward(rows, cols, c);
        let h = HamiltonianNumbering {
            rows,
            cols,
            source,
            orientation,
            construction,
            order: order.into_iter().map(back).collect(),
            twins: twins.into_iter().map(|(k, c)| (k, back(c))).collect(),
        };
        debug_assert_eq!(h.validate(), Ok(()));
        Ok(h)
    }

    /// Up to `limit` searched numberings, in search order.
    pub fn search(rows: usize, cols: usize, source: Cell, orientation: Orientation, limit: usize) -> Vec<HamiltonianNumbering> {
        let (m, n) = orientation.native_dims(rows, cols);
        let x = orientation.forward(rows, cols, source);
        let mut out = Vec::new();
        search_native(m, n, x, |(order, twins)| {
            let back = |c: Cell| orientation.backward(rows, cols, c);
            out.push(HamiltonianNumbering {
                rows,
                cols,
                source,
                orientation,
                construction: Construction::Searched { rank: out.len() },
                order: order.into_iter().map(back).collect(),
                twins: twins.into_iter().map(|(k, c)| (k, back(c))).collect(),
            });
            out.len() >= limit
        });
        out
    }

    /// Mirror image: the same construction applied with columns reversed
    /// (column c ↦ N−1−c). If a fixed insert row stops being valid, the
    /// default preference picks another.
    pub fn flip_horizontal(&self) -> Result<HamiltonianNumbering, ColoringError> {
        let o = self.orientation.after_mirror(self.rows, self.cols);
        match self.construction {
            Construction::Comb { insert_row: Some(r) } => {
                Self::build_with(self.rows, self.cols, self.source, o, Construction::Comb { insert_row: Some(r) })
                    .or_else(|_| Self::comb_default_insert(self.rows, self.cols, self.source, o))
            }
            ref c => Self::build_with(self.rows, self.cols, self.source, o, c.clone()),
        }
    }

    /// Every comb variant (all orientations, all insert rows), canonical
    /// first, then its flip.
    pub fn comb_variants(rows: usize, cols: usize, source: Cell) -> Vec<HamiltonianNumbering> {
        let mut out: Vec<HamiltonianNumbering> = Vec::new();
        let push = |h: HamiltonianNumbering, out: &mut Vec<HamiltonianNumbering>| {
            if !out.iter().any(|o| o.order == h.order && o.twins == h.twins) {
                out.push(h);
            }
        };
        if let Ok(h) = Self::build(rows, cols, source) {
            if let Ok(f) = h.flip_horizontal() {
                push(h, &mut out);
                push(f, &mut out);
            } else {
                push(h, &mut out);
            }
        }
        for o in Orientation::all() {
            let (m, _) = o.native_dims(rows, cols);
            let inserts: Vec<Option<usize>> =
                if m % 2 == 0 { vec![None] } else { insert_row_preference(m).into_iter().map(Some).collect() };
            for ins in inserts {
                if let Ok(h) = Self::build_with(rows, cols, source, o, Construction::Comb { insert_row: ins }) {
                    push(h, &mut out);
                }
            }
        }
        out
    }

    /// The highest number, i.e. the virtual source X1.
    pub fn last(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[Cell] {
        &self.order
    }

    pub fn twins(&self) -> &[(usize, Cell)] {
        &self.twins
    }

    pub fn cell_of(&self, k: usize) -> Cell {
        self.order[k - 1]
    }

    pub fn star_of(&self, k: usize) -> Option<Cell> {
        self.twins.iter().find(|t| t.0 == k).map(|t| t.1)
    }

    /// Number carried by a cell (stars share their twin's number); X has none.
    pub fn number_at(&self, cell: Cell) -> Option<usize> {
        if let Some(i) = self.order.iter().position(|&c| c == cell) {
            return Some(i + 1);
        }
        self.twins.iter().find(|t| t.1 == cell).map(|t| t.0)
    }

    pub fn is_star(&self, cell: Cell) -> bool {
        self.twins.iter().any(|t| t.1 == cell)
    }

    fn check_shape<'a>(&self, net: &'a Network) -> Result<&'a GridShape, ColoringError> {
        let g = net.grid_shape().ok_or(ColoringError::NotAGrid)?;
        if (g.rows, g.cols, g.source) != (self.rows, self.cols, self.source) {
            return Err(ColoringError::NotAGrid);
        }
        Ok(g)
    }

    /// Number of every node id (None for X).
    pub fn numbers(&self, net: &Network) -> Result<Vec<Option<usize>>, ColoringError> {
        let g = self.check_shape(net)?;
        Ok((0..net.node_count()).map(|id| self.number_at(g.cell_of(id))).collect())
    }

    pub fn node_of(&self, net: &Network, k: usize) -> Result<NodeId, ColoringError> {
        let g = self.check_shape(net)?;
        let (r, c) = self.cell_of(k);
        Ok(g.node_at(r, c))
    }

    pub fn star_node_of(&self, net: &Network, k: usize) -> Result<Option<NodeId>, ColoringError> {
        let g = self.check_shape(net)?;
        Ok(self.star_of(k).map(|(r, c)| g.node_at(r, c)))
    }

    /// f(k) = k mod 3, stars inherit their twin's color.
    pub fn coloring(&self, net: &Network) -> Result<Coloring, ColoringError> {
        let colors = self.numbers(net)?.into_iter().map(|k| k.map(|k| (k % 3) as u8)).collect();
        Coloring::new(net, 3, colors)
    }

    /// Checks the numbering invariants; returns a description of the first
    /// violation.
    pub fn validate(&self) -> Result<(), String> {
        let mut seen = vec![false; self.rows * self.cols];
        let cells = std::iter::once(self.source).chain(self.order.iter().copied()).chain(self.twins.iter().map(|t| t.1));
        for (r, c) in cells {
            if r >= self.rows || c >= self.cols {
                return Err(format!("cell ({r},{c}) outside grid"));
            }
            if std::mem::replace(&mut seen[r * self.cols + c], true) {
                return Err(format!("cell ({r},{c}) appears twice"));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err("not every cell is numbered".into());
        }
        let l = self.order.len();
        let ring = std::iter::once(self.source).chain(self.order.iter().copied()).chain(std::iter::once(self.source));
        let ring: Vec<Cell> = ring.collect();
        if let Some(w) = ring.windows(2).find(|w| !grid_adjacent(w[0], w[1])) {
            return Err(format!("consecutive cells {:?} and {:?} are not adjacent", w[0], w[1]));
        }
        if let (Some(first), Some(last)) = (self.twins.first(), self.twins.last()) {
            let ks: Vec<usize> = self.twins.iter().map(|t| t.0).collect();
            if ks.windows(2).any(|w| w[1] != w[0] + 1) || first.0 < 2 || last.0 >= l {
                return Err("twins must be a contiguous run strictly inside 2..L".into());
            }
            let chain: Vec<Cell> = std::iter::once(self.cell_of(first.0 - 1))
                .chain(self.twins.iter().map(|t| t.1))
                .chain(std::iter::once(self.cell_of(last.0 + 1)))
                .collect();
            if chain.windows(2).any(|w| !grid_adjacent(w[0], w[1])) {
                return Err("parallel sub-path is not a path from split to merge".into());
            }
        }
        Ok(())
    }

    /// Numbers laid out as a grid, stars marked with `*`.
    pub fn picture(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| match self.number_at((r, c)) {
                    None => "X".to_string(),
                    Some(k) if self.is_star((r, c)) => format!("{k}*"),
                    Some(k) => k.to_string(),
                })
                .map(|t| format!("{t:>4}"))
                .collect();
            s.push_str(&row.concat());
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_row_order() {
        assert_eq!(insert_row_preference(7), vec![4, 2, 5, 3, 1]);
        assert_eq!(insert_row_preference(3), vec![1]);
    }

    #[test]
    fn orientation_roundtrip() {
        for o in Orientation::all() {
            for r in 0..3 {
                for c in 0..5 {
                    assert_eq!(o.backward(3, 5, o.forward(3, 5, (r, c))), (r, c));
                }
            }
        }
    }
}
