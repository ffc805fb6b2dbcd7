use gf2s::{Field, FieldElement};

use crate::equation::{Equation, Layout};

/// Row-echelon basis of everything a node has received. Rows are stored by
/// pivot (internal index) with the pivot scaled to 1; each row only spans
/// from its pivot to its last nonzero, which keeps elimination cheap when
/// equations are confined to a window of recent rounds.
#[derive(Debug, Clone)]
pub struct Decoder {
    layout: Layout,
    rows: Vec<Option<Vec<FieldElement>>>,
    rank: usize,
}

impl Decoder {
    pub fn new(layout: Layout) -> Decoder {
        Decoder { layout, rows: vec![None; layout.d], rank: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_complete(&self) -> bool {
        self.rank == self.layout.d
    }

    /// Reduces `eq` against the basis; returns the pivot position and the
    /// residual window if something independent remains.
    fn reduce(&self, field: &Field, eq: &Equation) -> Option<(usize, Vec<FieldElement>)> {
        let terms = eq.terms();
        let (s0, t0, _) = *terms.first()?;
        let lo = t0 * self.layout.streams + s0;
        let (s1, t1, _) = *terms.last()?;
        let hi = t1 * self.layout.streams + s1 + 1;
        let mut w = vec![0; hi - lo];
        for (s, t, a) in terms {
            w[t * self.layout.streams + s - lo] = a;
        }
        let mut i = 0;
        while i < w.len() {
            let a = w[i];
            if a != 0 {
                match &self.rows[lo + i] {
                    Some(row) => {
                        if i + row.len() > w.len() {
                            w.resize(i + row.len(), 0);
                        }
                        field.axpy(&mut w[i..i + row.len()], a, row);
                    }
                    None => {
                        let end = w.iter().rposition(|&b| b != 0).unwrap() + 1;
                        w.truncate(end);
                        w.drain(..i);
                        return Some((lo + i, w));
                    }
                }
            }
            i += 1;
        }
        None
    }

    /// Adds `eq` to the basis; true iff it raised the rank.
    pub fn insert(&mut self, field: &Field, eq: &Equation) -> bool {
        debug_assert_eq!(eq.layout(), self.layout);
        match self.reduce(field, eq) {
            Some((p, mut w)) => {
                let inv = field.inv(w[0]).expect("pivot is nonzero");
                field.scale_in_place(&mut w, inv);
                self.rows[p] = Some(w);
                self.rank += 1;
                true
            }
            None => false,
        }
    }

    /// Whether `eq` lies in the span of what has been received.
    pub fn contains(&self, field: &Field, eq: &Equation) -> bool {
        self.reduce(field, eq).is_none()
    }

    pub fn knows(&self, field: &Field, stream: usize, t: usize) -> bool {
        self.contains(field, &Equation::unit(self.layout, stream, t))
    }
}
