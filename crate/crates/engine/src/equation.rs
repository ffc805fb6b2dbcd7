use gf2s::{Field, FieldElement};
use std::fmt;

use crate::EngineError;

/// How native packets are indexed. Public (canonical) indices are
/// stream-major: stream `i` packet `t` is `i·len + t`. Internally packets are
/// interleaved by round (`t·streams + i`), so an equation that mixes recent
/// packets of all streams occupies a short window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Layout {
    pub d: usize,
    pub streams: usize,
}

impl Layout {
    pub fn new(d: usize, streams: usize) -> Result<Layout, EngineError> {
        if d == 0 || streams == 0 || d % streams != 0 {
            return Err(EngineError::BadLayout { d, streams });
        }
        Ok(Layout { d, streams })
    }

    pub fn single(d: usize) -> Layout {
        Layout { d: d.max(1), streams: 1 }
    }

    /// Packets per stream.
    pub fn len(&self) -> usize {
        self.d / self.streams
    }

    pub fn is_empty(&self) -> bool {
        self.d == 0
    }

    pub fn canonical(&self, stream: usize, t: usize) -> usize {
        stream * self.len() + t
    }

    fn internal(&self, j: usize) -> usize {
        (j % self.len()) * self.streams + j / self.len()
    }

    fn external(&self, i: usize) -> usize {
        (i % self.streams) * self.len() + i / self.streams
    }

    /// (stream, round index) of internal position `i`.
    fn split(&self, i: usize) -> (usize, usize) {
        (i % self.streams, i / self.streams)
    }
}

/// A linear combination of native packets. Stored as a trimmed window over
/// the internal ordering; the null packet has an empty window.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    layout: Layout,
    lo: usize,
    w: Vec<FieldElement>,
}

impl Equation {
    pub fn null(layout: Layout) -> Equation {
        Equation { layout, lo: 0, w: Vec::new() }
    }

    /// The native packet `x_stream(t)`; null if `t` is past the stream's end.
    pub fn unit(layout: Layout, stream: usize, t: usize) -> Equation {
        if stream >= layout.streams || t >= layout.len() {
            return Equation::null(layout);
        }
        Equation { layout, lo: t * layout.streams + stream, w: vec![1] }
    }

    /// From a full stream-major coefficient vector.
    pub fn from_coeffs(layout: Layout, coeffs: &[FieldElement]) -> Result<Equation, EngineError> {
        if coeffs.len() != layout.d {
            return Err(EngineError::Length { expected: layout.d, got: coeffs.len() });
        }
        let mut dense = vec![0; layout.d];
        for (j, &a) in coeffs.iter().enumerate() {
            dense[layout.internal(j)] = a;
        }
        Ok(Equation::from_window(layout, 0, dense))
    }

    fn from_window(layout: Layout, lo: usize, mut w: Vec<FieldElement>) -> Equation {
        let Some(first) = w.iter().position(|&a| a != 0) else {
            return Equation::null(layout);
        };
        let last = w.iter().rposition(|&a| a != 0).unwrap();
        w.truncate(last + 1);
        w.drain(..first);
        Equation { layout, lo: lo + first, w }
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn is_null(&self) -> bool {
        self.w.is_empty()
    }

    /// Full stream-major coefficient vector of length D.
    pub fn coeffs(&self) -> Vec<FieldElement> {
        let mut out = vec![0; self.layout.d];
        for (k, &a) in self.w.iter().enumerate() {
            out[self.layout.external(self.lo + k)] = a;
        }
        out
    }

    pub fn coeff(&self, stream: usize, t: usize) -> FieldElement {
        let i = t * self.layout.streams + stream;
        if i < self.lo {
            return 0;
        }
        self.w.get(i - self.lo).copied().unwrap_or(0)
    }

    /// Nonzero terms as (stream, t, coefficient), in round-major order.
    pub fn terms(&self) -> Vec<(usize, usize, FieldElement)> {
        self.w
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(k, &a)| {
                let (s, t) = self.layout.split(self.lo + k);
                (s, t, a)
            })
            .collect()
    }

    /// Highest round index with a nonzero coefficient.
    pub fn newest_round(&self) -> Option<usize> {
        (!self.is_null()).then(|| self.layout.split(self.lo + self.w.len() - 1).1)
    }

    pub fn add_assign(&mut self, other: &Equation) {
        self.axpy(1, other, None);
    }

    /// self += c·other (addition is XOR, so this is also subtraction).
    pub fn axpy(&mut self, c: FieldElement, other: &Equation, field: Option<&Field>) {
        if other.is_null() || c == 0 {
            return;
        }
        debug_assert_eq!(self.layout, other.layout);
        if self.is_null() {
            self.lo = other.lo;
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.w.len()).max(other.lo + other.w.len());
        let mut w = vec![0; hi - lo];
        w[self.lo - lo..self.lo - lo + self.w.len()].copy_from_slice(&self.w);
        let dst = &mut w[other.lo - lo..other.lo - lo + other.w.len()];
        match field {
            Some(f) if c != 1 => f.axpy(dst, c, &other.w),
            _ => dst.iter_mut().zip(&other.w).for_each(|(d, s)| *d ^= s),
        }
        *self = Equation::from_window(self.layout, lo, w);
    }

    pub fn scaled(&self, field: &Field, alpha: FieldElement) -> Equation {
        let mut w = self.w.clone();
        field.scale_in_place(&mut w, alpha);
        Equation::from_window(self.layout, self.lo, w)
    }

    /// Hex string of the stream-major coefficients, four digits each.
    pub fn to_hex(&self) -> String {
        self.coeffs().iter().map(|a| format!("{a:04x}")).collect()
    }

    pub fn from_hex(layout: Layout, s: &str) -> Result<Equation, EngineError> {
        let bad = || EngineError::Parse(s.chars().take(16).collect());
        if s.len() != 4 * layout.d || !s.is_ascii() {
            return Err(bad());
        }
        let coeffs: Result<Vec<_>, _> =
            (0..layout.d).map(|j| FieldElement::from_str_radix(&s[4 * j..4 * j + 4], 16)).collect();
        Equation::from_coeffs(layout, &coeffs.map_err(|_| bad())?)
    }
}

/// XOR superposition; the empty sum is null.
pub fn superpose<'a>(layout: Layout, eqs: impl IntoIterator<Item = &'a Equation>) -> Equation {
    let mut out = Equation::null(layout);
    for e in eqs {
        out.add_assign(e);
    }
    out
}

/// `x(t)` for one stream, `x0(t)⊕x1(t)` for several; non-unit coefficients
/// are prefixed in hex. Null prints as `-`.
impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_null() {
            return f.write_str("-");
        }
        let mut terms = self.terms();
        terms.sort_by_key(|&(s, t, _)| (s, t));
        for (i, (s, t, a)) in terms.into_iter().enumerate() {
            if i > 0 {
                f.write_str("⊕")?;
            }
            if a != 1 {
                write!(f, "{a:x}·")?;
            }
            if self.layout.streams == 1 {
                write!(f, "x({t})")?;
            } else {
                write!(f, "x{s}({t})")?;
            }
        }
        Ok(())
    }
}
