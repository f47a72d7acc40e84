//! Axis-aligned boundary segments and point-to-segment distance.

use super::Point;

/// A closed axis-aligned segment, ray or line. Endpoints may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Segment {
    /// `[x0, x1] x {y}` with `x0 < x1`.
    Horizontal { y: f64, x0: f64, x1: f64 },
    /// `{x} x [y0, y1]` with `y0 < y1`.
    Vertical { x: f64, y0: f64, y1: f64 },
}

impl Segment {
    /// The horizontal slit `[t0, inf)` on the real axis.
    pub fn slit_from(t0: f64) -> Segment {
        Segment::Horizontal { y: 0.0, x0: t0, x1: f64::INFINITY }
    }

    /// Euclidean distance from `p` to the segment.
    pub fn distance(&self, p: Point) -> f64 {
        match *self {
            Segment::Horizontal { y, x0, x1 } => {
                let cx = p.x.clamp(x0, x1);
                (p.x - cx).hypot(p.y - y)
            }
            Segment::Vertical { x, y0, y1 } => {
                let cy = p.y.clamp(y0, y1);
                (p.x - x).hypot(p.y - cy)
            }
        }
    }

    /// True when `p` lies on the (closed) segment.
    pub fn contains_point(&self, p: Point) -> bool {
        self.distance(p) == 0.0
    }

    /// Abscissa range covered by the segment.
    pub fn x_range(&self) -> (f64, f64) {
        match *self {
            Segment::Horizontal { x0, x1, .. } => (x0, x1),
            Segment::Vertical { x, .. } => (x, x),
        }
    }

    pub fn is_vertical(&self) -> bool {
        matches!(self, Segment::Vertical { .. })
    }

    /// Length of the segment (`+inf` for rays/lines).
    pub fn length(&self) -> f64 {
        match *self {
            Segment::Horizontal { x0, x1, .. } => x1 - x0,
            Segment::Vertical { y0, y1, .. } => y1 - y0,
        }
    }
}
