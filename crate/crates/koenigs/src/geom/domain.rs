//! Staircase domains: rectilinear plane domains whose vertical cross-section
//! is piecewise constant in `x`.
//!
//! A [`StaircaseDomain`] stores strictly increasing breakpoints `x_1 < ... < x_m`
//! and `m + 1` cross-sections; `sections[i]` is active on `(x_i, x_{i+1})` with
//! the convention that the cross-section *at* a breakpoint is the section to its
//! left. Monotone inclusion of consecutive sections is exactly convexity in the
//! positive direction for this class.
//!
//! Values are immutable after construction and all queries are pure, so domains
//! can be shared freely across worker threads.

use std::fmt;

use super::interval::{IntervalError, IntervalSet};
use super::segment::Segment;

/// A point of the plane, identified with the complex number `x + iy`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Point {
        Point { x, y }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeomError {
    /// `sections.len()` must equal `breakpoints.len() + 1`.
    StructureMismatch { sections: usize, breakpoints: usize },
    BreakpointsNotIncreasing { index: usize },
    NonFiniteBreakpoint { index: usize },
    Interval(IntervalError),
    PointNotInterior { x: f64, y: f64 },
    /// `left_component` requires a cut abscissa `t > 0`.
    InvalidCut { t: f64 },
    OriginNotInDomain,
    /// The operation requires a validated domain (monotone, connected, 0 inside).
    NotValid(ValidationReport),
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::StructureMismatch { sections, breakpoints } => write!(
                f,
                "expected breakpoints+1 sections, got {sections} sections for {breakpoints} breakpoints"
            ),
            GeomError::BreakpointsNotIncreasing { index } => {
                write!(f, "breakpoints not strictly increasing at index {index}")
            }
            GeomError::NonFiniteBreakpoint { index } => {
                write!(f, "breakpoint at index {index} is not finite")
            }
            GeomError::Interval(e) => write!(f, "bad section: {e}"),
            GeomError::PointNotInterior { x, y } => {
                write!(f, "point ({x}, {y}) is not interior to the domain")
            }
            GeomError::InvalidCut { t } => write!(f, "cut abscissa must be positive, got {t}"),
            GeomError::OriginNotInDomain => write!(f, "domain does not contain the origin"),
            GeomError::NotValid(r) => write!(
                f,
                "domain fails validation (monotone={}, connected={}, contains_origin={})",
                r.monotone, r.connected, r.contains_origin
            ),
        }
    }
}

impl std::error::Error for GeomError {}

impl From<IntervalError> for GeomError {
    fn from(e: IntervalError) -> Self {
        GeomError::Interval(e)
    }
}

/// Outcome of [`StaircaseDomain::validate`]. Diagnostic only: construction does
/// not reject domains that fail these, but semigroup-facing operations require
/// all three to hold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    /// Every section is included in the next one (convexity in the positive direction).
    pub monotone: bool,
    /// The domain is connected.
    pub connected: bool,
    /// The origin `(0, 0)` is an interior point.
    pub contains_origin: bool,
    /// First section index witnessing a monotonicity failure, if any.
    pub offending_index: Option<usize>,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.monotone && self.connected && self.contains_origin
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StaircaseDomain {
    breakpoints: Vec<f64>,
    sections: Vec<IntervalSet>,
}

impl StaircaseDomain {
    /// Builds a domain after checking structural well-formedness. Geometric
    /// properties (monotonicity, connectedness) are reported by [`validate`],
    /// not enforced here, so cut-off pieces like left components remain
    /// representable.
    ///
    /// [`validate`]: StaircaseDomain::validate
    pub fn try_new(
        breakpoints: Vec<f64>,
        sections: Vec<IntervalSet>,
    ) -> Result<StaircaseDomain, GeomError> {
        if sections.len() != breakpoints.len() + 1 {
            return Err(GeomError::StructureMismatch {
                sections: sections.len(),
                breakpoints: breakpoints.len(),
            });
        }
        for (i, b) in breakpoints.iter().enumerate() {
            if !b.is_finite() {
                return Err(GeomError::NonFiniteBreakpoint { index: i });
            }
        }
        for i in 1..breakpoints.len() {
            if breakpoints[i] <= breakpoints[i - 1] {
                return Err(GeomError::BreakpointsNotIncreasing { index: i });
            }
        }
        Ok(StaircaseDomain { breakpoints, sections })
    }

    /// The whole strip `{lo < Im z < hi}` (no breakpoints).
    pub fn strip(lo: f64, hi: f64) -> StaircaseDomain {
        StaircaseDomain::try_new(vec![], vec![IntervalSet::single(lo, hi)]).unwrap()
    }

    /// The half-plane `{Re z > x0}`.
    pub fn half_plane(x0: f64) -> StaircaseDomain {
        StaircaseDomain::try_new(vec![x0], vec![IntervalSet::empty(), IntervalSet::full_line()])
            .unwrap()
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn sections(&self) -> &[IntervalSet] {
        &self.sections
    }

    pub fn last_section(&self) -> &IntervalSet {
        self.sections.last().expect("at least one section")
    }

    /// Index of the section active at abscissa `x` (left section at a breakpoint).
    pub fn section_index(&self, x: f64) -> usize {
        self.breakpoints.partition_point(|&b| b < x)
    }

    /// The interior cross-section at abscissa `x`; its total length is the
    /// cross-section length of the domain at `x`.
    pub fn cross_section(&self, x: f64) -> &IntervalSet {
        &self.sections[self.section_index(x)]
    }

    /// Interior membership under the left-section breakpoint convention.
    pub fn contains(&self, p: Point) -> bool {
        p.x.is_finite() && p.y.is_finite() && self.cross_section(p.x).contains(p.y)
    }

    /// Topological interior membership: at a breakpoint a point needs open
    /// neighborhoods on both sides, so the cross-section there is the
    /// intersection of the adjacent sections. Coincides with [`contains`] on
    /// monotone domains; differs only on cut-off pieces whose sections drop.
    ///
    /// [`contains`]: StaircaseDomain::contains
    pub fn interior_contains(&self, p: Point) -> bool {
        if !p.x.is_finite() || !p.y.is_finite() {
            return false;
        }
        let j = self.section_index(p.x);
        if !self.sections[j].contains(p.y) {
            return false;
        }
        // On a breakpoint line the right section must admit the point too.
        if j < self.breakpoints.len() && self.breakpoints[j] == p.x {
            return self.sections[j + 1].contains(p.y);
        }
        true
    }

    /// Reports monotone inclusion, connectedness and interior origin.
    pub fn validate(&self) -> ValidationReport {
        let mut monotone = true;
        let mut offending_index = None;
        for i in 0..self.sections.len() - 1 {
            if !self.sections[i].is_subset_of(&self.sections[i + 1]) {
                monotone = false;
                offending_index = Some(i);
                break;
            }
        }
        ValidationReport {
            monotone,
            connected: self.is_connected(),
            contains_origin: self.contains(Point::ORIGIN),
            offending_index,
        }
    }

    /// Ensures the domain validates cleanly, for operations whose semantics
    /// require a Koenigs-type domain containing the origin.
    pub fn require_valid(&self) -> Result<(), GeomError> {
        let report = self.validate();
        if report.all_ok() {
            Ok(())
        } else {
            Err(GeomError::NotValid(report))
        }
    }

    /// Connectivity of the union of pieces: intervals of consecutive sections
    /// are adjacent when they overlap, and the domain is connected when all
    /// intervals end up in a single class.
    fn is_connected(&self) -> bool {
        let mut offsets = Vec::with_capacity(self.sections.len() + 1);
        let mut total = 0usize;
        for s in &self.sections {
            offsets.push(total);
            total += s.len();
        }
        offsets.push(total);
        if total == 0 {
            return false;
        }

        let mut dsu = Dsu::new(total);
        for i in 0..self.sections.len() - 1 {
            let left = self.sections[i].intervals();
            let right = self.sections[i + 1].intervals();
            for (a, &(alo, ahi)) in left.iter().enumerate() {
                for (b, &(blo, bhi)) in right.iter().enumerate() {
                    if alo < bhi && blo < ahi {
                        dsu.union(offsets[i] + a, offsets[i + 1] + b);
                    }
                }
            }
        }
        let root = dsu.find(0);
        (1..total).all(|k| dsu.find(k) == root)
    }

    /// Merges consecutive equal sections so that structural equality is
    /// meaningful after transforms.
    pub fn canonicalize(mut self) -> StaircaseDomain {
        let mut keep_break = vec![true; self.breakpoints.len()];
        for (i, keep) in keep_break.iter_mut().enumerate() {
            if self.sections[i] == self.sections[i + 1] {
                *keep = false;
            }
        }
        let mut breakpoints = Vec::new();
        let mut sections = Vec::new();
        for (i, b) in self.breakpoints.drain(..).enumerate() {
            if keep_break[i] {
                breakpoints.push(b);
                sections.push(self.sections[i].clone());
            }
        }
        sections.push(self.sections.last().unwrap().clone());
        StaircaseDomain { breakpoints, sections }
    }

    /// Largest finite cross-section length, as a scale for shell radii and
    /// truncation windows. Falls back to 1 when every section is empty or
    /// unbounded.
    pub fn characteristic_length(&self) -> f64 {
        let mut best = 0.0f64;
        for s in &self.sections {
            let len = s.total_length();
            if len.is_finite() && len > best {
                best = len;
            }
        }
        if best > 0.0 {
            best
        } else {
            1.0
        }
    }

    /// The complete list of maximal boundary segments: horizontal edges and
    /// rays at interval endpoints, and vertical jumps at breakpoints. Their
    /// union is the topological boundary of the domain.
    pub fn boundary_segments(&self) -> Vec<Segment> {
        let mut out = Vec::new();
        self.horizontal_boundary(&mut out);
        self.vertical_boundary(&mut out);
        out
    }

    fn piece_range(&self, i: usize) -> (f64, f64) {
        let lo = if i == 0 { f64::NEG_INFINITY } else { self.breakpoints[i - 1] };
        let hi = if i == self.breakpoints.len() { f64::INFINITY } else { self.breakpoints[i] };
        (lo, hi)
    }

    fn horizontal_boundary(&self, out: &mut Vec<Segment>) {
        use std::collections::HashMap;
        // Pieces where each finite endpoint value occurs, keyed by bit pattern
        // (endpoint arithmetic is exact, so equal values have equal bits).
        let mut occurs: HashMap<u64, (f64, Vec<usize>)> = HashMap::new();
        for (i, s) in self.sections.iter().enumerate() {
            for y in s.finite_endpoints() {
                occurs.entry(y.to_bits()).or_insert_with(|| (y, Vec::new())).1.push(i);
            }
        }
        let mut values: Vec<(f64, Vec<usize>)> = occurs.into_values().collect();
        values.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for (y, pieces) in values {
            let mut run_start = pieces[0];
            let mut prev = pieces[0];
            for &p in pieces.iter().skip(1).chain(std::iter::once(&usize::MAX)) {
                if p != prev + 1 {
                    let (x0, _) = self.piece_range(run_start);
                    let (_, x1) = self.piece_range(prev);
                    out.push(Segment::Horizontal { y, x0, x1 });
                    run_start = p;
                }
                prev = p;
            }
        }
    }

    fn vertical_boundary(&self, out: &mut Vec<Segment>) {
        for (j, &x) in self.breakpoints.iter().enumerate() {
            let left = &self.sections[j];
            let right = &self.sections[j + 1];
            let closed = closed_union(closure(left), closure(right));
            let interior = left.intersect(right);
            for (y0, y1) in subtract_open(closed, interior.intervals()) {
                if y0 < y1 {
                    out.push(Segment::Vertical { x, y0, y1 });
                }
            }
        }
    }

    /// Exact distance from an interior point to the boundary plus extra slits,
    /// together with the index of a nearest feature (boundary segments first,
    /// then slits, in order).
    pub fn distance_to_boundary(
        &self,
        p: Point,
        extra_slits: &[Segment],
    ) -> Result<(f64, usize), GeomError> {
        if !self.contains(p) || extra_slits.iter().any(|s| s.contains_point(p)) {
            return Err(GeomError::PointNotInterior { x: p.x, y: p.y });
        }
        let mut segments = self.boundary_segments();
        segments.extend_from_slice(extra_slits);
        let mut best = f64::INFINITY;
        let mut best_idx = 0;
        for (i, s) in segments.iter().enumerate() {
            let d = s.distance(p);
            // Ties go to the later feature, so an equidistant slit wins over a
            // boundary segment.
            if d <= best {
                best = d;
                best_idx = i;
            }
        }
        Ok((best, best_idx))
    }

    /// The connected component of `domain \ {Re z = t}` containing the origin,
    /// returned as a staircase domain whose sections vanish for `x > t`,
    /// together with the crosscut: the vertical segments of its boundary on
    /// the line `Re z = t`.
    pub fn left_component(&self, t: f64) -> Result<(StaircaseDomain, Vec<Segment>), GeomError> {
        if !(t > 0.0) {
            return Err(GeomError::InvalidCut { t });
        }
        if !self.contains(Point::ORIGIN) {
            return Err(GeomError::OriginNotInDomain);
        }

        // Split at t; pieces strictly left of t keep their sections.
        let mut breakpoints: Vec<f64> = self.breakpoints.iter().copied().filter(|&b| b < t).collect();
        let cut_piece = breakpoints.len();
        let mut sections: Vec<IntervalSet> = self.sections[..=cut_piece].to_vec();
        breakpoints.push(t);
        sections.push(IntervalSet::empty());

        // Component of the origin among the retained pieces.
        let mut offsets = Vec::with_capacity(sections.len());
        let mut total = 0usize;
        for s in &sections {
            offsets.push(total);
            total += s.len();
        }
        let mut dsu = Dsu::new(total.max(1));
        for i in 0..sections.len() - 1 {
            let left = sections[i].intervals();
            let right = sections[i + 1].intervals();
            for (a, &(alo, ahi)) in left.iter().enumerate() {
                for (b, &(blo, bhi)) in right.iter().enumerate() {
                    if alo < bhi && blo < ahi {
                        dsu.union(offsets[i] + a, offsets[i + 1] + b);
                    }
                }
            }
        }
        let origin_piece = self.section_index(0.0).min(cut_piece);
        let origin_interval = sections[origin_piece]
            .intervals()
            .iter()
            .position(|&(lo, hi)| lo < 0.0 && 0.0 < hi)
            .ok_or(GeomError::OriginNotInDomain)?;
        let origin_node = offsets[origin_piece] + origin_interval;
        let root = dsu.find(origin_node);

        let filtered: Vec<IntervalSet> = sections
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let kept: Vec<(f64, f64)> = s
                    .intervals()
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| dsu.find(offsets[i] + k) == root)
                    .map(|(_, &iv)| iv)
                    .collect();
                IntervalSet::try_new(kept).expect("subset of a valid section")
            })
            .collect();

        let crosscut: Vec<Segment> = filtered[cut_piece]
            .intervals()
            .iter()
            .map(|&(y0, y1)| Segment::Vertical { x: t, y0, y1 })
            .collect();

        let component = StaircaseDomain::try_new(breakpoints, filtered)?.canonicalize();
        Ok((component, crosscut))
    }
}

/// Closure of an open interval set: closed intervals, merged where they touch.
fn closure(s: &IntervalSet) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(s.len());
    for &(lo, hi) in s.intervals() {
        match out.last_mut() {
            Some(last) if lo <= last.1 => {
                if hi > last.1 {
                    last.1 = hi;
                }
            }
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// Union of two closed interval lists (already sorted), merging on touch.
fn closed_union(a: Vec<(f64, f64)>, b: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let mut all: Vec<(f64, f64)> = a;
    all.extend(b);
    all.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(all.len());
    for (lo, hi) in all {
        match out.last_mut() {
            Some(last) if lo <= last.1 => {
                if hi > last.1 {
                    last.1 = hi;
                }
            }
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// Subtracts open intervals from closed intervals; remainders stay closed.
/// Degenerate single points are kept (the caller filters them).
fn subtract_open(closed: Vec<(f64, f64)>, open: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for (clo, chi) in closed {
        let mut cursor = clo;
        for &(olo, ohi) in open {
            if ohi <= cursor {
                continue;
            }
            if olo >= chi {
                break;
            }
            if olo > cursor {
                out.push((cursor, olo.min(chi)));
            }
            cursor = cursor.max(ohi);
            if cursor >= chi {
                break;
            }
        }
        if cursor <= chi {
            out.push((cursor, chi));
        }
    }
    out.retain(|&(a, b)| a <= b);
    out
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}
