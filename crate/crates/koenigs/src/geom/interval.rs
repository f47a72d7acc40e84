//! One-dimensional open interval sets on the vertical axis.
//!
//! An [`IntervalSet`] is a finite union of disjoint open intervals with
//! extended-real endpoints. It models the cross-section of a planar domain
//! along a vertical line, so its algebra (union, intersection, reflection)
//! has to be exact: all endpoint arithmetic is plain `f64` comparison and
//! negation, never tolerance-based.
//!
//! Open sets matter here. `(0,1)` and `(1,2)` stay distinct intervals because
//! their union misses the point `1`; over a range of abscissae that missing
//! point sweeps out a horizontal boundary slit that harmonic measure sees.

use std::fmt;

/// Error from constructing an invalid interval set.
#[derive(Debug, Clone, PartialEq)]
pub enum IntervalError {
    /// An endpoint was NaN.
    NotANumber,
    /// An interval had `lo >= hi`.
    EmptyInterval { lo: f64, hi: f64 },
    /// Two intervals overlap or are out of order.
    Overlap { index: usize },
}

impl fmt::Display for IntervalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalError::NotANumber => write!(f, "interval endpoint is NaN"),
            IntervalError::EmptyInterval { lo, hi } => {
                write!(f, "interval ({lo}, {hi}) is empty or reversed")
            }
            IntervalError::Overlap { index } => {
                write!(f, "intervals at positions {index} and {} overlap", index + 1)
            }
        }
    }
}

impl std::error::Error for IntervalError {}

/// A finite union of disjoint open intervals `(lo, hi)` on the real line,
/// sorted ascending. Endpoints may be `-inf`/`+inf`. Consecutive intervals may
/// touch (`hi == next.lo`); the shared endpoint belongs to neither.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
}

fn clean(x: f64) -> f64 {
    // Normalize -0.0 so structural equality is insensitive to sign of zero.
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

impl IntervalSet {
    /// The empty set.
    pub fn empty() -> Self {
        IntervalSet { intervals: Vec::new() }
    }

    /// A single open interval `(lo, hi)`.
    pub fn single(lo: f64, hi: f64) -> Self {
        Self::try_new(vec![(lo, hi)]).expect("invalid interval")
    }

    /// The whole line `(-inf, inf)`.
    pub fn full_line() -> Self {
        Self::single(f64::NEG_INFINITY, f64::INFINITY)
    }

    /// Builds from already-sorted disjoint intervals, validating the invariants.
    pub fn try_new(intervals: Vec<(f64, f64)>) -> Result<Self, IntervalError> {
        for &(lo, hi) in &intervals {
            if lo.is_nan() || hi.is_nan() {
                return Err(IntervalError::NotANumber);
            }
            if !(lo < hi) {
                return Err(IntervalError::EmptyInterval { lo, hi });
            }
        }
        for i in 1..intervals.len() {
            if intervals[i].0 < intervals[i - 1].1 {
                return Err(IntervalError::Overlap { index: i - 1 });
            }
        }
        let intervals = intervals.into_iter().map(|(a, b)| (clean(a), clean(b))).collect();
        Ok(IntervalSet { intervals })
    }

    /// Builds from arbitrary intervals, taking their union (overlapping
    /// intervals merge; touching ones stay separate).
    pub fn from_union(mut intervals: Vec<(f64, f64)>) -> Self {
        intervals.retain(|&(lo, hi)| lo < hi);
        intervals.sort_by(|a, b| a.partial_cmp(b).expect("NaN endpoint"));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
        for (lo, hi) in intervals {
            match merged.last_mut() {
                Some(last) if lo < last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        let merged = merged.into_iter().map(|(a, b)| (clean(a), clean(b))).collect();
        IntervalSet { intervals: merged }
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    /// Sum of interval lengths; `+inf` if any interval is unbounded.
    pub fn total_length(&self) -> f64 {
        let mut sum = 0.0;
        for &(lo, hi) in &self.intervals {
            sum += hi - lo;
        }
        sum
    }

    /// Open membership: some interval has `lo < y < hi`.
    pub fn contains(&self, y: f64) -> bool {
        self.intervals.iter().any(|&(lo, hi)| lo < y && y < hi)
    }

    /// Set union (exact on endpoints).
    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut all = self.intervals.clone();
        all.extend_from_slice(&other.intervals);
        IntervalSet::from_union(all)
    }

    /// Set intersection (exact on endpoints).
    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a_lo, a_hi) = self.intervals[i];
            let (b_lo, b_hi) = other.intervals[j];
            let lo = a_lo.max(b_lo);
            let hi = a_hi.min(b_hi);
            if lo < hi {
                out.push((lo, hi));
            }
            if a_hi <= b_hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet { intervals: out }
    }

    /// True when every interval of `self` lies inside a single interval of `other`.
    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.intervals.iter().all(|&(lo, hi)| {
            other
                .intervals
                .iter()
                .any(|&(olo, ohi)| olo <= lo && hi <= ohi)
        })
    }

    /// Reflection `y -> -y`.
    pub fn reflect(&self) -> IntervalSet {
        let intervals = self
            .intervals
            .iter()
            .rev()
            .map(|&(lo, hi)| (clean(-hi), clean(-lo)))
            .collect();
        IntervalSet { intervals }
    }

    /// Restriction to the open half-line `(0, inf)`.
    pub fn positive_part(&self) -> IntervalSet {
        self.intersect(&IntervalSet::single(0.0, f64::INFINITY))
    }

    /// Restriction to the open half-line `(-inf, 0)`.
    pub fn negative_part(&self) -> IntervalSet {
        self.intersect(&IntervalSet::single(f64::NEG_INFINITY, 0.0))
    }

    /// Finite interval endpoints, each listed once, ascending.
    pub fn finite_endpoints(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for &(lo, hi) in &self.intervals {
            if lo.is_finite() {
                out.push(lo);
            }
            if hi.is_finite() {
                out.push(hi);
            }
        }
        out.dedup();
        out
    }
}
