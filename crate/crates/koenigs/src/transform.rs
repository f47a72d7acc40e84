//! Steiner symmetrization and polarization of staircase domains.
//!
//! Both transforms act per cross-section, so on staircase domains they are
//! exact set algebra on interval endpoints. Symmetrization replaces each
//! cross-section by the centered open interval of equal length; polarization
//! rearranges it as `(s ∪ s*)⁺ ∪ (s ∩ s*)⁻`, pushing mass to the upper
//! half-plane while preserving length.
//!
//! Seam convention at `y = 0`: polarization is defined with closed
//! half-planes, but cross-sections are open sets. The output is kept open and
//! agrees with the closed-half-plane definition up to the seam point, which
//! belongs to the result exactly when `0 ∈ s ∩ s*` (equivalently `0 ∈ s`,
//! since reflection fixes 0).

use crate::geom::{GeomError, IntervalSet, Segment, StaircaseDomain};

/// Steiner symmetrization of one cross-section: the centered open interval of
/// the same total length (the full line when the length is infinite).
pub fn symmetrize_section(s: &IntervalSet) -> IntervalSet {
    if s.is_empty() {
        return IntervalSet::empty();
    }
    let len = s.total_length();
    if len.is_infinite() {
        IntervalSet::full_line()
    } else {
        let half = len / 2.0;
        IntervalSet::single(-half, half)
    }
}

/// Polarization of one cross-section with respect to `y = 0`.
pub fn polarize_section(s: &IntervalSet) -> IntervalSet {
    if s.is_empty() {
        return IntervalSet::empty();
    }
    let reflected = s.reflect();
    let union = s.union(&reflected);
    let inter = s.intersect(&reflected);

    let upper = union.positive_part();
    let lower = inter.negative_part();

    let mut intervals: Vec<(f64, f64)> = lower.intervals().to_vec();
    let seam_in = s.contains(0.0);
    for &(lo, hi) in upper.intervals() {
        if seam_in && lo == 0.0 {
            if let Some(last) = intervals.last_mut() {
                if last.1 == 0.0 {
                    last.1 = hi;
                    continue;
                }
            }
        }
        intervals.push((lo, hi));
    }
    IntervalSet::try_new(intervals).expect("polarization preserves disjointness")
}

/// Steiner symmetrization of a whole domain with respect to the real axis.
/// The result is symmetric, has the same cross-section lengths, and is again
/// a domain convex in the positive direction when the input is.
pub fn steiner(domain: &StaircaseDomain) -> Result<StaircaseDomain, GeomError> {
    domain.require_valid()?;
    Ok(steiner_unchecked(domain))
}

/// [`steiner`] without the validity gate, for cut-off pieces such as left
/// components whose sections legitimately vanish on the right.
pub fn steiner_unchecked(domain: &StaircaseDomain) -> StaircaseDomain {
    let sections = domain.sections().iter().map(symmetrize_section).collect();
    StaircaseDomain::try_new(domain.breakpoints().to_vec(), sections)
        .expect("same breakpoints stay valid")
        .canonicalize()
}

/// Polarization of a whole domain with respect to the real axis.
pub fn polarize(domain: &StaircaseDomain) -> Result<StaircaseDomain, GeomError> {
    domain.require_valid()?;
    let sections = domain.sections().iter().map(polarize_section).collect();
    Ok(StaircaseDomain::try_new(domain.breakpoints().to_vec(), sections)
        .expect("same breakpoints stay valid")
        .canonicalize())
}

/// Reflection of a domain across the real axis (an involution).
pub fn reflect(domain: &StaircaseDomain) -> StaircaseDomain {
    let sections = domain.sections().iter().map(IntervalSet::reflect).collect();
    StaircaseDomain::try_new(domain.breakpoints().to_vec(), sections)
        .expect("same breakpoints stay valid")
}

/// True when the domain equals its own reflection.
pub fn is_symmetric(domain: &StaircaseDomain) -> bool {
    let d = domain.clone().canonicalize();
    d == reflect(&d).canonicalize()
}

/// Steiner symmetrization of a crosscut (a union of vertical segments on one
/// line): the centered *closed* vertical segment of the same total length.
pub fn symmetrize_crosscut(crosscut: &[Segment]) -> Option<Segment> {
    let x = match crosscut.first()? {
        Segment::Vertical { x, .. } => *x,
        Segment::Horizontal { .. } => return None,
    };
    let mut len = 0.0f64;
    for seg in crosscut {
        match seg {
            Segment::Vertical { x: sx, .. } if *sx == x => len += seg.length(),
            _ => return None,
        }
    }
    if len.is_infinite() {
        Some(Segment::Vertical { x, y0: f64::NEG_INFINITY, y1: f64::INFINITY })
    } else {
        Some(Segment::Vertical { x, y0: -len / 2.0, y1: len / 2.0 })
    }
}

/// Pointwise union of two domains (breakpoints refined to the common grid).
pub fn union_domains(a: &StaircaseDomain, b: &StaircaseDomain) -> StaircaseDomain {
    combine(a, b, |x, y| x.union(y))
}

/// Pointwise intersection of two domains.
pub fn intersect_domains(a: &StaircaseDomain, b: &StaircaseDomain) -> StaircaseDomain {
    combine(a, b, |x, y| x.intersect(y))
}

/// True when `a ⊆ b` as point sets (piecewise cross-section inclusion).
pub fn domain_subset(a: &StaircaseDomain, b: &StaircaseDomain) -> bool {
    let merged = merged_breakpoints(a, b);
    probe_points(&merged)
        .into_iter()
        .all(|x| a.cross_section(x).is_subset_of(b.cross_section(x)))
}

fn merged_breakpoints(a: &StaircaseDomain, b: &StaircaseDomain) -> Vec<f64> {
    let mut merged: Vec<f64> = a.breakpoints().iter().chain(b.breakpoints()).copied().collect();
    merged.sort_by(|x, y| x.partial_cmp(y).unwrap());
    merged.dedup();
    merged
}

/// One abscissa inside each piece of the refined grid, plus the breakpoints
/// themselves (which probe the left sections).
fn probe_points(breaks: &[f64]) -> Vec<f64> {
    if breaks.is_empty() {
        return vec![0.0];
    }
    let mut xs = Vec::with_capacity(2 * breaks.len() + 1);
    xs.push(breaks[0] - 1.0);
    for i in 0..breaks.len() {
        xs.push(breaks[i]);
        let next = if i + 1 < breaks.len() { breaks[i + 1] } else { breaks[i] + 2.0 };
        xs.push(0.5 * (breaks[i] + next));
    }
    xs
}

fn combine(
    a: &StaircaseDomain,
    b: &StaircaseDomain,
    op: impl Fn(&IntervalSet, &IntervalSet) -> IntervalSet,
) -> StaircaseDomain {
    let merged = merged_breakpoints(a, b);
    let mut sections = Vec::with_capacity(merged.len() + 1);
    // Section j is active on (merged[j-1], merged[j]); sample each open piece.
    for j in 0..=merged.len() {
        let x = if merged.is_empty() {
            0.0
        } else if j == 0 {
            merged[0] - 1.0
        } else if j == merged.len() {
            merged[j - 1] + 1.0
        } else {
            0.5 * (merged[j - 1] + merged[j])
        };
        sections.push(op(a.cross_section(x), b.cross_section(x)));
    }
    StaircaseDomain::try_new(merged, sections)
        .expect("refined breakpoints stay increasing")
        .canonicalize()
}
