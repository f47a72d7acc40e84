//! Test fixtures: the named staircase domains used throughout the suites and
//! a seeded generator of random valid staircase domains.
//!
//! Generated endpoints live on the dyadic lattice `Z/16`, so interval
//! arithmetic on them (halving, negation, addition in the fixture range) is
//! exact in `f64` and structural equalities can be asserted with zero
//! tolerance. Every generated domain validates (monotone, connected, origin
//! inside) and contains the half-line `[0, inf)`, so slit queries and
//! polarization checks apply to all of them.

use crate::geom::{IntervalSet, StaircaseDomain};
use crate::rng::CounterRng;

/// The three-step staircase: empty left of `-1/4`, then sections
/// `(-1, 1/2)`, `(-1, 1/2) ∪ (1, 3/2)`, `(-1, 3/2)`.
pub fn three_step() -> StaircaseDomain {
    StaircaseDomain::try_new(
        vec![-0.25, 0.25, 1.75],
        vec![
            IntervalSet::empty(),
            IntervalSet::single(-1.0, 0.5),
            IntervalSet::try_new(vec![(-1.0, 0.5), (1.0, 1.5)]).unwrap(),
            IntervalSet::single(-1.0, 1.5),
        ],
    )
    .unwrap()
}

const STEP: f64 = 1.0 / 16.0;
/// Minimum interval length and gap, in lattice units.
const MIN_LEN: i64 = 4;
const MIN_GAP: i64 = 2;

/// Deterministic random staircase domain: valid, origin inside, `[0, inf)`
/// contained, all endpoints on the `1/16` lattice within `[-4, 4]`.
pub fn random_domain(seed: u64, index: u64) -> StaircaseDomain {
    let mut rng = CounterRng::for_sample(seed ^ 0x5eed_d0d0, index);

    // Breakpoints: distinct lattice values in (-2, 2), at least one.
    let m = 1 + rng.below(3) as usize;
    let mut bps: Vec<i64> = Vec::new();
    while bps.len() < m {
        let candidate = -32 + rng.below(64) as i64; // lattice units in (-2, 2)
        if bps.iter().all(|&b| (b - candidate).abs() >= 4) {
            bps.push(candidate);
        }
    }
    bps.sort_unstable();

    // Rightmost section: one interval containing 0 with room to spare.
    let lo = -(MIN_LEN + rng.below(28) as i64); // in [-2, -1/4] lattice units
    let hi = MIN_LEN + rng.below(28) as i64;
    let mut sections_rev: Vec<Vec<(i64, i64)>> = vec![vec![(lo, hi)]];

    // Walk leftward, shrinking each section inside the one to its right.
    // Piece i is active on (b_{i-1}, b_i); it meets [0, inf) — and so must
    // keep the origin height interior — exactly when b_i >= 0 (the section at
    // x = 0 is the one whose right edge is the first non-negative breakpoint).
    for piece in (0..m).rev() {
        let right = sections_rev.last().unwrap().clone();
        let keep_origin = bps[piece] >= 0;
        let mut next = shrink(&mut rng, &right, keep_origin);
        if piece == 0 && !keep_origin && rng.below(2) == 0 {
            // Optionally give the domain a left edge.
            next.clear();
        }
        sections_rev.push(next);
    }
    sections_rev.reverse();

    let breakpoints = bps.iter().map(|&b| b as f64 * STEP).collect();
    let sections = sections_rev
        .into_iter()
        .map(|iv| {
            IntervalSet::try_new(
                iv.into_iter()
                    .map(|(a, b)| (a as f64 * STEP, b as f64 * STEP))
                    .collect(),
            )
            .expect("lattice intervals are sorted and disjoint")
        })
        .collect();
    let domain = StaircaseDomain::try_new(breakpoints, sections).expect("generator output");
    debug_assert!(domain.validate().all_ok(), "generator must produce valid domains");
    domain
}

/// Shrinks a union of lattice intervals to a strict subset: trims endpoints,
/// may drop intervals, may split one in two. Keeps 0 interior when asked.
fn shrink(rng: &mut CounterRng, right: &[(i64, i64)], keep_origin: bool) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for &(lo, hi) in right {
        let has_origin = lo < 0 && 0 < hi;
        let must_keep = keep_origin && has_origin;
        if !must_keep && rng.below(4) == 0 {
            continue; // drop this interval
        }
        let slack = (hi - lo) - MIN_LEN;
        let (mut a, mut b) = (lo, hi);
        if slack > 0 {
            let trim_lo = rng.below(slack as u64 / 2 + 1) as i64;
            let trim_hi = rng.below(slack as u64 / 2 + 1) as i64;
            a = lo + trim_lo;
            b = hi - trim_hi;
            if must_keep {
                a = a.min(-1);
                b = b.max(1);
            }
        }
        // Occasionally split off a sub-interval, keeping the origin side.
        let len = b - a;
        if len >= 2 * MIN_LEN + MIN_GAP && rng.below(3) == 0 {
            let cut = a + MIN_LEN + rng.below((len - 2 * MIN_LEN - MIN_GAP + 1) as u64) as i64;
            let (first, second) = ((a, cut), (cut + MIN_GAP, b));
            if must_keep {
                if first.0 < 0 && 0 < first.1 {
                    out.push(first);
                    if rng.below(2) == 0 {
                        out.push(second);
                    }
                } else if second.0 < 0 && 0 < second.1 {
                    if rng.below(2) == 0 {
                        out.push(first);
                    }
                    out.push(second);
                } else {
                    out.push((a, b)); // the cut would evict the origin
                }
            } else {
                out.push(first);
                out.push(second);
            }
        } else {
            out.push((a, b));
        }
    }
    out
}
