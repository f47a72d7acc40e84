//! Walk-on-spheres Monte Carlo estimator for harmonic measure on staircase
//! domains with optional slits.
//!
//! Each walk jumps uniformly on the circle of radius `distance to the nearest
//! feature` until it enters the absorption shell of width `eps`, then counts
//! as a hit when the nearest feature belongs to the target. The estimate is
//! the hit fraction with binomial standard error; the shell introduces an
//! `O(eps)` classification bias. Walks that exceed `max_steps` or escape past
//! `right_cap` are classified as misses and reported as censored.
//!
//! Per-sample counter RNG keys make the estimate a pure function of
//! `(inputs, seed)`, independent of worker count; samples fan out with rayon.

use rayon::prelude::*;

use crate::geom::{GeomError, Point, Segment, StaircaseDomain};
use crate::rng::CounterRng;

/// How an estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Wos,
    Grid,
    ClosedForm,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Wos => write!(f, "wos"),
            Method::Grid => write!(f, "grid"),
            Method::ClosedForm => write!(f, "closed_form"),
        }
    }
}

/// A harmonic-measure value with sampling metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct HMEstimate {
    /// Estimated measure in `[0, 1]`.
    pub value: f64,
    /// Binomial standard error (0 for closed forms and the grid oracle).
    pub stderr: f64,
    pub n_samples: u64,
    pub method: Method,
    /// Absorption-shell radius (walk-on-spheres only).
    pub eps: f64,
    /// Walks classified as misses because they hit `max_steps` or `right_cap`.
    pub censored: u64,
}

impl HMEstimate {
    pub fn exact(value: f64) -> HMEstimate {
        HMEstimate { value, stderr: 0.0, n_samples: 0, method: Method::ClosedForm, eps: 0.0, censored: 0 }
    }

    pub fn censored_fraction(&self) -> f64 {
        if self.n_samples == 0 {
            0.0
        } else {
            self.censored as f64 / self.n_samples as f64
        }
    }
}

/// Sampling configuration for [`hm_wos`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WosParams {
    pub n_samples: u64,
    pub seed: u64,
    /// Absorption-shell radius.
    pub eps: f64,
    /// Per-walk step cap; exceeding walks count as censored misses.
    pub max_steps: u32,
    /// Abscissa past which a walk is censored; `+inf` disables the cap. Only
    /// meaningful when the far-right boundary behavior is outside the target.
    pub right_cap: f64,
}

impl WosParams {
    /// Defaults scaled to the domain: shell radius `1e-4` times the largest
    /// finite cross-section length.
    pub fn for_domain(domain: &StaircaseDomain, n_samples: u64, seed: u64) -> WosParams {
        WosParams {
            n_samples,
            seed,
            eps: 1e-4 * domain.characteristic_length(),
            max_steps: 10_000,
            right_cap: f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum WosError {
    Geometry(GeomError),
    /// The target spec selected no boundary feature.
    EmptyTarget,
    /// The domain exposes no boundary feature at all.
    NoBoundary,
    BadParams(&'static str),
}

impl std::fmt::Display for WosError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WosError::Geometry(e) => write!(f, "{e}"),
            WosError::EmptyTarget => write!(f, "target references no boundary feature"),
            WosError::NoBoundary => write!(f, "domain has no boundary features"),
            WosError::BadParams(msg) => write!(f, "bad sampling parameters: {msg}"),
        }
    }
}

impl std::error::Error for WosError {}

impl From<GeomError> for WosError {
    fn from(e: GeomError) -> Self {
        WosError::Geometry(e)
    }
}

/// Which boundary features carry value 1.
#[derive(Debug, Clone, PartialEq)]
pub enum TargetSpec {
    /// All extra slits.
    AllSlits,
    /// Vertical boundary segments on the line `Re z = x` (e.g. a crosscut).
    VerticalAt(f64),
    /// Horizontal boundary segments on the line `Im z = y`.
    HorizontalAt(f64),
    /// Explicit indices into `boundary_segments()`.
    SegmentIndices(Vec<usize>),
}

/// Boundary segments plus slits of one query, indexed for fast nearest-feature
/// lookups. Boundary features come first, slits after, in input order.
#[derive(Debug, Clone)]
pub struct FeatureSet {
    segments: Vec<Segment>,
    n_boundary: usize,
    breakpoints: Vec<f64>,
    /// Feature ids whose x-extent touches each piece of the breakpoint grid.
    by_piece: Vec<Vec<u32>>,
}

impl FeatureSet {
    pub fn new(domain: &StaircaseDomain, slits: &[Segment]) -> FeatureSet {
        let mut segments = domain.boundary_segments();
        let n_boundary = segments.len();
        segments.extend_from_slice(slits);

        let breakpoints = domain.breakpoints().to_vec();
        let n_pieces = breakpoints.len() + 1;
        let mut by_piece = vec![Vec::new(); n_pieces];
        for (id, seg) in segments.iter().enumerate() {
            let (x0, x1) = seg.x_range();
            // Pieces whose closed x-range [b_{i-1}, b_i] meets [x0, x1].
            let first = breakpoints.partition_point(|&b| b < x0);
            let last = breakpoints.partition_point(|&b| b <= x1);
            for piece in by_piece.iter_mut().take(last + 1).skip(first) {
                piece.push(id as u32);
            }
        }
        FeatureSet { segments, n_boundary, breakpoints, by_piece }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn n_boundary(&self) -> usize {
        self.n_boundary
    }

    pub fn is_slit(&self, id: usize) -> bool {
        id >= self.n_boundary
    }

    /// Distance to the nearest feature and its id. Scans the piece containing
    /// `p`, then expands outward while a piece's x-gap can still beat the
    /// current best.
    pub fn nearest(&self, p: Point) -> (f64, usize) {
        let home = self.breakpoints.partition_point(|&b| b < p.x);
        let mut best = f64::INFINITY;
        let mut best_id = usize::MAX;
        self.scan_piece(home, p, &mut best, &mut best_id);

        let mut step = 1usize;
        loop {
            let mut progressed = false;
            // Leftward piece home - step: right edge is breakpoints[home - step].
            if step <= home {
                let gap = p.x - self.breakpoints[home - step];
                if gap < best {
                    self.scan_piece(home - step, p, &mut best, &mut best_id);
                    progressed = true;
                }
            }
            // Rightward piece home + step: left edge is breakpoints[home + step - 1].
            if home + step < self.by_piece.len() {
                let gap = self.breakpoints[home + step - 1] - p.x;
                if gap < best {
                    self.scan_piece(home + step, p, &mut best, &mut best_id);
                    progressed = true;
                }
            }
            if !progressed {
                break;
            }
            step += 1;
        }
        (best, best_id)
    }

    fn scan_piece(&self, piece: usize, p: Point, best: &mut f64, best_id: &mut usize) {
        for &id in &self.by_piece[piece] {
            let d = self.segments[id as usize].distance(p);
            // Ties prefer the later feature so equidistant slits win.
            if d < *best || (d == *best && (id as usize) > *best_id && *best_id != usize::MAX) {
                *best = d;
                *best_id = id as usize;
            }
        }
    }

    /// Resolves a target spec to a mask over features.
    pub fn resolve(&self, target: &TargetSpec) -> Result<Vec<bool>, WosError> {
        let mut mask = vec![false; self.segments.len()];
        match target {
            TargetSpec::AllSlits => {
                for m in mask.iter_mut().skip(self.n_boundary) {
                    *m = true;
                }
            }
            TargetSpec::VerticalAt(x) => {
                for (i, seg) in self.segments[..self.n_boundary].iter().enumerate() {
                    if let Segment::Vertical { x: sx, .. } = seg {
                        if sx == x {
                            mask[i] = true;
                        }
                    }
                }
            }
            TargetSpec::HorizontalAt(y) => {
                for (i, seg) in self.segments[..self.n_boundary].iter().enumerate() {
                    if let Segment::Horizontal { y: sy, .. } = seg {
                        if sy == y {
                            mask[i] = true;
                        }
                    }
                }
            }
            TargetSpec::SegmentIndices(ids) => {
                for &i in ids {
                    if i >= self.n_boundary {
                        return Err(WosError::EmptyTarget);
                    }
                    mask[i] = true;
                }
            }
        }
        if mask.iter().any(|&m| m) {
            Ok(mask)
        } else {
            Err(WosError::EmptyTarget)
        }
    }
}

enum WalkOutcome {
    Hit,
    Miss,
    Censored,
}

fn walk(
    features: &FeatureSet,
    mask: &[bool],
    z0: Point,
    params: &WosParams,
    sample: u64,
) -> WalkOutcome {
    let mut rng = CounterRng::for_sample(params.seed, sample);
    let mut p = z0;
    for _ in 0..params.max_steps {
        let (d, id) = features.nearest(p);
        if d < params.eps {
            return if mask[id] { WalkOutcome::Hit } else { WalkOutcome::Miss };
        }
        let theta = rng.uniform() * std::f64::consts::TAU;
        let (sin, cos) = theta.sin_cos();
        p = Point::new(p.x + d * cos, p.y + d * sin);
        if p.x > params.right_cap {
            return WalkOutcome::Censored;
        }
    }
    WalkOutcome::Censored
}

/// Monte Carlo estimate of the harmonic measure
/// `omega(z0, target, domain minus slits)` by walk-on-spheres.
pub fn hm_wos(
    domain: &StaircaseDomain,
    slits: &[Segment],
    z0: Point,
    target: &TargetSpec,
    params: &WosParams,
) -> Result<HMEstimate, WosError> {
    if params.n_samples == 0 {
        return Err(WosError::BadParams("n_samples must be at least 1"));
    }
    if !(params.eps > 0.0) {
        return Err(WosError::BadParams("eps must be positive"));
    }
    if params.max_steps == 0 {
        return Err(WosError::BadParams("max_steps must be at least 1"));
    }
    if !domain.contains(z0) || slits.iter().any(|s| s.contains_point(z0)) {
        return Err(WosError::Geometry(GeomError::PointNotInterior { x: z0.x, y: z0.y }));
    }
    let features = FeatureSet::new(domain, slits);
    if features.segments().is_empty() {
        return Err(WosError::NoBoundary);
    }
    let mask = features.resolve(target)?;

    let (hits, censored) = (0..params.n_samples)
        .into_par_iter()
        .fold(
            || (0u64, 0u64),
            |(hits, censored), i| match walk(&features, &mask, z0, params, i) {
                WalkOutcome::Hit => (hits + 1, censored),
                WalkOutcome::Miss => (hits, censored),
                WalkOutcome::Censored => (hits, censored + 1),
            },
        )
        .reduce(|| (0u64, 0u64), |a, b| (a.0 + b.0, a.1 + b.1));

    let n = params.n_samples as f64;
    let value = hits as f64 / n;
    let stderr = (value * (1.0 - value) / n).sqrt();
    Ok(HMEstimate {
        value,
        stderr,
        n_samples: params.n_samples,
        method: Method::Wos,
        eps: params.eps,
        censored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strip() -> StaircaseDomain {
        StaircaseDomain::strip(-1.0, 1.0)
    }

    fn params(n: u64, seed: u64, domain: &StaircaseDomain) -> WosParams {
        WosParams::for_domain(domain, n, seed)
    }

    #[test]
    fn strip_top_line_is_one_half() {
        let d = strip();
        let p = params(200_000, 7, &d);
        let est = hm_wos(&d, &[], Point::ORIGIN, &TargetSpec::HorizontalAt(1.0), &p).unwrap();
        assert!((est.value - 0.5).abs() < 3.0 * est.stderr, "{est:?}");
        assert_eq!(est.censored, 0);
    }

    #[test]
    fn estimates_are_deterministic() {
        let d = strip();
        let p = params(20_000, 42, &d);
        let t = TargetSpec::HorizontalAt(1.0);
        let a = hm_wos(&d, &[], Point::ORIGIN, &t, &p).unwrap();
        let b = hm_wos(&d, &[], Point::ORIGIN, &t, &p).unwrap();
        assert_eq!(a, b);
        let p2 = WosParams { seed: 43, ..p };
        let c = hm_wos(&d, &[], Point::ORIGIN, &t, &p2).unwrap();
        assert_ne!(a.value, c.value);
    }

    #[test]
    fn complementary_targets_sum_to_one() {
        let d = strip();
        let p = params(100_000, 11, &d);
        let top = hm_wos(&d, &[], Point::new(0.0, 0.3), &TargetSpec::HorizontalAt(1.0), &p).unwrap();
        let bottom =
            hm_wos(&d, &[], Point::new(0.0, 0.3), &TargetSpec::HorizontalAt(-1.0), &p).unwrap();
        // Same seed, exhaustive partition of features: the counts are exactly
        // complementary up to censoring.
        assert_eq!(top.censored, 0);
        assert_eq!(top.value + bottom.value, 1.0);
    }

    #[test]
    fn monotonicity_in_the_domain() {
        // Nested strips sharing the top line: the smaller domain gives smaller
        // measure to the shared target.
        let small = StaircaseDomain::strip(-0.5, 1.0);
        let big = strip();
        let n = 100_000;
        let m_small = hm_wos(
            &small,
            &[],
            Point::ORIGIN,
            &TargetSpec::HorizontalAt(1.0),
            &params(n, 5, &small),
        )
        .unwrap();
        let m_big = hm_wos(&big, &[], Point::ORIGIN, &TargetSpec::HorizontalAt(1.0), &params(n, 5, &big))
            .unwrap();
        let sigma = (m_small.stderr.powi(2) + m_big.stderr.powi(2)).sqrt();
        assert!(m_small.value <= m_big.value + 3.0 * sigma);
    }

    #[test]
    fn rejects_exterior_start_and_empty_target() {
        let d = strip();
        let p = params(10, 1, &d);
        assert!(hm_wos(&d, &[], Point::new(0.0, 2.0), &TargetSpec::HorizontalAt(1.0), &p).is_err());
        let slit = [Segment::slit_from(1.0)];
        assert!(hm_wos(&d, &slit, Point::new(2.0, 0.0), &TargetSpec::AllSlits, &p).is_err());
        assert!(hm_wos(&d, &[], Point::ORIGIN, &TargetSpec::AllSlits, &p).is_err());
        assert!(hm_wos(&d, &[], Point::ORIGIN, &TargetSpec::VerticalAt(3.0), &p).is_err());
    }

    #[test]
    fn feature_index_matches_brute_force() {
        let d = StaircaseDomain::try_new(
            vec![-0.25, 0.25, 1.75],
            vec![
                crate::geom::IntervalSet::empty(),
                crate::geom::IntervalSet::single(-1.0, 0.5),
                crate::geom::IntervalSet::try_new(vec![(-1.0, 0.5), (1.0, 1.5)]).unwrap(),
                crate::geom::IntervalSet::single(-1.0, 1.5),
            ],
        )
        .unwrap();
        let slits = [Segment::slit_from(2.0)];
        let features = FeatureSet::new(&d, &slits);
        let mut rng = CounterRng::for_sample(99, 0);
        let mut checked = 0;
        while checked < 500 {
            let p = Point::new(rng.uniform_in(-0.25, 6.0), rng.uniform_in(-1.0, 1.5));
            if !d.contains(p) || slits.iter().any(|s| s.contains_point(p)) {
                continue;
            }
            checked += 1;
            let (fast, _) = features.nearest(p);
            let brute = features
                .segments()
                .iter()
                .map(|s| s.distance(p))
                .fold(f64::INFINITY, f64::min);
            assert_eq!(fast, brute, "at {p:?}");
        }
    }

    #[test]
    fn half_plane_wall_measure_is_one() {
        let d = StaircaseDomain::half_plane(-1.0);
        let p = WosParams { eps: 1e-4, ..params(20_000, 3, &d) };
        let est = hm_wos(&d, &[], Point::ORIGIN, &TargetSpec::VerticalAt(-1.0), &p).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.censored, 0);
    }
}
